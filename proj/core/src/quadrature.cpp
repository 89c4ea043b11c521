#include "nevlab/quadrature.hpp"

#include <cmath>

namespace nevlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kSingularModulus = 1e-12;  // |f| below this marks a circle zero
constexpr double kCarveHalfWidth = 1e-6;    // radians carved around a zero angle

struct Workspace {
  const std::function<Complex(Complex)>* f;
  Complex center;
  double radius;
  LogTransform transform;
  int max_depth;
  QuadResult result;

  double modulus(double phi) {
    const Complex z = center + radius * Complex(std::cos(phi), std::sin(phi));
    const Complex v = (*f)(z);
    require_finite(v, "circle_log_integral");
    ++result.evals;
    return std::abs(v);
  }

  double g(double m) const {
    if (transform == LogTransform::LogPlus) return m >= 1.0 ? std::log(m) : 0.0;
    return std::log(m);
  }
};

// antiderivative of log(c |x - phi0|): (x-phi0) (log(c |x-phi0|) - 1)
double log_model_primitive(double x, double phi0, double c) {
  const double d = x - phi0;
  if (d == 0.0) return 0.0;
  return d * (std::log(c * std::abs(d)) - 1.0);
}

double log_model_integral(double lo, double hi, double phi0, double c) {
  return log_model_primitive(hi, phi0, c) - log_model_primitive(lo, phi0, c);
}

void adaptive(Workspace& ws, double a, double ma, double b, double mb, int depth,
              double tol);

// A zero of f sits at angle phi0 inside (or at the edge of) [a, b]: integrate
// the carved window with the simple-zero model and recurse on the rest.
void singular_panel(Workspace& ws, double a, double ma, double b, double mb,
                    double phi0, int depth, double tol) {
  ++ws.result.singular_panels;
  const double h = kCarveHalfWidth;
  // local slope of |f| from samples just outside the carve
  const double mp = ws.modulus(phi0 + h);
  const double mm = ws.modulus(phi0 - h);
  double c;
  if (mp > kSingularModulus && mm > kSingularModulus) {
    c = std::sqrt(mp * mm) / h;
  } else if (std::max(mp, mm) > kSingularModulus) {
    c = std::max(mp, mm) / h;
  } else {
    c = kSingularModulus / h;  // degenerate cluster; keep the estimate finite
  }
  const double lo = std::max(a, phi0 - h);
  const double hi = std::min(b, phi0 + h);
  if (ws.transform == LogTransform::Log) {
    ws.result.value += log_model_integral(lo, hi, phi0, c);
    ws.result.err_estimate += 0.1 * (hi - lo) * (1.0 + std::abs(std::log(c)));
  }
  // log+ of a near-zero modulus is 0: no contribution from the carve.
  if (lo > a) {
    const double mlo = (phi0 - h >= a) ? mm : ma;
    adaptive(ws, a, ma, lo, mlo, depth + 1, tol * 0.5);
  }
  if (hi < b) {
    const double mhi = (phi0 + h <= b) ? mp : mb;
    adaptive(ws, hi, mhi, b, mb, depth + 1, tol * 0.5);
  }
}

void adaptive(Workspace& ws, double a, double ma, double b, double mb, int depth,
              double tol) {
  if (b - a <= 0.0) return;
  if (ma < kSingularModulus) {
    singular_panel(ws, a, ma, b, mb, a, depth, tol);
    return;
  }
  if (mb < kSingularModulus) {
    singular_panel(ws, a, ma, b, mb, b, depth, tol);
    return;
  }
  if (b - a < 4.0 * kCarveHalfWidth && depth >= ws.max_depth) {
    // panel already below the carve scale; accept the trapezoid
    ws.result.value += 0.5 * (b - a) * (ws.g(ma) + ws.g(mb));
    return;
  }
  const double mid = 0.5 * (a + b);
  const double mm = ws.modulus(mid);
  if (mm < kSingularModulus) {
    singular_panel(ws, a, ma, b, mb, mid, depth, tol);
    return;
  }
  const double ga = ws.g(ma), gb = ws.g(mb), gm = ws.g(mm);
  const double t1 = 0.5 * (b - a) * (ga + gb);
  const double t2 = 0.25 * (b - a) * (ga + 2.0 * gm + gb);
  const double diff = std::abs(t2 - t1);
  if (diff <= 3.0 * tol || depth >= ws.max_depth) {
    ws.result.value += t2;
    ws.result.err_estimate += diff / 3.0;
    if (diff > 3.0 * tol) ws.result.stalled = true;
    return;
  }
  adaptive(ws, a, ma, mid, mm, depth + 1, tol * 0.5);
  adaptive(ws, mid, mm, b, mb, depth + 1, tol * 0.5);
}

}  // namespace

QuadResult circle_log_integral(const std::function<Complex(Complex)>& f,
                               Complex center, double radius,
                               LogTransform transform, const QuadratureSpec& spec) {
  spec.validate();
  require_finite(center, "circle_log_integral");
  require_finite(radius, "circle_log_integral");
  if (!(radius > 0.0)) {
    raise(ErrorCode::DomainError, "circle_log_integral: radius must be positive");
  }
  Workspace ws{&f, center, radius, transform, spec.max_depth, {}};

  const int P = spec.initial_panels;
  std::vector<double> phi(P + 1), mod(P + 1);
  for (int i = 0; i < P; ++i) {
    phi[i] = kTwoPi * i / P;
    mod[i] = ws.modulus(phi[i]);
  }
  phi[P] = kTwoPi;
  mod[P] = mod[0];

  const double panel_tol = spec.target_abs_err / P;
  for (int i = 0; i < P; ++i) {
    adaptive(ws, phi[i], mod[i], phi[i + 1], mod[i + 1], 0, panel_tol);
  }
  return ws.result;
}

}  // namespace nevlab
