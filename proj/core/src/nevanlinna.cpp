#include "nevlab/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace nevlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;
constexpr double kBoundaryTol = 1e-8;   // divisors this close to r count inside
constexpr double kRadiusNudge = 1e-6;   // relative quadrature-radius nudge

Complex circle_point(Complex center, double r, double phi) {
  return center + r * Complex(std::cos(phi), std::sin(phi));
}

bool divisor_near_circle(const DivisorList& divisors, double r) {
  for (const auto& e : divisors.entries) {
    if (std::abs(std::abs(e.location) - r) <= kBoundaryTol) return true;
  }
  return false;
}

// Golden-section maximization of h on [lo, hi].
double golden_max(const std::function<double(double)>& h, double lo, double hi,
                  int iters = 64) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double hc = h(c), hd = h(d);
  for (int i = 0; i < iters && (b - a) > 1e-14; ++i) {
    if (hc > hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - kInvPhi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + kInvPhi * (b - a);
      hd = h(d);
    }
  }
  return std::max(hc, hd);
}

// Indices of local maxima of a periodic sample vector, best first.
std::vector<int> top_local_maxima(const std::vector<double>& v, int keep) {
  const int n = static_cast<int>(v.size());
  std::vector<int> idx;
  for (int i = 0; i < n; ++i) {
    const double prev = v[(i + n - 1) % n], next = v[(i + 1) % n];
    if (v[i] >= prev && v[i] >= next) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
  if (static_cast<int>(idx.size()) > keep) idx.resize(keep);
  return idx;
}

}  // namespace

double log_plus(double x) {
  require_finite(x, "log_plus");
  if (x < 0.0) raise(ErrorCode::DomainError, "log_plus: x must be nonnegative");
  return x >= 1.0 ? std::log(x) : 0.0;
}

QuadResult proximity_m_ex(const FunctionHandle& f, double r,
                          const QuadratureSpec& quad) {
  f.validate();
  require_finite(r, "proximity_m");
  if (!(r > 0.0)) raise(ErrorCode::DomainError, "proximity_m: r must be positive");
  double r_eff = r;
  if (f.declared_divisors && divisor_near_circle(*f.declared_divisors, r)) {
    r_eff = r * (1.0 + kRadiusNudge);
  }
  QuadResult q = circle_log_integral(f.eval, Complex(0.0, 0.0), r_eff,
                                     LogTransform::LogPlus, quad);
  q.value /= kTwoPi;
  q.err_estimate /= kTwoPi;
  return q;
}

double proximity_m(const FunctionHandle& f, double r, const QuadratureSpec& quad) {
  return proximity_m_ex(f, r, quad).value;
}

int counting_n(const DivisorList& divisors, double r, DivisorKind kind) {
  require_finite(r, "counting_n");
  int total = 0;
  for (const auto& e : divisors.entries) {
    if (e.kind == kind && std::abs(e.location) <= r + kBoundaryTol) {
      total += e.multiplicity;
    }
  }
  return total;
}

double integrated_N(const DivisorList& divisors, double r, DivisorKind kind) {
  require_finite(r, "integrated_N");
  if (!(r > 0.0)) raise(ErrorCode::DomainError, "integrated_N: r must be positive");
  double total = 0.0;
  for (const auto& e : divisors.entries) {
    if (e.kind != kind) continue;
    const double a = std::abs(e.location);
    if (a > r + kBoundaryTol) continue;
    if (a < 1e-300) {
      total += e.multiplicity * std::log(r);  // n(0) log r
    } else {
      total += e.multiplicity * std::log(r / a);
    }
  }
  return total;
}

CharTriple characteristic_T(const FunctionHandle& f, double r,
                            const QuadratureSpec& quad) {
  f.validate();
  require_finite(r, "characteristic_T");
  if (!(r > 0.0)) raise(ErrorCode::DomainError, "characteristic_T: r must be positive");
  const bool analytic_there =
      f.analytic_in && std::abs(f.analytic_in->center) + r <= f.analytic_in->radius + 1e-12;
  if (!analytic_there && !f.declared_divisors) {
    raise(ErrorCode::PreconditionViolated,
          "characteristic_T: pole divisor must be declared or the handle flagged "
          "analytic over the disk");
  }
  CharTriple out;
  out.radius = r;
  out.m = proximity_m(f, r, quad);
  if (!analytic_there && f.declared_divisors) {
    out.n_count = counting_n(*f.declared_divisors, r, DivisorKind::Pole);
    out.N = integrated_N(*f.declared_divisors, r, DivisorKind::Pole);
  }
  out.T = out.m + out.N;
  return out;
}

double max_modulus_M(const FunctionHandle& f, double r, int samples) {
  f.validate();
  require_finite(r, "max_modulus_M");
  if (!(r > 0.0)) raise(ErrorCode::DomainError, "max_modulus_M: r must be positive");
  if (samples < 1) raise(ErrorCode::DomainError, "max_modulus_M: samples must be >= 1");
  const int n = std::max(samples, 8);
  std::vector<double> vals(n);
  for (int i = 0; i < n; ++i) {
    vals[i] = std::abs(f.eval(circle_point(Complex(0, 0), r, kTwoPi * i / n)));
  }
  double best = *std::max_element(vals.begin(), vals.end());
  const auto peaks = top_local_maxima(vals, 3);
  const double dphi = kTwoPi / n;
  for (int i : peaks) {
    const double phi0 = kTwoPi * i / n;
    const double refined = golden_max(
        [&](double phi) {
          return std::abs(f.eval(circle_point(Complex(0, 0), r, phi)));
        },
        phi0 - dphi, phi0 + dphi);
    best = std::max(best, refined);
  }
  return best;
}

double jensen_residual(const FunctionHandle& f, const DivisorList& divisors,
                       double rho, const QuadratureSpec& quad) {
  f.validate();
  divisors.validate();
  require_finite(rho, "jensen_residual");
  if (!(rho > 0.0)) raise(ErrorCode::DomainError, "jensen_residual: rho must be positive");
  const Complex f0 = f.eval(Complex(0.0, 0.0));
  require_finite(f0, "jensen_residual");
  if (std::abs(f0) < 1e-300) {
    raise(ErrorCode::PreconditionViolated,
          "jensen_residual: z = 0 must not be a zero or pole of f");
  }
  // Evaluate the whole identity at the nudged radius when a divisor sits on
  // the circle; the identity is exact at any radius that avoids divisors.
  double rho_eff = rho;
  if (divisor_near_circle(divisors, rho)) rho_eff = rho * (1.0 + kRadiusNudge);

  const QuadResult q =
      circle_log_integral(f.eval, Complex(0.0, 0.0), rho_eff, LogTransform::Log, quad);
  const double mean = q.value / kTwoPi;

  double sum_zeros = 0.0, sum_poles = 0.0;
  for (const auto& e : divisors.entries) {
    const double a = std::abs(e.location);
    if (a > rho + kBoundaryTol) continue;
    if (a < 1e-300) {
      raise(ErrorCode::PreconditionViolated,
            "jensen_residual: divisor at the origin contradicts f(0) != 0, inf");
    }
    const double term = e.multiplicity * std::log(rho_eff / a);
    if (e.kind == DivisorKind::Zero) {
      sum_zeros += term;
    } else {
      sum_poles += term;
    }
  }
  return std::log(std::abs(f0)) - (mean - sum_zeros + sum_poles);
}

namespace detail {

Complex handle_derivative(const FunctionHandle& f, Complex z0, double max_radius) {
  double rho = std::min(0.1, max_radius);
  if (!(rho > 0.0)) {
    raise(ErrorCode::PreconditionViolated, "handle_derivative: no room for the circle");
  }
  Complex prev{0.0, 0.0};
  bool have_prev = false;
  for (int M = 32; M <= 512; M *= 2) {
    Complex sum{0.0, 0.0};
    for (int j = 0; j < M; ++j) {
      const double theta = kTwoPi * j / M;
      const Complex w = f.eval(z0 + rho * Complex(std::cos(theta), std::sin(theta)));
      sum += w * Complex(std::cos(theta), -std::sin(theta));
    }
    const Complex cur = sum / (static_cast<double>(M) * rho);
    if (have_prev && std::abs(cur - prev) <= 1e-12 * (1.0 + std::abs(cur))) return cur;
    prev = cur;
    have_prev = true;
  }
  return prev;
}

}  // namespace detail

SftReport sft_gap(const FunctionHandle& f, double r, double R,
                  const DivisorList& divisors_0, const DivisorList& divisors_inf,
                  const DivisorList& divisors_1, const QuadratureSpec& quad) {
  f.validate();
  quad.validate();
  require_finite(r, "sft_gap");
  require_finite(R, "sft_gap");
  if (!(0.0 < r && r < R)) {
    raise(ErrorCode::DomainError, "sft_gap: needs 0 < r < R");
  }
  const Complex f0 = f.eval(Complex(0.0, 0.0));
  require_finite(f0, "sft_gap");
  if (std::abs(f0) < 1e-12 || std::abs(f0 - Complex(1.0, 0.0)) < 1e-12) {
    raise(ErrorCode::PreconditionViolated, "sft_gap: needs f(0) != 0, 1, infinity");
  }
  // room for the derivative circle: stay clear of declared poles
  double pole_clear = r;
  for (const auto& e : divisors_inf.entries) {
    if (e.kind == DivisorKind::Pole) {
      pole_clear = std::min(pole_clear, 0.45 * std::abs(e.location));
    }
  }
  const Complex fp0 = detail::handle_derivative(f, Complex(0.0, 0.0),
                                                std::min(0.25 * r, pole_clear));
  if (std::abs(fp0) < 1e-12) {
    raise(ErrorCode::PreconditionViolated, "sft_gap: needs f'(0) != 0");
  }

  FunctionHandle g = f;
  if (!g.declared_divisors) g.declared_divisors = divisors_inf;
  const double m_r = proximity_m(g, r, quad);
  const double N_r_poles = integrated_N(divisors_inf, r, DivisorKind::Pole);

  SftReport rep;
  rep.f0_abs = std::abs(f0);
  rep.fprime0_abs = std::abs(fp0);
  rep.lhs = m_r + N_r_poles;
  rep.rhs = 2.0 * (integrated_N(divisors_0, R, DivisorKind::Zero) +
                   integrated_N(divisors_inf, R, DivisorKind::Pole) +
                   integrated_N(divisors_1, R, DivisorKind::Zero)) +
            4.0 * log_plus(rep.f0_abs) +
            2.0 * log_plus(1.0 / (R * rep.fprime0_abs)) +
            24.0 * std::log(R / (R - r)) + 2328.0;
  rep.gap = rep.rhs - rep.lhs;
  return rep;
}

Lemma1Report lemma1_check(const FunctionHandle& f, double r, double rho,
                          const QuadratureSpec& quad) {
  f.validate();
  quad.validate();
  require_finite(r, "lemma1_check");
  require_finite(rho, "lemma1_check");
  if (!(0.0 < r && r < rho)) {
    raise(ErrorCode::DomainError, "lemma1_check: needs 0 < r < rho");
  }
  Lemma1Report rep;
  rep.T_r = proximity_m(f, r, quad);  // analytic f: T = m
  rep.T_rho = proximity_m(f, rho, quad);
  rep.logM_r = log_plus(max_modulus_M(f, r, 1024));
  rep.bound = (rho + r) / (rho - r) * rep.T_rho;
  const double eps = 10.0 * quad.target_abs_err;
  rep.ok = (rep.T_r <= rep.logM_r + eps) && (rep.logM_r <= rep.bound + eps);
  return rep;
}

BorelReport borel_caratheodory_gap(const FunctionHandle& f, Complex z0, double r,
                                   double R, int probes) {
  f.validate();
  require_finite(z0, "borel_caratheodory_gap");
  require_finite(r, "borel_caratheodory_gap");
  require_finite(R, "borel_caratheodory_gap");
  if (!(0.0 < r && r < R)) {
    raise(ErrorCode::DomainError, "borel_caratheodory_gap: needs 0 < r < R");
  }
  if (probes < 1) {
    raise(ErrorCode::DomainError, "borel_caratheodory_gap: probes must be positive");
  }
  const Complex f0 = f.eval(z0);
  require_finite(f0, "borel_caratheodory_gap");

  // A(R): dense boundary scan refined by golden section, plus interior rings.
  const int nA = std::max(512, probes);
  std::vector<double> re_vals(nA);
  for (int i = 0; i < nA; ++i) {
    re_vals[i] = f.eval(circle_point(z0, R, kTwoPi * i / nA)).real();
  }
  double A_R = *std::max_element(re_vals.begin(), re_vals.end());
  const double dphiA = kTwoPi / nA;
  for (int i : top_local_maxima(re_vals, 3)) {
    const double phi0 = kTwoPi * i / nA;
    A_R = std::max(A_R, golden_max(
                            [&](double phi) {
                              return f.eval(circle_point(z0, R, phi)).real();
                            },
                            phi0 - dphiA, phi0 + dphiA));
  }
  for (double ring : {0.5, 0.85}) {
    const int m = nA / 4;
    for (int i = 0; i < m; ++i) {
      A_R = std::max(A_R, f.eval(circle_point(z0, ring * R, kTwoPi * i / m)).real());
    }
  }

  // max |f - f(z0)| over probes points spread on rings of |z - z0| <= r.
  double max_lhs = 0.0;
  const int n_outer = std::max(probes * 7 / 10, 8);
  std::vector<double> outer(n_outer);
  for (int i = 0; i < n_outer; ++i) {
    outer[i] = std::abs(f.eval(circle_point(z0, r, kTwoPi * i / n_outer)) - f0);
  }
  max_lhs = *std::max_element(outer.begin(), outer.end());
  const double dphi = kTwoPi / n_outer;
  for (int i : top_local_maxima(outer, 3)) {
    const double phi0 = kTwoPi * i / n_outer;
    max_lhs = std::max(
        max_lhs, golden_max(
                     [&](double phi) {
                       return std::abs(f.eval(circle_point(z0, r, phi)) - f0);
                     },
                     phi0 - dphi, phi0 + dphi));
  }
  for (double ring : {0.9, 0.5, 0.2}) {
    const int m = std::max(probes / 10, 4);
    for (int i = 0; i < m; ++i) {
      max_lhs = std::max(
          max_lhs, std::abs(f.eval(circle_point(z0, ring * r, kTwoPi * i / m)) - f0));
    }
  }

  BorelReport rep;
  rep.A_R = A_R;
  rep.max_lhs = max_lhs;
  rep.rhs = 2.0 * r / (R - r) * (A_R - f0.real());
  rep.ok = max_lhs <= rep.rhs + 1e-9 * (1.0 + std::abs(rep.rhs));
  return rep;
}

}  // namespace nevlab
