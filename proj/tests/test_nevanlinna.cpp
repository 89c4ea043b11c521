#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nevlab/census.hpp"
#include "nevlab/nevanlinna.hpp"
#include "nevlab/registry.hpp"
#include "support/oracles.hpp"

using nevlab::Complex;
using nevlab::Disk;
using nevlab::DivisorEntry;
using nevlab::DivisorKind;
using nevlab::DivisorList;
using nevlab::FunctionHandle;
using nevlab::QuadratureSpec;

namespace {

constexpr double kPi = 3.14159265358979323846;

FunctionHandle handle_of(Complex (*fn)(Complex), const char* label,
                         double analytic_radius = 1e6) {
  FunctionHandle h;
  h.label = label;
  h.eval = fn;
  h.analytic_in = Disk{Complex(0, 0), analytic_radius};
  return h;
}

DivisorList divisors(std::initializer_list<DivisorEntry> entries) {
  DivisorList d;
  d.entries = entries;
  d.canonicalize();
  return d;
}

// Random rational with all divisors placed in 0.1 <= |z| <= 0.9 * rho.
struct RandomRational {
  FunctionHandle handle;
  DivisorList divisor_list;
  Complex scale;
};

RandomRational make_random_rational(std::mt19937_64& rng, double rho, int max_zeros = 5,
                                    int max_poles = 3) {
  std::uniform_int_distribution<int> nz(1, max_zeros), np(0, max_poles), mult(1, 2);
  std::uniform_real_distribution<double> rad(0.1, 0.9 * rho), ang(0.0, 2.0 * kPi),
      mag(0.5, 2.0);
  RandomRational out;
  DivisorList d;
  auto place = [&](DivisorKind kind) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double r = rad(rng), phi = ang(rng);
      const Complex loc(r * std::cos(phi), r * std::sin(phi));
      bool clash = false;
      for (const auto& e : d.entries) {
        if (std::abs(e.location - loc) < 1e-3) clash = true;
      }
      if (!clash) {
        d.entries.push_back({loc, mult(rng), kind});
        return;
      }
    }
  };
  const int zeros = nz(rng), poles = np(rng);
  for (int i = 0; i < zeros; ++i) place(DivisorKind::Zero);
  for (int i = 0; i < poles; ++i) place(DivisorKind::Pole);
  d.canonicalize();
  const double phi = ang(rng);
  const Complex c = mag(rng) * Complex(std::cos(phi), std::sin(phi));
  out.divisor_list = d;
  out.scale = c;
  out.handle.label = "random-rational";
  out.handle.declared_divisors = d;
  out.handle.eval = [c, d](Complex z) {
    Complex num = c, den(1.0, 0.0);
    for (const auto& e : d.entries) {
      Complex factor(1.0, 0.0);
      for (int k = 0; k < e.multiplicity; ++k) factor *= z - e.location;
      if (e.kind == DivisorKind::Zero) {
        num *= factor;
      } else {
        den *= factor;
      }
    }
    return num / den;
  };
  return out;
}

}  // namespace

TEST_CASE("log_plus") {
  CHECK(nevlab::log_plus(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nevlab::log_plus(0.5) == 0.0);
  CHECK(nevlab::log_plus(1.0) == 0.0);
  CHECK(nevlab::log_plus(0.0) == 0.0);
  CHECK_THROWS_AS(nevlab::log_plus(-1.0), nevlab::Error);
}

TEST_CASE("proximity of exp: closed form r/pi and brute-force oracle") {
  const auto f = handle_of([](Complex z) { return std::exp(z); }, "exp");
  // brute-force fine quadrature first
  const double brute = oracles::circle_simpson(
      f.eval, 3.0, [](double m) { return m >= 1.0 ? std::log(m) : 0.0; }, 1 << 19);
  CHECK(brute / (2.0 * kPi) == doctest::Approx(3.0 / kPi).epsilon(1e-9));
  const double m = nevlab::proximity_m(f, 3.0);
  CHECK(m == doctest::Approx(3.0 / kPi).epsilon(1e-9));
  CHECK(std::abs(m - brute / (2.0 * kPi)) < 1e-8);
}

TEST_CASE("proximity of constants") {
  const auto half = handle_of([](Complex) { return Complex(0.5, 0.0); }, "half");
  CHECK(nevlab::proximity_m(half, 2.0) == 0.0);
  const auto e2 =
      handle_of([](Complex) { return Complex(7.389056098930650, 0.0); }, "e^2");
  // constant integrand: the trapezoid is exact
  CHECK(nevlab::proximity_m(e2, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(nevlab::proximity_m(e2, 17.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("quadrature handles a circle zero with the log model") {
  // integral of log|e^{i phi} - 1| over the circle is exactly 0
  const auto f = handle_of([](Complex z) { return z - 1.0; }, "z-1");
  const auto q = nevlab::circle_log_integral(f.eval, Complex(0, 0), 1.0,
                                             nevlab::LogTransform::Log);
  CHECK(q.singular_panels > 0);
  CHECK(std::abs(q.value) < 1e-6);
}

TEST_CASE("quadrature stalls gracefully when depth is too small") {
  const auto f = handle_of([](Complex z) { return std::exp(z); }, "exp");
  QuadratureSpec cramped;
  cramped.initial_panels = 16;
  cramped.max_depth = 2;
  cramped.target_abs_err = 1e-14;
  const auto q = nevlab::proximity_m_ex(f, 3.0, cramped);
  CHECK(q.stalled);
  CHECK(q.value == doctest::Approx(3.0 / kPi).epsilon(1e-3));
}

TEST_CASE("counting_n") {
  const auto d = divisors({{Complex(1, 0), 1, DivisorKind::Zero},
                           {Complex(-1, 0), 1, DivisorKind::Zero}});
  CHECK(nevlab::counting_n(d, 2.0, DivisorKind::Zero) == 2);
  CHECK(nevlab::counting_n(d, 0.5, DivisorKind::Zero) == 0);
  const auto origin = divisors({{Complex(0, 0), 3, DivisorKind::Zero}});
  CHECK(nevlab::counting_n(origin, 1.0, DivisorKind::Zero) == 3);
  CHECK(nevlab::counting_n(d, 1.0, DivisorKind::Pole) == 0);
  // boundary rule: |location| within 1e-8 of r counts inside
  const auto edge = divisors({{Complex(1.0 + 5e-9, 0), 1, DivisorKind::Zero}});
  CHECK(nevlab::counting_n(edge, 1.0, DivisorKind::Zero) == 1);
}

TEST_CASE("integrated_N closed form vs step-function integration") {
  const auto single = divisors({{Complex(1, 0), 1, DivisorKind::Zero}});
  CHECK(nevlab::integrated_N(single, std::exp(1.0), DivisorKind::Zero) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(nevlab::integrated_N({}, 5.0, DivisorKind::Zero) == 0.0);

  const auto two = divisors({{Complex(0.5, 0), 1, DivisorKind::Zero},
                             {Complex(0.25, 0), 1, DivisorKind::Zero}});
  const double closed = nevlab::integrated_N(two, 1.0, DivisorKind::Zero);
  CHECK(closed == doctest::Approx(std::log(8.0)).epsilon(1e-14));
  // numerical integration of n(t)/t (midpoint rule) as the oracle
  double acc = 0.0;
  const long steps = 2000000;
  const double lo = 1e-9;
  for (long k = 0; k < steps; ++k) {
    const double t = lo + (1.0 - lo) * (k + 0.5) / steps;
    const int n = (t >= 0.5) ? 2 : (t >= 0.25 ? 1 : 0);
    acc += n / t;
  }
  acc *= (1.0 - lo) / steps;
  CHECK(closed == doctest::Approx(acc).epsilon(1e-5));
}

TEST_CASE("characteristic triple") {
  const auto f = handle_of([](Complex z) { return std::exp(z); }, "exp");
  const auto ct = nevlab::characteristic_T(f, 3.0);
  CHECK(ct.N == 0.0);
  CHECK(ct.T == doctest::Approx(3.0 / kPi).epsilon(1e-9));
  CHECK(ct.T == ct.m + ct.N);

  const auto c5 = handle_of([](Complex) { return Complex(5, 0); }, "five");
  CHECK(nevlab::characteristic_T(c5, 1.0).T ==
        doctest::Approx(std::log(5.0)).epsilon(1e-13));

  FunctionHandle inv = nevlab::resolve_function("rational:p=0");  // 1/z
  const auto ct2 = nevlab::characteristic_T(inv, std::exp(1.0));
  CHECK(ct2.n_count == 1);
  CHECK(ct2.N == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ct2.m == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ct2.T == doctest::Approx(1.0).epsilon(1e-12));

  FunctionHandle bare;  // no divisors, no analyticity claim
  bare.label = "bare";
  bare.eval = [](Complex z) { return z; };
  CHECK_THROWS_AS(static_cast<void>(nevlab::characteristic_T(bare, 1.0)),
                  nevlab::Error);
}

TEST_CASE("max modulus") {
  const auto f = handle_of([](Complex z) { return std::exp(z); }, "exp");
  CHECK(nevlab::max_modulus_M(f, 2.0, 256) ==
        doctest::Approx(std::exp(2.0)).epsilon(1e-10));
  const auto id = handle_of([](Complex z) { return z; }, "z");
  CHECK(nevlab::max_modulus_M(id, 3.0, 64) == doctest::Approx(3.0).epsilon(1e-12));
  const auto sq = handle_of([](Complex z) { return z * z + 1.0; }, "z^2+1");
  CHECK(nevlab::max_modulus_M(sq, 1.0, 512) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("jensen residual on closed-form cases") {
  // f(z) = z - 0.5: circle mean of log|e^{i phi} - a| is 0 for |a| < 1
  FunctionHandle f1;
  f1.label = "z-0.5";
  f1.eval = [](Complex z) { return z - 0.5; };
  const auto d1 = divisors({{Complex(0.5, 0), 1, DivisorKind::Zero}});
  CHECK(std::abs(nevlab::jensen_residual(f1, d1, 1.0)) < 1e-9);

  // exp has no divisors and the circle mean of Re z vanishes by symmetry
  const auto f2 = handle_of([](Complex z) { return std::exp(z); }, "exp");
  CHECK(std::abs(nevlab::jensen_residual(f2, {}, 1.7)) < 1e-9);

  // (z-0.3)(z-0.4)/(z-0.6) at rho = 0.9, every term evaluated independently
  FunctionHandle f3 = nevlab::resolve_function("rational:z=0.3;0.4:p=0.6");
  const double rho = 0.9;
  const double log_f0 = std::log(0.3 * 0.4 / 0.6);
  const double sum_zeros = std::log(rho / 0.3) + std::log(rho / 0.4);
  const double sum_poles = std::log(rho / 0.6);
  const double mean_brute = oracles::circle_simpson(
                                f3.eval, rho, [](double m) { return std::log(m); },
                                1 << 18) /
                            (2.0 * kPi);
  CHECK(std::abs(log_f0 - (mean_brute - sum_zeros + sum_poles)) < 1e-9);
  CHECK(std::abs(nevlab::jensen_residual(f3, *f3.declared_divisors, rho)) < 1e-8);
}

TEST_CASE("jensen rejects a vanishing f(0)") {
  FunctionHandle f;
  f.label = "z";
  f.eval = [](Complex z) { return z; };
  const auto d = divisors({{Complex(0, 0), 1, DivisorKind::Zero}});
  CHECK_THROWS_AS(static_cast<void>(nevlab::jensen_residual(f, d, 1.0)), nevlab::Error);
}

TEST_CASE("jensen residual on a divisor that sits on the circle") {
  FunctionHandle f;
  f.label = "z-0.9";
  f.eval = [](Complex z) { return z - 0.9; };
  const auto d = divisors({{Complex(0.9, 0), 1, DivisorKind::Zero}});
  CHECK(std::abs(nevlab::jensen_residual(f, d, 0.9)) < 1e-7);
}

TEST_CASE("jensen residual <= 1e-8 on 50 random rational functions") {
  std::mt19937_64 rng(31337);
  int built = 0;
  while (built < 50) {
    const double rho = 1.0;
    RandomRational rr = make_random_rational(rng, rho);
    const Complex f0 = rr.handle.eval(Complex(0, 0));
    if (std::abs(f0) < 1e-6 || !std::isfinite(std::abs(f0))) continue;
    ++built;
    const double res = nevlab::jensen_residual(rr.handle, rr.divisor_list, rho);
    CHECK(std::abs(res) <= 1e-8);
  }
}

TEST_CASE("sft gap: 2 + z with every term hand-evaluated") {
  FunctionHandle f = nevlab::resolve_function("poly:2,1");
  const auto zeros = divisors({{Complex(-2, 0), 1, DivisorKind::Zero}});
  const auto ones = divisors({{Complex(-1, 0), 1, DivisorKind::Zero}});
  const auto rep = nevlab::sft_gap(f, 1.0, 3.0, zeros, {}, ones);
  // T(1, 2+z) = circle mean of log|2 + e^{i phi}| = log 2 by Jensen
  CHECK(rep.lhs == doctest::Approx(std::log(2.0)).epsilon(1e-8));
  // rhs = 2[log(3/2) + log 3] + 4 log 2 + 0 + 24 log(3/2) + 2328
  const double rhs = 2.0 * (std::log(1.5) + std::log(3.0)) + 4.0 * std::log(2.0) +
                     24.0 * std::log(1.5) + 2328.0;
  CHECK(rep.rhs == doctest::Approx(rhs).epsilon(1e-12));
  CHECK(rep.gap == doctest::Approx(rhs - std::log(2.0)).epsilon(1e-8));
  CHECK(rep.gap > 0.0);
}

TEST_CASE("sft gap: exp(z) + 2 with zeros outside R = 2") {
  FunctionHandle f = nevlab::resolve_function("exp-plus-2");
  // zeros of e^z + 2 at log 2 + i pi (2k+1), all of modulus > 2: lists empty
  CHECK(std::abs(Complex(std::log(2.0), kPi)) > 2.0);
  const auto rep = nevlab::sft_gap(f, 1.0, 2.0, {}, {}, {});
  CHECK(rep.lhs == doctest::Approx(std::log(3.0)).epsilon(1e-8));
  const double rhs = 4.0 * std::log(3.0) + 24.0 * std::log(2.0) + 2328.0;
  CHECK(rep.rhs == doctest::Approx(rhs).epsilon(1e-10));
  CHECK(rep.gap > 2328.0 - rep.lhs);
}

TEST_CASE("sft preconditions") {
  FunctionHandle f = nevlab::resolve_function("exp");  // f(0) = 1
  CHECK_THROWS_AS(static_cast<void>(nevlab::sft_gap(f, 1.0, 2.0, {}, {}, {})),
                  nevlab::Error);
  FunctionHandle g = nevlab::resolve_function("poly:1,0,1");  // f'(0) = 0
  CHECK_THROWS_AS(static_cast<void>(nevlab::sft_gap(g, 1.0, 2.0, {}, {}, {})),
                  nevlab::Error);
}

TEST_CASE("sft gap >= 0 on admissible builtins and 100 random rationals") {
  // admissible builtins with hand-built divisor lists
  {
    FunctionHandle f = nevlab::resolve_function("exp-plus-2");
    const auto rep = nevlab::sft_gap(f, 1.0, 2.0, {}, {}, {});
    CHECK(rep.gap >= 0.0);
  }
  {
    FunctionHandle f = nevlab::resolve_function("poly:3,1");  // 3 + z
    const auto zeros = divisors({{Complex(-3, 0), 1, DivisorKind::Zero}});
    const auto ones = divisors({{Complex(-2, 0), 1, DivisorKind::Zero}});
    const auto rep = nevlab::sft_gap(f, 1.0, 2.5, zeros, {}, ones);
    CHECK(rep.gap >= 0.0);
  }
  {
    FunctionHandle f = nevlab::resolve_function("rational:z=0.3;0.4:p=0.6");
    // zeros of f - 1: roots of (z-0.3)(z-0.4) - (z-0.6) = z^2 - 1.7 z + 0.72,
    // both real: (1.7 +- sqrt(0.01))/2 = 0.9 and 0.8
    const auto ones = divisors({{Complex(0.8, 0), 1, DivisorKind::Zero},
                                {Complex(0.9, 0), 1, DivisorKind::Zero}});
    const auto rep = nevlab::sft_gap(f, 0.3, 2.0, *f.declared_divisors,
                                     *f.declared_divisors, ones);
    CHECK(rep.gap >= 0.0);
  }
  // random rationals: zeros/poles declared, 1-points found by the census of
  // the polynomial num - den (analytic, so the argument principle applies)
  std::mt19937_64 rng(987654321);
  const double R = 1.0, r = 0.45;
  int built = 0;
  while (built < 100) {
    RandomRational rr = make_random_rational(rng, R, 4, 2);
    const Complex f0 = rr.handle.eval(Complex(0, 0));
    if (!std::isfinite(std::abs(f0))) continue;
    if (std::abs(f0) < 1e-3 || std::abs(f0 - 1.0) < 1e-3) continue;
    // num - den as a handle for the 1-point census
    const Complex c = rr.scale;
    const DivisorList d = rr.divisor_list;
    FunctionHandle pm1;
    pm1.label = "num-den";
    pm1.analytic_in = Disk{Complex(0, 0), 100.0};
    pm1.eval = [c, d](Complex z) {
      Complex num = c, den(1.0, 0.0);
      for (const auto& e : d.entries) {
        Complex factor(1.0, 0.0);
        for (int k = 0; k < e.multiplicity; ++k) factor *= z - e.location;
        if (e.kind == DivisorKind::Zero) {
          num *= factor;
        } else {
          den *= factor;
        }
      }
      return num - den;
    };
    nevlab::CensusConfig cfg;
    cfg.root_radius_tol = 1e-9;
    DivisorList ones;
    try {
      ones = nevlab::census(pm1, Disk{Complex(0, 0), R}, cfg);
    } catch (const nevlab::Error&) {
      continue;  // 1-point too close to the census boundary; resample
    }
    ++built;
    const auto rep = nevlab::sft_gap(rr.handle, r, R, rr.divisor_list,
                                     rr.divisor_list, ones);
    CHECK(rep.gap >= 0.0);
  }
}

TEST_CASE("lemma 1 chain on closed forms") {
  const auto f = handle_of([](Complex z) { return std::exp(z); }, "exp");
  const auto rep = nevlab::lemma1_check(f, 1.0, 2.0);
  CHECK(rep.ok);
  CHECK(rep.T_r == doctest::Approx(1.0 / kPi).epsilon(1e-8));
  CHECK(rep.logM_r == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.bound == doctest::Approx(3.0 * 2.0 / kPi).epsilon(1e-8));

  const auto one = handle_of([](Complex) { return Complex(1, 0); }, "one");
  const auto rep1 = nevlab::lemma1_check(one, 1.0, 2.0);
  CHECK(rep1.ok);
  CHECK(rep1.T_r == 0.0);
  CHECK(rep1.logM_r == 0.0);
  CHECK(rep1.bound == 0.0);

  FunctionHandle g = nevlab::resolve_function("poly:3,1");
  const auto rep2 = nevlab::lemma1_check(g, 1.0, 2.0);
  CHECK(rep2.ok);
  CHECK(rep2.logM_r == doctest::Approx(std::log(4.0)).epsilon(1e-10));
}

TEST_CASE("lemma 1 on every analytic builtin at random radii") {
  std::mt19937_64 rng(1001);
  for (const auto& ab : nevlab::analytic_builtins()) {
    FunctionHandle f = nevlab::resolve_function(ab.id);
    QuadratureSpec quad;
    const bool heavy = ab.id.rfind("zeta", 0) == 0;
    if (heavy) quad.target_abs_err = 1e-8;
    const int configs = heavy ? 3 : 20;
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int i = 0; i < configs; ++i) {
      double a = u(rng) * ab.max_radius, b = u(rng) * ab.max_radius;
      if (a > b) std::swap(a, b);
      if (b - a < 0.05 * ab.max_radius) continue;
      const auto rep = nevlab::lemma1_check(f, a, b, quad);
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("characteristic is nondecreasing in r on analytic builtins") {
  std::mt19937_64 rng(2002);
  for (const auto& ab : nevlab::analytic_builtins()) {
    FunctionHandle f = nevlab::resolve_function(ab.id);
    QuadratureSpec quad;
    const bool heavy = ab.id.rfind("zeta", 0) == 0;
    if (heavy) quad.target_abs_err = 1e-8;
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const int pairs = heavy ? 2 : 6;
    for (int i = 0; i < pairs; ++i) {
      double a = u(rng) * ab.max_radius, b = u(rng) * ab.max_radius;
      if (a > b) std::swap(a, b);
      const double T1 = nevlab::characteristic_T(f, a, quad).T;
      const double T2 = nevlab::characteristic_T(f, b, quad).T;
      CHECK(T1 <= T2 + 10.0 * quad.target_abs_err);
    }
  }
}

TEST_CASE("borel-caratheodory on exact cases") {
  const auto c = handle_of([](Complex) { return Complex(3, 1); }, "const");
  const auto repc = nevlab::borel_caratheodory_gap(c, Complex(0, 0), 1.0, 2.0, 64);
  CHECK(repc.ok);
  CHECK(repc.max_lhs == 0.0);
  CHECK(repc.rhs == doctest::Approx(0.0).epsilon(1e-15));

  const auto id = handle_of([](Complex z) { return z; }, "z");
  const auto repz = nevlab::borel_caratheodory_gap(id, Complex(0, 0), 1.0, 2.0, 128);
  CHECK(repz.ok);
  CHECK(repz.max_lhs == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(repz.A_R == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(repz.rhs == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("borel-caratheodory on analytic builtins at random configurations") {
  std::mt19937_64 rng(3003);
  for (const auto& ab : nevlab::analytic_builtins()) {
    if (ab.id.rfind("zeta", 0) == 0) continue;  // covered in the log-zeta case
    FunctionHandle f = nevlab::resolve_function(ab.id);
    std::uniform_real_distribution<double> u(0.05, 0.9);
    std::uniform_real_distribution<double> cshift(-0.2, 0.2);
    for (int i = 0; i < 20; ++i) {
      double a = u(rng) * ab.max_radius, b = u(rng) * ab.max_radius;
      if (a > b) std::swap(a, b);
      if (b - a < 0.05 * ab.max_radius) continue;
      const Complex z0(cshift(rng) * ab.max_radius * 0.1, cshift(rng) * ab.max_radius * 0.1);
      const auto rep = nevlab::borel_caratheodory_gap(f, z0, a, b, 128);
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("borel-caratheodory drives the log zeta growth step") {
  // the growth-lemma configuration: f = log zeta(z + 4 + 20i), r/R just
  // inside the shifted strip
  FunctionHandle f = nevlab::resolve_function("log-zeta-shift:20");
  const auto rep = nevlab::borel_caratheodory_gap(f, Complex(0, 0), 3.48, 3.49, 96);
  CHECK(rep.ok);
  CHECK(rep.rhs > 0.0);
}
