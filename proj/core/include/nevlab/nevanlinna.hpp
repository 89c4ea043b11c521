#pragma once

#include "nevlab/quadrature.hpp"
#include "nevlab/types.hpp"

namespace nevlab {

// log+ x = max(log x, 0); log_plus(0) = 0.
double log_plus(double x);

// Proximity function m(r, f) = (1/2pi) int_0^{2pi} log+ |f(r e^{i phi})| dphi.
double proximity_m(const FunctionHandle& f, double r, const QuadratureSpec& quad = {});
QuadResult proximity_m_ex(const FunctionHandle& f, double r,
                          const QuadratureSpec& quad = {});

// Multiplicity-weighted count of divisors of the given kind in the closed
// disk |z| <= r (entries within 1e-8 of the circle count as inside).
int counting_n(const DivisorList& divisors, double r, DivisorKind kind);

// N(r) = sum_{0<|a|<=r} mult log(r/|a|) + n(0) log r  (closed form of the
// logarithmic integral of the step function n(t)/t).
double integrated_N(const DivisorList& divisors, double r, DivisorKind kind);

// CharTriple with m from proximity_m, N over the declared pole divisor,
// T = m + N.  Requires either analytic_in covering the closed disk or a
// declared divisor list.
CharTriple characteristic_T(const FunctionHandle& f, double r,
                            const QuadratureSpec& quad = {});

// max |f| over `samples` equispaced angles on |z| = r, refined by
// golden-section search around the best local maxima.
double max_modulus_M(const FunctionHandle& f, double r, int samples);

// Jensen residual
//   log|f(0)| - [ (1/2pi) int log|f(rho e^{i phi})| dphi
//                 - sum_zeros log(rho/|a|) + sum_poles log(rho/|b|) ].
// Requires f(0) != 0, infinity and a divisor list complete inside the circle.
// When a divisor sits within 1e-8 of rho the whole formula is evaluated at
// the nudged radius rho (1 + 1e-6) so the identity stays exact.
double jensen_residual(const FunctionHandle& f, const DivisorList& divisors,
                       double rho, const QuadratureSpec& quad = {});

// Second-fundamental-theorem gap (explicit-constant form):
//   rhs = 2[N(R,1/f) + N(R,f) + N(R,1/(f-1))] + 4 log+|f(0)|
//         + 2 log+(1/(R |f'(0)|)) + 24 log(R/(R-r)) + 2328,
//   lhs = T(r,f), gap = rhs - lhs  (the checked inequality is gap >= 0).
struct SftReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double f0_abs = 0.0;
  double fprime0_abs = 0.0;
};
SftReport sft_gap(const FunctionHandle& f, double r, double R,
                  const DivisorList& divisors_0, const DivisorList& divisors_inf,
                  const DivisorList& divisors_1, const QuadratureSpec& quad = {});

// T(r,f) <= log+ M(r,f) <= ((rho+r)/(rho-r)) T(rho,f) for f analytic in
// |z| <= rho; ok uses epsilon = 10 * quad.target_abs_err.
struct Lemma1Report {
  double T_r = 0.0;
  double logM_r = 0.0;
  double bound = 0.0;
  double T_rho = 0.0;
  bool ok = false;
};
Lemma1Report lemma1_check(const FunctionHandle& f, double r, double rho,
                          const QuadratureSpec& quad = {});

// Borel-Caratheodory: max_{|z-z0|<=r} |f(z)-f(z0)| <= (2r/(R-r))(A(R)-Re f(z0))
// with A(R) = max Re f on |z-z0| <= R, estimated by circle + interior sampling.
struct BorelReport {
  double max_lhs = 0.0;
  double rhs = 0.0;
  double A_R = 0.0;
  bool ok = false;
};
BorelReport borel_caratheodory_gap(const FunctionHandle& f, Complex z0, double r,
                                   double R, int probes);

namespace detail {
// Derivative of a handle at z0 by a small Cauchy circle (trapezoid, doubled
// until stable).  pole_clearance bounds the usable circle radius.
Complex handle_derivative(const FunctionHandle& f, Complex z0, double max_radius);
}  // namespace detail

}  // namespace nevlab
