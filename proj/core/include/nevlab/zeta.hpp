#pragma once

#include <cstdint>

#include "nevlab/types.hpp"

namespace nevlab {

// Mangoldt function: log p if n = p^k for a prime p and k >= 1, else 0.
// Rejects n = 0.
double mangoldt(std::uint64_t n);

// True iff s lies in D = {sigma > 1/2, |t| > 1} u {sigma > 2, |t| <= 1}.
bool region_d_contains(Complex s, const RegionD& region = {});

// Riemann zeta on the working strip sigma >= 0.4, s != 1, by Euler-Maclaurin
// with N = max(32, ceil(2|t|)) direct terms (grown as needed) and
// budget.bernoulli_order correction terms.  The returned value carries an
// estimated absolute error <= budget.target_abs_err; the estimate combines
// the standard Euler-Maclaurin remainder bound with a compensated-summation
// rounding term.  Throws PoleAtOne within 1e-9 of s = 1, DomainError off the
// strip, BudgetExceeded when the target is unreachable.
Complex zeta(Complex s, const EvalBudget& budget = {});

// zeta'(s).  Uses the differentiated Dirichlet series where its tail bound
// can prove the target, otherwise the Cauchy integral formula on the circle
// |w - s| = 0.25 (64-point trapezoid, doubled until stable).  The Cauchy
// route additionally needs sigma >= 0.65 (the circle must stay inside the
// working strip) and |s - 1| > 0.26 (the pole must stay outside the circle).
Complex zeta_derivative(Complex s, const EvalBudget& budget = {});

// log zeta(s) for sigma >= 1.05 via the Dirichlet series
// sum_{n>=2} Lambda(n) / (n^s log n), i.e. sum over prime powers p^k of
// p^{-ks}/k.  For sigma >= 3 the partial sum is cut with the proven tail
// bound sum_{n>N} n^{-sigma} <= N^{1-sigma}/(sigma-1).  For smaller sigma
// that bound cannot reach double precision with any feasible N, so the value
// is taken as the principal log of zeta(s); this equals the series branch
// because |sum| <= log zeta(sigma) <= log zeta(1.05) < pi on the whole
// half-plane sigma >= 1.05.
Complex log_zeta_series(Complex s);

// The single-valued branch of log zeta on region D, continued along the
// horizontal path from (4, Im s) to s and anchored at
// log_zeta_series(4 + i Im s).  The anchor line sigma = 4 (rather than a
// 1-point of zeta) pins the same branch the sigma = 4 envelope bounds apply
// to.  Requires s in region D and sigma >= 1/2 + 2 delta.  Phase unwrapping
// per step is kept below pi/2 by step halving; a path sample with
// |zeta| < 1e-10 raises ZeroOnPath (the empirical RH check -- reported,
// never unwound).
Complex log_zeta_tracked(Complex s, const RegionD& region = {},
                         const EvalBudget& budget = {});

// Same continuation with an explicit cap on the sigma step (default 0.05);
// used by the step-halving invariance checks.
Complex log_zeta_tracked_step(Complex s, const RegionD& region,
                              const EvalBudget& budget, double max_step);

namespace detail {

// The two zeta' routes, exposed so tests can cross-validate them where both
// converge.  The series route throws BudgetExceeded when its tail bound
// cannot reach the target.
Complex zeta_derivative_series(Complex s, const EvalBudget& budget);
Complex zeta_derivative_cauchy(Complex s, const EvalBudget& budget);

}  // namespace detail

}  // namespace nevlab
