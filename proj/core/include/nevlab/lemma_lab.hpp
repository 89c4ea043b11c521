#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nevlab/census.hpp"
#include "nevlab/types.hpp"

namespace nevlab {

// ---------------------------------------------------------------------------
// Grids and fits
// ---------------------------------------------------------------------------

struct ScanGrid {
  std::vector<double> t_values;      // ascending
  std::vector<double> sigma_values;  // ascending
  double delta = 0.01;               // 0 < delta <= 1/100

  void validate() const;
};

std::vector<double> linear_grid(double t_min, double t_max, double step);
std::vector<double> log_grid(double t_min, double t_max, int points_per_decade);

// A dominating affine bound value <= slope * x + offset over the scanned
// samples; max_residual <= 0 means the fit dominates the data.
struct BoundFit {
  double slope = 0.0;
  double offset = 0.0;
  double max_residual = 0.0;
  Complex argmax_witness{0.0, 0.0};  // sigma + i t of the binding sample
  long n_samples = 0;
};

enum class LemmaId { L4, L5, L6, L8, L9, THM };
const char* to_string(LemmaId id);
LemmaId lemma_id_from_string(const std::string& s);

struct Witness {
  Complex input{0.0, 0.0};  // sigma + i t
  double value = 0.0;
  std::string label;
};

// One raw scan sample: the CSV row (sigma, t, value, bound, margin).
struct Sample {
  double sigma = 0.0;
  double t = 0.0;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

struct Lemma9Detail {
  double t = 0.0;
  double rho = 0.0;
  int h = 0;                 // 1-point count with multiplicity
  double N_value = 0.0;      // integrated counting function
  double jensen_sum = 0.0;   // sum log(rho/|a_lambda|), same chain
  double bound = 0.0;        // loglog|t| + c4
  bool ok = false;
  int zeta_zero_count = 0;   // empirical RH check: must be 0
  DivisorList divisors;
  long nudge_count = 0;
};

struct LemmaReport {
  LemmaId lemma_id = LemmaId::L5;
  ScanGrid params;
  bool pass = false;
  std::optional<BoundFit> fit;
  std::vector<Witness> witnesses;
  std::vector<Sample> samples;
  std::vector<Lemma9Detail> lemma9;  // populated for L9 reports only
  std::vector<std::string> notes;    // e.g. ZeroOnPath events
  double runtime_ms = 0.0;           // volatile (excluded from determinism)
};

// ---------------------------------------------------------------------------
// Lemma runners
// ---------------------------------------------------------------------------

// Builtin nonnegative decreasing functions for the tail estimate.
enum class Lemma4Function { InvX, LogXOverX4, InvX4 };
Lemma4Function lemma4_function_from_string(const std::string& s);
const char* to_string(Lemma4Function f);

// alpha_est = sum_{n=a}^{N} f(n) - int_a^N f at N = 10^7, then the check
// |sum_{a<=n<=xi} f(n) - int_a^xi f - alpha| <= f(xi - 1) and 0 <= alpha <= f(a).
struct Lemma4Report {
  Lemma4Function f_id = Lemma4Function::InvX;
  long a = 1;
  double xi = 0.0;
  double sum = 0.0;       // sum_{a<=n<=xi} f(n)
  double integral = 0.0;  // int_a^xi f
  double alpha_est = 0.0;
  double residual = 0.0;  // |sum - integral - alpha_est|
  double tail_bound = 0.0;  // f(xi - 1)
  bool ok = false;
};
Lemma4Report lemma4_tail(Lemma4Function f_id, long a, double xi);

// The four sigma = 4 envelope bounds at every t; witnesses record extremal t.
LemmaReport lemma5_scan(const std::vector<double>& t_values,
                        const EvalBudget& budget = {}, int jobs = 1);

// slope fixed at 1/2; offset = max |zeta(sigma+it)| / |t|^{1/2} over the grid.
BoundFit lemma6_ratio_scan(const ScanGrid& grid, const EvalBudget& budget = {},
                           int jobs = 1);

// |log zeta| on the grid, least-squares fit against log|t|, offset raised to
// dominate; pass = no ZeroOnPath event on any continuation path.
LemmaReport lemma8_scan(const ScanGrid& grid, const EvalBudget& budget = {},
                        int jobs = 1);

// Census of the 1-points of zeta(z + 4 + it) on |z| <= 7/2 - 2 delta, the
// integrated count N, and the bound loglog|t| + c4.  A non-finite c4 means
// self-dominating (c4 = N - loglog|t|).  Also scans the same disk for zeta
// zeros (the empirical RH premise).
Lemma9Detail lemma9_count(double t, double delta, const CensusConfig& cfg = {},
                          double c4 = std::numeric_limits<double>::quiet_NaN(),
                          const EvalBudget& budget = {});

// Sweep over t values: fits c4 = max(N - loglog t) and re-checks dominance.
LemmaReport lemma9_sweep(const std::vector<double>& t_values, double delta,
                         const CensusConfig& cfg = {}, const EvalBudget& budget = {},
                         int jobs = 1);

// log+|zeta| over the grid, fitted against loglog|t| and raised to dominate;
// reports (c6, c8) with c8 = exp(offset).
LemmaReport theorem_scan(const ScanGrid& grid, const EvalBudget& budget = {},
                         int jobs = 1);

}  // namespace nevlab
