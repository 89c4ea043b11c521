#include "nevlab/lemma_lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "nevlab/nevanlinna.hpp"
#include "nevlab/zeta.hpp"

namespace nevlab {

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// Deterministic parallel map: results land in index slots, reduction is
// serial in index order, so the report is identical for any job count.
template <typename Fn>
void parallel_for(long n, int jobs, Fn&& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || n < 2) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

// Least squares y ~ slope x + offset.
void least_squares(const std::vector<double>& x, const std::vector<double>& y,
                   double& slope, double& offset) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-30) {  // degenerate grid: a single t column
    slope = 0.0;
    offset = sy / n;
    return;
  }
  slope = (n * sxy - sx * sy) / det;
  offset = (sy * sxx - sx * sxy) / det;
}

// Raise offset until no sample exceeds slope*x + offset (ties toward the
// first binding index, i.e. smaller t in scan order).
void raise_to_dominate(const std::vector<double>& x, const std::vector<double>& y,
                       double slope, double& offset, double& max_residual,
                       long& argmax) {
  for (int pass = 0; pass < 4; ++pass) {
    double worst = -std::numeric_limits<double>::infinity();
    long worst_i = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      const double res = y[i] - (slope * x[i] + offset);
      if (res > worst) {
        worst = res;
        worst_i = static_cast<long>(i);
      }
    }
    argmax = worst_i;
    max_residual = worst;
    if (worst <= 0.0) return;
    offset += worst;
  }
}

}  // namespace

void ScanGrid::validate() const {
  require_finite(delta, "ScanGrid");
  if (!(delta > 0.0 && delta <= 0.01)) {
    raise(ErrorCode::DomainError, "ScanGrid: delta must satisfy 0 < delta <= 1/100");
  }
  if (t_values.empty() || sigma_values.empty()) {
    raise(ErrorCode::DomainError, "ScanGrid: grids must be nonempty");
  }
  if (!std::is_sorted(t_values.begin(), t_values.end()) ||
      !std::is_sorted(sigma_values.begin(), sigma_values.end())) {
    raise(ErrorCode::DomainError, "ScanGrid: grids must be sorted ascending");
  }
  for (double t : t_values) require_finite(t, "ScanGrid");
  for (double s : sigma_values) require_finite(s, "ScanGrid");
}

std::vector<double> linear_grid(double t_min, double t_max, double step) {
  require_finite(t_min, "linear_grid");
  require_finite(t_max, "linear_grid");
  if (!(step > 0.0) || t_max < t_min) {
    raise(ErrorCode::DomainError, "linear_grid: needs step > 0 and t_max >= t_min");
  }
  std::vector<double> out;
  const long n = static_cast<long>(std::floor((t_max - t_min) / step + 0.5));
  out.reserve(n + 1);
  for (long k = 0; k <= n; ++k) out.push_back(t_min + k * step);
  if (out.back() > t_max + 0.5 * step) out.pop_back();
  return out;
}

std::vector<double> log_grid(double t_min, double t_max, int points_per_decade) {
  require_finite(t_min, "log_grid");
  require_finite(t_max, "log_grid");
  if (!(t_min > 0.0) || t_max < t_min || points_per_decade < 1) {
    raise(ErrorCode::DomainError, "log_grid: needs 0 < t_min <= t_max, ppd >= 1");
  }
  std::vector<double> out;
  const double ratio = std::pow(10.0, 1.0 / points_per_decade);
  double t = t_min;
  for (long k = 0; t <= t_max * (1.0 + 1e-12); ++k) {
    out.push_back(t);
    t = t_min * std::pow(ratio, static_cast<double>(k + 1));
  }
  if (out.back() < t_max * (1.0 - 1e-12)) out.push_back(t_max);
  return out;
}

const char* to_string(LemmaId id) {
  switch (id) {
    case LemmaId::L4: return "L4";
    case LemmaId::L5: return "L5";
    case LemmaId::L6: return "L6";
    case LemmaId::L8: return "L8";
    case LemmaId::L9: return "L9";
    case LemmaId::THM: return "THM";
  }
  return "?";
}

LemmaId lemma_id_from_string(const std::string& s) {
  if (s == "L4") return LemmaId::L4;
  if (s == "L5") return LemmaId::L5;
  if (s == "L6") return LemmaId::L6;
  if (s == "L8") return LemmaId::L8;
  if (s == "L9") return LemmaId::L9;
  if (s == "THM") return LemmaId::THM;
  raise(ErrorCode::DomainError, "unknown lemma id '" + s + "'");
}

const char* to_string(Lemma4Function f) {
  switch (f) {
    case Lemma4Function::InvX: return "inv_x";
    case Lemma4Function::LogXOverX4: return "logx_over_x4";
    case Lemma4Function::InvX4: return "inv_x4";
  }
  return "?";
}

Lemma4Function lemma4_function_from_string(const std::string& s) {
  if (s == "inv_x") return Lemma4Function::InvX;
  if (s == "logx_over_x4") return Lemma4Function::LogXOverX4;
  if (s == "inv_x4") return Lemma4Function::InvX4;
  raise(ErrorCode::DomainError, "unknown lemma4 function '" + s + "'");
}

// ---------------------------------------------------------------------------
// Lemma 4
// ---------------------------------------------------------------------------

namespace {

double l4_value(Lemma4Function f, double x) {
  switch (f) {
    case Lemma4Function::InvX: return 1.0 / x;
    case Lemma4Function::LogXOverX4: return std::log(x) / (x * x * x * x);
    case Lemma4Function::InvX4: return 1.0 / (x * x * x * x);
  }
  return 0.0;
}

// int_a^b f in closed form
double l4_integral(Lemma4Function f, double a, double b) {
  switch (f) {
    case Lemma4Function::InvX:
      return std::log(b) - std::log(a);
    case Lemma4Function::LogXOverX4: {
      auto F = [](double x) {
        const double x3 = x * x * x;
        return -std::log(x) / (3.0 * x3) - 1.0 / (9.0 * x3);
      };
      return F(b) - F(a);
    }
    case Lemma4Function::InvX4: {
      auto F = [](double x) { return -1.0 / (3.0 * x * x * x); };
      return F(b) - F(a);
    }
  }
  return 0.0;
}

}  // namespace

Lemma4Report lemma4_tail(Lemma4Function f_id, long a, double xi) {
  require_finite(xi, "lemma4_tail");
  if (a < 1) raise(ErrorCode::DomainError, "lemma4_tail: a must be >= 1");
  if (f_id == Lemma4Function::LogXOverX4 && a < 2) {
    raise(ErrorCode::DomainError,
          "lemma4_tail: log x / x^4 decreases only from x >= e; needs a >= 2");
  }
  if (!(xi >= a + 1)) {
    raise(ErrorCode::DomainError, "lemma4_tail: needs xi >= a + 1");
  }
  Lemma4Report rep;
  rep.f_id = f_id;
  rep.a = a;
  rep.xi = xi;

  // alpha at N = 10^7 (monotone convergence; no digit count asserted)
  constexpr long kBigN = 10000000;
  double alpha = 0.0;  // sum - integral accumulated incrementally
  {
    long double sum = 0.0L;
    for (long n = a; n <= kBigN; ++n) sum += l4_value(f_id, static_cast<double>(n));
    alpha = static_cast<double>(sum) -
            l4_integral(f_id, static_cast<double>(a), static_cast<double>(kBigN));
  }
  rep.alpha_est = alpha;

  const long n_hi = static_cast<long>(std::floor(xi));
  long double sum_xi = 0.0L;
  for (long n = a; n <= n_hi; ++n) sum_xi += l4_value(f_id, static_cast<double>(n));
  rep.sum = static_cast<double>(sum_xi);
  rep.integral = l4_integral(f_id, static_cast<double>(a), xi);
  rep.residual = std::abs(rep.sum - rep.integral - rep.alpha_est);
  rep.tail_bound = l4_value(f_id, xi - 1.0);
  const double fa = l4_value(f_id, static_cast<double>(a));
  rep.ok = (alpha >= -1e-12) && (alpha <= fa + 1e-12) && (rep.residual <= rep.tail_bound);
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma 5
// ---------------------------------------------------------------------------

LemmaReport lemma5_scan(const std::vector<double>& t_values, const EvalBudget& budget,
                        int jobs) {
  if (t_values.empty()) {
    raise(ErrorCode::DomainError, "lemma5_scan: needs at least one t");
  }
  const double t0 = now_ms();
  LemmaReport rep;
  rep.lemma_id = LemmaId::L5;
  rep.params.t_values = t_values;
  rep.params.sigma_values = {4.0};
  rep.params.delta = 0.01;

  struct Row {
    double abs_z = 0.0, abs_zm1 = 0.0, abs_log = 0.0, abs_zp = 0.0;
    bool error = false;
    std::string note;
  };
  std::vector<Row> rows(t_values.size());
  parallel_for(static_cast<long>(t_values.size()), jobs, [&](long i) {
    const Complex s(4.0, t_values[i]);
    try {
      const Complex z = zeta(s, budget);
      rows[i].abs_z = std::abs(z);
      rows[i].abs_zm1 = std::abs(z - 1.0);
      rows[i].abs_log = std::abs(log_zeta_series(s));
      rows[i].abs_zp = std::abs(zeta_derivative(s, budget));
    } catch (const Error& e) {
      rows[i].error = true;
      rows[i].note = e.what();
    }
  });

  // the four envelope bounds
  constexpr double kLogLo = 0.0426, kLogHi = 0.0824;
  constexpr double kZm1Lo = 0.0426;
  constexpr double kZLo = 0.917, kZHi = 1.0824;
  constexpr double kZpLo = 0.012;

  bool all_ok = true;
  long i_min_z = 0, i_max_z = 0, i_min_zm1 = 0, i_min_log = 0, i_max_log = 0,
       i_min_zp = 0;
  rep.samples.reserve(4 * rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    const double t = t_values[i];
    if (r.error) {
      all_ok = false;
      rep.notes.push_back("evaluation error at t = " + std::to_string(t) + ": " + r.note);
      continue;
    }
    // CSV rows, quantity order: |zeta|-low, |zeta|-high, |zeta-1|, |log zeta|-low,
    // |log zeta|-high, |zeta'| -- margins signed so negative means violation
    rep.samples.push_back({4.0, t, r.abs_z, kZLo, r.abs_z - kZLo});
    rep.samples.push_back({4.0, t, r.abs_z, kZHi, kZHi - r.abs_z});
    rep.samples.push_back({4.0, t, r.abs_zm1, kZm1Lo, r.abs_zm1 - kZm1Lo});
    rep.samples.push_back({4.0, t, r.abs_log, kLogLo, r.abs_log - kLogLo});
    rep.samples.push_back({4.0, t, r.abs_log, kLogHi, kLogHi - r.abs_log});
    rep.samples.push_back({4.0, t, r.abs_zp, kZpLo, r.abs_zp - kZpLo});
    const bool ok = r.abs_z >= kZLo && r.abs_z <= kZHi && r.abs_zm1 >= kZm1Lo &&
                    r.abs_log >= kLogLo && r.abs_log <= kLogHi && r.abs_zp >= kZpLo;
    all_ok = all_ok && ok;
    if (r.abs_z < rows[i_min_z].abs_z) i_min_z = static_cast<long>(i);
    if (r.abs_z > rows[i_max_z].abs_z) i_max_z = static_cast<long>(i);
    if (r.abs_zm1 < rows[i_min_zm1].abs_zm1) i_min_zm1 = static_cast<long>(i);
    if (r.abs_log < rows[i_min_log].abs_log) i_min_log = static_cast<long>(i);
    if (r.abs_log > rows[i_max_log].abs_log) i_max_log = static_cast<long>(i);
    if (r.abs_zp < rows[i_min_zp].abs_zp) i_min_zp = static_cast<long>(i);
  }
  rep.pass = all_ok;
  auto witness = [&](long i, double v, const char* label) {
    rep.witnesses.push_back({Complex(4.0, t_values[i]), v, label});
  };
  if (!rows.empty() && !rows[i_min_z].error) {
    witness(i_min_z, rows[i_min_z].abs_z, "min |zeta(4+it)|");
    witness(i_max_z, rows[i_max_z].abs_z, "max |zeta(4+it)|");
    witness(i_min_zm1, rows[i_min_zm1].abs_zm1, "min |zeta(4+it) - 1|");
    witness(i_min_log, rows[i_min_log].abs_log, "min |log zeta(4+it)|");
    witness(i_max_log, rows[i_max_log].abs_log, "max |log zeta(4+it)|");
    witness(i_min_zp, rows[i_min_zp].abs_zp, "min |zeta'(4+it)|");
  }
  rep.runtime_ms = now_ms() - t0;
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma 6
// ---------------------------------------------------------------------------

BoundFit lemma6_ratio_scan(const ScanGrid& grid, const EvalBudget& budget, int jobs) {
  grid.validate();
  for (double s : grid.sigma_values) {
    if (s < 0.5) raise(ErrorCode::DomainError, "lemma6_ratio_scan: needs sigma >= 1/2");
  }
  for (double t : grid.t_values) {
    if (std::abs(t) < 2.0) raise(ErrorCode::DomainError, "lemma6_ratio_scan: needs |t| >= 2");
  }
  const long nt = static_cast<long>(grid.t_values.size());
  const long ns = static_cast<long>(grid.sigma_values.size());
  std::vector<double> ratio(nt * ns);
  parallel_for(nt * ns, jobs, [&](long k) {
    const double sigma = grid.sigma_values[k / nt];
    const double t = grid.t_values[k % nt];
    ratio[k] = std::abs(zeta(Complex(sigma, t), budget)) / std::sqrt(std::abs(t));
  });
  BoundFit fit;
  fit.slope = 0.5;  // exponent fixed by the bound's form
  fit.n_samples = nt * ns;
  long best = 0;
  for (long k = 1; k < nt * ns; ++k) {
    if (ratio[k] > ratio[best]) best = k;
  }
  fit.offset = ratio[best];  // empirical c1
  fit.max_residual = 0.0;
  fit.argmax_witness = Complex(grid.sigma_values[best / nt], grid.t_values[best % nt]);
  return fit;
}

// ---------------------------------------------------------------------------
// Lemma 8
// ---------------------------------------------------------------------------

LemmaReport lemma8_scan(const ScanGrid& grid, const EvalBudget& budget, int jobs) {
  grid.validate();
  const double sigma_min = 0.5 + 2.0 * grid.delta;
  for (double s : grid.sigma_values) {
    if (s < sigma_min - 1e-15) {
      raise(ErrorCode::DomainError, "lemma8_scan: needs sigma >= 1/2 + 2 delta");
    }
  }
  for (double t : grid.t_values) {
    if (std::abs(t) < 16.0) raise(ErrorCode::DomainError, "lemma8_scan: needs |t| >= 16");
  }
  const double t0 = now_ms();
  LemmaReport rep;
  rep.lemma_id = LemmaId::L8;
  rep.params = grid;

  const long nt = static_cast<long>(grid.t_values.size());
  const long ns = static_cast<long>(grid.sigma_values.size());
  const RegionD region{grid.delta};
  struct Cell {
    double value = 0.0;
    bool zero_on_path = false;
    bool error = false;
    std::string note;
  };
  std::vector<Cell> cells(nt * ns);
  // scan order: sigma outer, t inner ascending (ties in the argmax go to
  // smaller t)
  parallel_for(nt * ns, jobs, [&](long k) {
    const double sigma = grid.sigma_values[k / nt];
    const double t = grid.t_values[k % nt];
    try {
      cells[k].value = std::abs(log_zeta_tracked(Complex(sigma, t), region, budget));
    } catch (const Error& e) {
      cells[k].error = true;
      cells[k].zero_on_path = e.code() == ErrorCode::ZeroOnPath;
      cells[k].note = e.what();
    }
  });

  std::vector<double> xs, ys;
  xs.reserve(nt * ns);
  ys.reserve(nt * ns);
  std::vector<long> ks;
  bool any_zero_on_path = false;
  for (long k = 0; k < nt * ns; ++k) {
    if (cells[k].error) {
      any_zero_on_path = any_zero_on_path || cells[k].zero_on_path;
      rep.notes.push_back(cells[k].note);
      continue;
    }
    xs.push_back(std::log(std::abs(grid.t_values[k % nt])));
    ys.push_back(cells[k].value);
    ks.push_back(k);
  }
  if (xs.empty()) {
    rep.pass = false;
    rep.runtime_ms = now_ms() - t0;
    return rep;
  }
  BoundFit fit;
  least_squares(xs, ys, fit.slope, fit.offset);
  long argmax = 0;
  raise_to_dominate(xs, ys, fit.slope, fit.offset, fit.max_residual, argmax);
  fit.n_samples = static_cast<long>(xs.size());
  const long kb = ks[argmax];
  fit.argmax_witness = Complex(grid.sigma_values[kb / nt], grid.t_values[kb % nt]);
  rep.fit = fit;
  rep.pass = !any_zero_on_path && rep.notes.empty();
  rep.witnesses.push_back({fit.argmax_witness, ys[argmax], "binding |log zeta| sample"});
  rep.samples.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    const long k = ks[i];
    const double bound = fit.slope * xs[i] + fit.offset;
    rep.samples.push_back({grid.sigma_values[k / nt], grid.t_values[k % nt], ys[i],
                           bound, bound - ys[i]});
  }
  rep.runtime_ms = now_ms() - t0;
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma 9
// ---------------------------------------------------------------------------

Lemma9Detail lemma9_count(double t, double delta, const CensusConfig& cfg, double c4,
                          const EvalBudget& budget) {
  require_finite(t, "lemma9_count");
  require_finite(delta, "lemma9_count");
  if (std::abs(t) < 16.0) raise(ErrorCode::DomainError, "lemma9_count: needs |t| >= 16");
  if (!(delta > 0.0 && delta <= 0.01)) {
    raise(ErrorCode::DomainError, "lemma9_count: needs 0 < delta <= 1/100");
  }
  const double rho = 3.5 - 2.0 * delta;
  const Complex base(4.0, t);

  FunctionHandle shifted;
  shifted.label = "zeta-shift";
  shifted.analytic_in = Disk{Complex(0, 0), 3.5};
  shifted.eval = [base, budget](Complex z) { return zeta(z + base, budget); };

  CensusConfig ones_cfg = cfg;
  ones_cfg.target = Complex(1.0, 0.0);
  const Disk disk{Complex(0.0, 0.0), rho};
  const CensusResult ones = census_ex(shifted, disk, ones_cfg);

  CensusConfig zeros_cfg = cfg;
  zeros_cfg.target = Complex(0.0, 0.0);
  const int zeta_zeros = winding_count(shifted, disk, zeros_cfg);

  Lemma9Detail out;
  out.t = t;
  out.rho = rho;
  out.divisors = ones.divisors;
  out.h = counting_n(ones.divisors, rho, DivisorKind::Zero);
  out.N_value = integrated_N(ones.divisors, rho, DivisorKind::Zero);
  double jsum = 0.0;
  for (const auto& e : ones.divisors.entries) {
    jsum += e.multiplicity * std::log(rho / std::abs(e.location));
  }
  out.jensen_sum = jsum;
  out.zeta_zero_count = zeta_zeros;
  out.nudge_count = static_cast<long>(ones.nudges.size());
  const double loglog = std::log(std::log(std::abs(t)));
  if (std::isnan(c4)) c4 = out.N_value - loglog;  // self-dominating constant
  out.bound = loglog + c4;
  out.ok = out.N_value <= out.bound + 1e-12 && zeta_zeros == 0;
  return out;
}

LemmaReport lemma9_sweep(const std::vector<double>& t_values, double delta,
                         const CensusConfig& cfg, const EvalBudget& budget, int jobs) {
  if (t_values.empty()) raise(ErrorCode::DomainError, "lemma9_sweep: needs t values");
  const double t0 = now_ms();
  LemmaReport rep;
  rep.lemma_id = LemmaId::L9;
  rep.params.t_values = t_values;
  rep.params.sigma_values = {4.0};
  rep.params.delta = delta;

  std::vector<Lemma9Detail> details(t_values.size());
  std::vector<std::string> errors(t_values.size());
  // one census per t; censuses themselves fan out sub-disk windings
  CensusConfig inner = cfg;
  inner.jobs = jobs;
  parallel_for(static_cast<long>(t_values.size()), 1, [&](long i) {
    try {
      details[i] = lemma9_count(t_values[i], delta, inner,
                                std::numeric_limits<double>::quiet_NaN(), budget);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });

  bool all_ok = true;
  for (size_t i = 0; i < t_values.size(); ++i) {
    if (!errors[i].empty()) {
      all_ok = false;
      rep.notes.push_back("t = " + std::to_string(t_values[i]) + ": " + errors[i]);
    }
  }
  // fitted c4 = max(N - loglog t) over the sweep
  double c4 = -std::numeric_limits<double>::infinity();
  long binding = 0;
  for (size_t i = 0; i < details.size(); ++i) {
    if (!errors[i].empty()) continue;
    const double excess =
        details[i].N_value - std::log(std::log(std::abs(details[i].t)));
    if (excess > c4) {
      c4 = excess;
      binding = static_cast<long>(i);
    }
  }
  for (size_t i = 0; i < details.size(); ++i) {
    if (!errors[i].empty()) continue;
    const double loglog = std::log(std::log(std::abs(details[i].t)));
    details[i].bound = loglog + c4;
    details[i].ok = details[i].N_value <= details[i].bound + 1e-12 &&
                    details[i].zeta_zero_count == 0;
    all_ok = all_ok && details[i].ok;
    rep.samples.push_back({4.0, details[i].t, details[i].N_value, details[i].bound,
                           details[i].bound - details[i].N_value});
  }
  BoundFit fit;
  fit.slope = 1.0;  // coefficient of loglog|t|
  fit.offset = c4;
  fit.max_residual = 0.0;
  fit.n_samples = static_cast<long>(details.size());
  fit.argmax_witness = Complex(4.0, t_values[binding]);
  rep.fit = fit;
  rep.lemma9 = std::move(details);
  rep.pass = all_ok;
  rep.witnesses.push_back({fit.argmax_witness,
                           rep.lemma9.empty() ? 0.0 : rep.lemma9[binding].N_value,
                           "binding N(rho, 1/(zeta-1)) sample"});
  rep.runtime_ms = now_ms() - t0;
  return rep;
}

// ---------------------------------------------------------------------------
// Theorem
// ---------------------------------------------------------------------------

LemmaReport theorem_scan(const ScanGrid& grid, const EvalBudget& budget, int jobs) {
  grid.validate();
  const double sigma_min = 0.5 + 4.0 * grid.delta;
  for (double s : grid.sigma_values) {
    if (s < sigma_min - 1e-15) {
      raise(ErrorCode::DomainError, "theorem_scan: needs sigma >= 1/2 + 4 delta");
    }
  }
  for (double t : grid.t_values) {
    if (std::abs(t) < 16.0) raise(ErrorCode::DomainError, "theorem_scan: needs |t| >= 16");
  }
  const double t0 = now_ms();
  LemmaReport rep;
  rep.lemma_id = LemmaId::THM;
  rep.params = grid;

  const long nt = static_cast<long>(grid.t_values.size());
  const long ns = static_cast<long>(grid.sigma_values.size());
  std::vector<double> vals(nt * ns);
  std::vector<char> bad(nt * ns, 0);
  parallel_for(nt * ns, jobs, [&](long k) {
    const double sigma = grid.sigma_values[k / nt];
    const double t = grid.t_values[k % nt];
    try {
      vals[k] = log_plus(std::abs(zeta(Complex(sigma, t), budget)));
    } catch (const Error&) {
      bad[k] = 1;
    }
  });

  std::vector<double> xs, ys;
  std::vector<long> ks;
  for (long k = 0; k < nt * ns; ++k) {
    if (bad[k]) {
      rep.notes.push_back("evaluation error in theorem grid");
      continue;
    }
    xs.push_back(std::log(std::log(std::abs(grid.t_values[k % nt]))));
    ys.push_back(vals[k]);
    ks.push_back(k);
  }
  if (xs.empty()) {
    rep.pass = false;
    rep.runtime_ms = now_ms() - t0;
    return rep;
  }
  BoundFit fit;
  least_squares(xs, ys, fit.slope, fit.offset);
  long argmax = 0;
  raise_to_dominate(xs, ys, fit.slope, fit.offset, fit.max_residual, argmax);
  fit.n_samples = static_cast<long>(xs.size());
  const long kb = ks[argmax];
  fit.argmax_witness = Complex(grid.sigma_values[kb / nt], grid.t_values[kb % nt]);
  rep.fit = fit;
  // pass = a finite dominating fit exists
  rep.pass = std::isfinite(fit.slope) && std::isfinite(fit.offset) && rep.notes.empty();
  rep.witnesses.push_back({fit.argmax_witness, ys[argmax], "binding log+|zeta| sample"});
  rep.witnesses.push_back(
      {Complex(fit.slope, std::exp(fit.offset)), fit.offset, "fit (c6, c8) as (re, im)"});
  rep.samples.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    const long k = ks[i];
    const double bound = fit.slope * xs[i] + fit.offset;
    rep.samples.push_back({grid.sigma_values[k / nt], grid.t_values[k % nt], ys[i],
                           bound, bound - ys[i]});
  }
  rep.runtime_ms = now_ms() - t0;
  return rep;
}

}  // namespace nevlab
