#include "nevlab/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <vector>

namespace nevlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = 2.220446049250313e-16;

// B_{2k} as exact rationals, k = 1..15.
struct Rational {
  double num, den;
};
constexpr Rational kBernoulli[] = {
    {1.0, 6.0},           {-1.0, 30.0},          {1.0, 42.0},
    {-1.0, 30.0},         {5.0, 66.0},           {-691.0, 2730.0},
    {7.0, 6.0},           {-3617.0, 510.0},      {43867.0, 798.0},
    {-174611.0, 330.0},   {854513.0, 138.0},     {-236364091.0, 2730.0},
    {8553103.0, 6.0},     {-23749461029.0, 870.0}, {8615841276005.0, 14322.0},
};

// B_{2k}/(2k)! for k = 1..15, computed once in long double.
const double* bernoulli_over_factorial() {
  static double table[15];
  static std::once_flag flag;
  std::call_once(flag, [] {
    long double fact = 1.0L;  // (2k)!
    for (int k = 1; k <= 15; ++k) {
      fact *= (2 * k - 1) * (2 * k);
      const long double b =
          static_cast<long double>(kBernoulli[k - 1].num) / kBernoulli[k - 1].den;
      table[k - 1] = static_cast<double>(b / fact);
    }
  });
  return table;
}

// n^{-s} with a shared log table for small n.
class LogTable {
 public:
  static constexpr std::int64_t kSize = 1 << 16;

  double operator()(std::int64_t n) const {
    if (n < kSize) return table_[n];
    return std::log(static_cast<double>(n));
  }

  static const LogTable& instance() {
    static LogTable t;
    return t;
  }

 private:
  LogTable() : table_(kSize) {
    for (std::int64_t n = 1; n < kSize; ++n) {
      table_[n] = std::log(static_cast<double>(n));
    }
  }
  std::vector<double> table_;
};

inline Complex pow_int_neg(std::int64_t n, Complex s, const LogTable& logs) {
  const double ln = logs(n);
  const double mag = std::exp(-s.real() * ln);
  const double phase = -s.imag() * ln;
  return Complex(mag * std::cos(phase), mag * std::sin(phase));
}

// Compensated complex accumulation (Kahan).
struct KahanComplex {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};
  void add(Complex x) {
    const Complex y = x - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

struct EmResult {
  Complex value;
  double analytic_bound;
  double rounding_bound;
};

// Euler-Maclaurin evaluation with N-1 direct terms and q correction terms:
//   zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//           + sum_{k=1}^{q} B_{2k}/(2k)! (s)_{2k-1} N^{1-s-2k} + R_q
// with the classical remainder bound
//   |R_q| <= |B_{2q+2}/(2q+2)! (s)_{2q+1} N^{1-s-2q-2}| |s+2q+1|/(sigma+2q+1).
EmResult euler_maclaurin(Complex s, std::int64_t N, int q) {
  const LogTable& logs = LogTable::instance();
  KahanComplex acc;
  double abs_sum = 0.0;
  for (std::int64_t n = 1; n < N; ++n) {
    const Complex term = pow_int_neg(n, s, logs);
    acc.add(term);
    abs_sum += std::abs(term);
  }
  const double lnN = logs(N);
  const Complex Ns = std::exp(Complex(-s.real() * lnN, -s.imag() * lnN));  // N^{-s}
  Complex value = acc.sum + Ns * (static_cast<double>(N) / (s - 1.0)) + 0.5 * Ns;

  const double* C = bernoulli_over_factorial();
  Complex poch = s;                       // (s)_{2k-1} for k = 1
  Complex npow = Ns / static_cast<double>(N);  // N^{1-s-2k} for k = 1... seeded below
  // N^{1-s-2} = N^{-s-1}
  for (int k = 1; k <= q; ++k) {
    value += C[k - 1] * poch * npow;
    // advance to k+1: multiply pochhammer by (s+2k-1)(s+2k), power by N^{-2}
    poch *= (s + Complex(2.0 * k - 1.0, 0.0)) * (s + Complex(2.0 * k, 0.0));
    npow /= static_cast<double>(N) * static_cast<double>(N);
  }
  // First omitted term (k = q+1) scaled by |s+2q+1|/(sigma+2q+1).
  const double factor =
      std::abs(s + Complex(2.0 * q + 1.0, 0.0)) / (s.real() + 2.0 * q + 1.0);
  const double analytic = std::abs(C[q] * poch * npow) * factor;
  const double rounding = 2.0 * kEps * (abs_sum + std::abs(value) + 1.0);
  return {value, analytic, rounding};
}

void check_zeta_domain(Complex s, const char* who) {
  require_finite(s, who);
  if (std::abs(s - Complex(1.0, 0.0)) < 1e-9) {
    raise(ErrorCode::PoleAtOne, std::string(who) + ": s within 1e-9 of the pole at 1");
  }
  if (s.real() < 0.4) {
    raise(ErrorCode::DomainError,
          std::string(who) + ": sigma < 0.4 is outside the working strip");
  }
}

// ---------------------------------------------------------------------------
// Prime-power table for the log zeta Dirichlet series.
// Entries (n = p^k, 1/k): Lambda(n)/log n = 1/k.
// ---------------------------------------------------------------------------

struct PrimePowerEntry {
  std::uint32_t n;
  float inv_k;
};

class PrimePowerTable {
 public:
  // Returns entries with n <= limit; grows (and re-sieves) on demand.
  std::vector<PrimePowerEntry> snapshot(std::uint32_t limit) {
    std::lock_guard<std::mutex> lock(mu_);
    if (limit > limit_) grow(std::max<std::uint64_t>(limit, 2 * limit_));
    std::vector<PrimePowerEntry> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) {
      if (e.n > limit) break;
      out.push_back(e);
    }
    return out;
  }

  static PrimePowerTable& instance() {
    static PrimePowerTable t;
    return t;
  }

 private:
  PrimePowerTable() { grow(1 << 14); }

  void grow(std::uint64_t new_limit) {
    new_limit = std::min<std::uint64_t>(new_limit, 1u << 31);
    std::vector<bool> composite(new_limit + 1, false);
    entries_.clear();
    for (std::uint64_t p = 2; p <= new_limit; ++p) {
      if (composite[p]) continue;
      for (std::uint64_t m = p * p; m <= new_limit; m += p) composite[m] = true;
      std::uint64_t pk = p;
      int k = 1;
      while (pk <= new_limit) {
        entries_.push_back({static_cast<std::uint32_t>(pk), 1.0f / k});
        ++k;
        if (pk > new_limit / p) break;
        pk *= p;
      }
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const PrimePowerEntry& a, const PrimePowerEntry& b) { return a.n < b.n; });
    limit_ = static_cast<std::uint32_t>(new_limit);
  }

  std::mutex mu_;
  std::uint32_t limit_ = 0;
  std::vector<PrimePowerEntry> entries_;
};

}  // namespace

double mangoldt(std::uint64_t n) {
  if (n == 0) raise(ErrorCode::DomainError, "mangoldt: n must be >= 1");
  if (n == 1) return 0.0;
  // find the smallest prime factor
  std::uint64_t p = 0;
  if (n % 2 == 0) {
    p = 2;
  } else {
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
      if (n % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) p = n;  // n itself is prime
  }
  std::uint64_t m = n;
  while (m % p == 0) m /= p;
  return m == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

bool region_d_contains(Complex s, const RegionD& region) {
  region.validate();
  require_finite(s, "region_d_contains");
  const double sigma = s.real(), t = s.imag();
  return (sigma > 0.5 && std::abs(t) > 1.0) || (sigma > 2.0 && std::abs(t) <= 1.0);
}

Complex zeta(Complex s, const EvalBudget& budget) {
  budget.validate();
  check_zeta_domain(s, "zeta");
  std::int64_t N = std::max<std::int64_t>(32, static_cast<std::int64_t>(
                                                  std::ceil(2.0 * std::abs(s.imag()))));
  for (;;) {
    const EmResult r = euler_maclaurin(s, N, budget.bernoulli_order);
    if (r.analytic_bound + r.rounding_bound <= budget.target_abs_err) return r.value;
    if (r.analytic_bound <= 0.25 * r.rounding_bound) {
      std::ostringstream os;
      os << "zeta: double-precision rounding floor " << r.rounding_bound
         << " exceeds target " << budget.target_abs_err << " at s = (" << s.real()
         << ", " << s.imag() << ")";
      raise(ErrorCode::BudgetExceeded, os.str());
    }
    if (2 * N > budget.max_terms) {
      raise(ErrorCode::BudgetExceeded, "zeta: max_terms reached before the error target");
    }
    N *= 2;
  }
}

namespace detail {

Complex zeta_derivative_series(Complex s, const EvalBudget& budget) {
  budget.validate();
  check_zeta_domain(s, "zeta_derivative");
  const double sigma = s.real();
  if (sigma <= 1.0) {
    raise(ErrorCode::BudgetExceeded, "zeta_derivative_series: series needs sigma > 1");
  }
  // tail bound: int_N^inf x^{-sigma} log x dx = N^{1-sigma}(log N/(sigma-1) + 1/(sigma-1)^2)
  const double sm1 = sigma - 1.0;
  std::int64_t N = 64;
  for (;;) {
    const double lnN = std::log(static_cast<double>(N));
    const double tail = std::exp(-sm1 * lnN) * (lnN / sm1 + 1.0 / (sm1 * sm1));
    if (tail <= budget.target_abs_err) break;
    if (2 * N > budget.max_terms) {
      raise(ErrorCode::BudgetExceeded,
            "zeta_derivative_series: tail bound unreachable within max_terms");
    }
    N *= 2;
  }
  const LogTable& logs = LogTable::instance();
  KahanComplex acc;
  for (std::int64_t n = 2; n <= N; ++n) {
    acc.add(-logs(n) * pow_int_neg(n, s, logs));
  }
  return acc.sum;
}

Complex zeta_derivative_cauchy(Complex s, const EvalBudget& budget) {
  budget.validate();
  check_zeta_domain(s, "zeta_derivative");
  constexpr double rho = 0.25;
  if (s.real() - rho < 0.4) {
    raise(ErrorCode::DomainError,
          "zeta_derivative: Cauchy circle of radius 0.25 leaves the working strip "
          "(needs sigma >= 0.65)");
  }
  if (std::abs(s - Complex(1.0, 0.0)) <= rho + 0.01) {
    raise(ErrorCode::DomainError,
          "zeta_derivative: Cauchy circle of radius 0.25 must avoid the pole at 1");
  }
  EvalBudget inner = budget;
  inner.target_abs_err = std::max(budget.target_abs_err / 8.0, 1e-14);

  auto ring_sum = [&](int M, int stride, const std::vector<Complex>& cache) -> Complex {
    // trapezoid over M points, reusing cached values where stride matches
    Complex sum{0.0, 0.0};
    for (int j = 0; j < M; ++j) {
      const double theta = 2.0 * kPi * j / M;
      Complex fj;
      if (!cache.empty() && j % stride == 0) {
        fj = cache[j / stride];
      } else {
        fj = zeta(s + rho * Complex(std::cos(theta), std::sin(theta)), inner);
      }
      sum += fj * Complex(std::cos(theta), -std::sin(theta));
    }
    return sum / (static_cast<double>(M) * rho);
  };

  int M = 64;
  std::vector<Complex> vals(M);
  for (int j = 0; j < M; ++j) {
    const double theta = 2.0 * kPi * j / M;
    vals[j] = zeta(s + rho * Complex(std::cos(theta), std::sin(theta)), inner);
  }
  Complex prev{0.0, 0.0};
  for (int j = 0; j < M; ++j) {
    const double theta = 2.0 * kPi * j / M;
    prev += vals[j] * Complex(std::cos(theta), -std::sin(theta));
  }
  prev /= static_cast<double>(M) * rho;

  while (M < 2048) {
    const int M2 = 2 * M;
    std::vector<Complex> vals2(M2);
    for (int j = 0; j < M2; ++j) {
      if (j % 2 == 0) {
        vals2[j] = vals[j / 2];
      } else {
        const double theta = 2.0 * kPi * j / M2;
        vals2[j] = zeta(s + rho * Complex(std::cos(theta), std::sin(theta)), inner);
      }
    }
    Complex cur{0.0, 0.0};
    for (int j = 0; j < M2; ++j) {
      const double theta = 2.0 * kPi * j / M2;
      cur += vals2[j] * Complex(std::cos(theta), -std::sin(theta));
    }
    cur /= static_cast<double>(M2) * rho;
    if (std::abs(cur - prev) <= std::max(budget.target_abs_err, 4e-14)) return cur;
    prev = cur;
    vals.swap(vals2);
    M = M2;
  }
  return prev;
}

}  // namespace detail

Complex zeta_derivative(Complex s, const EvalBudget& budget) {
  budget.validate();
  check_zeta_domain(s, "zeta_derivative");
  // The series route applies whenever its tail bound can reach the target
  // within the term budget; otherwise the Cauchy circle takes over (always
  // admissible for sigma >= 2.5 since the circle stays off the pole).
  if (s.real() >= 2.5) {
    try {
      return detail::zeta_derivative_series(s, budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
    }
  }
  return detail::zeta_derivative_cauchy(s, budget);
}

Complex log_zeta_series(Complex s) {
  require_finite(s, "log_zeta_series");
  const double sigma = s.real();
  if (sigma < 1.05) {
    raise(ErrorCode::DomainError, "log_zeta_series: requires sigma >= 1.05");
  }
  if (sigma >= 3.0) {
    // Partial sum over prime powers with the proven tail bound
    // sum_{n>N} n^{-sigma} <= N^{1-sigma}/(sigma-1)  (Lambda(n)/log n <= 1).
    const double sm1 = sigma - 1.0;
    std::uint64_t N = 32;
    while (std::pow(static_cast<double>(N), -sm1) / sm1 > 1e-12) {
      N *= 2;
      if (N > (1u << 30)) {
        raise(ErrorCode::BudgetExceeded, "log_zeta_series: tail bound unreachable");
      }
    }
    const auto entries = PrimePowerTable::instance().snapshot(static_cast<std::uint32_t>(N));
    const LogTable& logs = LogTable::instance();
    KahanComplex acc;
    for (const auto& e : entries) {
      acc.add(static_cast<double>(e.inv_k) * pow_int_neg(e.n, s, logs));
    }
    return acc.sum;
  }
  // 1.05 <= sigma < 3: the series branch equals the principal log because
  // |series| <= log zeta(1.05) < pi there; evaluate through zeta.
  EvalBudget tight;
  tight.target_abs_err = 1e-14;
  return std::log(zeta(s, tight));
}

Complex log_zeta_tracked_step(Complex s, const RegionD& region,
                              const EvalBudget& budget, double max_step) {
  region.validate();
  budget.validate();
  require_finite(s, "log_zeta_tracked");
  require_finite(max_step, "log_zeta_tracked");
  if (!(max_step > 0.0)) {
    raise(ErrorCode::DomainError, "log_zeta_tracked: step cap must be positive");
  }
  if (!region_d_contains(s, region)) {
    raise(ErrorCode::DomainError, "log_zeta_tracked: s outside region D");
  }
  if (s.real() < 0.5 + 2.0 * region.delta - 1e-15) {
    raise(ErrorCode::DomainError,
          "log_zeta_tracked: requires sigma >= 1/2 + 2 delta");
  }

  const double t = s.imag();
  Complex L = log_zeta_series(Complex(4.0, t));
  if (s.real() == 4.0) return L;  // zero-length path: the anchor itself

  const double dir = s.real() > 4.0 ? 1.0 : -1.0;
  Complex prev(4.0, t);
  Complex zprev = zeta(prev, budget);
  // |zeta'| estimate for the step-size rule, refreshed by secants along the
  // path; at the anchor |zeta'(4+it)| <= sum log n / n^4 < 0.07 uniformly.
  double deriv_mag = 0.07;

  auto zero_on_path = [](Complex at, double mod) {
    std::ostringstream os;
    os << "log_zeta_tracked: |zeta| = " << mod << " at path point (" << at.real()
       << ", " << at.imag() << ") -- possible zeta zero on the continuation path";
    raise(ErrorCode::ZeroOnPath, os.str());
  };

  if (std::abs(zprev) < 1e-10) zero_on_path(prev, std::abs(zprev));

  double remaining = std::abs(s.real() - 4.0);
  while (remaining > 0.0) {
    double step = std::min(max_step, 0.5 * std::abs(zprev) / (1.0 + deriv_mag));
    step = std::min(step, remaining);
    for (;;) {
      const Complex next = prev + Complex(dir * step, 0.0);
      const Complex znext = zeta(next, budget);
      if (std::abs(znext) < 1e-10) zero_on_path(next, std::abs(znext));
      const Complex ratio = znext / zprev;
      const double dphi = std::arg(ratio);
      if (std::abs(dphi) < 0.5 * kPi) {
        // principal log of the ratio: the per-step unwrap stays on the sheet
        L += std::log(ratio);
        deriv_mag = std::abs(znext - zprev) / step;
        prev = next;
        zprev = znext;
        remaining -= step;
        break;
      }
      step *= 0.5;
      if (step < 1e-7) zero_on_path(next, std::abs(znext));
    }
  }
  return L;
}

Complex log_zeta_tracked(Complex s, const RegionD& region, const EvalBudget& budget) {
  return log_zeta_tracked_step(s, region, budget, 0.05);
}

}  // namespace nevlab
