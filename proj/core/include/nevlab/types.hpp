#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nevlab {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  DomainError,           // input outside an operation's documented domain
  PoleAtOne,             // zeta evaluation requested at (or too close to) s = 1
  BudgetExceeded,        // error target unreachable within the term budget
  ZeroOnPath,            // |zeta| below threshold on a continuation path
  PreconditionViolated,  // an operation's analytic precondition failed
  BoundaryZero,          // a census boundary still hits a zero after max nudges
  UnstableWinding,       // winding number does not snap to an integer
  DepthExceeded,         // census subdivision hit the depth limit
  CensusInconsistent,    // census multiplicities disagree with the winding
  QuadratureStalled,     // quadrature target not met at max depth
  UsageError,            // bad CLI usage
  IoError,               // report emission failed
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

// No NaN/Inf is admitted into any operation.
void require_finite(double x, const char* who);
void require_finite(Complex z, const char* who);

// ---------------------------------------------------------------------------
// Evaluation budget for the zeta engine
// ---------------------------------------------------------------------------

struct EvalBudget {
  double target_abs_err = 1e-12;   // >= 1e-14 (double-precision floor)
  std::int64_t max_terms = 1 << 22;
  int bernoulli_order = 10;        // Euler-Maclaurin correction terms

  void validate() const;
};

// The region D = {sigma > 1/2, |t| > 1} u {sigma > 2, |t| <= 1}.
// delta parametrizes the strips the growth lemmas run on.
struct RegionD {
  double delta = 0.01;  // 0 < delta <= 1/100

  void validate() const;
};

// ---------------------------------------------------------------------------
// Disks and divisors
// ---------------------------------------------------------------------------

struct Disk {
  Complex center{0.0, 0.0};
  double radius = 1.0;

  void validate() const;
  bool contains(Complex z) const { return std::abs(z - center) <= radius; }
};

enum class DivisorKind { Zero, Pole };

const char* to_string(DivisorKind kind);

struct DivisorEntry {
  Complex location{0.0, 0.0};
  int multiplicity = 1;
  DivisorKind kind = DivisorKind::Zero;
};

// Zeros/poles with multiplicities, kept sorted by |location| ascending
// (ties broken by re, then im) -- the canonical order for N-integration.
struct DivisorList {
  std::vector<DivisorEntry> entries;

  void canonicalize();     // sort canonically, then validate
  void validate() const;   // distinct locations, multiplicities >= 1
  bool empty() const { return entries.empty(); }

  int total_multiplicity(DivisorKind kind) const;
};

// ---------------------------------------------------------------------------
// Nevanlinna characteristic data
// ---------------------------------------------------------------------------

// T is stored as the sum m + N, never recomputed independently.
struct CharTriple {
  double m = 0.0;      // proximity
  int n_count = 0;     // unintegrated pole count inside the radius
  double N = 0.0;      // integrated counting function
  double T = 0.0;      // m + N
  double radius = 0.0;
};

struct QuadratureSpec {
  int initial_panels = 64;        // >= 16
  int max_depth = 32;
  double target_abs_err = 1e-10;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Function handles
// ---------------------------------------------------------------------------

// Evaluation contract for an analytic/meromorphic function. eval must be
// deterministic; evaluation failures are reported by throwing nevlab::Error.
struct FunctionHandle {
  std::function<Complex(Complex)> eval;
  std::optional<DivisorList> declared_divisors;  // known zeros/poles
  std::optional<Disk> analytic_in;               // guaranteed pole-free region
  std::string label;

  void validate() const;  // if analytic_in is set, no declared pole lies in it
  Complex operator()(Complex z) const { return eval(z); }
};

}  // namespace nevlab
