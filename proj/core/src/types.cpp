#include "nevlab/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nevlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PoleAtOne: return "PoleAtOne";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ZeroOnPath: return "ZeroOnPath";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::BoundaryZero: return "BoundaryZero";
    case ErrorCode::UnstableWinding: return "UnstableWinding";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::CensusInconsistent: return "CensusInconsistent";
    case ErrorCode::QuadratureStalled: return "QuadratureStalled";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

void raise(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    raise(ErrorCode::DomainError, std::string(who) + ": non-finite real input");
  }
}

void require_finite(Complex z, const char* who) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    raise(ErrorCode::DomainError, std::string(who) + ": non-finite complex input");
  }
}

void EvalBudget::validate() const {
  require_finite(target_abs_err, "EvalBudget");
  if (target_abs_err < 1e-14) {
    raise(ErrorCode::DomainError, "EvalBudget: target_abs_err below the 1e-14 floor");
  }
  if (max_terms < 1) raise(ErrorCode::DomainError, "EvalBudget: max_terms must be positive");
  if (bernoulli_order < 1 || bernoulli_order > 14) {
    raise(ErrorCode::DomainError, "EvalBudget: bernoulli_order must be in [1, 14]");
  }
}

void RegionD::validate() const {
  require_finite(delta, "RegionD");
  if (!(delta > 0.0 && delta <= 0.01)) {
    raise(ErrorCode::DomainError, "RegionD: delta must satisfy 0 < delta <= 1/100");
  }
}

void Disk::validate() const {
  require_finite(center, "Disk");
  require_finite(radius, "Disk");
  if (!(radius > 0.0)) raise(ErrorCode::DomainError, "Disk: radius must be positive");
}

const char* to_string(DivisorKind kind) {
  return kind == DivisorKind::Zero ? "zero" : "pole";
}

void DivisorList::canonicalize() {
  std::sort(entries.begin(), entries.end(),
            [](const DivisorEntry& a, const DivisorEntry& b) {
              const double ra = std::abs(a.location), rb = std::abs(b.location);
              if (ra != rb) return ra < rb;
              if (a.location.real() != b.location.real()) {
                return a.location.real() < b.location.real();
              }
              return a.location.imag() < b.location.imag();
            });
  validate();
}

void DivisorList::validate() const {
  for (size_t i = 0; i < entries.size(); ++i) {
    require_finite(entries[i].location, "DivisorList");
    if (entries[i].multiplicity < 1) {
      raise(ErrorCode::DomainError, "DivisorList: multiplicity must be >= 1");
    }
    for (size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[i].location == entries[j].location) {
        raise(ErrorCode::DomainError, "DivisorList: locations must be pairwise distinct");
      }
    }
  }
}

int DivisorList::total_multiplicity(DivisorKind kind) const {
  int total = 0;
  for (const auto& e : entries) {
    if (e.kind == kind) total += e.multiplicity;
  }
  return total;
}

void QuadratureSpec::validate() const {
  if (initial_panels < 16) {
    raise(ErrorCode::DomainError, "QuadratureSpec: initial_panels must be >= 16");
  }
  if (max_depth < 1) raise(ErrorCode::DomainError, "QuadratureSpec: max_depth must be >= 1");
  require_finite(target_abs_err, "QuadratureSpec");
  if (!(target_abs_err > 0.0)) {
    raise(ErrorCode::DomainError, "QuadratureSpec: target_abs_err must be positive");
  }
}

void FunctionHandle::validate() const {
  if (!eval) raise(ErrorCode::DomainError, "FunctionHandle: eval is empty");
  if (analytic_in && declared_divisors) {
    for (const auto& e : declared_divisors->entries) {
      if (e.kind == DivisorKind::Pole && analytic_in->contains(e.location)) {
        raise(ErrorCode::DomainError,
              "FunctionHandle '" + label + "': declared pole inside analytic_in");
      }
    }
  }
}

}  // namespace nevlab
