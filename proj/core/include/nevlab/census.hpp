#pragma once

#include <vector>

#include "nevlab/types.hpp"

namespace nevlab {

struct CensusConfig {
  int boundary_samples_min = 256;
  int max_subdivision_depth = 160;
  double root_radius_tol = 1e-9;   // >= 1e-10
  Complex target{0.0, 0.0};        // census counts zeros of f - target
  long max_boundary_samples = 1 << 20;
  int jobs = 1;                    // fan-out of sub-disk windings

  void validate() const;
};

struct NudgeEvent {
  Complex center;
  double radius_before = 0.0;
  double radius_after = 0.0;
};

struct CensusResult {
  DivisorList divisors;
  int winding = 0;
  std::vector<NudgeEvent> nudges;
  long evals = 0;
};

// Total argument change of f - target along the disk boundary, snapped to an
// integer (|raw - round| < 0.01 asserted).  Sampling starts at
// boundary_samples_min points and refines until every consecutive argument
// change is below pi/2.  A zero too close to the boundary triggers a radius
// nudge of +1e-6 * radius (at most 5, then BoundaryZero).
int winding_count(const FunctionHandle& f, const Disk& disk,
                  const CensusConfig& cfg = {});

// Locate all zeros of f - target in the disk: recursive subdivision into 4
// overlapping sub-disks (overlap factor 1.2) until a sub-disk winds 0, its
// single root is polished by damped Newton steps, or its radius falls below
// root_radius_tol (a multiple-root cluster).  Roots found twice in the
// overlap are merged (distance < 10 * root_radius_tol, the higher-|f'| polish
// kept); the total multiplicity is checked against the whole-disk winding.
DivisorList census(const FunctionHandle& f, const Disk& disk,
                   const CensusConfig& cfg = {});

// Full result: divisors, whole-disk winding, nudge log, evaluation count.
CensusResult census_ex(const FunctionHandle& f, const Disk& disk,
                       const CensusConfig& cfg = {});

}  // namespace nevlab
