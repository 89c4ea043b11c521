#include "nevlab/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <sstream>

namespace nevlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
// sub-disk geometry: 4 centers at c + (r/2)(+-1 +- i), covering radius
// r/sqrt(2), inflated by the 1.2 overlap factor
constexpr double kSubRadiusFactor = 1.2 / 1.4142135623730951;
constexpr double kBoundaryContrast = 1e-9;  // min/median modulus contrast
constexpr int kMaxNudges = 5;
constexpr int kMaxSegmentDepth = 48;

struct BoundaryZeroSignal {};  // internal: a boundary sample sits on a zero

struct WindingScan {
  int winding = 0;
  double median_mod = 0.0;
  long evals = 0;
  bool unrefined = false;
};

class WindingEngine {
 public:
  WindingEngine(const FunctionHandle& f, Complex target, long max_samples)
      : f_(f), target_(target), max_samples_(max_samples) {}

  long evals() const { return evals_; }

  // Throws BoundaryZeroSignal (internal) or Error(UnstableWinding).
  WindingScan run(Complex center, double radius, int samples_min) {
    center_ = center;
    radius_ = radius;
    const int P = std::max(samples_min, 8);
    std::vector<Complex> v(P);
    std::vector<double> mods(P);
    for (int i = 0; i < P; ++i) {
      v[i] = value_at(kTwoPi * i / P);
      mods[i] = std::abs(v[i]);
    }
    std::vector<double> sorted = mods;
    std::nth_element(sorted.begin(), sorted.begin() + P / 2, sorted.end());
    median_ = std::max(sorted[P / 2], 1e-300);
    for (double m : mods) {
      if (m < kBoundaryContrast * median_) throw BoundaryZeroSignal{};
    }

    budget_ = max_samples_;
    unrefined_ = false;
    double total = 0.0;
    for (int i = 0; i < P; ++i) {
      const double a = kTwoPi * i / P;
      const double b = kTwoPi * (i + 1) / P;
      total += refine(a, v[i], b, v[(i + 1) % P], 0);
    }
    const double raw = total / kTwoPi;
    const double snapped = std::round(raw);
    if (std::abs(raw - snapped) >= 0.01) {
      std::ostringstream os;
      os << "winding_count: raw winding " << raw << " does not snap to an integer "
         << "at center (" << center.real() << ", " << center.imag() << "), radius "
         << radius;
      raise(ErrorCode::UnstableWinding, os.str());
    }
    WindingScan out;
    out.winding = static_cast<int>(snapped);
    out.median_mod = median_;
    out.evals = evals_;
    out.unrefined = unrefined_;
    return out;
  }

 private:
  Complex value_at(double phi) {
    const Complex z = center_ + radius_ * Complex(std::cos(phi), std::sin(phi));
    const Complex w = f_.eval(z) - target_;
    require_finite(w, "winding_count");
    ++evals_;
    return w;
  }

  double refine(double a, Complex va, double b, Complex vb, int depth) {
    const double darg = std::arg(vb / va);
    if (std::abs(darg) < 0.5 * kPi) return darg;
    if (depth >= kMaxSegmentDepth || budget_ <= 0) {
      unrefined_ = true;
      return darg;
    }
    --budget_;
    const double m = 0.5 * (a + b);
    const Complex vm = value_at(m);
    if (std::abs(vm) < kBoundaryContrast * median_) throw BoundaryZeroSignal{};
    return refine(a, va, m, vm, depth + 1) + refine(m, vm, b, vb, depth + 1);
  }

  const FunctionHandle& f_;
  Complex target_;
  long max_samples_;
  Complex center_;
  double radius_ = 0.0;
  double median_ = 0.0;
  long budget_ = 0;
  long evals_ = 0;
  bool unrefined_ = false;
};

struct WindingOutcome {
  int winding = 0;
  double radius_eff = 0.0;
  double median_mod = 0.0;
  long evals = 0;
  std::vector<NudgeEvent> nudges;
};

WindingOutcome winding_with_nudges(const FunctionHandle& f, Complex center,
                                   double radius, const CensusConfig& cfg) {
  WindingOutcome out;
  double r = radius;
  for (int attempt = 0; attempt <= kMaxNudges; ++attempt) {
    WindingEngine engine(f, cfg.target, cfg.max_boundary_samples);
    try {
      const WindingScan scan = engine.run(center, r, cfg.boundary_samples_min);
      out.winding = scan.winding;
      out.radius_eff = r;
      out.median_mod = scan.median_mod;
      out.evals += scan.evals;
      return out;
    } catch (const BoundaryZeroSignal&) {
      out.evals += engine.evals();
      const double r_next = r + 1e-6 * radius;
      out.nudges.push_back({center, r, r_next});
      r = r_next;
    }
  }
  std::ostringstream os;
  os << "census boundary at center (" << center.real() << ", " << center.imag()
     << ") still hits a zero after " << kMaxNudges << " radius nudges";
  raise(ErrorCode::BoundaryZero, os.str());
}

struct FoundRoot {
  Complex location;
  int multiplicity = 0;
  double deriv_mag = 0.0;  // |f'| at a polished simple root, 0 for clusters
};

struct NewtonResult {
  Complex root;
  double residual = 0.0;
  double deriv_mag = 0.0;
  bool converged = false;
};

NewtonResult newton_polish(const FunctionHandle& f, Complex target, Complex z0,
                           double scale_mod) {
  NewtonResult res;
  Complex z = z0;
  Complex fz = f.eval(z) - target;
  for (int iter = 0; iter < 10; ++iter) {
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    const Complex d = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
    if (std::abs(d) < 1e-300) break;
    Complex step = -fz / d;
    bool advanced = false;
    for (int k = 0; k < 6; ++k) {
      const Complex znew = z + step;
      const Complex fnew = f.eval(znew) - target;
      if (std::abs(fnew) < std::abs(fz)) {
        z = znew;
        fz = fnew;
        advanced = true;
        break;
      }
      step *= 0.5;
    }
    res.deriv_mag = std::abs(d);
    if (!advanced) break;
    if (std::abs(fz) < 1e-14 * std::max(1.0, scale_mod)) break;
  }
  res.root = z;
  res.residual = std::abs(fz);
  res.converged = res.residual <= 1e-7 * std::max(1.0, scale_mod);
  return res;
}

class CensusDriver {
 public:
  CensusDriver(const FunctionHandle& f, const CensusConfig& cfg)
      : f_(f), cfg_(cfg) {}

  CensusResult run(const Disk& disk) {
    CensusResult res;
    WindingOutcome top = winding_with_nudges(f_, disk.center, disk.radius, cfg_);
    res.winding = top.winding;
    append_nudges(res, top);
    evals_ += top.evals;
    if (top.winding < 0) {
      raise(ErrorCode::CensusInconsistent,
            "census: negative winding (a pole in the disk?); censuses assume "
            "analytic handles");
    }
    if (top.winding > 0) {
      recurse(disk.center, top.radius_eff, top, 0, res);
    }
    dedup(res);
    filter_to_disk(res, disk.center, top.radius_eff);
    int total = 0;
    for (const auto& e : res.divisors.entries) total += e.multiplicity;
    if (total != res.winding) {
      std::ostringstream os;
      os << "census: sub-disk multiplicities sum to " << total
         << " but the whole-disk winding is " << res.winding;
      raise(ErrorCode::CensusInconsistent, os.str());
    }
    res.divisors.canonicalize();
    res.evals = evals_;
    return res;
  }

 private:
  void append_nudges(CensusResult& res, const WindingOutcome& w) {
    res.nudges.insert(res.nudges.end(), w.nudges.begin(), w.nudges.end());
  }

  void recurse(Complex center, double radius, const WindingOutcome& scan, int depth,
               CensusResult& res) {
    if (scan.winding == 0) return;
    if (depth > cfg_.max_subdivision_depth) {
      std::ostringstream os;
      os << "census: subdivision depth " << cfg_.max_subdivision_depth
         << " exceeded at center (" << center.real() << ", " << center.imag()
         << "), radius " << radius << ", winding " << scan.winding;
      raise(ErrorCode::DepthExceeded, os.str());
    }
    if (radius < cfg_.root_radius_tol) {
      found_.push_back({center, scan.winding, 0.0});  // multiple-root cluster
      return;
    }
    if (scan.winding == 1) {
      const NewtonResult nr = newton_polish(f_, cfg_.target, center, scan.median_mod);
      if (nr.converged && std::abs(nr.root - center) <= radius) {
        found_.push_back({nr.root, 1, nr.deriv_mag});
        return;
      }
    }
    // four overlapping sub-disks
    const double q = 0.5 * radius;
    const double sub_r = kSubRadiusFactor * radius;
    const Complex centers[4] = {
        center + Complex(q, q), center + Complex(-q, q),
        center + Complex(-q, -q), center + Complex(q, -q)};

    WindingOutcome sub[4];
    if (cfg_.jobs > 1) {
      std::future<WindingOutcome> futs[4];
      for (int i = 0; i < 4; ++i) {
        futs[i] = std::async(std::launch::async, [&, i] {
          return winding_with_nudges(f_, centers[i], sub_r, cfg_);
        });
      }
      for (int i = 0; i < 4; ++i) sub[i] = futs[i].get();
    } else {
      for (int i = 0; i < 4; ++i) {
        sub[i] = winding_with_nudges(f_, centers[i], sub_r, cfg_);
      }
    }
    for (int i = 0; i < 4; ++i) {
      evals_ += sub[i].evals;
      append_nudges(res, sub[i]);
    }
    for (int i = 0; i < 4; ++i) {
      if (sub[i].winding > 0) {
        recurse(centers[i], sub[i].radius_eff, sub[i], depth + 1, res);
      }
    }
  }

  // Roots found twice in the overlap are the same point: keep one entry
  // (the better-conditioned polish), never sum multiplicities.
  void dedup(CensusResult& res) {
    const double merge_dist = 10.0 * cfg_.root_radius_tol;
    std::sort(found_.begin(), found_.end(), [](const FoundRoot& a, const FoundRoot& b) {
      if (a.location.real() != b.location.real()) {
        return a.location.real() < b.location.real();
      }
      return a.location.imag() < b.location.imag();
    });
    std::vector<FoundRoot> unique;
    for (const auto& r : found_) {
      bool merged = false;
      for (auto& u : unique) {
        if (std::abs(u.location - r.location) < merge_dist) {
          if (r.deriv_mag > u.deriv_mag) {
            u.location = r.location;
            u.deriv_mag = r.deriv_mag;
          }
          u.multiplicity = std::max(u.multiplicity, r.multiplicity);
          merged = true;
          break;
        }
      }
      if (!merged) unique.push_back(r);
    }
    res.divisors.entries.clear();
    for (const auto& u : unique) {
      res.divisors.entries.push_back({u.location, u.multiplicity, DivisorKind::Zero});
    }
  }

  // Overlapping sub-disks may reach outside the parent disk; drop roots that
  // lie beyond the (nudged) parent radius.
  void filter_to_disk(CensusResult& res, Complex center, double radius) {
    auto& v = res.divisors.entries;
    v.erase(std::remove_if(v.begin(), v.end(),
                           [&](const DivisorEntry& e) {
                             return std::abs(e.location - center) >
                                    radius + 1e-8 * std::max(1.0, radius);
                           }),
            v.end());
  }

  const FunctionHandle& f_;
  const CensusConfig& cfg_;
  std::vector<FoundRoot> found_;
  long evals_ = 0;
};

}  // namespace

void CensusConfig::validate() const {
  if (boundary_samples_min < 8) {
    raise(ErrorCode::DomainError, "CensusConfig: boundary_samples_min must be >= 8");
  }
  if (max_subdivision_depth < 1) {
    raise(ErrorCode::DomainError, "CensusConfig: max_subdivision_depth must be >= 1");
  }
  require_finite(root_radius_tol, "CensusConfig");
  if (root_radius_tol < 1e-10) {
    raise(ErrorCode::DomainError, "CensusConfig: root_radius_tol must be >= 1e-10");
  }
  require_finite(target, "CensusConfig");
  if (max_boundary_samples < boundary_samples_min) {
    raise(ErrorCode::DomainError, "CensusConfig: max_boundary_samples too small");
  }
}

int winding_count(const FunctionHandle& f, const Disk& disk, const CensusConfig& cfg) {
  f.validate();
  disk.validate();
  cfg.validate();
  return winding_with_nudges(f, disk.center, disk.radius, cfg).winding;
}

CensusResult census_ex(const FunctionHandle& f, const Disk& disk,
                       const CensusConfig& cfg) {
  f.validate();
  disk.validate();
  cfg.validate();
  CensusDriver driver(f, cfg);
  return driver.run(disk);
}

DivisorList census(const FunctionHandle& f, const Disk& disk, const CensusConfig& cfg) {
  return census_ex(f, disk, cfg).divisors;
}

}  // namespace nevlab
