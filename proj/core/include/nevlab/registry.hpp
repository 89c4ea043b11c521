#pragma once

#include <string>
#include <vector>

#include "nevlab/types.hpp"

namespace nevlab {

// Resolve a function id to a handle.  Supported ids:
//   exp                      e^z (entire)
//   exp-plus-2               e^z + 2 (entire)
//   sin                      sin z (entire)
//   const:<re>[,<im>]        constant
//   poly:<c0,c1,...>         c0 + c1 z + ... (real coefficients)
//   rational:[c=<re>[,<im>]:]z=<loc>[*m];...:p=<loc>[*m];...
//                            c prod (z-a_i)^{m_i} / prod (z-b_j)^{k_j} with the
//                            divisor list declared exactly; <loc> is re[,im]
//   zeta-shift:<t>           zeta(z + 4 + it), analytic in |z| <= 3.49
//   zeta-minus-1-shift:<t>   zeta(z + 4 + it) - 1
//   log-zeta-shift:<t>[:<delta>]
//                            branch-tracked log zeta(z + 4 + it); delta
//                            defaults to 0.005 so the handle admits the
//                            sigma >= 0.51 circles the growth checks use
// Every id resolves to exactly one handle; unknown ids raise DomainError.
FunctionHandle resolve_function(const std::string& id);

// The builtin registry (ids resolvable above, used by the lemma checks).
std::vector<std::string> builtin_ids();

// Builtins analytic in a disk around 0, paired with a safe radius for
// characteristic/max-modulus experiments.
struct AnalyticBuiltin {
  std::string id;
  double max_radius;
};
std::vector<AnalyticBuiltin> analytic_builtins();

}  // namespace nevlab
