#pragma once

#include "nftlab/forward.hpp"
#include "nftlab/polyops.hpp"
#include "nftlab/types.hpp"

namespace nft {

// One peeling step applied to the Jost pair P^{(n+1)}: recovers the top two
// reflectivity samples and the stripped inverse transfer matrix
//   Minv = z^{-2} M^{-1}   (2x2, degree 1, prefactor_power = -2),
// whose application P^{(n)} = Minv P^{(n+1)} drops one z^2 slot.
struct LpStepResult {
  cx R_cur;   // R_{n+1}
  cx R_prev;  // R_n
  PolyMatrix Minv;
};

// Throws numeric_error (index = -1; callers annotate the layer) when a pivot
// magnitude falls below pivot_tol.
LpStepResult lp_step(const Poly& c1, const Poly& c2, double pivot_tol = 1e-14);

// Layer peeling of the full Jost pair back to potential samples; q_0 = 0 by
// the virtual-support convention.  `sequential` is the O(N^2) reference;
// `fast` splits the window recursively (O(N log^2 N)) and is bitwise
// equivalent up to rounding.
SampledPotential lp_sequential(const JostPolynomialPair& P,
                               const TimeGrid& grid);
SampledPotential lp_fast(const JostPolynomialPair& P, const TimeGrid& grid);

}  // namespace nft
