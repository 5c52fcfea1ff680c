#pragma once

#include <array>
#include <utility>
#include <vector>

#include "nftlab/polyops.hpp"
#include "nftlab/types.hpp"

namespace nft {

// Left Jost coefficient vector after n layers: P^{(n)}(z^2) has polynomial
// components (c1, c2) of degree <= n.  After all N layers, a_N(z^2) = c1 and
// b_N(z^2) = z^{-2 ell_plus} c2 on the unit circle |z| = 1.
struct JostPolynomialPair {
  int n = 0;
  Poly c1;
  Poly c2;
};

// Implicit Adams coefficients beta_0..beta_m of the m-stage scheme
// (m = 1 is the trapezoidal rule; accuracy order is m + 1).
struct IACoefficients {
  int m = 1;
  int order = 2;
  std::array<double, 4> beta{};

  static IACoefficients stages(int m);
};

enum class ScatterMode { sequential, fast };

// Per-layer couplings Q_n = h * beta_m * q_n with the virtual-support rule
// Q_0 = 0.  Throws validation_error if any |Q_n| >= 1 (inadmissible step).
std::vector<cx> coupling_array(const SampledPotential& p, double beta_m);

// One trapezoidal transfer layer as a 2x2 degree-1 PolyMatrix (the z^{-1}
// prefactor is tracked in prefactor_power):
//   (1/Theta_{n+1}) [ 1 + z^2 Q_{n+1} R_n    z^2 Q_{n+1} + Q_n      ]
//                   [ R_{n+1} + z^2 R_n      R_{n+1} Q_n + z^2      ]
// with R = -conj(Q) and Theta = 1 + |Q|^2.
PolyMatrix tr_transfer_matrix(cx Q_n, cx Q_np1);

JostPolynomialPair forward_scatter_tr(const SampledPotential& p,
                                      ScatterMode mode = ScatterMode::fast);

// m-stage implicit Adams step k as a 2m x 2m block-companion PolyMatrix
// acting on the stacked history (w_{k-1}; ...; w_{k-m}).  `Q` is the coupling
// array (index j <= 0 treated as zero).
PolyMatrix ia_block_transfer(const std::vector<cx>& Q, int k,
                             const IACoefficients& ia);

// Forward scattering with the m-stage implicit Adams scheme (m = 1,2,3);
// m = 1 coincides with forward_scatter_tr.
JostPolynomialPair forward_scatter_ia(const SampledPotential& p, int m,
                                      ScatterMode mode = ScatterMode::fast);

// Reflection coefficient on the 2M-point grid xi_j = j pi / (2 M h),
// j = -M..M-1, evaluated exactly on the unit circle via FFT.  Samples where
// |a| falls below 1e-12 of its maximum are reported in near_zero_a (their rho
// is set to zero) rather than raising.
struct ReflectionSamples {
  std::vector<double> xi;
  std::vector<cx> rho;
  std::vector<long> near_zero_a;
};

ReflectionSamples reflection_samples(const JostPolynomialPair& P,
                                     const TimeGrid& grid, int M);

// Pointwise scattering coefficients (a, b) at real xi via the m-stage
// recurrence; b includes the z^{-2 ell_plus} delay factor.
std::pair<cx, cx> scatter_at(const SampledPotential& p, int m, double xi);

// Norming constants b_k at the given eigenvalues (Im zeta_k > 0) by matching
// the forward and backward Jost solutions where both are largest.  The
// backward solution is generated by running the same forward recurrence on
// the conjugate-reversed samples conj(q(-t)).  Order of accuracy follows the
// m-stage scheme.
std::vector<cx> norming_constants(const SampledPotential& p,
                                  const std::vector<cx>& zetas, int m);

}  // namespace nft
