#pragma once

#include <vector>

#include "nftlab/forward.hpp"
#include "nftlab/polyops.hpp"
#include "nftlab/types.hpp"

namespace nft {

// Sampling plan tying a time grid to the reflection synthesis transform:
// bandlimit Lambda = pi / (2h), oversampling n_os, transform length
// 2M = 2 n_os N, and the integer delay exponent ell_plus.
struct SynthesisPlan {
  double h = 0.0;
  int N = 0;
  int n_os = 8;
  int M = 0;          // M = n_os * N
  long shift = 0;     // integer ell_plus of the grid
  double Lambda = 0;  // pi / (2 h)

  // Requires integral ell_plus (see TimeGrid::snapped) and power-of-two N and
  // n_os so the transform length is a power of two.
  static SynthesisPlan for_grid(const TimeGrid& grid, int n_os = 8);
};

// Delay-compensated Fourier coefficients rho_breve_k, k = 0..N-1, of
// rho(xi) exp(2 i xi h ell_plus) sampled at xi_j = j pi / (2 M h).
std::vector<cx> rho_fourier_coeffs(const ContinuousSpectrum& rho,
                                   const SynthesisPlan& plan);

// Direct layer-peeling input P = (1, sum_k rho_breve_k z^{2k}).
JostPolynomialPair lp_input_direct(std::vector<cx> coeffs);

// Szego-type outer polynomial a_N from |rho| alone: Fourier coefficients f_k
// of f(xi) = -log(1 + |rho(xi)|^2), analytic projection g = f_0/2 +
// sum_{k>=1} f_k z^{2k}, then a_N = exp(g) truncated to N terms.  On the
// circle |a_N| = (1 + |rho|^2)^{-1/2} up to truncation.
Poly rh_a_polynomial(const ContinuousSpectrum& rho, const SynthesisPlan& plan);

// b_N = a_N * sum_k rho_breve_k z^{2k}, truncated to the length of a_N.
Poly rh_b_polynomial(const Poly& a_N, const std::vector<cx>& rho_coeffs);

// Riemann-Hilbert layer-peeling input P = (a_N, b_N).
JostPolynomialPair lp_input_rh(const ContinuousSpectrum& rho,
                               const SynthesisPlan& plan);

}  // namespace nft
