#pragma once

#include <cstdint>
#include <vector>

#include "nftlab/types.hpp"

namespace nft {

// Complex gamma function (15-term Lanczos approximation, reflection formula
// for Re z < 1/2).  Relative accuracy ~1e-13 on the strips used here.
cx gamma_c(cx z);

// Hyperbolic-secant family q(t) = (A_R + K) sech(t): bound states
// zeta_k = i (A_R + 1/2 + K - k), b_k = (-1)^k for k = 1..K, and the
// closed-form reflection coefficient (radiative part expressed via gamma
// functions, divided by the Blaschke product to give the full rho).
NFSpectrum sech_spectrum(double A_R, int K);

// Closed-form radiative reflection of the sech family (a_S * rho).
cx sech_rho_radiative(double A_R, int K, double xi);

// Closed-form a(xi) of q = A sech(t):
//   a(xi) = Gamma(1/2 - i xi)^2 / (Gamma(1/2 - i xi + A) Gamma(1/2 - i xi - A)).
cx sech_a_exact(double A, double xi);

SampledPotential sech_potential(double A, const TimeGrid& grid);

// Raised-cosine spectral profile of amplitude A, symbol time tau_s and
// roll-off beta in (0, 1]; support is |xi| <= Lambda = (1 + beta) / tau_s.
struct RaisedCosineParams {
  double A = 1.0;
  double tau_s = 1.0;
  double beta = 0.5;

  double Lambda() const { return (1.0 + beta) / tau_s; }
};

double rc_H(const RaisedCosineParams& p, double xi);

// Time-domain impulse response of rc_H; the removable singularities at
// 2 beta |tau| = pi tau_s are evaluated in closed form.
double rc_impulse(const RaisedCosineParams& p, double tau);

ContinuousSpectrum rc_spectrum(const RaisedCosineParams& p);

// Deterministic QPSK symbol draw from {1, i, -1, -i} (splitmix64 generator,
// identical across platforms).
std::vector<cx> qpsk_symbols(int N_sym, std::uint64_t seed);

// rho(xi) = c * S(xi) * H_1(xi) with S(xi) = sum_n s_n exp(-i n pi tau_s xi)
// over n = -N_sym/2 .. N_sym/2 - 1, H_1 the unit-amplitude raised cosine,
// and c chosen so that ||rho||_2 = A_eff ||H_1||_2.  `scaled` carries the
// effective amplitude c for domain estimation.
struct QpskSpectrum {
  ContinuousSpectrum rho;
  std::vector<cx> symbols;
  double scale_c = 0.0;
  RaisedCosineParams scaled;
};

QpskSpectrum qpsk_spectrum(const std::vector<cx>& symbols,
                           const RaisedCosineParams& base, double A_eff);

// Periodic trigonometric interpolant through n uniform samples on
// [-Lambda, Lambda) (sample i at xi = -Lambda + 2 Lambda i / n, n even).
ContinuousSpectrum spectrum_from_samples(const std::vector<cx>& values,
                                         double Lambda);

// Relative L2 error of potential samples (trapezoidal weights).
double metric_q(const std::vector<cx>& q_num, const std::vector<cx>& q_ref,
                double h);

// Relative L2 error of reflection samples on a uniform xi grid.
double metric_rho(const std::vector<cx>& rho_num,
                  const std::vector<cx>& rho_ref);

// RMS of the relative norming-constant errors.
double metric_b(const std::vector<cx>& b_num, const std::vector<cx>& b_ref);

}  // namespace nft
