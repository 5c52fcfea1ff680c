#pragma once

#include <functional>

#include "nftlab/signals.hpp"
#include "nftlab/types.hpp"

namespace nft {

// Tail-energy bound of a potential generated by the impulse response p:
//   I_m(T) = ( int_{2T}^inf |p(-tau)|^m dtau )^{1/m},
//   bound(T) = 2 I_2^2 / (1 - I_1^2),
// valid (applicable) only while I_1 < 1.  Integrals use adaptive Simpson on
// doubling segments, truncated once the integrand falls below 1e-18 of its
// value at the left end.
struct EpsteinBound {
  double I1 = 0.0;
  double I2 = 0.0;
  double bound = 0.0;
  bool applicable = false;
};

EpsteinBound epstein_bound(const std::function<double(double)>& p, double T);

// Smallest T with bound(T) <= eps, bisected to relative tolerance 1e-3.
// `achievable` is false when no such T exists below the search cap.
struct FindTResult {
  double T = 0.0;
  bool achievable = false;
};

FindTResult find_T(const std::function<double(double)>& p, double eps,
                   double T_cap = 1e6);

// Closed-form half-width estimate for a raised-cosine impulse response:
//   T(eps) = (1/2) * ( pi^2 A^2 tau_s^4 / (40 beta^4 eps) )^{1/5}.
double rc_T_estimate(double A, double tau_s, double beta, double eps);

// Half-width for a hyperbolic-secant profile of amplitude A_R:
//   T = log(2 A_R / eps).
double sech_domain(double A_R, double eps);

// Asymmetric window for a QPSK-modulated raised-cosine spectrum of
// (scaled) amplitude params.A: T2 = T(eps) + pi tau_s N_sym / 4, and a
// left extension T1 = -W T2 with W = 5 log2(N_sym).
struct QpskDomain {
  double T1 = 0.0;
  double T2 = 0.0;
  double W = 0.0;
};

QpskDomain qpsk_domain(const RaisedCosineParams& params, int N_sym,
                       double eps);

// Symmetric window containing K solitons: kappa = 2 sqrt(sum Im zeta_k),
// T = multiplier * kappa / min_k Im zeta_k.  Throws validation_error for an
// empty spectrum.
struct SolitonDomain {
  double kappa = 0.0;
  double T = 0.0;
};

SolitonDomain soliton_domain(const DiscreteSpectrum& S,
                             double multiplier = 30.0);

}  // namespace nft
