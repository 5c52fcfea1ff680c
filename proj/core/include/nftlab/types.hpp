#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nft {

using cx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Coupling scale of the trapezoidal (two-stage implicit Adams) discretization:
// the per-layer coupling is Q_n = kTrScale * h * q_n.  Inversion maps back via
// q_n = -conj(R_n) / (kTrScale * h).
inline constexpr double kTrScale = 0.5;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: malformed files, inadmissible samples, inconsistent grids.
class validation_error : public error {
 public:
  using error::error;
};

// Run-time numerical breakdown: degenerate pivots, blow-ups, spectral poles.
// `index` is the offending layer / fold / sample when meaningful, else -1.
class numeric_error : public error {
 public:
  explicit numeric_error(const std::string& what, long index = -1)
      : error(what), index(index) {}
  long index;
};

class not_implemented_error : public error {
 public:
  using error::error;
};

// Uniform time grid t_n = T1 + n h for n = 0..N.  The window endpoints double
// as the z-power bookkeeping of the scattering recursions: h*ell_minus = -T1
// and h*ell_plus = T2.
struct TimeGrid {
  double T1 = 0.0;
  double T2 = 0.0;
  int N = 0;
  double h = 0.0;
  double ell_minus = 0.0;
  double ell_plus = 0.0;

  TimeGrid() = default;
  TimeGrid(double t1, double t2, int n);

  static TimeGrid symmetric(double T, int n) { return TimeGrid(-T, T, n); }

  // Same spacing h, window shifted by less than one sample so that T2/h is an
  // integer.  Required by the synthesis/scattering delay bookkeeping.
  static TimeGrid snapped(double t1, double t2, int n);

  double node(int n) const { return T1 + h * n; }

  // ell_plus rounded to the nearest integer; throws validation_error if
  // ell_plus is not integral to within 1e-6.
  long shift_exponent() const;
};

// Samples q_n = q(t_n) of a focusing potential on a TimeGrid (N+1 values).
struct SampledPotential {
  TimeGrid grid;
  std::vector<cx> q;

  SampledPotential() = default;
  SampledPotential(TimeGrid g, std::vector<cx> samples);
};

// One bound state: eigenvalue zeta (Im zeta > 0) and norming constant b.
struct BoundState {
  cx zeta;
  cx b;
};

struct DiscreteSpectrum {
  std::vector<BoundState> states;

  int size() const { return static_cast<int>(states.size()); }
  // Im zeta_k > 0, eigenvalues pairwise distinct, b_k != 0.
  void validate() const;
};

// Continuous reflection data rho(xi) on the real axis.  `Lambda` is the
// bandlimit: exact support when hard_bandlimit is set (rho == 0 outside
// [-Lambda, Lambda]), an effective decay scale otherwise.
struct ContinuousSpectrum {
  std::function<cx(double)> rho;  // empty => identically zero
  double Lambda = 0.0;
  bool hard_bandlimit = false;

  cx eval(double xi) const { return rho ? rho(xi) : cx(0.0); }
  bool zero() const { return !rho; }
};

// Full nonlinear Fourier data: bound states plus reflection coefficient.
struct NFSpectrum {
  DiscreteSpectrum discrete;
  ContinuousSpectrum rho;
};

// Blaschke product over the discrete spectrum,
//   a_S(zeta) = prod_k (zeta - zeta_k) / (zeta - conj(zeta_k)).
// Unimodular on the real axis; throws numeric_error when zeta falls on one of
// the poles conj(zeta_k).
cx a_S_eval(cx zeta, const DiscreteSpectrum& S);

// Reflection seen by the soliton-free (radiative) part: rho_R = a_S * rho.
ContinuousSpectrum radiative_reflection(const ContinuousSpectrum& rho,
                                        const DiscreteSpectrum& S);

}  // namespace nft
