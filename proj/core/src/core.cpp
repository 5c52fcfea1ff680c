#include <cmath>
#include <utility>

#include "nftlab/types.hpp"

namespace nft {

TimeGrid::TimeGrid(double t1, double t2, int n) : T1(t1), T2(t2), N(n) {
  if (!(t2 > t1)) throw validation_error("TimeGrid: T2 must exceed T1");
  if (n < 1) throw validation_error("TimeGrid: N must be positive");
  h = (t2 - t1) / n;
  ell_minus = -T1 / h;
  ell_plus = T2 / h;
}

TimeGrid TimeGrid::snapped(double t1, double t2, int n) {
  if (!(t2 > t1)) throw validation_error("TimeGrid: T2 must exceed T1");
  if (n < 1) throw validation_error("TimeGrid: N must be positive");
  const double h = (t2 - t1) / n;
  const double shift = std::round(t2 / h) * h - t2;
  return TimeGrid(t1 + shift, t2 + shift, n);
}

long TimeGrid::shift_exponent() const {
  const double r = std::round(ell_plus);
  if (std::abs(ell_plus - r) > 1e-6) {
    throw validation_error(
        "TimeGrid: T2/h is not an integer; build the grid with "
        "TimeGrid::snapped");
  }
  return static_cast<long>(r);
}

SampledPotential::SampledPotential(TimeGrid g, std::vector<cx> samples)
    : grid(g), q(std::move(samples)) {
  if (static_cast<int>(q.size()) != grid.N + 1) {
    throw validation_error("SampledPotential: expected N+1 samples");
  }
}

void DiscreteSpectrum::validate() const {
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    if (!(s.zeta.imag() > 0.0)) {
      throw validation_error(
          "DiscreteSpectrum: eigenvalues must lie in the upper half plane");
    }
    if (std::abs(s.b) == 0.0) {
      throw validation_error("DiscreteSpectrum: zero norming constant");
    }
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (std::abs(s.zeta - states[j].zeta) <=
          1e-12 * (1.0 + std::abs(s.zeta))) {
        throw validation_error("DiscreteSpectrum: repeated eigenvalue");
      }
    }
  }
}

cx a_S_eval(cx zeta, const DiscreteSpectrum& S) {
  cx out(1.0, 0.0);
  for (const auto& s : S.states) {
    const cx pole = std::conj(s.zeta);
    if (std::abs(zeta - pole) <= 1e-12 * (1.0 + std::abs(s.zeta))) {
      throw numeric_error("a_S_eval: evaluation at a pole of the Blaschke product");
    }
    out *= (zeta - s.zeta) / (zeta - pole);
  }
  return out;
}

ContinuousSpectrum radiative_reflection(const ContinuousSpectrum& rho,
                                        const DiscreteSpectrum& S) {
  if (rho.zero() || S.states.empty()) return rho;
  S.validate();
  auto base = rho.rho;
  auto states = S;
  ContinuousSpectrum out;
  out.Lambda = rho.Lambda;
  out.hard_bandlimit = rho.hard_bandlimit;
  out.rho = [base, states](double xi) {
    return a_S_eval(cx(xi, 0.0), states) * base(xi);
  };
  return out;
}

}  // namespace nft
