#include "nftlab/darboux.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "nftlab/forward.hpp"
#include "nftlab/layerpeel.hpp"
#include "nftlab/synthesis.hpp"

namespace nft {

namespace {

// Renormalized trapezoidal propagation of the left Jost solution (forward)
// and the right Jost solution (backward, via the adjugate transfer matrix)
// at z^2 = exp(2 i zeta h).  All vectors are unit-sup-norm with real
// log-scales, so arbitrarily wide windows stay finite.
struct BidirJost {
  std::vector<std::array<cx, 2>> phi, psi;
  std::vector<double> Lphi, Lpsi;
};

BidirJost jost_bidirectional(const std::vector<cx>& Q, double h, cx zeta) {
  const int N = static_cast<int>(Q.size()) - 1;
  const cx z2 = std::exp(cx(0.0, 2.0) * zeta * h);
  BidirJost out;
  out.phi.assign(N + 1, {cx(0.0), cx(0.0)});
  out.psi.assign(N + 1, {cx(0.0), cx(0.0)});
  out.Lphi.assign(N + 1, 0.0);
  out.Lpsi.assign(N + 1, 0.0);

  std::array<cx, 2> p{cx(1.0), cx(0.0)};
  double L = 0.0;
  out.phi[0] = p;
  for (int n = 0; n < N; ++n) {
    const cx Qn = Q[n], Rn = -std::conj(Qn);
    const cx Q1 = Q[n + 1], R1 = -std::conj(Q1);
    const double Th = 1.0 + std::norm(Q1);
    const std::array<cx, 2> v{
        ((cx(1.0) + z2 * Q1 * Rn) * p[0] + (z2 * Q1 + Qn) * p[1]) / Th,
        ((R1 + z2 * Rn) * p[0] + (R1 * Qn + z2) * p[1]) / Th};
    p = v;
    const double s = std::max(std::abs(p[0]), std::abs(p[1]));
    if (s > 0.0) {
      p[0] /= s;
      p[1] /= s;
      L += std::log(s);
    }
    out.phi[n + 1] = p;
    out.Lphi[n + 1] = L;
  }

  std::array<cx, 2> w{cx(0.0), cx(1.0)};
  L = 0.0;
  out.psi[N] = w;
  for (int n = N - 1; n >= 0; --n) {
    const cx Qn = Q[n], Rn = -std::conj(Qn);
    const cx Q1 = Q[n + 1], R1 = -std::conj(Q1);
    const double Th = 1.0 + std::norm(Qn);
    const std::array<cx, 2> v{
        ((R1 * Qn + z2) * w[0] - (z2 * Q1 + Qn) * w[1]) / Th,
        (-(R1 + z2 * Rn) * w[0] + (cx(1.0) + z2 * Q1 * Rn) * w[1]) / Th};
    w = v;
    const double s = std::max(std::abs(w[0]), std::abs(w[1]));
    if (s > 0.0) {
      w[0] /= s;
      w[1] /= s;
      L += std::log(s);
    }
    out.psi[n] = w;
    out.Lpsi[n] = L;
  }
  return out;
}

}  // namespace

SampledPotential cdt_add_bound_states(const SampledPotential& seed,
                                      const DiscreteSpectrum& S,
                                      const CdtOptions& opts) {
  if (S.states.empty()) return seed;
  S.validate();
  const int N = seed.grid.N;
  const double h = seed.grid.h;

  // Process in order of decreasing Im zeta (deepest soliton first).
  std::vector<BoundState> states = S.states;
  std::sort(states.begin(), states.end(), [](const auto& a, const auto& b) {
    return a.zeta.imag() > b.zeta.imag();
  });

  // Direction vectors u_k ~ phi - b_k psi for the seed potential, built with
  // the overflow-safe branch of delta = log b + 2 i zeta t + Lpsi - Lphi.
  const std::vector<cx> Q = coupling_array(seed, kTrScale);
  std::vector<std::vector<std::array<cx, 2>>> U(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    const cx zeta = states[k].zeta;
    const cx logb = std::log(states[k].b);
    const BidirJost J = jost_bidirectional(Q, h, zeta);
    auto& u = U[k];
    u.assign(N + 1, {cx(0.0), cx(0.0)});
    for (int n = 0; n <= N; ++n) {
      const double t = seed.grid.node(n);
      const cx delta =
          logb + cx(0.0, 2.0) * zeta * t + cx(J.Lpsi[n] - J.Lphi[n], 0.0);
      std::array<cx, 2> v;
      if (delta.real() > 0.0) {
        const cx e = std::exp(-delta);
        v = {e * J.phi[n][0] - J.psi[n][0], e * J.phi[n][1] - J.psi[n][1]};
      } else {
        const cx e = std::exp(delta);
        v = {J.phi[n][0] - e * J.psi[n][0], J.phi[n][1] - e * J.psi[n][1]};
      }
      const double nrm = std::hypot(std::abs(v[0]), std::abs(v[1]));
      u[n] = {v[0] / nrm, v[1] / nrm};
    }
  }

  std::vector<cx> q = seed.q;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const cx zeta = states[k].zeta;
    const cx two_i_gap = cx(0.0, 2.0) * (zeta - std::conj(zeta));
    const auto& u = U[k];
    for (int n = 0; n <= N; ++n) {
      const double d2 = std::norm(u[n][0]) + std::norm(u[n][1]);
      q[n] -= two_i_gap * u[n][0] * std::conj(u[n][1]) / d2;
      if (!std::isfinite(q[n].real()) || !std::isfinite(q[n].imag()) ||
          std::abs(q[n]) > opts.blowup_limit) {
        throw numeric_error("cdt_add_bound_states: blow-up at fold " +
                                std::to_string(k),
                            static_cast<long>(k));
      }
    }
    // Dress the remaining directions with D = (z - zeta) P_u +
    // (z - conj zeta)(I - P_u).
    for (std::size_t j = k + 1; j < states.size(); ++j) {
      const cx zj = states[j].zeta;
      auto& uj = U[j];
      for (int n = 0; n <= N; ++n) {
        const double d2 = std::norm(u[n][0]) + std::norm(u[n][1]);
        const cx inner = (std::conj(u[n][0]) * uj[n][0] +
                          std::conj(u[n][1]) * uj[n][1]) /
                         d2;
        const cx pu0 = u[n][0] * inner, pu1 = u[n][1] * inner;
        const cx a = zj - zeta, c = zj - std::conj(zeta);
        std::array<cx, 2> v{a * pu0 + c * (uj[n][0] - pu0),
                            a * pu1 + c * (uj[n][1] - pu1)};
        const double nrm = std::hypot(std::abs(v[0]), std::abs(v[1]));
        uj[n] = {v[0] / nrm, v[1] / nrm};
      }
    }
  }
  return SampledPotential(seed.grid, std::move(q));
}

SampledPotential inft(const NFSpectrum& spectrum, const TimeGrid& grid,
                      const InftOptions& opts) {
  if (opts.dt != DtKind::cdt) {
    throw not_implemented_error(
        "inft: the fdt/fdt-pf dressing variants are reserved but not "
        "implemented; use cdt");
  }
  spectrum.discrete.validate();
  const SynthesisPlan plan = SynthesisPlan::for_grid(grid, opts.n_os);

  const ContinuousSpectrum rho_R =
      radiative_reflection(spectrum.rho, spectrum.discrete);
  JostPolynomialPair P;
  if (opts.route == SynthRoute::rh) {
    P = lp_input_rh(rho_R, plan);
  } else {
    P = lp_input_direct(rho_fourier_coeffs(rho_R, plan));
  }

  SampledPotential qR = opts.lp == LpMode::seq ? lp_sequential(P, grid)
                                               : lp_fast(P, grid);
  if (spectrum.discrete.states.empty()) return qR;
  return cdt_add_bound_states(qR, spectrum.discrete);
}

}  // namespace nft
