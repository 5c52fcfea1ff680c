#include "nftlab/synthesis.hpp"

#include <cmath>

#include "nftlab/fft.hpp"

namespace nft {

SynthesisPlan SynthesisPlan::for_grid(const TimeGrid& grid, int n_os) {
  if (n_os < 1 || !fft::is_pow2(static_cast<std::size_t>(n_os))) {
    throw validation_error("SynthesisPlan: n_os must be a power of two");
  }
  if (!fft::is_pow2(static_cast<std::size_t>(grid.N))) {
    throw validation_error("SynthesisPlan: N must be a power of two");
  }
  SynthesisPlan p;
  p.h = grid.h;
  p.N = grid.N;
  p.n_os = n_os;
  p.M = n_os * grid.N;
  p.shift = grid.shift_exponent();
  p.Lambda = kPi / (2.0 * grid.h);
  return p;
}

namespace {

// Samples F_j = f(xi_j), xi_j = j pi/(2Mh) for j = -M..M-1, arranged in DFT
// order (index j mod 2M), transformed, and scaled by 1/(2M): the Fourier
// coefficients of the trigonometric interpolant of f on [-Lambda, Lambda).
template <typename F>
std::vector<cx> circle_coeffs(F&& f, const SynthesisPlan& plan) {
  const std::size_t L = 2 * static_cast<std::size_t>(plan.M);
  const double dxi = kPi / (2.0 * plan.M * plan.h);
  std::vector<cx> G(L);
  for (long j = -plan.M; j < plan.M; ++j) {
    const std::size_t idx =
        static_cast<std::size_t>(j + static_cast<long>(L)) % L;
    G[idx] = f(static_cast<double>(j) * dxi);
  }
  fft::transform(G, -1);
  const double inv = 1.0 / static_cast<double>(L);
  for (auto& g : G) g *= inv;
  return G;
}

}  // namespace

std::vector<cx> rho_fourier_coeffs(const ContinuousSpectrum& rho,
                                   const SynthesisPlan& plan) {
  if (rho.zero()) return std::vector<cx>(plan.N, cx(0.0));
  if (rho.hard_bandlimit && rho.Lambda > plan.Lambda * (1.0 + 1e-9)) {
    throw validation_error(
        "rho_fourier_coeffs: grid too coarse for the spectrum bandlimit");
  }
  const double delay = 2.0 * plan.h * static_cast<double>(plan.shift);
  auto f = [&](double xi) { return rho.eval(xi) * std::polar(1.0, delay * xi); };
  std::vector<cx> G = circle_coeffs(f, plan);
  G.resize(plan.N);
  return G;
}

JostPolynomialPair lp_input_direct(std::vector<cx> coeffs) {
  JostPolynomialPair P;
  P.n = static_cast<int>(coeffs.size());
  P.c1.assign(P.n + 1, cx(0.0));
  P.c1[0] = cx(1.0);
  coeffs.resize(P.n + 1, cx(0.0));
  P.c2 = std::move(coeffs);
  return P;
}

Poly rh_a_polynomial(const ContinuousSpectrum& rho, const SynthesisPlan& plan) {
  if (rho.zero()) {
    Poly a(plan.N, cx(0.0));
    a[0] = cx(1.0);
    return a;
  }
  auto f = [&](double xi) -> cx {
    return cx(-std::log1p(std::norm(rho.eval(xi))), 0.0);
  };
  std::vector<cx> fk = circle_coeffs(f, plan);
  // Analytic (one-sided) projection with the half-weight constant term, so
  // that on the circle |exp g| = exp(f/2) = (1 + |rho|^2)^{-1/2}.
  Poly g(plan.N, cx(0.0));
  g[0] = 0.5 * fk[0];
  for (int k = 1; k < plan.N; ++k) g[k] = fk[k];
  return poly::series_exp(g, plan.N);
}

Poly rh_b_polynomial(const Poly& a_N, const std::vector<cx>& rho_coeffs) {
  if (rho_coeffs.empty()) return Poly(a_N.size(), cx(0.0));
  return poly::mul_trunc(a_N, rho_coeffs, a_N.size());
}

JostPolynomialPair lp_input_rh(const ContinuousSpectrum& rho,
                               const SynthesisPlan& plan) {
  std::vector<cx> coeffs = rho_fourier_coeffs(rho, plan);
  Poly a = rh_a_polynomial(rho, plan);
  Poly b = rh_b_polynomial(a, coeffs);
  JostPolynomialPair P;
  P.n = plan.N;
  a.resize(plan.N + 1, cx(0.0));
  b.resize(plan.N + 1, cx(0.0));
  P.c1 = std::move(a);
  P.c2 = std::move(b);
  return P;
}

}  // namespace nft
