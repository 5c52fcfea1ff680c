#include "nftlab/forward.hpp"

#include <algorithm>
#include <cmath>

#include "nftlab/fft.hpp"

namespace nft {

namespace {

cx Rof(cx Q) { return -std::conj(Q); }

double theta_of(cx Q) { return 1.0 + std::norm(Q); }

// Coupling at index j with the virtual-support rule q_j = 0 for j <= 0.
cx Qat(const std::vector<cx>& Q, long j) {
  if (j <= 0) return cx(0.0);
  return Q[static_cast<std::size_t>(j)];
}

}  // namespace

IACoefficients IACoefficients::stages(int m) {
  IACoefficients c;
  c.m = m;
  c.order = m + 1;
  switch (m) {
    case 1:
      c.beta = {0.5, 0.5, 0.0, 0.0};
      break;
    case 2:
      c.beta = {-1.0 / 12.0, 8.0 / 12.0, 5.0 / 12.0, 0.0};
      break;
    case 3:
      c.beta = {1.0 / 24.0, -5.0 / 24.0, 19.0 / 24.0, 9.0 / 24.0};
      break;
    default:
      throw validation_error("IACoefficients: m must be 1, 2 or 3");
  }
  return c;
}

std::vector<cx> coupling_array(const SampledPotential& p, double beta_m) {
  const int N = p.grid.N;
  std::vector<cx> Q(N + 1);
  const double s = p.grid.h * beta_m;
  Q[0] = cx(0.0);
  for (int n = 1; n <= N; ++n) {
    Q[n] = s * p.q[n];
    if (!(std::abs(Q[n]) < 1.0)) {
      throw validation_error(
          "coupling_array: sample " + std::to_string(n) +
          " violates the admissibility bound |h beta_m q| < 1");
    }
  }
  return Q;
}

PolyMatrix tr_transfer_matrix(cx Q_n, cx Q_np1) {
  const cx Rn = Rof(Q_n), R1 = Rof(Q_np1);
  const double Th = theta_of(Q_np1);
  PolyMatrix B(2, 2, -1);
  B.at(0, 0) = {cx(1.0) / Th, Q_np1 * Rn / Th};
  B.at(0, 1) = {Q_n / Th, Q_np1 / Th};
  B.at(1, 0) = {R1 / Th, Rn / Th};
  B.at(1, 1) = {R1 * Q_n / Th, cx(1.0) / Th};
  return B;
}

PolyMatrix ia_block_transfer(const std::vector<cx>& Q, int k,
                             const IACoefficients& ia) {
  const int m = ia.m;
  const double bm = ia.beta[m];
  const cx Qk = Qat(Q, k), Rk = Rof(Qk);
  const cx Qp = Qat(Q, k - 1), Rp = Rof(Qp);
  const double Th = theta_of(Qk);
  const double bb1 = ia.beta[m - 1] / bm;

  PolyMatrix B(2 * m, 2 * m, -1);
  // Top block row, newest history pair: the M^(1) entries.
  B.at(0, 0) = {cx(1.0) / Th, bb1 * Rp * Qk / Th};
  B.at(0, 1) = {bb1 * Qp / Th, Qk / Th};
  B.at(1, 0) = {Rk / Th, bb1 * Rp / Th};
  B.at(1, 1) = {bb1 * Rk * Qp / Th, cx(1.0) / Th};
  // Older history pairs: M^(j) for j = 2..m carries z^{2j}.
  for (int j = 2; j <= m; ++j) {
    const double w = ia.beta[m - j] / bm;
    const cx Qs = Qat(Q, k - j), Rs = Rof(Qs);
    const int c = 2 * (j - 1);
    Poly zj(j + 1, cx(0.0));
    zj[j] = w * Rs * Qk / Th;
    B.at(0, c) = zj;
    B.at(0, c + 1) = {w * Qs / Th};
    zj[j] = w * Rs / Th;
    B.at(1, c) = std::move(zj);
    B.at(1, c + 1) = {w * Rk * Qs / Th};
  }
  // History shift: copy pairs down one slot.
  for (int r = 2; r < 2 * m; ++r) B.at(r, r - 2) = {cx(1.0)};
  return B;
}

namespace {

// Coefficient-space m-stage recurrence, O(m^2 N^2).
JostPolynomialPair scatter_sequential(const std::vector<cx>& Q, int N,
                                      const IACoefficients& ia) {
  const int m = ia.m;
  const double bm = ia.beta[m];
  // History ring: pair i = w_{k-1-i}; all start at the free solution (1, 0).
  std::vector<std::vector<cx>> hu(m), hv(m);
  for (int i = 0; i < m; ++i) {
    hu[i].assign(N + 1, cx(0.0));
    hv[i].assign(N + 1, cx(0.0));
    hu[i][0] = cx(1.0);
  }
  std::vector<cx> nu(N + 1), nv(N + 1);
  int newest = 0;

  for (int k = 1; k <= N; ++k) {
    const cx Qk = Qat(Q, k), Rk = Rof(Qk);
    const cx Qp = Qat(Q, k - 1), Rp = Rof(Qp);
    const double Th = theta_of(Qk);
    const double bb1 = ia.beta[m - 1] / bm;
    const auto& u0 = hu[newest];
    const auto& v0 = hv[newest];
    const cx alpha = bb1 * Rp * Qk;
    const cx d01 = bb1 * Qp, d10 = bb1 * Rp, d11 = bb1 * Rk * Qp;
    nu[0] = (u0[0] + d01 * v0[0]) / Th;
    nv[0] = (Rk * u0[0] + d11 * v0[0]) / Th;
    for (int t = 1; t <= k; ++t) {
      nu[t] = (u0[t] + alpha * u0[t - 1] + Qk * v0[t - 1] + d01 * v0[t]) / Th;
      nv[t] = (Rk * u0[t] + d10 * u0[t - 1] + v0[t - 1] + d11 * v0[t]) / Th;
    }
    for (int j = 2; j <= m; ++j) {
      const double w = ia.beta[m - j] / bm;
      const cx Qs = Qat(Q, k - j), Rs = Rof(Qs);
      const auto& uj = hu[(newest + j - 1) % m];
      const auto& vj = hv[(newest + j - 1) % m];
      const cx e00 = w * Rs * Qk / Th, e01 = w * Qs / Th;
      const cx e10 = w * Rs / Th, e11 = w * Rk * Qs / Th;
      for (int t = 0; t <= k; ++t) {
        const cx us = t >= j ? uj[t - j] : cx(0.0);
        nu[t] += e00 * us + e01 * vj[t];
        nv[t] += e10 * us + e11 * vj[t];
      }
    }
    newest = (newest + m - 1) % m;
    std::copy(nu.begin(), nu.begin() + k + 1, hu[newest].begin());
    std::copy(nv.begin(), nv.begin() + k + 1, hv[newest].begin());
  }

  JostPolynomialPair out;
  out.n = N;
  out.c1 = std::move(hu[newest]);
  out.c2 = std::move(hv[newest]);
  return out;
}

JostPolynomialPair scatter_fast(const std::vector<cx>& Q, int N,
                                const IACoefficients& ia) {
  const int m = ia.m;
  std::vector<PolyMatrix> layers;
  layers.reserve(N);
  for (int k = 1; k <= N; ++k) layers.push_back(ia_block_transfer(Q, k, ia));
  PolyMatrix total = tree_product(std::move(layers), 2 * m);

  // Apply to the stacked free initial state (1,0,1,0,...): component sums of
  // the even-indexed columns.
  JostPolynomialPair out;
  out.n = N;
  out.c1.assign(N + 1, cx(0.0));
  out.c2.assign(N + 1, cx(0.0));
  for (int j = 0; j < m; ++j) {
    poly::add_into(out.c1, total.at(0, 2 * j));
    poly::add_into(out.c2, total.at(1, 2 * j));
  }
  out.c1.resize(N + 1, cx(0.0));
  out.c2.resize(N + 1, cx(0.0));
  return out;
}

}  // namespace

JostPolynomialPair forward_scatter_ia(const SampledPotential& p, int m,
                                      ScatterMode mode) {
  const IACoefficients ia = IACoefficients::stages(m);
  const std::vector<cx> Q = coupling_array(p, ia.beta[m]);
  if (mode == ScatterMode::sequential) {
    return scatter_sequential(Q, p.grid.N, ia);
  }
  return scatter_fast(Q, p.grid.N, ia);
}

JostPolynomialPair forward_scatter_tr(const SampledPotential& p,
                                      ScatterMode mode) {
  return forward_scatter_ia(p, 1, mode);
}

ReflectionSamples reflection_samples(const JostPolynomialPair& P,
                                     const TimeGrid& grid, int M) {
  if (M < 1 || !fft::is_pow2(static_cast<std::size_t>(M))) {
    throw validation_error("reflection_samples: M must be a power of two");
  }
  const long ellp = grid.shift_exponent();
  const std::size_t L = 2 * static_cast<std::size_t>(M);
  std::vector<cx> A = poly::eval_unit_circle(P.c1, L);
  std::vector<cx> B = poly::eval_unit_circle(P.c2, L);

  double amax = 0.0;
  for (const cx& a : A) amax = std::max(amax, std::abs(a));
  const double tol = 1e-12 * amax;

  // Delay phases (z_j^2)^{-ell_plus} as exact powers of the 2M-th root.
  std::vector<cx> delay(L);
  for (std::size_t r = 0; r < L; ++r) {
    delay[r] = std::polar(1.0, 2.0 * kPi * static_cast<double>(r) /
                                   static_cast<double>(L));
  }

  ReflectionSamples out;
  out.xi.resize(L);
  out.rho.resize(L);
  const double dxi = kPi / (2.0 * M * grid.h);
  for (long j = -M; j < M; ++j) {
    const std::size_t i = static_cast<std::size_t>(j + M);
    const std::size_t idx = static_cast<std::size_t>((j + 2 * M) % (2 * M));
    out.xi[i] = static_cast<double>(j) * dxi;
    const cx a = A[idx];
    if (std::abs(a) <= tol) {
      out.near_zero_a.push_back(static_cast<long>(i));
      out.rho[i] = cx(0.0);
      continue;
    }
    const long rexp = ((-j * ellp) % static_cast<long>(L) +
                       static_cast<long>(L)) %
                      static_cast<long>(L);
    out.rho[i] = delay[static_cast<std::size_t>(rexp)] * B[idx] / a;
  }
  return out;
}

std::pair<cx, cx> scatter_at(const SampledPotential& p, int m, double xi) {
  const IACoefficients ia = IACoefficients::stages(m);
  const std::vector<cx> Q = coupling_array(p, ia.beta[m]);
  const int N = p.grid.N;
  const double bm = ia.beta[m];
  const cx z2 = std::polar(1.0, 2.0 * xi * p.grid.h);

  std::vector<cx> hu(m, cx(1.0)), hv(m, cx(0.0));
  int newest = 0;
  for (int k = 1; k <= N; ++k) {
    const cx Qk = Qat(Q, k), Rk = Rof(Qk);
    const cx Qp = Qat(Q, k - 1), Rp = Rof(Qp);
    const double Th = theta_of(Qk);
    const double bb1 = ia.beta[m - 1] / bm;
    cx u = ((cx(1.0) + z2 * bb1 * Rp * Qk) * hu[newest] +
            (z2 * Qk + bb1 * Qp) * hv[newest]) /
           Th;
    cx v = ((Rk + z2 * bb1 * Rp) * hu[newest] +
            (z2 + bb1 * Rk * Qp) * hv[newest]) /
           Th;
    cx zj = z2;
    for (int j = 2; j <= m; ++j) {
      zj *= z2;
      const double w = ia.beta[m - j] / bm;
      const cx Qs = Qat(Q, k - j), Rs = Rof(Qs);
      const cx uj = hu[(newest + j - 1) % m];
      const cx vj = hv[(newest + j - 1) % m];
      u += w * (zj * Rs * Qk * uj + Qs * vj) / Th;
      v += w * (zj * Rs * uj + Rk * Qs * vj) / Th;
    }
    newest = (newest + m - 1) % m;
    hu[newest] = u;
    hv[newest] = v;
  }
  const long ellp = p.grid.shift_exponent();
  const cx b = std::polar(1.0, -2.0 * xi * p.grid.h * ellp) * hv[newest];
  return {hu[newest], b};
}

namespace {

// Renormalized m-stage propagation at complex z^2 = exp(2 i zeta h): returns
// unit-sup-norm vectors pbar[n] and real log-scales L[n] with
// P(n) = exp(L[n]) pbar[n].
void ia_jost_scaled(const std::vector<cx>& Q, int N, const IACoefficients& ia,
                    cx z2, std::vector<std::array<cx, 2>>& pbar,
                    std::vector<double>& L) {
  const int m = ia.m;
  const double bm = ia.beta[m];
  pbar.assign(N + 1, {cx(0.0), cx(0.0)});
  L.assign(N + 1, 0.0);
  pbar[0] = {cx(1.0), cx(0.0)};

  std::vector<std::array<cx, 2>> hist(m, {cx(1.0), cx(0.0)});
  std::vector<double> histL(m, 0.0);
  int newest = 0;
  for (int k = 1; k <= N; ++k) {
    const cx Qk = Qat(Q, k), Rk = Rof(Qk);
    const cx Qp = Qat(Q, k - 1), Rp = Rof(Qp);
    const double Th = theta_of(Qk);
    const double bb1 = ia.beta[m - 1] / bm;
    const double Lref = histL[newest];
    const auto& w0 = hist[newest];
    cx u = ((cx(1.0) + z2 * bb1 * Rp * Qk) * w0[0] +
            (z2 * Qk + bb1 * Qp) * w0[1]) /
           Th;
    cx v = ((Rk + z2 * bb1 * Rp) * w0[0] + (z2 + bb1 * Rk * Qp) * w0[1]) / Th;
    cx zj = z2;
    for (int j = 2; j <= m; ++j) {
      zj *= z2;
      const double w = ia.beta[m - j] / bm;
      const cx Qs = Qat(Q, k - j), Rs = Rof(Qs);
      const int slot = (newest + j - 1) % m;
      const double fac = std::exp(histL[slot] - Lref);
      const auto& wj = hist[slot];
      u += w * fac * (zj * Rs * Qk * wj[0] + Qs * wj[1]) / Th;
      v += w * fac * (zj * Rs * wj[0] + Rk * Qs * wj[1]) / Th;
    }
    const double s = std::max(std::abs(u), std::abs(v));
    double Lk = Lref;
    if (s > 0.0) {
      u /= s;
      v /= s;
      Lk += std::log(s);
    }
    newest = (newest + m - 1) % m;
    hist[newest] = {u, v};
    histL[newest] = Lk;
    pbar[k] = {u, v};
    L[k] = Lk;
  }
}

}  // namespace

std::vector<cx> norming_constants(const SampledPotential& p,
                                  const std::vector<cx>& zetas, int m) {
  const IACoefficients ia = IACoefficients::stages(m);
  const std::vector<cx> Q = coupling_array(p, ia.beta[m]);
  const int N = p.grid.N;

  // Conjugate-reversed samples generate the right Jost solution:
  // psi_q(t) = sigma_1 phi_{q~}(-t) with q~(t) = conj(q(-t)).
  std::vector<cx> qrev(N + 1);
  for (int n = 0; n <= N; ++n) qrev[n] = std::conj(p.q[N - n]);
  SampledPotential prev(p.grid, std::move(qrev));
  const std::vector<cx> Qrev = coupling_array(prev, ia.beta[m]);

  std::vector<cx> out;
  out.reserve(zetas.size());
  std::vector<std::array<cx, 2>> phib, phitb;
  std::vector<double> Lph, Lpht;
  for (const cx zeta : zetas) {
    if (!(zeta.imag() > 0.0)) {
      throw validation_error(
          "norming_constants: eigenvalues must lie in the upper half plane");
    }
    const cx z2 = std::exp(cx(0.0, 2.0) * zeta * p.grid.h);
    ia_jost_scaled(Q, N, ia, z2, phib, Lph);
    ia_jost_scaled(Qrev, N, ia, z2, phitb, Lpht);

    // Match where both second components carry weight.
    int nstar = 0;
    double best = -1.0;
    for (int n = 0; n <= N; ++n) {
      const double sig = std::abs(phib[n][1]) * std::abs(phitb[N - n][0]);
      if (sig > best) {
        best = sig;
        nstar = n;
      }
    }
    const cx psi2 = phitb[N - nstar][0];  // sigma_1 swap of component 0
    if (best <= 0.0 || std::abs(psi2) == 0.0) {
      out.push_back(cx(0.0));
      continue;
    }
    const double t = p.grid.node(nstar);
    const cx b = std::exp(cx(Lph[nstar] - Lpht[N - nstar], 0.0) -
                          cx(0.0, 2.0) * zeta * t) *
                 phib[nstar][1] / psi2;
    out.push_back(b);
  }
  return out;
}

}  // namespace nft
