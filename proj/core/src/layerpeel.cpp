#include "nftlab/layerpeel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nft {

namespace {

struct StepW {
  cx Rc, Rp;
  cx W0[2][2], W1[2][2];  // stripped inverse W(z^2) = W0 + z^2 W1
};

// One peel from the leading two coefficients of P^{(n+1)}.  `len` is the
// number of valid coefficients (>= 1); index 1 is treated as zero when
// absent.  `layer` only labels the error.
StepW step_impl(const cx* c1, const cx* c2, std::size_t len, double tol,
                long layer) {
  const cx p1 = c1[0];
  if (std::abs(p1) <= tol) {
    throw numeric_error("lp_step: degenerate pivot |P1,0| at layer " +
                            std::to_string(layer),
                        layer);
  }
  StepW s;
  s.Rc = c2[0] / p1;
  const cx Qc = -std::conj(s.Rc);
  const cx denom = p1 - Qc * c2[0];
  if (std::abs(denom) <= tol) {
    throw numeric_error("lp_step: degenerate pivot |P1,0 - Q P2,0| at layer " +
                            std::to_string(layer),
                        layer);
  }
  const cx c11 = len > 1 ? c1[1] : cx(0.0);
  const cx c21 = len > 1 ? c2[1] : cx(0.0);
  const cx chi = (c21 - s.Rc * c11) / denom;
  // Admissible branch of R (1 - |R|^2) = 1 / (1 + |Q|^2): |Rp| < 1 always.
  s.Rp = chi / (1.0 + std::sqrt(1.0 + std::norm(chi)));
  const cx Qp = -std::conj(s.Rp);
  const double Thp = 1.0 + std::norm(Qp);

  s.W0[0][0] = s.Rc * Qp / Thp;
  s.W0[0][1] = -Qp / Thp;
  s.W0[1][0] = -s.Rc / Thp;
  s.W0[1][1] = cx(1.0) / Thp;
  s.W1[0][0] = cx(1.0) / Thp;
  s.W1[0][1] = -Qc / Thp;
  s.W1[1][0] = -s.Rp / Thp;
  s.W1[1][1] = Qc * s.Rp / Thp;
  return s;
}

void pad_to(Poly& p, std::size_t n) {
  if (p.size() < n) p.resize(n, cx(0.0));
}

// New window coefficient j of P^{(n)} = z^{-2} W P^{(n+1)}:
// (W0 c)_{j+1} + (W1 c)_j.
void apply_shift(const StepW& s, const cx* c1, const cx* c2, std::size_t keep,
                 cx* o1, cx* o2) {
  for (std::size_t j = 0; j < keep; ++j) {
    o1[j] = s.W0[0][0] * c1[j + 1] + s.W0[0][1] * c2[j + 1] +
            s.W1[0][0] * c1[j] + s.W1[0][1] * c2[j];
    o2[j] = s.W0[1][0] * c1[j + 1] + s.W0[1][1] * c2[j + 1] +
            s.W1[1][0] * c1[j] + s.W1[1][1] * c2[j];
  }
}

SampledPotential from_reflectivity(const std::vector<cx>& R,
                                   const TimeGrid& grid) {
  const double s = kTrScale * grid.h;
  std::vector<cx> q(grid.N + 1);
  q[0] = cx(0.0);
  for (int n = 1; n <= grid.N; ++n) q[n] = -std::conj(R[n]) / s;
  return SampledPotential(grid, std::move(q));
}

void check_pair(const JostPolynomialPair& P, const TimeGrid& grid) {
  if (P.n != grid.N) {
    throw validation_error("layer peeling: Jost pair order != grid N");
  }
}

constexpr double kPivotTol = 1e-14;

void lp_fast_rec(const cx* c1, const cx* c2, std::size_t count, bool need_V,
                 long top_layer, std::vector<cx>& samples, PolyMatrix* V) {
  if (count == 1) {
    const StepW s = step_impl(c1, c2, 2, kPivotTol, top_layer);
    samples.push_back(s.Rc);
    if (need_V) {
      *V = PolyMatrix(2, 2, -2);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) V->at(i, j) = {s.W0[i][j], s.W1[i][j]};
      }
    }
    return;
  }

  const std::size_t L = count / 2;
  const std::size_t right = count - L;

  // Peel the top L layers from the truncated window.
  std::vector<cx> t1(c1, c1 + L + 1), t2(c2, c2 + L + 1);
  PolyMatrix VL;
  lp_fast_rec(t1.data(), t2.data(), L, true, top_layer, samples, &VL);

  // Mid pair: coefficients L..count of VL * P (the z^{-2L} shift of the
  // composed stripped inverses).
  Poly w1(c1, c1 + count + 1), w2(c2, c2 + count + 1);
  Poly p1 = poly::mul_trunc(VL.at(0, 0), w1, count + 1);
  poly::add_into(p1, poly::mul_trunc(VL.at(0, 1), w2, count + 1));
  Poly p2 = poly::mul_trunc(VL.at(1, 0), w1, count + 1);
  poly::add_into(p2, poly::mul_trunc(VL.at(1, 1), w2, count + 1));
  pad_to(p1, count + 1);
  pad_to(p2, count + 1);
  std::vector<cx> m1(p1.begin() + L, p1.end());
  std::vector<cx> m2(p2.begin() + L, p2.end());
  m1.resize(right + 1, cx(0.0));
  m2.resize(right + 1, cx(0.0));

  PolyMatrix VR;
  lp_fast_rec(m1.data(), m2.data(), right, need_V,
              top_layer - static_cast<long>(L), samples,
              need_V ? &VR : nullptr);
  if (need_V) *V = polymat_mul(VR, VL);
}

}  // namespace

LpStepResult lp_step(const Poly& c1, const Poly& c2, double pivot_tol) {
  if (c1.empty()) throw validation_error("lp_step: empty coefficient array");
  cx zero(0.0);
  const cx* p2 = c2.empty() ? &zero : c2.data();
  const std::size_t len = std::min(c1.size(), std::max<std::size_t>(c2.size(), 1));
  const StepW s = step_impl(c1.data(), p2, len, pivot_tol, -1);
  LpStepResult out;
  out.R_cur = s.Rc;
  out.R_prev = s.Rp;
  out.Minv = PolyMatrix(2, 2, -2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.Minv.at(i, j) = {s.W0[i][j], s.W1[i][j]};
  }
  return out;
}

SampledPotential lp_sequential(const JostPolynomialPair& P,
                               const TimeGrid& grid) {
  check_pair(P, grid);
  const int N = grid.N;
  std::vector<cx> a1(P.c1), a2(P.c2);
  a1.resize(N + 1, cx(0.0));
  a2.resize(N + 1, cx(0.0));
  std::vector<cx> b1(N + 1), b2(N + 1);
  std::vector<cx> R(N + 1, cx(0.0));

  for (int m = N; m >= 1; --m) {
    const StepW s = step_impl(a1.data(), a2.data(), m + 1, kPivotTol, m);
    R[m] = s.Rc;
    apply_shift(s, a1.data(), a2.data(), m, b1.data(), b2.data());
    a1.swap(b1);
    a2.swap(b2);
  }
  return from_reflectivity(R, grid);
}

SampledPotential lp_fast(const JostPolynomialPair& P, const TimeGrid& grid) {
  check_pair(P, grid);
  const int N = grid.N;
  std::vector<cx> c1(P.c1), c2(P.c2);
  c1.resize(N + 1, cx(0.0));
  c2.resize(N + 1, cx(0.0));

  std::vector<cx> samples;
  samples.reserve(N);
  lp_fast_rec(c1.data(), c2.data(), N, false, N, samples, nullptr);

  std::vector<cx> R(N + 1, cx(0.0));
  for (int i = 0; i < N; ++i) R[N - i] = samples[i];
  return from_reflectivity(R, grid);
}

}  // namespace nft
