#pragma once

#include <cstddef>
#include <vector>

#include "nftlab/types.hpp"

namespace nft {

// Dense polynomial in the variable z^2: coefficient k multiplies z^{2k}.
// An empty vector is the zero polynomial.
using Poly = std::vector<cx>;

namespace poly {

// Full product; switches from schoolbook to FFT convolution once the smaller
// factor exceeds kMulCrossover coefficients.
inline constexpr std::size_t kMulCrossover = 32;

Poly mul(const Poly& a, const Poly& b);

// First `keep` coefficients of a*b.
Poly mul_trunc(const Poly& a, const Poly& b, std::size_t keep);

void add_into(Poly& dst, const Poly& src);

cx eval(const Poly& p, cx z2);

// Values of p at the L-th roots of unity z2_j = exp(+2 pi i j / L),
// j = 0..L-1.  L must be a power of two; coefficients beyond L fold back
// modulo L, which is exact on the evaluation circle.
std::vector<cx> eval_unit_circle(const Poly& p, std::size_t L);

// Truncated power-series helpers (all return `keep` coefficients).
Poly series_inv(const Poly& a, std::size_t keep);  // needs a[0] != 0
Poly series_log(const Poly& a, std::size_t keep);  // needs a[0] != 0
Poly series_exp(const Poly& g, std::size_t keep);  // Newton iteration

}  // namespace poly

// Matrix with polynomial entries.  `prefactor_power` tracks a net power of z
// carried outside the entries (each scattering layer contributes z^{-1});
// polymat_mul adds the prefactors.
struct PolyMatrix {
  int rows = 0;
  int cols = 0;
  int prefactor_power = 0;
  std::vector<Poly> entries;  // row-major

  PolyMatrix() = default;
  PolyMatrix(int r, int c, int prefactor = 0);

  Poly& at(int r, int c);
  const Poly& at(int r, int c) const;

  static PolyMatrix identity(int n);
};

PolyMatrix polymat_mul(const PolyMatrix& A, const PolyMatrix& B);

// Product ms[last] * ... * ms[first] (the order in which the factors act on a
// right-hand vector), evaluated by balanced pairwise folding so that every
// level multiplies polynomials of comparable degree.  An empty list yields
// the identity of dimension `dim_if_empty`.
PolyMatrix tree_product(std::vector<PolyMatrix> ms, int dim_if_empty = 2);

}  // namespace nft
