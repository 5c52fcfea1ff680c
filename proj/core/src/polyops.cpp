#include "nftlab/polyops.hpp"

#include <algorithm>
#include <cmath>

#include "nftlab/fft.hpp"

namespace nft {
namespace poly {

namespace {

Poly mul_schoolbook(const Poly& a, const Poly& b, std::size_t keep) {
  const std::size_t out_len = std::min(keep, a.size() + b.size() - 1);
  Poly r(out_len, cx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i >= out_len) break;
    const cx ai = a[i];
    const std::size_t jmax = std::min(b.size(), out_len - i);
    for (std::size_t j = 0; j < jmax; ++j) r[i + j] += ai * b[j];
  }
  return r;
}

Poly mul_fft(const Poly& a, const Poly& b, std::size_t keep) {
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t out_len = std::min(keep, full);
  const std::size_t L = fft::next_pow2(full);
  std::vector<cx> fa(L, cx(0.0)), fb(L, cx(0.0));
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft::transform(fa, -1);
  fft::transform(fb, -1);
  for (std::size_t i = 0; i < L; ++i) fa[i] *= fb[i];
  fft::transform(fa, +1);
  const double inv = 1.0 / static_cast<double>(L);
  Poly r(out_len);
  for (std::size_t i = 0; i < out_len; ++i) r[i] = fa[i] * inv;
  return r;
}

Poly mul_impl(const Poly& a, const Poly& b, std::size_t keep) {
  if (a.empty() || b.empty() || keep == 0) return {};
  if (std::min(a.size(), b.size()) <= kMulCrossover) {
    return mul_schoolbook(a, b, keep);
  }
  return mul_fft(a, b, keep);
}

}  // namespace

Poly mul(const Poly& a, const Poly& b) {
  return mul_impl(a, b, ~std::size_t{0});
}

Poly mul_trunc(const Poly& a, const Poly& b, std::size_t keep) {
  if (a.size() > keep && b.size() > keep) {
    // Coefficients beyond `keep` in either factor cannot reach the output.
    Poly ta(a.begin(), a.begin() + keep);
    Poly tb(b.begin(), b.begin() + keep);
    return mul_impl(ta, tb, keep);
  }
  return mul_impl(a, b, keep);
}

void add_into(Poly& dst, const Poly& src) {
  if (src.size() > dst.size()) dst.resize(src.size(), cx(0.0));
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

cx eval(const Poly& p, cx z2) {
  cx acc(0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z2 + *it;
  return acc;
}

std::vector<cx> eval_unit_circle(const Poly& p, std::size_t L) {
  if (!fft::is_pow2(L)) {
    throw validation_error("eval_unit_circle: L must be a power of two");
  }
  std::vector<cx> a(L, cx(0.0));
  for (std::size_t k = 0; k < p.size(); ++k) a[k % L] += p[k];
  fft::transform(a, +1);
  return a;
}

Poly series_inv(const Poly& a, std::size_t keep) {
  if (a.empty() || a[0] == cx(0.0)) {
    throw validation_error("series_inv: constant term must be nonzero");
  }
  Poly x{cx(1.0) / a[0]};
  std::size_t prec = 1;
  while (prec < keep) {
    prec = std::min(2 * prec, keep);
    Poly ax = mul_trunc(a, x, prec);
    for (auto& c : ax) c = -c;
    ax[0] += cx(2.0);
    x = mul_trunc(x, ax, prec);
  }
  x.resize(keep, cx(0.0));
  return x;
}

namespace {

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) {
    d[k - 1] = static_cast<double>(k) * p[k];
  }
  return d;
}

Poly integral_zero_const(const Poly& p, std::size_t keep) {
  Poly g(std::min(keep, p.size() + 1), cx(0.0));
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    g[k + 1] = p[k] / static_cast<double>(k + 1);
  }
  return g;
}

}  // namespace

Poly series_log(const Poly& a, std::size_t keep) {
  if (a.empty() || a[0] == cx(0.0)) {
    throw validation_error("series_log: constant term must be nonzero");
  }
  // log a = log a0 + integral(a' / a).
  Poly da = derivative(a);
  Poly ia = series_inv(a, keep);
  Poly g = integral_zero_const(mul_trunc(da, ia, keep), keep);
  g.resize(keep, cx(0.0));
  g[0] = std::log(a[0]);
  return g;
}

Poly series_exp(const Poly& g, std::size_t keep) {
  if (keep == 0) return {};
  const cx g0 = g.empty() ? cx(0.0) : g[0];
  Poly y{std::exp(g0)};
  std::size_t prec = 1;
  while (prec < keep) {
    prec = std::min(2 * prec, keep);
    // y <- y * (1 + g - log y), all truncated to the current precision.
    Poly corr = series_log(y, prec);
    corr.resize(prec, cx(0.0));
    for (std::size_t k = 0; k < prec; ++k) {
      const cx gk = k < g.size() ? g[k] : cx(0.0);
      corr[k] = gk - corr[k];
    }
    corr[0] += cx(1.0);
    y = mul_trunc(y, corr, prec);
  }
  y.resize(keep, cx(0.0));
  return y;
}

}  // namespace poly

PolyMatrix::PolyMatrix(int r, int c, int prefactor)
    : rows(r), cols(c), prefactor_power(prefactor), entries(r * c) {}

Poly& PolyMatrix::at(int r, int c) { return entries[r * cols + c]; }

const Poly& PolyMatrix::at(int r, int c) const { return entries[r * cols + c]; }

PolyMatrix PolyMatrix::identity(int n) {
  PolyMatrix m(n, n, 0);
  for (int i = 0; i < n; ++i) m.at(i, i) = {cx(1.0)};
  return m;
}

PolyMatrix polymat_mul(const PolyMatrix& A, const PolyMatrix& B) {
  if (A.cols != B.rows) throw validation_error("polymat_mul: shape mismatch");
  PolyMatrix out(A.rows, B.cols, A.prefactor_power + B.prefactor_power);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < B.cols; ++j) {
      Poly acc;
      for (int k = 0; k < A.cols; ++k) {
        const Poly& a = A.at(i, k);
        const Poly& b = B.at(k, j);
        if (a.empty() || b.empty()) continue;
        poly::add_into(acc, poly::mul(a, b));
      }
      out.at(i, j) = std::move(acc);
    }
  }
  return out;
}

PolyMatrix tree_product(std::vector<PolyMatrix> ms, int dim_if_empty) {
  if (ms.empty()) return PolyMatrix::identity(dim_if_empty);
  while (ms.size() > 1) {
    std::vector<PolyMatrix> next;
    next.reserve((ms.size() + 1) / 2);
    std::size_t i = 0;
    for (; i + 1 < ms.size(); i += 2) {
      // Later factors act later: pair (m_i, m_{i+1}) -> m_{i+1} * m_i.
      next.push_back(polymat_mul(ms[i + 1], ms[i]));
    }
    if (i < ms.size()) next.push_back(std::move(ms[i]));
    ms = std::move(next);
  }
  return std::move(ms.front());
}

}  // namespace nft
