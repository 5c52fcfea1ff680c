#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nftlab/fft.hpp"
#include "nftlab/polyops.hpp"

using namespace nft;

namespace {

std::mt19937_64 rng(12345);

Poly random_poly(std::size_t n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly p(n);
  for (auto& c : p) c = scale * cx(u(rng), u(rng));
  return p;
}

// Direct quadratic convolution, used as the reference for the FFT product.
Poly conv_reference(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, cx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

double max_diff(const Poly& a, const Poly& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("fft of an impulse is flat and the round trip is exact") {
  std::vector<cx> v(16, cx(0.0));
  v[0] = cx(1.0, 0.0);
  std::vector<cx> f = v;
  fft::transform(f, -1);
  for (const cx& x : f) CHECK(std::abs(x - cx(1.0)) < 1e-15);

  std::vector<cx> w(32);
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = cx(std::sin(0.3 * i), std::cos(1.1 * i));
  }
  std::vector<cx> t = w;
  fft::transform(t, -1);
  fft::transform(t, +1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(std::abs(t[i] / double(w.size()) - w[i]) < 1e-13);
  }
}

TEST_CASE("product matches the direct convolution in both regimes") {
  // Small sizes take the schoolbook path, large ones the FFT path.
  for (auto [na, nb] : {std::pair<int, int>{5, 7}, {40, 53}, {130, 97}}) {
    const Poly a = random_poly(na);
    const Poly b = random_poly(nb);
    const Poly ref = conv_reference(a, b);
    CHECK(max_diff(poly::mul(a, b), ref) < 1e-11);
  }
}

TEST_CASE("truncated product equals the prefix of the full product") {
  const Poly a = random_poly(48);
  const Poly b = random_poly(37);
  const Poly full = poly::mul(a, b);
  for (std::size_t keep : {1u, 5u, 20u, 84u, 100u}) {
    const Poly t = poly::mul_trunc(a, b, keep);
    REQUIRE(t.size() == std::min<std::size_t>(keep, full.size()));
    for (std::size_t i = 0; i < t.size(); ++i) {
      const cx want = i < full.size() ? full[i] : cx(0.0);
      CHECK(std::abs(t[i] - want) < 1e-11);
    }
  }
}

TEST_CASE("multiplying by zero or empty gives zero") {
  const Poly a = random_poly(6);
  CHECK(poly::mul(a, Poly{}).empty());
  CHECK(poly::mul(Poly{}, a).empty());
  CHECK(poly::mul_trunc(a, Poly{}, 4).size() <= 4);
}

TEST_CASE("evaluation agrees with explicit powers") {
  const Poly p{cx(1, 0), cx(0, 2), cx(-3, 1)};
  const cx z2(0.4, -0.9);
  const cx want = p[0] + p[1] * z2 + p[2] * z2 * z2;
  CHECK(std::abs(poly::eval(p, z2) - want) < 1e-14);
}

TEST_CASE("circle evaluation matches pointwise evaluation and folds degree") {
  const std::size_t L = 16;
  const Poly p = random_poly(L + 5);  // degree beyond L exercises folding
  const std::vector<cx> vals = poly::eval_unit_circle(p, L);
  REQUIRE(vals.size() == L);
  for (std::size_t j = 0; j < L; ++j) {
    const cx z2 = std::polar(1.0, 2.0 * kPi * double(j) / double(L));
    CHECK(std::abs(vals[j] - poly::eval(p, z2)) < 1e-12);
  }
}

TEST_CASE("series inverse is a true reciprocal") {
  Poly a = random_poly(20, 0.3);
  a[0] = cx(1.4, -0.2);
  const std::size_t keep = 20;
  const Poly inv = poly::series_inv(a, keep);
  const Poly prod = poly::mul_trunc(a, inv, keep);
  CHECK(std::abs(prod[0] - cx(1.0)) < 1e-12);
  for (std::size_t i = 1; i < keep; ++i) CHECK(std::abs(prod[i]) < 1e-12);
}

TEST_CASE("series log and exp invert each other") {
  Poly a = random_poly(24, 0.2);
  a[0] = cx(0.9, 0.1);
  const Poly back = poly::series_exp(poly::series_log(a, 24), 24);
  CHECK(max_diff(back, a) < 1e-12);
}

TEST_CASE("series exp matches the derivative-recurrence oracle") {
  // Independent construction: y = exp(g) satisfies y' = g' y, so
  // (k+1) y_{k+1} = sum_{j} (j+1) g_{j+1} y_{k-j}.
  Poly g = random_poly(18, 0.4);
  const std::size_t keep = 18;
  Poly ref(keep, cx(0.0));
  ref[0] = std::exp(g[0]);
  for (std::size_t k = 0; k + 1 < keep; ++k) {
    cx acc(0.0);
    for (std::size_t j = 0; j <= k; ++j) {
      if (j + 1 < g.size()) acc += double(j + 1) * g[j + 1] * ref[k - j];
    }
    ref[k + 1] = acc / double(k + 1);
  }
  CHECK(max_diff(poly::series_exp(g, keep), ref) < 1e-12);
}

TEST_CASE("matrix product accumulates prefactor powers") {
  PolyMatrix A(2, 2, -1);
  PolyMatrix B(2, 2, -3);
  A.at(0, 0) = {cx(1.0)};
  A.at(1, 1) = {cx(1.0)};
  B.at(0, 0) = {cx(2.0)};
  B.at(1, 1) = {cx(0.0), cx(1.0)};
  const PolyMatrix C = polymat_mul(A, B);
  CHECK(C.prefactor_power == -4);
  CHECK(std::abs(C.at(0, 0)[0] - cx(2.0)) < 1e-15);
  CHECK(std::abs(C.at(1, 1)[1] - cx(1.0)) < 1e-15);
  CHECK(C.at(0, 1).empty());
}

namespace {

PolyMatrix random_layer() {
  PolyMatrix m(2, 2, -1);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m.at(r, c) = random_poly(2, 0.8);
  }
  return m;
}

cx det_at(const PolyMatrix& m, cx z2) {
  return poly::eval(m.at(0, 0), z2) * poly::eval(m.at(1, 1), z2) -
         poly::eval(m.at(0, 1), z2) * poly::eval(m.at(1, 0), z2);
}

}  // namespace

TEST_CASE("balanced product equals the sequential product") {
  std::vector<PolyMatrix> ms;
  for (int i = 0; i < 9; ++i) ms.push_back(random_layer());

  PolyMatrix seq = PolyMatrix::identity(2);
  for (const PolyMatrix& m : ms) seq = polymat_mul(m, seq);
  const PolyMatrix tree = tree_product(ms);

  CHECK(tree.prefactor_power == seq.prefactor_power);
  double scale = 0.0;
  for (const Poly& e : seq.entries) {
    for (const cx& c : e) scale = std::max(scale, std::abs(c));
  }
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      Poly a = tree.at(r, c), b = seq.at(r, c);
      const std::size_t n = std::max(a.size(), b.size());
      a.resize(n, cx(0.0));
      b.resize(n, cx(0.0));
      CHECK(max_diff(a, b) < 1e-10 * scale);
    }
  }
}

TEST_CASE("determinants multiply across the balanced product") {
  std::vector<PolyMatrix> ms;
  for (int i = 0; i < 6; ++i) ms.push_back(random_layer());
  const PolyMatrix tree = tree_product(ms);
  for (int j = 0; j < 8; ++j) {
    const cx z2 = std::polar(1.0, 2.0 * kPi * j / 8.0 + 0.123);
    cx prod(1.0);
    for (const PolyMatrix& m : ms) prod *= det_at(m, z2);
    const cx dt = det_at(tree, z2);
    CHECK(std::abs(dt - prod) < 1e-10 * std::max(1.0, std::abs(prod)));
  }
}

TEST_CASE("empty product list yields the identity") {
  const PolyMatrix id = tree_product({}, 2);
  CHECK(id.rows == 2);
  CHECK(id.prefactor_power == 0);
  CHECK(std::abs(id.at(0, 0)[0] - cx(1.0)) < 1e-15);
  CHECK(id.at(0, 1).empty());
}
