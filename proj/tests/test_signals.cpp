#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nftlab/signals.hpp"
#include "nftlab/types.hpp"

using namespace nft;

TEST_CASE("complex gamma matches high-precision reference values") {
  struct Ref {
    cx z;
    cx g;
  };
  // Reference values computed with 30-digit arithmetic.
  const Ref refs[] = {
      {cx(0.5, 0.0), cx(1.772453850905516, 0.0)},
      {cx(1.0, 0.0), cx(1.0, 0.0)},
      {cx(4.7421875, 0.0), cx(16.399595408830487, 0.0)},
      {cx(0.5, -1.3), cx(0.19561338484274454, 0.25982035414251189)},
      {cx(0.9, -0.4), cx(0.89106238118178382, 0.24752571107578632)},
      {cx(2.3, 1.7), cx(0.20137700992931733, 0.54181334265829778)},
      {cx(-0.7, 0.2), cx(-3.1493696653793781, 1.1210029647106105)},
      {cx(-2.5, -1.1), cx(-0.023782292155572507, 0.068496258858231246)},
      {cx(0.1, 0.0), cx(9.5135076986687313, 0.0)},
      {cx(6.5, -3.2), cx(117.0077615689783, 50.357027248724613)},
  };
  for (const Ref& r : refs) {
    CHECK(std::abs(gamma_c(r.z) - r.g) <= 1e-13 * std::abs(r.g));
  }
}

TEST_CASE("gamma satisfies the reflection identity") {
  for (cx z : {cx(0.3, 0.7), cx(-1.2, 0.4), cx(0.5, -2.0), cx(2.7, 1.1)}) {
    const cx lhs = gamma_c(z) * gamma_c(1.0 - z);
    const cx rhs = kPi / std::sin(kPi * z);
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("gamma satisfies the recurrence") {
  for (cx z : {cx(0.4, 0.2), cx(1.9, -0.8), cx(-0.6, 1.5)}) {
    CHECK(std::abs(gamma_c(z + 1.0) - z * gamma_c(z)) <
          1e-12 * std::abs(gamma_c(z + 1.0)));
  }
}

TEST_CASE("radiative sech reflection at the origin") {
  // -sin(0.4 pi) / sin(0.1 pi) for A_R = 0.4, K = 0.
  const cx r0 = sech_rho_radiative(0.4, 0, 0.0);
  CHECK(std::abs(r0 - cx(-3.0776835371752527, 0.0)) < 1e-12);
  // One soliton's Blaschke factor flips the sign of the full reflection; the
  // radiative part flips with sin((A_R + K) pi).
  const cx r1 = sech_rho_radiative(0.4, 1, 0.0);
  CHECK(std::abs(r1 - cx(+3.0776835371752527, 0.0)) < 1e-12);
}

TEST_CASE("radiative reflection decays like sech(pi xi)") {
  const cx r2 = sech_rho_radiative(0.4, 0, 2.0);
  CHECK(std::abs(r2) < std::abs(sech_rho_radiative(0.4, 0, 1.0)));
  CHECK(std::abs(r2) > 0.0);
  // Far tail underflows cleanly to zero.
  CHECK(sech_rho_radiative(0.4, 0, 500.0) == cx(0.0));
}

TEST_CASE("transmission identity of the sech family") {
  // |a|^2 (1 + |rho|^2) = 1 on the real axis, radiative and multi-soliton.
  for (double xi : {0.0, 0.35, 1.2, 2.5}) {
    const double a0 = std::abs(sech_a_exact(0.4, xi));
    const double r0 = std::abs(sech_rho_radiative(0.4, 0, xi));
    CHECK(a0 * a0 * (1.0 + r0 * r0) == doctest::Approx(1.0).epsilon(1e-12));

    const double a1 = std::abs(sech_a_exact(1.4, xi));
    const double r1 = std::abs(sech_rho_radiative(0.4, 1, xi));
    CHECK(a1 * a1 * (1.0 + r1 * r1) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sech family spectrum composition") {
  const NFSpectrum sp = sech_spectrum(0.4, 2);
  REQUIRE(sp.discrete.size() == 2);
  CHECK(std::abs(sp.discrete.states[0].zeta - cx(0.0, 1.9)) < 1e-15);
  CHECK(std::abs(sp.discrete.states[0].b - cx(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(sp.discrete.states[1].zeta - cx(0.0, 0.9)) < 1e-15);
  CHECK(std::abs(sp.discrete.states[1].b - cx(1.0, 0.0)) < 1e-15);
  CHECK_FALSE(sp.rho.zero());

  // The full reflection divides out the Blaschke product, so its magnitude
  // matches the radiative one on the real axis.
  for (double xi : {0.2, 0.9}) {
    CHECK(std::abs(sp.rho.eval(xi)) ==
          doctest::Approx(std::abs(sech_rho_radiative(0.4, 2, xi)))
              .epsilon(1e-12));
  }

  const NFSpectrum pure = sech_spectrum(0.0, 3);
  CHECK(pure.rho.zero());
  REQUIRE(pure.discrete.size() == 3);
  CHECK(std::abs(pure.discrete.states[0].zeta - cx(0.0, 2.5)) < 1e-15);

  CHECK_THROWS_AS(sech_spectrum(1.2, 0), validation_error);
  CHECK_THROWS_AS(sech_spectrum(-0.1, 0), validation_error);
}

TEST_CASE("sech potential sampling") {
  const TimeGrid g = TimeGrid::snapped(-5.0, 5.0, 64);
  const SampledPotential p = sech_potential(1.3, g);
  CHECK(std::abs(p.q[32] - cx(1.3 / std::cosh(g.node(32)), 0.0)) < 1e-15);
}

TEST_CASE("raised-cosine frequency response values") {
  RaisedCosineParams rc;
  rc.A = 2.0;
  rc.tau_s = 1.0;
  rc.beta = 0.5;
  CHECK(rc.Lambda() == doctest::Approx(1.5));
  CHECK(rc_H(rc, 0.0) == doctest::Approx(2.0));
  CHECK(rc_H(rc, 0.5) == doctest::Approx(2.0));            // flat region
  CHECK(rc_H(rc, 1.0) == doctest::Approx(1.0));            // midpoint: A/2
  CHECK(rc_H(rc, 1.6) == doctest::Approx(0.0));            // out of band
  CHECK(rc_H(rc, -1.0) == doctest::Approx(rc_H(rc, 1.0)));  // even
  // Continuity at both rolloff edges.
  const double d = 1e-9;
  CHECK(std::abs(rc_H(rc, 0.5 - d) - rc_H(rc, 0.5 + d)) < 1e-7);
  CHECK(std::abs(rc_H(rc, 1.5 - d) - rc_H(rc, 1.5 + d)) < 1e-7);
}

TEST_CASE("raised-cosine impulse response special points") {
  RaisedCosineParams rc;
  rc.A = 3.0;
  rc.tau_s = 2.0;
  rc.beta = 0.4;  // beta != 1/(2k), so tau_star avoids the sinc zeros
  // p(0) = A / (pi tau_s).
  CHECK(rc_impulse(rc, 0.0) == doctest::Approx(3.0 / (kPi * 2.0)));
  // Even function.
  CHECK(rc_impulse(rc, 1.7) == doctest::Approx(rc_impulse(rc, -1.7)));
  // The removable singularity at x = 1 (tau = pi tau_s / (2 beta)) is finite
  // and smooth: compare the exact point against a nearby one.
  const double tau_star = kPi * rc.tau_s / (2.0 * rc.beta);
  const double at = rc_impulse(rc, tau_star);
  const double near = rc_impulse(rc, tau_star * (1.0 + 1e-7));
  CHECK(std::isfinite(at));
  CHECK(std::abs(at - near) < 1e-5 * std::abs(at));
}

TEST_CASE("impulse response is the transform of the frequency response") {
  RaisedCosineParams rc;
  rc.A = 2.0;
  rc.tau_s = 1.0;
  rc.beta = 0.4;
  const double L = rc.Lambda();
  for (double tau : {0.0, 0.3, 2.7, 10.1}) {
    // (1/2pi) Int H(xi) cos(xi tau) dxi by Simpson on the exact support.
    const int n = 20000;
    const double h = 2.0 * L / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x0 = -L + i * h;
      auto f = [&](double x) { return rc_H(rc, x) * std::cos(x * tau); };
      acc += (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h)) * (h / 6.0);
    }
    acc /= 2.0 * kPi;
    CHECK(std::abs(rc_impulse(rc, tau) - acc) < 1e-8);
  }
}

TEST_CASE("raised-cosine spectrum validates the rolloff") {
  RaisedCosineParams rc;
  rc.A = 1.0;
  rc.tau_s = 1.0;
  rc.beta = 0.0;
  CHECK_THROWS_AS(rc_spectrum(rc), validation_error);
  rc.beta = 1.5;
  CHECK_THROWS_AS(rc_spectrum(rc), validation_error);
  rc.beta = 1.0;
  CHECK_NOTHROW(rc_spectrum(rc));
}

TEST_CASE("symbol generation is deterministic and on the constellation") {
  const std::vector<cx> a = qpsk_symbols(16, 1234);
  const std::vector<cx> b = qpsk_symbols(16, 1234);
  const std::vector<cx> c = qpsk_symbols(16, 99);
  REQUIRE(a.size() == 16);
  CHECK(a == b);
  CHECK(a != c);
  for (const cx& s : a) {
    const bool on = (s == cx(1, 0)) || (s == cx(0, 1)) || (s == cx(-1, 0)) ||
                    (s == cx(0, -1));
    CHECK(on);
  }
}

TEST_CASE("pulse-train spectrum hits the prescribed effective amplitude") {
  RaisedCosineParams base;
  base.A = 1.0;
  base.tau_s = 1.0;
  base.beta = 0.5;
  const double A_eff = 10.0;
  const QpskSpectrum qs = qpsk_spectrum(qpsk_symbols(8, 1234), base, A_eff);
  CHECK(qs.scaled.A == doctest::Approx(qs.scale_c));
  CHECK(qs.rho.hard_bandlimit);
  CHECK(qs.rho.Lambda == doctest::Approx(1.5));

  // Independent quadrature at a different resolution reproduces the target
  // band-power ratio ||rho||^2 = A_eff^2 ||H_1||^2.
  const int n = 40001;
  const double L = qs.rho.Lambda;
  double nr = 0.0, nh = 0.0;
  RaisedCosineParams unit = base;
  unit.A = 1.0;
  for (int i = 0; i < n; ++i) {
    const double xi = -L + 2.0 * L * i / (n - 1);
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    nr += w * std::norm(qs.rho.eval(xi));
    const double H = rc_H(unit, xi);
    nh += w * H * H;
  }
  CHECK(std::sqrt(nr / nh) == doctest::Approx(A_eff).epsilon(1e-4));
}

TEST_CASE("pulse-train spectrum validates the symbol count") {
  RaisedCosineParams base;
  base.A = 1.0;
  base.tau_s = 1.0;
  base.beta = 0.5;
  CHECK_THROWS_AS(qpsk_spectrum({cx(1, 0)}, base, 1.0), validation_error);
  CHECK_THROWS_AS(qpsk_spectrum({cx(1, 0), cx(0, 1), cx(-1, 0)}, base, 1.0),
                  validation_error);
}

TEST_CASE("sampled reflection interpolates through its nodes") {
  const double Lambda = 2.0;
  std::vector<cx> vals;
  for (int i = 0; i < 8; ++i) {
    vals.push_back(cx(std::sin(0.6 * i), std::cos(1.3 * i)));
  }
  const ContinuousSpectrum sp = spectrum_from_samples(vals, Lambda);
  CHECK(sp.hard_bandlimit);
  for (int i = 0; i < 8; ++i) {
    const double xi = -Lambda + 2.0 * Lambda * i / 8.0;
    CHECK(std::abs(sp.eval(xi) - vals[i]) < 1e-12);
  }
  CHECK_THROWS_AS(spectrum_from_samples(std::vector<cx>(6), 2.0),
                  validation_error);
  CHECK_THROWS_AS(spectrum_from_samples(vals, 0.0), validation_error);
}

TEST_CASE("relative signal error metric") {
  std::vector<cx> ref{cx(1, 0), cx(0, 2), cx(-1, 1)};
  std::vector<cx> same = ref;
  CHECK(metric_q(same, ref, 0.1) == doctest::Approx(0.0));
  std::vector<cx> scaled;
  for (const cx& v : ref) scaled.push_back(1.01 * v);
  CHECK(metric_q(scaled, ref, 0.1) == doctest::Approx(0.01).epsilon(1e-10));
  CHECK_THROWS_AS(metric_q(ref, std::vector<cx>(3, cx(0.0)), 0.1),
                  validation_error);
  CHECK_THROWS_AS(metric_q(ref, std::vector<cx>(2), 0.1), validation_error);
}

TEST_CASE("relative reflection error metric") {
  std::vector<cx> ref{cx(2, 0), cx(0, -1), cx(1, 1), cx(-3, 0)};
  CHECK(metric_rho(ref, ref) == doctest::Approx(0.0));
  std::vector<cx> scaled;
  for (const cx& v : ref) scaled.push_back(0.99 * v);
  CHECK(metric_rho(scaled, ref) == doctest::Approx(0.01).epsilon(1e-10));
}

TEST_CASE("rms relative norming-constant metric") {
  const std::vector<cx> ref{cx(-1, 0), cx(1, 0)};
  const std::vector<cx> got{cx(-1.1, 0), cx(1, 0)};
  CHECK(metric_b(got, ref) ==
        doctest::Approx(std::sqrt(0.005)).epsilon(1e-10));
  CHECK(metric_b(ref, ref) == doctest::Approx(0.0));
  CHECK_THROWS_AS(metric_b(got, std::vector<cx>{cx(0, 0), cx(1, 0)}),
                  validation_error);
}
