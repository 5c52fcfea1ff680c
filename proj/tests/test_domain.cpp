#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nftlab/domain.hpp"
#include "nftlab/signals.hpp"
#include "nftlab/types.hpp"

using namespace nft;

TEST_CASE("tail bound of an exponential profile matches the closed form") {
  // p(-tau) = exp(-tau): I1 = e^{-2T}, I2^2 = e^{-4T}/2,
  // bound = e^{-4T} / (1 - e^{-4T}).
  auto p = [](double tau) { return std::exp(tau); };  // evaluated at -tau
  for (double T : {0.5, 1.0, 2.0}) {
    const EpsteinBound eb = epstein_bound(p, T);
    CHECK(eb.applicable);
    CHECK(eb.I1 == doctest::Approx(std::exp(-2.0 * T)).epsilon(1e-7));
    CHECK(eb.I2 * eb.I2 ==
          doctest::Approx(0.5 * std::exp(-4.0 * T)).epsilon(1e-7));
    const double want = std::exp(-4.0 * T) / (1.0 - std::exp(-4.0 * T));
    CHECK(eb.bound == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("bound is flagged inapplicable when the tail is too heavy") {
  auto p = [](double tau) { return 2.0 * std::exp(tau / 100.0); };
  const EpsteinBound eb = epstein_bound(p, 0.001);
  CHECK_FALSE(eb.applicable);
  CHECK(std::isinf(eb.bound));
}

TEST_CASE("window search on the exponential profile hits the analytic value") {
  auto p = [](double tau) { return std::exp(tau); };
  for (double eps : {1e-3, 1e-6, 1e-9}) {
    const FindTResult r = find_T(p, eps);
    REQUIRE(r.achievable);
    const double want = 0.25 * std::log(1.0 / eps + 1.0);
    CHECK(std::abs(r.T - want) / want < 2e-3);
  }
}

TEST_CASE("window search validates its tolerance") {
  auto p = [](double tau) { return std::exp(tau); };
  CHECK_THROWS_AS(find_T(p, 0.0), validation_error);
  CHECK_THROWS_AS(find_T(p, -1.0), validation_error);
}

TEST_CASE("window search is monotone in the accuracy target") {
  RaisedCosineParams rc;
  rc.A = 20.0;
  rc.tau_s = 1.0;
  rc.beta = 0.5;
  auto p = [rc](double tau) { return rc_impulse(rc, tau); };
  double prev = 0.0;
  for (double eps : {1e-3, 1e-5, 1e-7, 1e-9}) {
    const FindTResult r = find_T(p, eps);
    REQUIRE(r.achievable);
    CHECK(r.T > prev);
    prev = r.T;
  }
}

TEST_CASE("closed-form window estimate for the raised-cosine pulse") {
  // 0.5 * (pi^2 A^2 tau_s^4 / (40 beta^4 eps))^{1/5} at the reference point.
  const double t = rc_T_estimate(20.0, 1.0, 0.5, 1e-9);
  CHECK(t == doctest::Approx(137.61125321153716).epsilon(1e-12));
}

TEST_CASE("window search agrees with the closed-form estimate within 30%") {
  RaisedCosineParams rc;
  rc.A = 20.0;
  rc.tau_s = 1.0;
  rc.beta = 0.5;
  auto p = [rc](double tau) { return rc_impulse(rc, tau); };
  for (double eps : {1e-4, 1e-6, 1e-9}) {
    const double est = rc_T_estimate(rc.A, rc.tau_s, rc.beta, eps);
    const FindTResult r = find_T(p, eps);
    REQUIRE(r.achievable);
    CHECK(std::abs(r.T - est) / est < 0.3);
  }
}

TEST_CASE("tail energy of the raised-cosine pulse follows its decay law") {
  // p ~ K sin(tau/tau_s) cos(beta tau/tau_s) / tau^3 with
  // K = pi A tau_s^2 / (4 beta^2), so I2^2 ~ K^2 / (20 (2T)^5).
  RaisedCosineParams rc;
  rc.A = 20.0;
  rc.tau_s = 1.0;
  rc.beta = 0.5;
  auto p = [rc](double tau) { return rc_impulse(rc, tau); };
  const double K = kPi * rc.A * rc.tau_s * rc.tau_s / (4.0 * rc.beta * rc.beta);
  for (double T : {20.0, 40.0}) {
    const EpsteinBound eb = epstein_bound(p, T);
    const double want = K * K / (20.0 * std::pow(2.0 * T, 5.0));
    CHECK(std::abs(eb.I2 * eb.I2 - want) / want < 0.25);
  }
}

TEST_CASE("sech window formula") {
  // log(2 A_R / eps); frozen value for A_R = 0.4, eps = 1e-12.
  CHECK(sech_domain(0.4, 1e-12) ==
        doctest::Approx(27.40787756461434).epsilon(1e-12));
  CHECK_THROWS_AS(sech_domain(0.0, 1e-6), validation_error);
  CHECK_THROWS_AS(sech_domain(0.4, 0.0), validation_error);
}

TEST_CASE("asymmetric window for pulse-train spectra") {
  RaisedCosineParams rc;
  rc.A = 2.0;
  rc.tau_s = 1.0;
  rc.beta = 0.5;
  const QpskDomain qd = qpsk_domain(rc, 4, 1e-6);
  CHECK(qd.W == doctest::Approx(10.0));  // 5 log2(4)
  const double want_T2 = rc_T_estimate(2.0, 1.0, 0.5, 1e-6) + kPi;
  CHECK(qd.T2 == doctest::Approx(want_T2).epsilon(1e-12));
  CHECK(qd.T1 == doctest::Approx(-qd.W * qd.T2).epsilon(1e-12));
  CHECK_THROWS_AS(qpsk_domain(rc, 1, 1e-6), validation_error);
}

TEST_CASE("soliton window from the eigenvalue set") {
  DiscreteSpectrum S;
  S.states.push_back({cx(0.0, 0.9), cx(-1.0, 0.0)});
  const SolitonDomain one = soliton_domain(S);
  CHECK(one.kappa == doctest::Approx(2.0 * std::sqrt(0.9)).epsilon(1e-12));
  CHECK(one.T == doctest::Approx(30.0 * 2.0 * std::sqrt(0.9) / 0.9)
                     .epsilon(1e-12));
  CHECK(one.T == doctest::Approx(63.245553203367585).epsilon(1e-9));

  S.states.push_back({cx(0.0, 1.9), cx(1.0, 0.0)});
  const SolitonDomain two = soliton_domain(S);
  CHECK(two.kappa == doctest::Approx(2.0 * std::sqrt(2.8)).epsilon(1e-12));
  CHECK(two.T == doctest::Approx(111.55467020454316).epsilon(1e-9));

  CHECK_THROWS_AS(soliton_domain(DiscreteSpectrum{}), validation_error);
}
