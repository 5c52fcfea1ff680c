#include "nftlab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nft {

namespace {

struct Simpson {
  const std::function<double(double)>& f;

  double whole(double a, double b, double fa, double fm, double fb) const {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double adapt(double a, double b, double fa, double fm, double fb, double w,
               double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = whole(a, m, fa, flm, fm);
    const double right = whole(m, b, fm, frm, fb);
    const double err = left + right - w;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol) {
      return left + right + err / 15.0;
    }
    return adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }

  double integrate(double a, double b, double tol) const {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    return adapt(a, b, fa, fm, fb, whole(a, b, fa, fm, fb), tol, 40);
  }
};

// Integral of f over [a, inf) on doubling segments; stops once the integrand
// has decayed below 1e-18 of the largest magnitude seen.
double tail_integral(const std::function<double(double)>& f, double a,
                     double rel_tol) {
  Simpson s{f};
  double total = 0.0;
  double x = a, w = 1.0, fref = 0.0;
  for (int seg = 0; seg < 60; ++seg) {
    const double b = x + w;
    double scale = 0.0;
    for (int i = 0; i <= 8; ++i) {
      scale = std::max(scale, std::abs(f(x + w * i / 8.0)));
    }
    fref = std::max(fref, scale);
    if (scale > 0.0) {
      const double tol = rel_tol * std::max(std::abs(total), scale * w);
      total += s.integrate(x, b, tol);
    }
    if (seg > 2 && scale <= 1e-18 * fref) break;
    x = b;
    w *= 2.0;
  }
  return total;
}

constexpr double kQuadTol = 1e-10;

}  // namespace

EpsteinBound epstein_bound(const std::function<double(double)>& p, double T) {
  auto g1 = [&p](double tau) { return std::abs(p(-tau)); };
  auto g2 = [&p](double tau) {
    const double v = p(-tau);
    return v * v;
  };
  EpsteinBound out;
  out.I1 = tail_integral(g1, 2.0 * T, kQuadTol);
  const double I2sq = tail_integral(g2, 2.0 * T, kQuadTol);
  out.I2 = std::sqrt(std::max(I2sq, 0.0));
  out.applicable = out.I1 < 1.0;
  out.bound = out.applicable
                  ? 2.0 * I2sq / (1.0 - out.I1 * out.I1)
                  : std::numeric_limits<double>::infinity();
  return out;
}

FindTResult find_T(const std::function<double(double)>& p, double eps,
                   double T_cap) {
  if (!(eps > 0.0)) throw validation_error("find_T: eps must be positive");
  auto ok = [&](double T) {
    const EpsteinBound b = epstein_bound(p, T);
    return b.applicable && b.bound <= eps;
  };
  if (ok(0.0)) return {0.0, true};
  double lo = 0.0, hi = 1.0;
  while (!ok(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > T_cap) return {T_cap, false};
  }
  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {hi, true};
}

double rc_T_estimate(double A, double tau_s, double beta, double eps) {
  if (!(eps > 0.0) || !(beta > 0.0)) {
    throw validation_error("rc_T_estimate: eps and beta must be positive");
  }
  const double t4 = tau_s * tau_s * tau_s * tau_s;
  const double b4 = beta * beta * beta * beta;
  return 0.5 * std::pow(kPi * kPi * A * A * t4 / (40.0 * b4 * eps), 0.2);
}

double sech_domain(double A_R, double eps) {
  if (!(eps > 0.0) || !(A_R > 0.0)) {
    throw validation_error("sech_domain: A_R and eps must be positive");
  }
  return std::log(2.0 * A_R / eps);
}

QpskDomain qpsk_domain(const RaisedCosineParams& params, int N_sym,
                       double eps) {
  if (N_sym < 2) throw validation_error("qpsk_domain: N_sym must be >= 2");
  QpskDomain d;
  d.W = 5.0 * std::log2(static_cast<double>(N_sym));
  d.T2 = rc_T_estimate(params.A, params.tau_s, params.beta, eps) +
         kPi * params.tau_s * N_sym / 4.0;
  d.T1 = -d.W * d.T2;
  return d;
}

SolitonDomain soliton_domain(const DiscreteSpectrum& S, double multiplier) {
  if (S.states.empty()) {
    throw validation_error("soliton_domain: undefined for an empty spectrum");
  }
  S.validate();
  double sum = 0.0, mn = std::numeric_limits<double>::infinity();
  for (const auto& s : S.states) {
    sum += s.zeta.imag();
    mn = std::min(mn, s.zeta.imag());
  }
  SolitonDomain d;
  d.kappa = 2.0 * std::sqrt(sum);
  d.T = multiplier * d.kappa / mn;
  return d;
}

}  // namespace nft
