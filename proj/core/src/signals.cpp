#include "nftlab/signals.hpp"

#include <algorithm>
#include <cmath>

#include "nftlab/fft.hpp"

namespace nft {

namespace {

// 15-term Lanczos coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

constexpr double kSqrt2Pi = 2.5066282746310005024;

cx gamma_positive_half(cx z) {
  // Valid for Re z >= 1/2.
  cx acc(kLanczos[0], 0.0);
  for (int k = 1; k < 15; ++k) {
    acc += kLanczos[k] / (z - 1.0 + static_cast<double>(k));
  }
  const cx t = z + (kLanczosG - 0.5);
  return kSqrt2Pi * std::pow(t, z - 0.5) * std::exp(-t) * acc;
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

cx gamma_c(cx z) {
  if (z.real() >= 0.5) return gamma_positive_half(z);
  // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
  return kPi / (std::sin(kPi * z) * gamma_positive_half(1.0 - z));
}

cx sech_rho_radiative(double A_R, int K, double xi) {
  const double A = A_R + static_cast<double>(K);
  const double env = sech(kPi * xi);
  if (env == 0.0) return cx(0.0);
  const cx iz(0.0, -xi);
  const cx num = gamma_c(cx(0.5 + A_R, 0.0) + iz) *
                 gamma_c(cx(0.5 - A_R, 0.0) + iz);
  const cx den = gamma_c(cx(0.5, 0.0) + iz);
  return -std::sin(A * kPi) * env * num / (den * den);
}

cx sech_a_exact(double A, double xi) {
  const cx half(0.5, -xi);
  const cx g = gamma_c(half);
  return g * g / (gamma_c(half + A) * gamma_c(half - A));
}

NFSpectrum sech_spectrum(double A_R, int K) {
  if (A_R < 0.0 || A_R >= 1.0) {
    throw validation_error("sech_spectrum: A_R must lie in [0, 1)");
  }
  if (K < 0) throw validation_error("sech_spectrum: K must be non-negative");
  NFSpectrum sp;
  for (int k = 1; k <= K; ++k) {
    BoundState s;
    s.zeta = cx(0.0, A_R + 0.5 + static_cast<double>(K - k));
    s.b = cx(k % 2 == 0 ? 1.0 : -1.0, 0.0);
    sp.discrete.states.push_back(s);
  }
  if (A_R > 0.0) {
    const DiscreteSpectrum S = sp.discrete;
    sp.rho.rho = [A_R, K, S](double xi) {
      cx r = sech_rho_radiative(A_R, K, xi);
      if (!S.states.empty()) r /= a_S_eval(cx(xi, 0.0), S);
      return r;
    };
    sp.rho.Lambda = 12.0;
    sp.rho.hard_bandlimit = false;
  }
  return sp;
}

SampledPotential sech_potential(double A, const TimeGrid& grid) {
  std::vector<cx> q(grid.N + 1);
  for (int n = 0; n <= grid.N; ++n) q[n] = cx(A * sech(grid.node(n)), 0.0);
  return SampledPotential(grid, std::move(q));
}

double rc_H(const RaisedCosineParams& p, double xi) {
  const double x = std::abs(p.tau_s * xi);
  if (x <= 1.0 - p.beta) return p.A;
  if (x <= 1.0 + p.beta) {
    return 0.5 * p.A * (1.0 + std::cos(kPi * (x - (1.0 - p.beta)) / (2.0 * p.beta)));
  }
  return 0.0;
}

double rc_impulse(const RaisedCosineParams& p, double tau) {
  // p(tau) = (A / pi tau_s) sinc(tau/tau_s) cos(beta tau/tau_s) / (1 - x^2),
  // x = 2 beta tau / (pi tau_s).  With cos(beta tau/tau_s) = cos(pi x / 2)
  // the singular factor reduces to the everywhere-finite form
  // (pi/2) sinc(pi (1-|x|)/2) / (1+|x|).
  const double x = std::abs(2.0 * p.beta * tau / (kPi * p.tau_s));
  const double kernel = 0.5 * kPi * sinc(0.5 * kPi * (1.0 - x)) / (1.0 + x);
  return (p.A / (kPi * p.tau_s)) * sinc(tau / p.tau_s) * kernel;
}

ContinuousSpectrum rc_spectrum(const RaisedCosineParams& p) {
  if (!(p.beta > 0.0) || p.beta > 1.0) {
    throw validation_error("rc_spectrum: beta must lie in (0, 1]");
  }
  ContinuousSpectrum out;
  out.Lambda = p.Lambda();
  out.hard_bandlimit = true;
  out.rho = [p](double xi) { return cx(rc_H(p, xi), 0.0); };
  return out;
}

std::vector<cx> qpsk_symbols(int N_sym, std::uint64_t seed) {
  static const cx table[4] = {cx(1, 0), cx(0, 1), cx(-1, 0), cx(0, -1)};
  std::uint64_t state = seed;
  std::vector<cx> s(N_sym);
  for (int n = 0; n < N_sym; ++n) s[n] = table[splitmix64(state) >> 62];
  return s;
}

QpskSpectrum qpsk_spectrum(const std::vector<cx>& symbols,
                           const RaisedCosineParams& base, double A_eff) {
  const int n = static_cast<int>(symbols.size());
  if (n < 2 || n % 2 != 0) {
    throw validation_error("qpsk_spectrum: need an even number of symbols");
  }
  RaisedCosineParams unit = base;
  unit.A = 1.0;
  const double tau_s = base.tau_s;
  const double Lambda = unit.Lambda();

  auto S = [symbols, n, tau_s](double xi) {
    cx acc(0.0);
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(i - n / 2);
      acc += symbols[i] * std::polar(1.0, -k * kPi * tau_s * xi);
    }
    return acc;
  };

  // ||H_1|| and ||S H_1|| by trapezoid on a fixed fine grid (deterministic).
  const int Nq = 20000;
  double nH = 0.0, nSH = 0.0;
  for (int i = 0; i <= Nq; ++i) {
    const double xi = -Lambda + 2.0 * Lambda * i / Nq;
    const double w = (i == 0 || i == Nq) ? 0.5 : 1.0;
    const double H = rc_H(unit, xi);
    nH += w * H * H;
    nSH += w * std::norm(S(xi) * cx(H, 0.0));
  }
  if (nSH == 0.0) throw validation_error("qpsk_spectrum: zero symbol energy");
  const double c = A_eff * std::sqrt(nH / nSH);

  QpskSpectrum out;
  out.symbols = symbols;
  out.scale_c = c;
  out.scaled = unit;
  out.scaled.A = c;
  out.rho.Lambda = Lambda;
  out.rho.hard_bandlimit = true;
  out.rho.rho = [S, unit, c](double xi) {
    return c * S(xi) * rc_H(unit, xi);
  };
  return out;
}

ContinuousSpectrum spectrum_from_samples(const std::vector<cx>& values,
                                         double Lambda) {
  const std::size_t n = values.size();
  if (!(Lambda > 0.0)) {
    throw validation_error("spectrum_from_samples: Lambda must be positive");
  }
  if (n < 2 || !fft::is_pow2(n)) {
    throw validation_error(
        "spectrum_from_samples: need a power-of-two sample count");
  }
  // Interpolant rho(xi) = sum_{k=-n/2}^{n/2-1} a_k exp(i pi k xi / Lambda)
  // through samples at xi_i = -Lambda + 2 Lambda i / n.
  std::vector<cx> hat(values);
  fft::transform(hat, -1);
  std::vector<cx> a(n);
  const double inv = 1.0 / static_cast<double>(n);
  for (long k = -static_cast<long>(n) / 2; k < static_cast<long>(n) / 2; ++k) {
    const std::size_t idx = static_cast<std::size_t>(k + static_cast<long>(n)) % n;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    a[static_cast<std::size_t>(k + static_cast<long>(n) / 2)] =
        sign * inv * hat[idx];
  }
  ContinuousSpectrum out;
  out.Lambda = Lambda;
  out.hard_bandlimit = true;
  const long half = static_cast<long>(n) / 2;
  out.rho = [a, half, Lambda](double xi) {
    cx acc(0.0);
    for (long k = -half; k < half; ++k) {
      acc += a[static_cast<std::size_t>(k + half)] *
             std::polar(1.0, kPi * static_cast<double>(k) * xi / Lambda);
    }
    return acc;
  };
  return out;
}

double metric_q(const std::vector<cx>& q_num, const std::vector<cx>& q_ref,
                double h) {
  if (q_num.size() != q_ref.size() || q_ref.empty()) {
    throw validation_error("metric_q: size mismatch");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < q_ref.size(); ++i) {
    const double w = (i == 0 || i + 1 == q_ref.size()) ? 0.5 : 1.0;
    num += w * std::norm(q_num[i] - q_ref[i]);
    den += w * std::norm(q_ref[i]);
  }
  if (den == 0.0) throw validation_error("metric_q: zero reference norm");
  return std::sqrt(num * h) / std::sqrt(den * h);
}

double metric_rho(const std::vector<cx>& rho_num,
                  const std::vector<cx>& rho_ref) {
  if (rho_num.size() != rho_ref.size() || rho_ref.empty()) {
    throw validation_error("metric_rho: size mismatch");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < rho_ref.size(); ++i) {
    const double w = (i == 0 || i + 1 == rho_ref.size()) ? 0.5 : 1.0;
    num += w * std::norm(rho_num[i] - rho_ref[i]);
    den += w * std::norm(rho_ref[i]);
  }
  if (den == 0.0) throw validation_error("metric_rho: zero reference norm");
  return std::sqrt(num / den);
}

double metric_b(const std::vector<cx>& b_num, const std::vector<cx>& b_ref) {
  if (b_num.size() != b_ref.size() || b_ref.empty()) {
    throw validation_error("metric_b: size mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < b_ref.size(); ++i) {
    const double r = std::abs(b_ref[i]);
    if (r == 0.0) throw validation_error("metric_b: zero reference entry");
    acc += std::norm(b_num[i] - b_ref[i]) / (r * r);
  }
  return std::sqrt(acc / static_cast<double>(b_ref.size()));
}

}  // namespace nft
