// Command-line driver for the nftlab library: inverse NFT synthesis, forward
// scattering, convergence sweeps, domain estimation, and LP timing runs.
//
// Exit codes: 0 success, 2 invalid input / unsupported option, 3 numerical
// failure (message names the offending layer or fold).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nftlab/darboux.hpp"
#include "nftlab/domain.hpp"
#include "nftlab/forward.hpp"
#include "nftlab/io.hpp"
#include "nftlab/layerpeel.hpp"
#include "nftlab/signals.hpp"
#include "nftlab/synthesis.hpp"
#include "nftlab/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nft;

namespace {

struct Options {
  std::string spectrum_path;
  std::string signal_path;
  int N = 4096;
  int n_os = 8;
  double eps = 1e-6;
  std::string scheme = "tr";
  std::string lp = "fast";
  std::string synth = "direct";
  std::string dt = "cdt";
  std::string sweep;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out = ".";
};

double now_minus(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int scheme_order(const std::string& s) {
  if (s == "tr" || s == "ia1") return 1;
  if (s == "ia2") return 2;
  if (s == "ia3") return 3;
  throw validation_error("unknown scheme '" + s + "' (expected tr|ia1|ia2|ia3)");
}

std::vector<int> parse_sweep(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw validation_error("bad --sweep entry '" + tok + "'");
    }
    if (out.back() < 2) throw validation_error("--sweep entries must be >= 2");
  }
  if (out.empty()) throw validation_error("--sweep list is empty");
  std::sort(out.begin(), out.end());
  return out;
}

io::SpectrumDesc load_spectrum(const std::string& path) {
  if (path.empty()) throw validation_error("--spectrum FILE is required");
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open spectrum file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return io::spectrum_from_json_text(buf.str());
}

SampledPotential load_signal(const std::string& path) {
  if (path.empty()) throw validation_error("--signal FILE is required");
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open signal file '" + path + "'");
  return io::potential_from_csv(f);
}

// Time window selection per spectrum family, padded 10% beyond the estimate.
struct DomainChoice {
  double T1 = 0, T2 = 0;
  json detail;
};

DomainChoice choose_domain(const io::SpectrumDesc& desc,
                           const io::BuiltSpectrum& built, double eps, int N) {
  constexpr double kPad = 1.1;
  DomainChoice dc;
  using Kind = io::SpectrumDesc::Kind;
  const DiscreteSpectrum& S = built.spectrum.discrete;
  switch (desc.kind) {
    case Kind::none: {
      if (S.states.empty()) {
        dc.T1 = -1.0;
        dc.T2 = 1.0;
        dc.detail = {{"rule", "empty-default"}, {"T", 1.0}};
        return dc;
      }
      const SolitonDomain sd = soliton_domain(S);
      const double T = kPad * sd.T;
      dc.T1 = -T;
      dc.T2 = T;
      dc.detail = {{"rule", "soliton_domain*1.1"},
                   {"kappa", sd.kappa},
                   {"T_soliton", sd.T},
                   {"T", T}};
      return dc;
    }
    case Kind::sech: {
      double T = sech_domain(desc.A_R > 0 ? desc.A_R : 1e-3, eps);
      json detail = {{"rule", "sech_domain*1.1"}, {"T_radiative", T}};
      if (!S.states.empty()) {
        const SolitonDomain sd = soliton_domain(S);
        detail["kappa"] = sd.kappa;
        detail["T_soliton"] = sd.T;
        detail["rule"] = "max(sech_domain,soliton_domain)*1.1";
        T = std::max(T, sd.T);
      }
      T *= kPad;
      detail["T"] = T;
      dc.T1 = -T;
      dc.T2 = T;
      dc.detail = detail;
      return dc;
    }
    case Kind::rc: {
      double T = rc_T_estimate(desc.rc.A, desc.rc.tau_s, desc.rc.beta, eps);
      json detail = {{"rule", "rc_T_estimate*1.1"}, {"T_estimate", T}};
      if (!S.states.empty()) {
        const SolitonDomain sd = soliton_domain(S);
        detail["kappa"] = sd.kappa;
        detail["T_soliton"] = sd.T;
        detail["rule"] = "max(rc_T_estimate,soliton_domain)*1.1";
        T = std::max(T, sd.T);
      }
      T *= kPad;
      detail["T"] = T;
      dc.T1 = -T;
      dc.T2 = T;
      dc.detail = detail;
      return dc;
    }
    case Kind::qpsk_rc: {
      const QpskDomain qd =
          qpsk_domain(built.qpsk_scaled, desc.N_sym, eps);
      const double T2 = kPad * qd.T2;
      const double T1 = -qd.W * T2;
      dc.T1 = T1;
      dc.T2 = T2;
      dc.detail = {{"rule", "qpsk_domain, T2*1.1, T1=-W*T2"},
                   {"T1_estimate", qd.T1},
                   {"T2_estimate", qd.T2},
                   {"W", qd.W},
                   {"scale_c", built.qpsk_scale}};
      return dc;
    }
    case Kind::samples: {
      const double h = kPi / (2.0 * desc.Lambda);
      const double T = 0.5 * h * N;
      dc.T1 = -T;
      dc.T2 = T;
      dc.detail = {{"rule", "T = N*pi/(4*Lambda)"},
                   {"Lambda", desc.Lambda},
                   {"T", T}};
      return dc;
    }
  }
  throw validation_error("unhandled spectrum kind");
}

json grid_json(const TimeGrid& g) {
  return {{"t1", g.T1}, {"t2", g.T2}, {"N", g.N}, {"h", g.h}};
}

json config_json(const Options& o) {
  json j = {{"N", o.N},         {"n_os", o.n_os},   {"eps", o.eps},
            {"scheme", o.scheme}, {"lp", o.lp},     {"synth", o.synth},
            {"dt", o.dt},       {"out", o.out}};
  if (!o.spectrum_path.empty()) j["spectrum"] = o.spectrum_path;
  if (!o.signal_path.empty()) j["signal"] = o.signal_path;
  if (!o.sweep.empty()) j["sweep"] = o.sweep;
  if (o.seed_set) j["seed"] = o.seed;
  return j;
}

json report_skeleton(const Options& o, const std::string& command) {
  return {{"schema", "nftlab/1"},
          {"version", kVersion},
          {"command", command},
          {"config", config_json(o)}};
}

void write_report(const Options& o, const json& report) {
  fs::create_directories(o.out);
  const fs::path path = fs::path(o.out) / "report.json";
  std::ofstream f(path);
  if (!f) throw validation_error("cannot write '" + path.string() + "'");
  f << report.dump(2) << '\n';
  std::cout << "wrote " << path.string() << '\n';
}

InftOptions inft_options(const Options& o) {
  InftOptions io;
  if (o.synth == "direct") {
    io.route = SynthRoute::direct;
  } else if (o.synth == "rh") {
    io.route = SynthRoute::rh;
  } else {
    throw validation_error("unknown synth route '" + o.synth +
                           "' (expected direct|rh)");
  }
  if (o.lp == "fast") {
    io.lp = LpMode::fast;
  } else if (o.lp == "seq") {
    io.lp = LpMode::seq;
  } else {
    throw validation_error("unknown lp mode '" + o.lp + "' (expected seq|fast)");
  }
  if (o.dt == "cdt") {
    io.dt = DtKind::cdt;
  } else if (o.dt == "fdt") {
    io.dt = DtKind::fdt;
  } else if (o.dt == "fdt-pf") {
    io.dt = DtKind::fdt_pf;
  } else {
    throw validation_error("unknown dt kind '" + o.dt +
                           "' (expected cdt|fdt|fdt-pf)");
  }
  io.n_os = o.n_os;
  return io;
}

// Closed-form reference potential, when the family has one.
bool closed_form_q(const io::SpectrumDesc& desc, const TimeGrid& grid,
                   std::vector<cx>& out) {
  if (desc.kind == io::SpectrumDesc::Kind::sech) {
    const double A = desc.A_R + desc.K;
    out.resize(grid.N + 1);
    for (int n = 0; n <= grid.N; ++n) {
      out[n] = cx(A / std::cosh(grid.node(n)), 0.0);
    }
    return true;
  }
  if (desc.kind == io::SpectrumDesc::Kind::none && desc.bound.states.empty()) {
    out.assign(grid.N + 1, cx(0.0));
    return true;
  }
  return false;
}

// Numerical breakdown upstream (overflow, degenerate data) surfaces as
// non-finite samples; refuse to report them as a successful run.
void require_finite(const std::vector<cx>& v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
      throw numeric_error(std::string(what) + ": non-finite sample",
                          static_cast<long>(i));
    }
  }
}

int run_inft(const Options& o) {
  const io::SpectrumDesc desc = load_spectrum(o.spectrum_path);
  const io::BuiltSpectrum built = io::build_spectrum(desc);
  const DomainChoice dc = choose_domain(desc, built, o.eps, o.N);
  const TimeGrid grid = TimeGrid::snapped(dc.T1, dc.T2, o.N);

  const auto t0 = std::chrono::steady_clock::now();
  const SampledPotential q = inft(built.spectrum, grid, inft_options(o));
  const double seconds = now_minus(t0);
  require_finite(q.q, "inft");

  fs::create_directories(o.out);
  const fs::path qpath = fs::path(o.out) / "q.csv";
  {
    std::ofstream f(qpath);
    if (!f) throw validation_error("cannot write '" + qpath.string() + "'");
    io::potential_to_csv(f, q);
  }

  json report = report_skeleton(o, "inft");
  report["grid"] = grid_json(grid);
  report["domain"] = dc.detail;
  report["timing"] = {{"inft_seconds", seconds}};
  report["outputs"] = {{"potential_csv", qpath.string()}};
  std::vector<cx> ref;
  if (closed_form_q(desc, grid, ref)) {
    double e = 0.0;
    bool have = false;
    double refnorm = 0.0;
    for (const cx& v : ref) refnorm += std::norm(v);
    if (refnorm > 0.0) {
      e = metric_q(q.q, ref, grid.h);
      have = true;
    } else {
      double num = 0.0;
      for (const cx& v : q.q) num += std::norm(v);
      e = std::sqrt(num * grid.h);
      have = true;
    }
    if (have) report["metrics"] = {{"e_rel_closed_form", e}};
  }
  write_report(o, report);
  return 0;
}

int run_nft(const Options& o) {
  const SampledPotential p = load_signal(o.signal_path);
  const int m = scheme_order(o.scheme);
  const ScatterMode mode =
      o.lp == "seq" ? ScatterMode::sequential : ScatterMode::fast;

  const auto t0 = std::chrono::steady_clock::now();
  const JostPolynomialPair P = forward_scatter_ia(p, m, mode);
  long M = static_cast<long>(p.grid.N) * o.n_os / 2;
  if (M < 1) M = 1;
  const ReflectionSamples rs = reflection_samples(P, p.grid, M);
  const double seconds = now_minus(t0);
  require_finite(rs.rho, "nft");

  fs::create_directories(o.out);
  const fs::path rpath = fs::path(o.out) / "rho.csv";
  {
    std::ofstream f(rpath);
    if (!f) throw validation_error("cannot write '" + rpath.string() + "'");
    io::reflection_to_csv(f, rs.xi, rs.rho);
  }

  json report = report_skeleton(o, "nft");
  report["grid"] = grid_json(p.grid);
  report["timing"] = {{"nft_seconds", seconds}};
  report["outputs"] = {{"reflection_csv", rpath.string()}};
  report["metrics"] = {{"near_zero_a_samples", rs.near_zero_a}};
  write_report(o, report);
  return 0;
}

// Round-trip reflection error on the native grid xi_j = j pi / (N h):
// re-scatter the synthesized potential and compare against the prescribed
// reflection at the same points.
double round_trip_rho_error(const NFSpectrum& sp, const SampledPotential& q,
                            int m) {
  const JostPolynomialPair P =
      forward_scatter_ia(q, m, ScatterMode::fast);
  const long M = q.grid.N / 2;
  const ReflectionSamples rs = reflection_samples(P, q.grid, M);
  std::vector<cx> ref(rs.xi.size());
  for (std::size_t i = 0; i < rs.xi.size(); ++i) {
    ref[i] = sp.rho.eval(rs.xi[i]);
  }
  return metric_rho(rs.rho, ref);
}

int run_convergence(const Options& o) {
  const std::vector<int> Ns = parse_sweep(o.sweep);
  fs::create_directories(o.out);
  const fs::path cpath = fs::path(o.out) / "convergence.csv";
  std::ofstream f(cpath);
  if (!f) throw validation_error("cannot write '" + cpath.string() + "'");
  f << "N,e_rel,runtime_s,order\n";
  char line[160];

  std::vector<double> errs(Ns.size(), 0.0), times(Ns.size(), 0.0);
  json rows = json::array();

  if (!o.spectrum_path.empty()) {
    const io::SpectrumDesc desc = load_spectrum(o.spectrum_path);
    const io::BuiltSpectrum built = io::build_spectrum(desc);
    const bool closed =
        desc.kind == io::SpectrumDesc::Kind::sech ||
        (desc.kind == io::SpectrumDesc::Kind::none && desc.bound.states.empty());
    if (!closed && !built.spectrum.discrete.states.empty()) {
      throw validation_error(
          "convergence: spectrum mode needs a sech family or a soliton-free "
          "spectrum");
    }
    for (std::size_t i = 0; i < Ns.size(); ++i) {
      Options oi = o;
      oi.N = Ns[i];
      const DomainChoice dc = choose_domain(desc, built, o.eps, oi.N);
      const TimeGrid grid = TimeGrid::snapped(dc.T1, dc.T2, oi.N);
      const auto t0 = std::chrono::steady_clock::now();
      const SampledPotential q = inft(built.spectrum, grid, inft_options(oi));
      times[i] = now_minus(t0);
      std::vector<cx> ref;
      if (closed_form_q(desc, grid, ref)) {
        double refnorm = 0.0;
        for (const cx& v : ref) refnorm += std::norm(v);
        if (refnorm > 0.0) {
          errs[i] = metric_q(q.q, ref, grid.h);
        } else {
          double num = 0.0;
          for (const cx& v : q.q) num += std::norm(v);
          errs[i] = std::sqrt(num * grid.h);
        }
      } else {
        errs[i] = round_trip_rho_error(built.spectrum, q,
                                       scheme_order(o.scheme));
      }
    }
  } else if (!o.signal_path.empty()) {
    const SampledPotential base = load_signal(o.signal_path);
    const int m = scheme_order(o.scheme);
    // Self-convergence: each row is compared against the finest sweep entry
    // on the shared reflection grid xi_j = j pi / (t2 - t1).
    std::vector<ReflectionSamples> samples(Ns.size());
    for (std::size_t i = 0; i < Ns.size(); ++i) {
      const int N = Ns[i];
      if (base.grid.N % N != 0) {
        throw validation_error(
            "convergence: signal sample count must be divisible by every "
            "--sweep entry");
      }
      const int stride = base.grid.N / N;
      TimeGrid grid(base.grid.T1, base.grid.T2, N);
      std::vector<cx> qs(N + 1);
      for (int n = 0; n <= N; ++n) qs[n] = base.q[n * stride];
      SampledPotential p(grid, std::move(qs));
      const auto t0 = std::chrono::steady_clock::now();
      const JostPolynomialPair P = forward_scatter_ia(p, m, ScatterMode::fast);
      samples[i] = reflection_samples(P, grid, N / 2);
      times[i] = now_minus(t0);
    }
    const ReflectionSamples& fine = samples.back();
    const int M0 = Ns.front() / 2;
    const long fineM = static_cast<long>(Ns.back()) / 2;
    for (std::size_t i = 0; i + 1 < Ns.size(); ++i) {
      const long Mi = static_cast<long>(Ns[i]) / 2;
      std::vector<cx> cur, ref;
      for (long j = -M0; j < M0; ++j) {
        cur.push_back(samples[i].rho[static_cast<std::size_t>(j + Mi)]);
        ref.push_back(fine.rho[static_cast<std::size_t>(j + fineM)]);
      }
      errs[i] = metric_rho(cur, ref);
    }
    errs.back() = 0.0;  // reference row
  } else {
    throw validation_error("convergence needs --spectrum or --signal");
  }

  const bool self_ref = o.spectrum_path.empty();
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    std::string order_field;
    if (i > 0 && errs[i] > 0.0 && errs[i - 1] > 0.0) {
      const double p = std::log2(errs[i - 1] / errs[i]) /
                       std::log2(double(Ns[i]) / double(Ns[i - 1]));
      std::snprintf(line, sizeof(line), "%.4f", p);
      order_field = line;
    }
    std::string err_field;
    if (!(self_ref && i + 1 == Ns.size())) {
      std::snprintf(line, sizeof(line), "%.17g", errs[i]);
      err_field = line;
    }
    f << Ns[i] << ',' << err_field << ',';
    std::snprintf(line, sizeof(line), "%.6f", times[i]);
    f << line << ',' << order_field << '\n';
    rows.push_back({{"N", Ns[i]},
                    {"e_rel", errs[i]},
                    {"runtime_s", times[i]},
                    {"order", order_field.empty() ? json() : json(order_field)}});
  }
  f.close();

  json report = report_skeleton(o, "convergence");
  report["outputs"] = {{"convergence_csv", cpath.string()}};
  report["rows"] = rows;
  write_report(o, report);
  return 0;
}

int run_domain(const Options& o) {
  const io::SpectrumDesc desc = load_spectrum(o.spectrum_path);
  const io::BuiltSpectrum built = io::build_spectrum(desc);
  if (desc.kind == io::SpectrumDesc::Kind::samples) {
    throw validation_error(
        "domain: no window heuristic for sampled reflection data");
  }
  const DomainChoice dc = choose_domain(desc, built, o.eps, o.N);
  json report = report_skeleton(o, "domain");
  report["domain"] = dc.detail;
  report["domain"]["T1"] = dc.T1;
  report["domain"]["T2"] = dc.T2;
  if (desc.kind == io::SpectrumDesc::Kind::rc) {
    const RaisedCosineParams rc = desc.rc;
    const FindTResult ft =
        find_T([rc](double tau) { return rc_impulse(rc, tau); }, o.eps);
    report["domain"]["T_find"] = ft.T;
    report["domain"]["T_find_achieved"] = ft.achievable;
  }
  std::cout << report["domain"].dump(2) << '\n';
  write_report(o, report);
  return 0;
}

int run_bench(const Options& o) {
  const std::vector<int> Ns = parse_sweep(o.sweep);
  const bool fast = o.lp != "seq";
  fs::create_directories(o.out);
  const fs::path bpath = fs::path(o.out) / "bench.csv";
  std::ofstream f(bpath);
  if (!f) throw validation_error("cannot write '" + bpath.string() + "'");
  f << "N,seconds,seconds_per_sample\n";
  char line[120];
  for (int N : Ns) {
    const NFSpectrum sp = sech_spectrum(0.4, 0);
    const TimeGrid grid = TimeGrid::snapped(-33.0, 33.0, N);
    const SynthesisPlan plan = SynthesisPlan::for_grid(grid, o.n_os);
    const JostPolynomialPair P =
        lp_input_direct(rho_fourier_coeffs(sp.rho, plan));
    std::vector<double> runs;
    for (int r = 0; r < 5; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const SampledPotential q =
          fast ? lp_fast(P, grid) : lp_sequential(P, grid);
      runs.push_back(now_minus(t0));
      if (q.q.size() != static_cast<std::size_t>(N + 1)) {
        throw numeric_error("bench: unexpected output size");
      }
    }
    std::sort(runs.begin(), runs.end());
    const double med = runs[runs.size() / 2];
    std::snprintf(line, sizeof(line), "%d,%.6f,%.9g\n", N, med, med / N);
    f << line;
  }
  f.close();
  json report = report_skeleton(o, "bench");
  report["outputs"] = {{"bench_csv", bpath.string()}};
  write_report(o, report);
  return 0;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--spectrum", o.spectrum_path, "Spectrum JSON file");
  cmd->add_option("--signal", o.signal_path, "Potential CSV file");
  cmd->add_option("--N", o.N, "Number of samples (power of two for fast paths)");
  cmd->add_option("--n-os", o.n_os, "Oversampling factor (>= 1)");
  cmd->add_option("--eps", o.eps, "Target accuracy for domain sizing");
  cmd->add_option("--scheme", o.scheme, "Discretization: tr|ia1|ia2|ia3");
  cmd->add_option("--lp", o.lp, "Layer-peeling / scattering mode: seq|fast");
  cmd->add_option("--synth", o.synth, "Synthesis route: direct|rh");
  cmd->add_option("--dt", o.dt, "Darboux kind: cdt (fdt|fdt-pf reserved)");
  cmd->add_option("--sweep", o.sweep, "Comma-separated N list");
  cmd->add_option("--seed", o.seed, "Random seed")->each([&o](const std::string&) {
    o.seed_set = true;
  });
  cmd->add_option("--out", o.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fast nonlinear Fourier transform toolkit"};
  app.require_subcommand(1);
  Options o;
  CLI::App* c_inft = app.add_subcommand("inft", "Synthesize q(t) from a spectrum");
  CLI::App* c_nft = app.add_subcommand("nft", "Forward transform of a signal");
  CLI::App* c_conv = app.add_subcommand("convergence", "Error vs N sweep");
  CLI::App* c_dom = app.add_subcommand("domain", "Time-window estimate");
  CLI::App* c_bench = app.add_subcommand("bench", "Layer-peeling timings");
  for (CLI::App* c : {c_inft, c_nft, c_conv, c_dom, c_bench}) add_common(c, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_inft->parsed()) return run_inft(o);
    if (c_nft->parsed()) return run_nft(o);
    if (c_conv->parsed()) return run_convergence(o);
    if (c_dom->parsed()) return run_domain(o);
    if (c_bench->parsed()) return run_bench(o);
    std::cerr << "no command\n";
    return 2;
  } catch (const not_implemented_error& e) {
    std::cerr << "not implemented: " << e.what() << '\n';
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
