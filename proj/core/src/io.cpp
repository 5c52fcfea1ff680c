#include "nftlab/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace nft::io {

namespace {

using nlohmann::json;

cx cx_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw validation_error(std::string("spectrum json: ") + what +
                           " must be a [re, im] pair");
  }
  return cx(j[0].get<double>(), j[1].get<double>());
}

json cx_to_json(cx z) { return json::array({z.real(), z.imag()}); }

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

SpectrumDesc spectrum_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("spectrum json: parse failed: ") +
                           e.what());
  }
  if (!j.is_object()) {
    throw validation_error("spectrum json: top level must be an object");
  }
  for (const auto& item : j.items()) {
    if (item.key() != "rho" && item.key() != "bound_states") {
      throw validation_error("spectrum json: unexpected top-level key '" +
                             item.key() +
                             "' (expected rho and/or bound_states)");
    }
  }

  SpectrumDesc d;
  if (j.contains("bound_states")) {
    const json& bs = j["bound_states"];
    if (!bs.is_array()) {
      throw validation_error("spectrum json: bound_states must be an array");
    }
    for (const json& s : bs) {
      if (!s.is_object() || !s.contains("zeta") || !s.contains("b")) {
        throw validation_error(
            "spectrum json: each bound state needs zeta and b");
      }
      BoundState st;
      st.zeta = cx_from_json(s["zeta"], "zeta");
      st.b = cx_from_json(s["b"], "b");
      d.bound.states.push_back(st);
    }
    d.bound.validate();
  }

  if (!j.contains("rho") || j["rho"].is_null()) return d;
  const json& r = j["rho"];
  if (!r.is_object() || !r.contains("kind") || !r["kind"].is_string()) {
    throw validation_error("spectrum json: rho needs a string kind");
  }
  const std::string kind = r["kind"].get<std::string>();

  auto need_number = [&r, &kind](const char* key) -> double {
    if (!r.contains(key) || !r[key].is_number()) {
      throw validation_error(std::string("spectrum json: rho kind '") + kind +
                             "' needs numeric field '" + key + "'");
    }
    return r[key].get<double>();
  };

  if (kind == "sech") {
    d.kind = SpectrumDesc::Kind::sech;
    d.A_R = need_number("A_R");
    d.K = r.contains("K") ? static_cast<int>(need_number("K")) : 0;
  } else if (kind == "rc") {
    d.kind = SpectrumDesc::Kind::rc;
    d.rc.A = need_number("A");
    d.rc.tau_s = need_number("tau_s");
    d.rc.beta = need_number("beta");
  } else if (kind == "qpsk-rc") {
    d.kind = SpectrumDesc::Kind::qpsk_rc;
    d.rc.A = 1.0;
    d.rc.tau_s = need_number("tau_s");
    d.rc.beta = need_number("beta");
    d.N_sym = static_cast<int>(need_number("N_sym"));
    d.A_eff = need_number("A_eff");
    if (r.contains("symbols")) {
      const json& sy = r["symbols"];
      if (!sy.is_array()) {
        throw validation_error("spectrum json: symbols must be an array");
      }
      for (const json& s : sy) d.symbols.push_back(cx_from_json(s, "symbol"));
      if (static_cast<int>(d.symbols.size()) != d.N_sym) {
        throw validation_error(
            "spectrum json: symbols length must equal N_sym");
      }
    } else {
      d.seed = static_cast<std::uint64_t>(need_number("seed"));
      d.has_seed = true;
    }
  } else if (kind == "samples") {
    d.kind = SpectrumDesc::Kind::samples;
    d.Lambda = need_number("Lambda");
    if (!r.contains("values") || !r["values"].is_array()) {
      throw validation_error("spectrum json: samples kind needs values array");
    }
    for (const json& v : r["values"]) {
      d.samples.push_back(cx_from_json(v, "value"));
    }
  } else {
    throw validation_error("spectrum json: unknown rho kind '" + kind + "'");
  }
  return d;
}

std::string spectrum_to_json_text(const SpectrumDesc& d) {
  json j = json::object();
  json bs = json::array();
  for (const BoundState& s : d.bound.states) {
    bs.push_back({{"zeta", cx_to_json(s.zeta)}, {"b", cx_to_json(s.b)}});
  }
  j["bound_states"] = bs;
  switch (d.kind) {
    case SpectrumDesc::Kind::none:
      j["rho"] = nullptr;
      break;
    case SpectrumDesc::Kind::sech:
      j["rho"] = {{"kind", "sech"}, {"A_R", d.A_R}, {"K", d.K}};
      break;
    case SpectrumDesc::Kind::rc:
      j["rho"] = {{"kind", "rc"},
                  {"A", d.rc.A},
                  {"tau_s", d.rc.tau_s},
                  {"beta", d.rc.beta}};
      break;
    case SpectrumDesc::Kind::qpsk_rc: {
      json r = {{"kind", "qpsk-rc"},
                {"tau_s", d.rc.tau_s},
                {"beta", d.rc.beta},
                {"N_sym", d.N_sym},
                {"A_eff", d.A_eff}};
      if (!d.symbols.empty()) {
        json sy = json::array();
        for (cx s : d.symbols) sy.push_back(cx_to_json(s));
        r["symbols"] = sy;
      } else if (d.has_seed) {
        r["seed"] = d.seed;
      }
      j["rho"] = r;
      break;
    }
    case SpectrumDesc::Kind::samples: {
      json vals = json::array();
      for (cx v : d.samples) vals.push_back(cx_to_json(v));
      j["rho"] = {{"kind", "samples"}, {"Lambda", d.Lambda}, {"values", vals}};
      break;
    }
  }
  return j.dump(2);
}

BuiltSpectrum build_spectrum(const SpectrumDesc& d) {
  BuiltSpectrum out;
  switch (d.kind) {
    case SpectrumDesc::Kind::none:
      out.spectrum.discrete = d.bound;
      out.spectrum.discrete.validate();
      break;
    case SpectrumDesc::Kind::sech: {
      out.spectrum = sech_spectrum(d.A_R, d.K);
      if (!d.bound.states.empty()) {
        throw validation_error(
            "build_spectrum: sech kind carries its own bound states; "
            "bound_states must be empty");
      }
      break;
    }
    case SpectrumDesc::Kind::rc:
      out.spectrum.discrete = d.bound;
      out.spectrum.discrete.validate();
      out.spectrum.rho = rc_spectrum(d.rc);
      break;
    case SpectrumDesc::Kind::qpsk_rc: {
      std::vector<cx> syms = d.symbols;
      if (syms.empty()) {
        if (!d.has_seed) {
          throw validation_error("build_spectrum: qpsk-rc needs seed or symbols");
        }
        syms = qpsk_symbols(d.N_sym, d.seed);
      }
      QpskSpectrum qs = qpsk_spectrum(syms, d.rc, d.A_eff);
      out.spectrum.discrete = d.bound;
      out.spectrum.discrete.validate();
      out.spectrum.rho = qs.rho;
      out.qpsk_scale = qs.scale_c;
      out.qpsk_scaled = qs.scaled;
      break;
    }
    case SpectrumDesc::Kind::samples:
      out.spectrum.discrete = d.bound;
      out.spectrum.discrete.validate();
      out.spectrum.rho = spectrum_from_samples(d.samples, d.Lambda);
      break;
  }
  return out;
}

void potential_to_csv(std::ostream& os, const SampledPotential& p) {
  os << "t,re_q,im_q\n";
  for (int n = 0; n <= p.grid.N; ++n) {
    os << fmt17(p.grid.node(n)) << ',' << fmt17(p.q[n].real()) << ','
       << fmt17(p.q[n].imag()) << '\n';
  }
}

SampledPotential potential_from_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,re_q,im_q", 0) != 0) {
    throw validation_error("potential csv: missing 't,re_q,im_q' header");
  }
  std::vector<double> t;
  std::vector<cx> q;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double tv = 0.0, re = 0.0, im = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &tv, &re, &im) != 3) {
      throw validation_error("potential csv: malformed row '" + line + "'");
    }
    t.push_back(tv);
    q.push_back(cx(re, im));
  }
  if (t.size() < 2) {
    throw validation_error("potential csv: need at least two rows");
  }
  const int N = static_cast<int>(t.size()) - 1;
  TimeGrid grid(t.front(), t.back(), N);
  for (int n = 0; n <= N; ++n) {
    if (std::abs(t[n] - grid.node(n)) > 1e-9 * (1.0 + std::abs(t[n]))) {
      throw validation_error("potential csv: rows are not equispaced in t");
    }
  }
  return SampledPotential(grid, std::move(q));
}

void reflection_to_csv(std::ostream& os, const std::vector<double>& xi,
                       const std::vector<cx>& rho) {
  if (xi.size() != rho.size()) {
    throw validation_error("reflection csv: xi/rho size mismatch");
  }
  os << "xi,re_rho,im_rho\n";
  for (std::size_t i = 0; i < xi.size(); ++i) {
    os << fmt17(xi[i]) << ',' << fmt17(rho[i].real()) << ','
       << fmt17(rho[i].imag()) << '\n';
  }
}

}  // namespace nft::io
