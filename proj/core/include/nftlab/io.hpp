#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nftlab/signals.hpp"
#include "nftlab/types.hpp"

namespace nft::io {

// Parsed spectrum file: bound states plus one of the supported reflection
// families.  JSON layout:
//   {
//     "bound_states": [{"zeta": [re, im], "b": [re, im]}, ...],
//     "rho": {"kind": "samples" | "sech" | "rc" | "qpsk-rc", ...},
//     "Lambda": x                      // samples kind only
//   }
// All members are optional; a missing "rho" means no radiative content.
struct SpectrumDesc {
  enum class Kind { none, samples, sech, rc, qpsk_rc };

  Kind kind = Kind::none;
  DiscreteSpectrum bound;

  // sech
  double A_R = 0.0;
  int K = 0;
  // rc / qpsk-rc
  RaisedCosineParams rc{};
  int N_sym = 0;
  double A_eff = 0.0;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::vector<cx> symbols;  // explicit symbols override the seed
  // samples
  std::vector<cx> samples;
  double Lambda = 0.0;
};

SpectrumDesc spectrum_from_json_text(const std::string& text);
std::string spectrum_to_json_text(const SpectrumDesc& desc);

// Materialized spectrum; qpsk carries its computed scale for domain logic.
struct BuiltSpectrum {
  NFSpectrum spectrum;
  double qpsk_scale = 0.0;
  RaisedCosineParams qpsk_scaled{};
};

BuiltSpectrum build_spectrum(const SpectrumDesc& desc);

// CSV with header "t,re_q,im_q", one row per sample, %.17g fields.
void potential_to_csv(std::ostream& os, const SampledPotential& p);
SampledPotential potential_from_csv(std::istream& is);

// CSV with header "xi,re_rho,im_rho".
void reflection_to_csv(std::ostream& os, const std::vector<double>& xi,
                       const std::vector<cx>& rho);

}  // namespace nft::io
