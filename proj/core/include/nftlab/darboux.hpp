#pragma once

#include "nftlab/types.hpp"

namespace nft {

struct CdtOptions {
  // A dressed sample exceeding this magnitude (or going non-finite) raises
  // numeric_error with the offending fold index.
  double blowup_limit = 1e8;
};

// Classical Darboux transformation: adds the bound states of `S` to the seed
// potential, one fold per state in order of decreasing Im zeta.  Norming
// constants are those of the final augmented potential (they are unchanged
// across folds).  Cost O(K^2 N).
SampledPotential cdt_add_bound_states(const SampledPotential& seed,
                                      const DiscreteSpectrum& S,
                                      const CdtOptions& opts = {});

enum class SynthRoute { direct, rh };
enum class LpMode { fast, seq };
enum class DtKind { cdt, fdt, fdt_pf };  // fdt variants are reserved names

struct InftOptions {
  SynthRoute route = SynthRoute::direct;
  LpMode lp = LpMode::fast;
  DtKind dt = DtKind::cdt;
  int n_os = 8;
};

// Full inverse transform: synthesize the radiative reflection a_S * rho,
// layer-peel it to the soliton-free potential, then add bound states by
// Darboux folds.  DtKind::fdt / fdt_pf raise not_implemented_error.
SampledPotential inft(const NFSpectrum& spectrum, const TimeGrid& grid,
                      const InftOptions& opts = {});

}  // namespace nft
