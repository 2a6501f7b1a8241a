#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>

namespace cimpact {

// Generator parameters. Publications are created in temporal order with
// years spread monotonically over 1980-2017; each new publication draws a
// Poisson(refs_mean) reference count and cites earlier publications with
// probability proportional to (in-degree + 1)^pref_attach_exponent.
struct SynthParams {
    std::uint64_t n_pubs = 0;
    double refs_mean = 20.0;
    double pref_attach_exponent = 1.0;
    std::uint32_t n_groups = 0;  // 0 = no group labels
    std::uint64_t seed = 0;
};

// Recorded in the provenance header of every generated file. Bump the
// version if the sampling sequence ever changes.
inline constexpr std::string_view kSynthRngName = "xoshiro256ss-v1";

// Writes the edge list to `edge_out` and, when `meta_out` is non-null, the
// metadata TSV (year always set, group label round-robin over n_groups).
// Both outputs start with a `#` provenance line and are byte-identical for
// identical params. Throws std::invalid_argument on parameter violations.
void generate(const SynthParams& params, std::ostream& edge_out,
              std::ostream* meta_out = nullptr);

}  // namespace cimpact
