#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cimpact/graph.hpp"

namespace cimpact {

// How one citer c of a focal publication f relates to f's neighborhood:
// r_citing counts c's references into citers(f) (depth side), r_cited counts
// c's references into references(f) (dependence side).
struct CiterProfile {
    PubId citer = 0;
    std::uint32_t r_citing = 0;
    std::uint32_t r_cited = 0;

    bool operator==(const CiterProfile&) const = default;
};

// The thirteen per-publication indicators: citation level, plus absolute and
// relative depth/breadth and dependence/independence. The six relative
// fields are defined only when cp > 0; nullopt is the undefined marker and
// is never conflated with 0.
struct IndicatorRecord {
    PubId pub = 0;
    std::uint32_t cp = 0;
    std::uint32_t cp_rciting_eq0 = 0;
    std::uint32_t cp_rciting_gt0 = 0;
    std::uint64_t tr_citing = 0;
    std::uint32_t cp_rcited_eq0 = 0;
    std::uint32_t cp_rcited_gt0 = 0;
    std::uint64_t tr_cited = 0;
    std::optional<double> pcp_rciting_eq0;
    std::optional<double> pcp_rciting_gt0;
    std::optional<double> mr_citing;
    std::optional<double> pcp_rcited_eq0;
    std::optional<double> pcp_rcited_gt0;
    std::optional<double> mr_cited;

    bool operator==(const IndicatorRecord&) const = default;
};

// Indicator vocabulary, in canonical CSV column order.
enum class IndicatorId : int {
    cp,
    cp_rciting_eq0,
    cp_rciting_gt0,
    tr_citing,
    pcp_rciting_eq0,
    pcp_rciting_gt0,
    mr_citing,
    cp_rcited_eq0,
    cp_rcited_gt0,
    tr_cited,
    pcp_rcited_eq0,
    pcp_rcited_gt0,
    mr_cited,
};

inline constexpr std::array<IndicatorId, 13> kAllIndicators = {
    IndicatorId::cp,
    IndicatorId::cp_rciting_eq0,
    IndicatorId::cp_rciting_gt0,
    IndicatorId::tr_citing,
    IndicatorId::pcp_rciting_eq0,
    IndicatorId::pcp_rciting_gt0,
    IndicatorId::mr_citing,
    IndicatorId::cp_rcited_eq0,
    IndicatorId::cp_rcited_gt0,
    IndicatorId::tr_cited,
    IndicatorId::pcp_rcited_eq0,
    IndicatorId::pcp_rcited_gt0,
    IndicatorId::mr_cited,
};

std::string_view indicator_name(IndicatorId id);
std::optional<IndicatorId> parse_indicator(std::string_view name);

// True for the six normalized indicators that may be undefined (cp = 0).
bool indicator_is_relative(IndicatorId id);

// Value of one indicator on a record; nullopt when undefined.
std::optional<double> indicator_value(const IndicatorRecord& rec, IndicatorId id);

// |a ∩ b| for two sorted, duplicate-free lists. Merge scan, switching to a
// galloping search from the shorter side once the length ratio exceeds 32x
// (citer lists of highly cited publications dwarf reference lists).
std::size_t intersection_size(std::span<const PubId> a, std::span<const PubId> b);

// Profile of one citer c of focal f. Requires c ∈ citers(f); throws
// std::invalid_argument otherwise.
CiterProfile citer_profile(const CitationGraph& g, PubId focal, PubId citer);

// One profile per citer of f, ordered by citer dense index. Length = CP(f).
std::vector<CiterProfile> profile_distribution(const CitationGraph& g, PubId focal);

// The full thirteen-indicator record for one focal publication.
IndicatorRecord compute_indicators(const CitationGraph& g, PubId focal);

// Records for every publication with CP >= min_cp, ordered by dense index.
// Parallelizes across focal publications over the shared read-only graph;
// output is identical for any thread count. n_threads = 0 uses all cores.
std::vector<IndicatorRecord> batch_compute(const CitationGraph& g, std::uint32_t min_cp,
                                           unsigned n_threads = 0);

}  // namespace cimpact
