#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cimpact/graph.hpp"
#include "cimpact/indicators.hpp"

namespace cimpact {

struct SummaryStats {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
};

// Empirical CDF: for each distinct value v, the fraction of inputs <= v.
// Values strictly increasing, fractions nondecreasing, last fraction 1.
struct CdfSeries {
    std::vector<std::pair<double, double>> points;  // (value, cumulative fraction)
};

// A batch of indicator records bound to external tokens and optional group
// labels, so ranking/summarizing works the same whether records came from a
// live graph or were reloaded from an indicator CSV. `rec.pub` indexes
// `tokens` (and `groups` when non-empty).
struct IndicatorTable {
    std::vector<std::string> tokens;
    std::vector<std::optional<std::string>> groups;  // empty vector = no labels at all
    std::vector<IndicatorRecord> records;

    std::string_view token_of(const IndicatorRecord& rec) const { return tokens[rec.pub]; }

    std::optional<std::string_view> group_of(const IndicatorRecord& rec) const {
        if (groups.empty() || !groups[rec.pub]) return std::nullopt;
        return std::string_view(*groups[rec.pub]);
    }
};

// Binds batch results to the graph's tokens and group labels.
IndicatorTable make_table(const CitationGraph& g, std::vector<IndicatorRecord> records);

// Attaches group labels from metadata rows (by token) to a table that was
// loaded without them.
void apply_groups(IndicatorTable& table, std::span<const PublicationMeta> meta);

// Arithmetic mean and median (midpoint of the two central values for even
// n). Throws std::invalid_argument("no defined values") on empty input.
SummaryStats summarize(std::span<const double> values);

// Same over possibly-undefined values. skip_undefined drops them; otherwise
// any undefined value is an error.
SummaryStats summarize(std::span<const std::optional<double>> values, bool skip_undefined);

CdfSeries cdf(std::vector<double> values);

inline constexpr std::string_view kAllGroup = "ALL";

struct GroupSummaryCell {
    std::string group;  // a group label, or kAllGroup
    IndicatorId indicator;
    SummaryStats stats;
};

// One SummaryStats per (group x indicator) plus an ALL column over all
// records. Cells with no defined values are omitted.
struct GroupSummaryTable {
    std::vector<std::string> groups;  // sorted distinct labels, ALL excluded
    std::vector<IndicatorId> indicators;
    std::vector<GroupSummaryCell> cells;  // indicator-major, groups then ALL

    const SummaryStats* cell(std::string_view group, IndicatorId indicator) const;
};

// Records lacking a group label enter only the ALL column; relative
// indicators skip undefined values.
GroupSummaryTable group_summaries(const IndicatorTable& table,
                                  std::span<const IndicatorId> indicators);

struct RankRow {
    std::uint32_t rank = 0;
    std::string pub;
    IndicatorRecord rec;
};

// Top-n records by one indicator, descending; ties broken by ascending
// token; undefined values rank last.
struct RankTable {
    IndicatorId indicator{};
    std::vector<RankRow> rows;
};

RankTable rank_top(const IndicatorTable& table, IndicatorId indicator, std::size_t n);

struct ScatterPoint {
    std::string pub;
    double x = 0.0;
    double y = 0.0;
};

// One point per record with both coordinates defined; records omitted for an
// undefined coordinate are counted, not silently dropped.
struct ScatterSeries {
    IndicatorId x{};
    IndicatorId y{};
    std::vector<ScatterPoint> points;
    std::size_t omitted_undefined = 0;
};

ScatterSeries scatter(const IndicatorTable& table, IndicatorId x, IndicatorId y);

enum class ProfileSide { r_citing, r_cited };

std::optional<ProfileSide> parse_side(std::string_view name);
std::string_view side_name(ProfileSide side);

// Integer-valued histogram of one profile side, plus the mean marker
// (TR/CP). Empty input gives empty bins and an undefined mean.
struct Histogram {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> bins;  // (value, count), ascending
    std::optional<double> mean;
};

Histogram histogram(std::span<const CiterProfile> profiles, ProfileSide side);

}  // namespace cimpact
