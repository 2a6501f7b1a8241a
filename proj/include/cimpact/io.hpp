#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cimpact/graph.hpp"
#include "cimpact/stats.hpp"

namespace cimpact {

enum class OutputFormat { csv, json };

std::optional<OutputFormat> parse_format(std::string_view name);

// Reals are printed with 6 significant digits in all CSV outputs.
std::string format_real(double v);

inline constexpr std::string_view kIndicatorCsvHeader =
    "pub_id,cp,cp_rciting_eq0,cp_rciting_gt0,tr_citing,"
    "pcp_rciting_eq0,pcp_rciting_gt0,mr_citing,"
    "cp_rcited_eq0,cp_rcited_gt0,tr_cited,"
    "pcp_rcited_eq0,pcp_rcited_gt0,mr_cited";

// Indicator table: one row per record in canonical column order; undefined
// relative values serialize as empty fields (CSV) / null (JSON).
void write_indicator_csv(std::ostream& out, const IndicatorTable& table);
void write_indicator_json(std::ostream& out, const IndicatorTable& table);

// Reloads a previously written indicator CSV. Record pub ids are assigned by
// row order; group labels are not part of the format (attach via
// apply_groups). Throws ParseError on malformed input.
IndicatorTable read_indicator_csv(std::istream& in);

void write_summary_csv(std::ostream& out, const GroupSummaryTable& table);
void write_summary_json(std::ostream& out, const GroupSummaryTable& table);

// CDF series per group label (kAllGroup for the ungrouped series). The group
// column is omitted when only the ALL series is present.
using GroupedCdf = std::vector<std::pair<std::string, CdfSeries>>;
void write_cdf_csv(std::ostream& out, const GroupedCdf& series);
void write_cdf_json(std::ostream& out, const GroupedCdf& series);

void write_rank_csv(std::ostream& out, const RankTable& table);
void write_rank_json(std::ostream& out, const RankTable& table);

void write_scatter_csv(std::ostream& out, const ScatterSeries& series);
void write_scatter_json(std::ostream& out, const ScatterSeries& series);

void write_histogram_csv(std::ostream& out, const Histogram& hist, ProfileSide side);
void write_histogram_json(std::ostream& out, const Histogram& hist, ProfileSide side);

void write_report_csv(std::ostream& out, const CitationGraph& g, const ValidationReport& report);
void write_report_json(std::ostream& out, const CitationGraph& g, const ValidationReport& report);

// One-line human summary for the diagnostics stream.
std::string report_summary(const CitationGraph& g, const ValidationReport& report);

}  // namespace cimpact
