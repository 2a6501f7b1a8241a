#include "cimpact/stats.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace cimpact {

IndicatorTable make_table(const CitationGraph& g, std::vector<IndicatorRecord> records) {
    IndicatorTable table;
    table.tokens.reserve(g.size());
    for (PubId f = 0; f < g.size(); ++f) table.tokens.push_back(g.token(f));
    if (g.has_meta()) {
        table.groups.resize(g.size());
        for (PubId f = 0; f < g.size(); ++f) {
            if (auto grp = g.group(f)) table.groups[f] = std::string(*grp);
        }
    }
    table.records = std::move(records);
    return table;
}

void apply_groups(IndicatorTable& table, std::span<const PublicationMeta> meta) {
    std::unordered_map<std::string_view, const PublicationMeta*> by_id;
    for (const auto& row : meta) by_id.emplace(row.id, &row);
    table.groups.assign(table.tokens.size(), std::nullopt);
    for (std::size_t i = 0; i < table.tokens.size(); ++i) {
        auto it = by_id.find(table.tokens[i]);
        if (it != by_id.end() && it->second->group) table.groups[i] = it->second->group;
    }
}

SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("no defined values");
    SummaryStats s;
    s.n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (s.n % 2 == 1) {
        s.median = sorted[s.n / 2];
    } else {
        s.median = (sorted[s.n / 2 - 1] + sorted[s.n / 2]) / 2.0;
    }
    return s;
}

SummaryStats summarize(std::span<const std::optional<double>> values, bool skip_undefined) {
    std::vector<double> defined;
    defined.reserve(values.size());
    for (const auto& v : values) {
        if (v) {
            defined.push_back(*v);
        } else if (!skip_undefined) {
            throw std::invalid_argument("undefined value in input and skip_undefined is off");
        }
    }
    return summarize(defined);
}

CdfSeries cdf(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("no defined values");
    std::sort(values.begin(), values.end());
    CdfSeries series;
    const double n = static_cast<double>(values.size());
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        series.points.emplace_back(values[i], static_cast<double>(j) / n);
        i = j;
    }
    return series;
}

const SummaryStats* GroupSummaryTable::cell(std::string_view group, IndicatorId indicator) const {
    for (const auto& c : cells) {
        if (c.indicator == indicator && c.group == group) return &c.stats;
    }
    return nullptr;
}

GroupSummaryTable group_summaries(const IndicatorTable& table,
                                  std::span<const IndicatorId> indicators) {
    if (table.records.empty()) throw std::invalid_argument("no records to summarize");
    GroupSummaryTable out;
    out.indicators.assign(indicators.begin(), indicators.end());

    std::set<std::string> labels;
    for (const auto& rec : table.records) {
        if (auto grp = table.group_of(rec)) labels.emplace(*grp);
    }
    out.groups.assign(labels.begin(), labels.end());

    for (IndicatorId ind : indicators) {
        // group label -> defined values of this indicator
        std::map<std::string_view, std::vector<double>> per_group;
        std::vector<double> all;
        for (const auto& rec : table.records) {
            auto value = indicator_value(rec, ind);
            if (!value) continue;  // undefined relative value, skipped everywhere
            all.push_back(*value);
            if (auto grp = table.group_of(rec)) per_group[*grp].push_back(*value);
        }
        for (const auto& label : out.groups) {
            auto it = per_group.find(label);
            if (it == per_group.end() || it->second.empty()) continue;
            out.cells.push_back({label, ind, summarize(it->second)});
        }
        if (!all.empty()) {
            out.cells.push_back({std::string(kAllGroup), ind, summarize(all)});
        }
    }
    return out;
}

RankTable rank_top(const IndicatorTable& table, IndicatorId indicator, std::size_t n) {
    if (n < 1) throw std::invalid_argument("rank size must be >= 1");
    RankTable out;
    out.indicator = indicator;

    std::vector<const IndicatorRecord*> order;
    order.reserve(table.records.size());
    for (const auto& rec : table.records) order.push_back(&rec);
    std::sort(order.begin(), order.end(),
              [&](const IndicatorRecord* a, const IndicatorRecord* b) {
                  auto va = indicator_value(*a, indicator);
                  auto vb = indicator_value(*b, indicator);
                  if (va.has_value() != vb.has_value()) return va.has_value();  // undefined last
                  if (va && vb && *va != *vb) return *va > *vb;
                  return table.token_of(*a) < table.token_of(*b);
              });

    std::size_t count = std::min(n, order.size());
    out.rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.rows.push_back({static_cast<std::uint32_t>(i + 1),
                            std::string(table.token_of(*order[i])), *order[i]});
    }
    return out;
}

ScatterSeries scatter(const IndicatorTable& table, IndicatorId x, IndicatorId y) {
    ScatterSeries out;
    out.x = x;
    out.y = y;
    for (const auto& rec : table.records) {
        auto vx = indicator_value(rec, x);
        auto vy = indicator_value(rec, y);
        if (vx && vy) {
            out.points.push_back({std::string(table.token_of(rec)), *vx, *vy});
        } else {
            ++out.omitted_undefined;
        }
    }
    return out;
}

std::optional<ProfileSide> parse_side(std::string_view name) {
    if (name == "r_citing") return ProfileSide::r_citing;
    if (name == "r_cited") return ProfileSide::r_cited;
    return std::nullopt;
}

std::string_view side_name(ProfileSide side) {
    return side == ProfileSide::r_citing ? "r_citing" : "r_cited";
}

Histogram histogram(std::span<const CiterProfile> profiles, ProfileSide side) {
    Histogram out;
    std::map<std::uint32_t, std::uint64_t> bins;
    std::uint64_t total = 0;
    for (const auto& p : profiles) {
        std::uint32_t v = side == ProfileSide::r_citing ? p.r_citing : p.r_cited;
        ++bins[v];
        total += v;
    }
    out.bins.assign(bins.begin(), bins.end());
    if (!profiles.empty()) {
        out.mean = static_cast<double>(total) / static_cast<double>(profiles.size());
    }
    return out;
}

}  // namespace cimpact
