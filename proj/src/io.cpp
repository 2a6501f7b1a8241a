#include "cimpact/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace cimpact {

namespace {

using ordered_json = nlohmann::ordered_json;

// RFC 4180 quoting, needed only when a token contains a delimiter.
std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string opt_real(const std::optional<double>& v) {
    return v ? format_real(*v) : std::string();
}

ordered_json opt_json(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json record_json(std::string_view token, const IndicatorRecord& rec) {
    ordered_json row;
    row["pub_id"] = token;
    row["cp"] = rec.cp;
    row["cp_rciting_eq0"] = rec.cp_rciting_eq0;
    row["cp_rciting_gt0"] = rec.cp_rciting_gt0;
    row["tr_citing"] = rec.tr_citing;
    row["pcp_rciting_eq0"] = opt_json(rec.pcp_rciting_eq0);
    row["pcp_rciting_gt0"] = opt_json(rec.pcp_rciting_gt0);
    row["mr_citing"] = opt_json(rec.mr_citing);
    row["cp_rcited_eq0"] = rec.cp_rcited_eq0;
    row["cp_rcited_gt0"] = rec.cp_rcited_gt0;
    row["tr_cited"] = rec.tr_cited;
    row["pcp_rcited_eq0"] = opt_json(rec.pcp_rcited_eq0);
    row["pcp_rcited_gt0"] = opt_json(rec.pcp_rcited_gt0);
    row["mr_cited"] = opt_json(rec.mr_cited);
    return row;
}

void append_record_fields(std::string& line, const IndicatorRecord& rec) {
    line += std::to_string(rec.cp);
    line += ',';
    line += std::to_string(rec.cp_rciting_eq0);
    line += ',';
    line += std::to_string(rec.cp_rciting_gt0);
    line += ',';
    line += std::to_string(rec.tr_citing);
    line += ',';
    line += opt_real(rec.pcp_rciting_eq0);
    line += ',';
    line += opt_real(rec.pcp_rciting_gt0);
    line += ',';
    line += opt_real(rec.mr_citing);
    line += ',';
    line += std::to_string(rec.cp_rcited_eq0);
    line += ',';
    line += std::to_string(rec.cp_rcited_gt0);
    line += ',';
    line += std::to_string(rec.tr_cited);
    line += ',';
    line += opt_real(rec.pcp_rcited_eq0);
    line += ',';
    line += opt_real(rec.pcp_rcited_gt0);
    line += ',';
    line += opt_real(rec.mr_cited);
}

// Splits one CSV line, honoring quotes on the first field only (numeric
// fields never need quoting).
std::vector<std::string> split_csv(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::string field;
        if (pos < line.size() && line[pos] == '"') {
            ++pos;
            bool closed = false;
            while (pos < line.size()) {
                if (line[pos] == '"') {
                    if (pos + 1 < line.size() && line[pos + 1] == '"') {
                        field += '"';
                        pos += 2;
                    } else {
                        ++pos;
                        closed = true;
                        break;
                    }
                } else {
                    field += line[pos++];
                }
            }
            if (!closed) throw ParseError(line_no, "unterminated quoted field");
            if (pos < line.size() && line[pos] != ',') {
                throw ParseError(line_no, "garbage after quoted field");
            }
            fields.push_back(std::move(field));
            if (pos == line.size()) break;
            ++pos;  // skip comma
        } else {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) {
                fields.emplace_back(line.substr(pos));
                break;
            }
            fields.emplace_back(line.substr(pos, comma - pos));
            pos = comma + 1;
            if (pos == line.size()) {  // trailing empty field
                fields.emplace_back();
                break;
            }
        }
    }
    return fields;
}

template <typename T>
T parse_uint(const std::string& s, std::size_t line_no, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line_no, std::string("invalid ") + what + " '" + s + "'");
    }
    return value;
}

std::optional<double> parse_opt_real(const std::string& s, std::size_t line_no, const char* what) {
    if (s.empty()) return std::nullopt;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line_no, std::string("invalid ") + what + " '" + s + "'");
    }
    return value;
}

void dump_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

}  // namespace

std::optional<OutputFormat> parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    return std::nullopt;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_indicator_csv(std::ostream& out, const IndicatorTable& table) {
    out << kIndicatorCsvHeader << '\n';
    std::string line;
    for (const auto& rec : table.records) {
        line.clear();
        line += csv_escape(table.token_of(rec));
        line += ',';
        append_record_fields(line, rec);
        line += '\n';
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
}

void write_indicator_json(std::ostream& out, const IndicatorTable& table) {
    out << "[\n";
    for (std::size_t i = 0; i < table.records.size(); ++i) {
        out << record_json(table.token_of(table.records[i]), table.records[i]).dump(2);
        if (i + 1 < table.records.size()) out << ',';
        out << '\n';
    }
    out << "]\n";
}

IndicatorTable read_indicator_csv(std::istream& in) {
    IndicatorTable table;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != kIndicatorCsvHeader) {
                throw ParseError(line_no, "unexpected indicator CSV header");
            }
            header_seen = true;
            continue;
        }
        auto fields = split_csv(line, line_no);
        if (fields.size() != 14) {
            throw ParseError(line_no, "expected 14 fields, got " + std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw ParseError(line_no, "empty pub_id");
        IndicatorRecord rec;
        rec.pub = static_cast<PubId>(table.records.size());
        rec.cp = parse_uint<std::uint32_t>(fields[1], line_no, "cp");
        rec.cp_rciting_eq0 = parse_uint<std::uint32_t>(fields[2], line_no, "cp_rciting_eq0");
        rec.cp_rciting_gt0 = parse_uint<std::uint32_t>(fields[3], line_no, "cp_rciting_gt0");
        rec.tr_citing = parse_uint<std::uint64_t>(fields[4], line_no, "tr_citing");
        rec.pcp_rciting_eq0 = parse_opt_real(fields[5], line_no, "pcp_rciting_eq0");
        rec.pcp_rciting_gt0 = parse_opt_real(fields[6], line_no, "pcp_rciting_gt0");
        rec.mr_citing = parse_opt_real(fields[7], line_no, "mr_citing");
        rec.cp_rcited_eq0 = parse_uint<std::uint32_t>(fields[8], line_no, "cp_rcited_eq0");
        rec.cp_rcited_gt0 = parse_uint<std::uint32_t>(fields[9], line_no, "cp_rcited_gt0");
        rec.tr_cited = parse_uint<std::uint64_t>(fields[10], line_no, "tr_cited");
        rec.pcp_rcited_eq0 = parse_opt_real(fields[11], line_no, "pcp_rcited_eq0");
        rec.pcp_rcited_gt0 = parse_opt_real(fields[12], line_no, "pcp_rcited_gt0");
        rec.mr_cited = parse_opt_real(fields[13], line_no, "mr_cited");
        table.tokens.push_back(fields[0]);
        table.records.push_back(std::move(rec));
    }
    if (!header_seen) throw ParseError(line_no == 0 ? 1 : line_no, "missing indicator CSV header");
    return table;
}

void write_summary_csv(std::ostream& out, const GroupSummaryTable& table) {
    out << "group,indicator,n,mean,median\n";
    for (const auto& cell : table.cells) {
        out << csv_escape(cell.group) << ',' << indicator_name(cell.indicator) << ','
            << cell.stats.n << ',' << format_real(cell.stats.mean) << ','
            << format_real(cell.stats.median) << '\n';
    }
}

void write_summary_json(std::ostream& out, const GroupSummaryTable& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& cell : table.cells) {
        ordered_json row;
        row["group"] = cell.group;
        row["indicator"] = indicator_name(cell.indicator);
        row["n"] = cell.stats.n;
        row["mean"] = cell.stats.mean;
        row["median"] = cell.stats.median;
        rows.push_back(std::move(row));
    }
    dump_json(out, rows);
}

void write_cdf_csv(std::ostream& out, const GroupedCdf& series) {
    const bool grouped = series.size() > 1 || (series.size() == 1 && series[0].first != kAllGroup);
    out << (grouped ? "group,value,cum_fraction\n" : "value,cum_fraction\n");
    for (const auto& [group, cdf_series] : series) {
        for (const auto& [value, fraction] : cdf_series.points) {
            if (grouped) out << csv_escape(group) << ',';
            out << format_real(value) << ',' << format_real(fraction) << '\n';
        }
    }
}

void write_cdf_json(std::ostream& out, const GroupedCdf& series) {
    ordered_json groups = ordered_json::array();
    for (const auto& [group, cdf_series] : series) {
        ordered_json entry;
        entry["group"] = group;
        ordered_json points = ordered_json::array();
        for (const auto& [value, fraction] : cdf_series.points) {
            points.push_back(ordered_json{{"value", value}, {"cum_fraction", fraction}});
        }
        entry["points"] = std::move(points);
        groups.push_back(std::move(entry));
    }
    dump_json(out, groups);
}

void write_rank_csv(std::ostream& out, const RankTable& table) {
    out << "rank," << kIndicatorCsvHeader << '\n';
    std::string line;
    for (const auto& row : table.rows) {
        line.clear();
        line += std::to_string(row.rank);
        line += ',';
        line += csv_escape(row.pub);
        line += ',';
        append_record_fields(line, row.rec);
        line += '\n';
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
}

void write_rank_json(std::ostream& out, const RankTable& table) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json entry = record_json(row.pub, row.rec);
        entry.erase("pub_id");
        ordered_json full;
        full["rank"] = row.rank;
        full["pub_id"] = row.pub;
        full.update(entry);
        rows.push_back(std::move(full));
    }
    dump_json(out, rows);
}

void write_scatter_csv(std::ostream& out, const ScatterSeries& series) {
    out << "pub_id," << indicator_name(series.x) << ',' << indicator_name(series.y) << '\n';
    for (const auto& p : series.points) {
        out << csv_escape(p.pub) << ',' << format_real(p.x) << ',' << format_real(p.y) << '\n';
    }
}

void write_scatter_json(std::ostream& out, const ScatterSeries& series) {
    ordered_json obj;
    obj["x"] = indicator_name(series.x);
    obj["y"] = indicator_name(series.y);
    obj["omitted_undefined"] = series.omitted_undefined;
    ordered_json points = ordered_json::array();
    for (const auto& p : series.points) {
        points.push_back(ordered_json{{"pub_id", p.pub}, {"x", p.x}, {"y", p.y}});
    }
    obj["points"] = std::move(points);
    dump_json(out, obj);
}

void write_histogram_csv(std::ostream& out, const Histogram& hist, ProfileSide side) {
    out << "# side " << side_name(side) << '\n';
    if (hist.mean) out << "# mean " << format_real(*hist.mean) << '\n';
    out << "value,count\n";
    for (const auto& [value, count] : hist.bins) {
        out << value << ',' << count << '\n';
    }
}

void write_histogram_json(std::ostream& out, const Histogram& hist, ProfileSide side) {
    ordered_json obj;
    obj["side"] = side_name(side);
    obj["mean"] = hist.mean ? ordered_json(*hist.mean) : ordered_json(nullptr);
    ordered_json bins = ordered_json::array();
    for (const auto& [value, count] : hist.bins) {
        bins.push_back(ordered_json{{"value", value}, {"count", count}});
    }
    obj["bins"] = std::move(bins);
    dump_json(out, obj);
}

void write_report_csv(std::ostream& out, const CitationGraph& g, const ValidationReport& report) {
    out << "publications,edges,duplicate_edges_dropped,self_loops_dropped,"
           "temporal_violations,unknown_meta_ids\n";
    out << g.size() << ',' << g.edge_count() << ',' << report.duplicate_edges_dropped << ','
        << report.self_loops_dropped << ',' << report.temporal_violations << ','
        << report.unknown_meta_ids << '\n';
}

void write_report_json(std::ostream& out, const CitationGraph& g, const ValidationReport& report) {
    ordered_json obj;
    obj["publications"] = g.size();
    obj["edges"] = g.edge_count();
    obj["duplicate_edges_dropped"] = report.duplicate_edges_dropped;
    obj["self_loops_dropped"] = report.self_loops_dropped;
    obj["temporal_violations"] = report.temporal_violations;
    obj["unknown_meta_ids"] = report.unknown_meta_ids;
    dump_json(out, obj);
}

std::string report_summary(const CitationGraph& g, const ValidationReport& report) {
    std::string s = std::to_string(g.size()) + " publications, " +
                    std::to_string(g.edge_count()) + " citation edges; dropped " +
                    std::to_string(report.duplicate_edges_dropped) + " duplicate edges, " +
                    std::to_string(report.self_loops_dropped) + " self-loops; " +
                    std::to_string(report.temporal_violations) + " temporal violations; " +
                    std::to_string(report.unknown_meta_ids) + " metadata-only ids";
    return s;
}

}  // namespace cimpact
