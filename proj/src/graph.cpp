#include "cimpact/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

namespace cimpact {

namespace {

// Strips a trailing '\r' so CRLF files parse the same as LF files.
inline void chomp(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Splits `line` at tabs into `out`. Returns the number of fields.
std::size_t split_tabs(const std::string& line, std::string_view* out, std::size_t max_fields) {
    std::size_t count = 0;
    std::size_t start = 0;
    while (count < max_fields) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out[count++] = std::string_view(line).substr(start);
            return count;
        }
        out[count++] = std::string_view(line).substr(start, tab - start);
        start = tab + 1;
    }
    return count + 1;  // more fields than expected
}

}  // namespace

// Accumulates parsed edges and metadata, then compacts into the immutable
// graph. Construction is single-writer by design.
class GraphBuilder {
public:
    PubId intern(std::string_view token) {
        auto it = graph_.index_.find(token);
        if (it != graph_.index_.end()) return it->second;
        PubId id = static_cast<PubId>(graph_.tokens_.size());
        graph_.tokens_.emplace_back(token);
        graph_.index_.emplace(graph_.tokens_.back(), id);
        return id;
    }

    bool known(std::string_view token) const {
        return graph_.index_.find(token) != graph_.index_.end();
    }

    void add_edge(PubId citing, PubId cited) { edges_.emplace_back(citing, cited); }

    void read_edges(std::istream& in) {
        std::string line;
        std::size_t line_no = 0;
        std::string_view fields[3];
        while (std::getline(in, line)) {
            ++line_no;
            chomp(line);
            if (!line.empty() && line[0] == '#') continue;
            std::size_t nfields = split_tabs(line, fields, 3);
            if (nfields != 2) {
                throw ParseError(line_no, "expected 2 tab-separated fields, got " +
                                              std::to_string(nfields));
            }
            if (fields[0].empty() || fields[1].empty()) {
                throw ParseError(line_no, "empty publication token");
            }
            PubId citing = intern(fields[0]);
            PubId cited = intern(fields[1]);
            add_edge(citing, cited);
        }
    }

    void apply_meta(const std::vector<PublicationMeta>& rows, ValidationReport& report) {
        graph_.has_meta_ = true;
        struct Seen {
            std::optional<int> year;
            std::optional<std::string> group;
            std::optional<std::string> doctype;
        };
        std::unordered_map<std::string, Seen> seen;
        for (const auto& row : rows) {
            auto it = seen.find(row.id);
            if (it != seen.end()) {
                const Seen& prev = it->second;
                if (prev.year != row.year || prev.group != row.group ||
                    prev.doctype != row.doctype) {
                    throw std::invalid_argument("conflicting metadata rows for id '" +
                                                row.id + "'");
                }
                continue;  // identical duplicate row
            }
            seen.emplace(row.id, Seen{row.year, row.group, row.doctype});
            if (!known(row.id)) ++report.unknown_meta_ids;
            PubId id = intern(row.id);
            meta_rows_.emplace_back(id, row);
        }
    }

    BuildResult finish() {
        ValidationReport report = report_;
        const std::uint32_t n = static_cast<std::uint32_t>(graph_.tokens_.size());
        graph_.n_ = n;

        // Drop self-loops, then dedup by sorting (citing, cited) pairs.
        std::size_t kept = 0;
        for (const auto& e : edges_) {
            if (e.first == e.second) {
                ++report.self_loops_dropped;
            } else {
                edges_[kept++] = e;
            }
        }
        edges_.resize(kept);
        std::sort(edges_.begin(), edges_.end());
        auto last = std::unique(edges_.begin(), edges_.end());
        report.duplicate_edges_dropped += static_cast<std::uint64_t>(edges_.end() - last);
        edges_.erase(last, edges_.end());
        graph_.edge_count_ = edges_.size();

        // Both CSR directions via counting sort. Edges are sorted by
        // (citing, cited), so reference rows come out sorted for free.
        graph_.ref_offsets_.assign(n + 1, 0);
        graph_.citer_offsets_.assign(n + 1, 0);
        for (const auto& [citing, cited] : edges_) {
            ++graph_.ref_offsets_[citing + 1];
            ++graph_.citer_offsets_[cited + 1];
        }
        for (std::uint32_t i = 0; i < n; ++i) {
            graph_.ref_offsets_[i + 1] += graph_.ref_offsets_[i];
            graph_.citer_offsets_[i + 1] += graph_.citer_offsets_[i];
        }
        graph_.ref_targets_.resize(edges_.size());
        graph_.citer_targets_.resize(edges_.size());
        std::vector<std::uint64_t> ref_cursor(graph_.ref_offsets_.begin(),
                                              graph_.ref_offsets_.end() - 1);
        std::vector<std::uint64_t> citer_cursor(graph_.citer_offsets_.begin(),
                                                graph_.citer_offsets_.end() - 1);
        for (const auto& [citing, cited] : edges_) {
            graph_.ref_targets_[ref_cursor[citing]++] = cited;
            graph_.citer_targets_[citer_cursor[cited]++] = citing;
        }
        // Citer rows are filled in (citing, cited) scan order, which is
        // ascending in `citing` within each row: already sorted.

        if (graph_.has_meta_) {
            graph_.years_.assign(n, 0);
            graph_.group_of_.assign(n, -1);
            graph_.doctype_of_.assign(n, -1);
            std::unordered_map<std::string, std::int32_t> group_ids, doctype_ids;
            auto label_id = [](std::unordered_map<std::string, std::int32_t>& ids,
                               std::vector<std::string>& labels,
                               const std::string& s) {
                auto [it, inserted] = ids.emplace(s, static_cast<std::int32_t>(labels.size()));
                if (inserted) labels.push_back(s);
                return it->second;
            };
            for (const auto& [id, row] : meta_rows_) {
                if (row.year) graph_.years_[id] = *row.year;
                if (row.group)
                    graph_.group_of_[id] = label_id(group_ids, graph_.group_labels_, *row.group);
                if (row.doctype)
                    graph_.doctype_of_[id] =
                        label_id(doctype_ids, graph_.doctype_labels_, *row.doctype);
            }
            // Temporal check runs on the kept edge set only.
            for (const auto& [citing, cited] : edges_) {
                std::int32_t cy = graph_.years_[citing];
                std::int32_t dy = graph_.years_[cited];
                if (cy != 0 && dy != 0 && cy < dy) ++report.temporal_violations;
            }
        }

        edges_.clear();
        meta_rows_.clear();
        return BuildResult{std::move(graph_), report};
    }

private:
    CitationGraph graph_;
    ValidationReport report_;
    std::vector<std::pair<PubId, PubId>> edges_;
    std::vector<std::pair<PubId, PublicationMeta>> meta_rows_;
};

std::vector<PublicationMeta> read_metadata_tsv(std::istream& in) {
    std::vector<PublicationMeta> rows;
    std::unordered_map<std::string, std::size_t> first_row;  // id -> index in rows
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::string_view fields[5];
    while (std::getline(in, line)) {
        ++line_no;
        chomp(line);
        if (!line.empty() && line[0] == '#') continue;
        std::size_t nfields = split_tabs(line, fields, 5);
        if (!header_seen) {
            if (nfields != 4 || fields[0] != "id" || fields[1] != "year" ||
                fields[2] != "group" || fields[3] != "doctype") {
                throw ParseError(line_no, "expected metadata header 'id\\tyear\\tgroup\\tdoctype'");
            }
            header_seen = true;
            continue;
        }
        if (nfields != 4) {
            throw ParseError(line_no, "expected 4 tab-separated fields, got " +
                                          std::to_string(nfields));
        }
        if (fields[0].empty()) throw ParseError(line_no, "empty publication id");
        PublicationMeta row;
        row.id = std::string(fields[0]);
        if (!fields[1].empty()) {
            int year = 0;
            auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), year);
            if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size()) {
                throw ParseError(line_no, "invalid year '" + std::string(fields[1]) + "'");
            }
            if (year < 1000 || year > 3000) {
                throw ParseError(line_no, "year " + std::to_string(year) +
                                              " outside sanity bounds [1000, 3000]");
            }
            row.year = year;
        }
        if (!fields[2].empty()) row.group = std::string(fields[2]);
        if (!fields[3].empty()) row.doctype = std::string(fields[3]);
        auto [it, inserted] = first_row.emplace(row.id, rows.size());
        if (!inserted) {
            const PublicationMeta& prev = rows[it->second];
            if (prev.year != row.year || prev.group != row.group ||
                prev.doctype != row.doctype) {
                throw ParseError(line_no, "conflicting metadata for id '" + row.id + "'");
            }
            continue;  // identical duplicate row
        }
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw ParseError(line_no == 0 ? 1 : line_no, "missing metadata header");
    return rows;
}

BuildResult build_graph(std::istream& edges, std::istream* meta) {
    GraphBuilder builder;
    builder.read_edges(edges);
    if (meta != nullptr) {
        auto rows = read_metadata_tsv(*meta);
        ValidationReport meta_report;
        builder.apply_meta(rows, meta_report);
        BuildResult result = builder.finish();
        result.report.unknown_meta_ids = meta_report.unknown_meta_ids;
        return result;
    }
    return builder.finish();
}

BuildResult build_graph_from_files(const std::string& edge_path,
                                   const std::optional<std::string>& meta_path) {
    std::ifstream edges(edge_path);
    if (!edges) throw std::runtime_error("cannot open edge file '" + edge_path + "'");
    if (meta_path) {
        std::ifstream meta(*meta_path);
        if (!meta) throw std::runtime_error("cannot open metadata file '" + *meta_path + "'");
        return build_graph(edges, &meta);
    }
    return build_graph(edges);
}

void write_edge_list(std::ostream& out, const CitationGraph& g) {
    for (PubId f = 0; f < g.size(); ++f) {
        const std::string& citing = g.token(f);
        for (PubId cited : g.references(f)) {
            out << citing << '\t' << g.token(cited) << '\n';
        }
    }
}

}  // namespace cimpact
