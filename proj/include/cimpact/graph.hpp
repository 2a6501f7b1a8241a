#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cimpact {

// Dense publication index, contiguous in [0, N). The external identifier is
// an arbitrary string token; the mapping token <-> index is a bijection with
// indices assigned in first-appearance order of the input stream.
using PubId = std::uint32_t;

// Raised by the edge-list and metadata parsers. `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// One row of the metadata TSV. Empty fields are absent.
struct PublicationMeta {
    std::string id;
    std::optional<int> year;
    std::optional<std::string> group;
    std::optional<std::string> doctype;
};

// Tallies of everything the builder dropped or flagged. Dropped items never
// reach the graph; flagged items (temporal violations, metadata-only ids)
// are kept.
struct ValidationReport {
    std::uint64_t duplicate_edges_dropped = 0;
    std::uint64_t self_loops_dropped = 0;
    std::uint64_t temporal_violations = 0;  // citing year < cited year, both known
    std::uint64_t unknown_meta_ids = 0;     // metadata rows whose id never appears in edges

    bool operator==(const ValidationReport&) const = default;
};

// Immutable bidirectional citation network. Both adjacency directions are
// stored in CSR form with neighbor lists sorted ascending by dense index,
// deduplicated and free of self-loops. Read-only after construction, so a
// single instance is safely shared across threads without synchronization.
class CitationGraph {
public:
    CitationGraph() = default;

    std::uint32_t size() const noexcept { return n_; }
    std::uint64_t edge_count() const noexcept { return edge_count_; }

    // Out-neighbors: the publications f cites, restricted to the dataset.
    std::span<const PubId> references(PubId f) const {
        check_index(f);
        return {ref_targets_.data() + ref_offsets_[f],
                ref_targets_.data() + ref_offsets_[f + 1]};
    }

    // In-neighbors: the publications citing f. |citers(f)| is CP(f).
    std::span<const PubId> citers(PubId f) const {
        check_index(f);
        return {citer_targets_.data() + citer_offsets_[f],
                citer_targets_.data() + citer_offsets_[f + 1]};
    }

    std::uint32_t citation_count(PubId f) const {
        check_index(f);
        return static_cast<std::uint32_t>(citer_offsets_[f + 1] - citer_offsets_[f]);
    }

    const std::string& token(PubId f) const {
        check_index(f);
        return tokens_[f];
    }

    std::optional<PubId> find(std::string_view token) const {
        auto it = index_.find(token);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool has_meta() const noexcept { return has_meta_; }

    std::optional<int> year(PubId f) const {
        check_index(f);
        if (!has_meta_ || years_[f] == 0) return std::nullopt;
        return years_[f];
    }

    std::optional<std::string_view> group(PubId f) const {
        check_index(f);
        if (!has_meta_ || group_of_[f] < 0) return std::nullopt;
        return std::string_view(group_labels_[static_cast<std::size_t>(group_of_[f])]);
    }

    std::optional<std::string_view> doctype(PubId f) const {
        check_index(f);
        if (!has_meta_ || doctype_of_[f] < 0) return std::nullopt;
        return std::string_view(doctype_labels_[static_cast<std::size_t>(doctype_of_[f])]);
    }

private:
    void check_index(PubId f) const {
        if (f >= n_) {
            throw std::out_of_range("publication index " + std::to_string(f) +
                                    " out of range [0, " + std::to_string(n_) + ")");
        }
    }

    struct TokenHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };

    std::uint32_t n_ = 0;
    std::uint64_t edge_count_ = 0;
    std::vector<std::uint64_t> ref_offsets_;     // size n_+1
    std::vector<PubId> ref_targets_;             // sorted per row
    std::vector<std::uint64_t> citer_offsets_;
    std::vector<PubId> citer_targets_;
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, PubId, TokenHash, std::equal_to<>> index_;

    bool has_meta_ = false;
    std::vector<std::int32_t> years_;            // 0 = absent (valid years are >= 1000)
    std::vector<std::int32_t> group_of_;         // index into group_labels_, -1 = absent
    std::vector<std::int32_t> doctype_of_;
    std::vector<std::string> group_labels_;
    std::vector<std::string> doctype_labels_;

    friend class GraphBuilder;
};

struct BuildResult {
    CitationGraph graph;
    ValidationReport report;
};

// Parses the edge-list stream (`citing<TAB>cited` per line, `#` comments
// ignored) and optionally a metadata TSV, and assembles the graph. Duplicate
// edges are collapsed, self-loops dropped, both tallied in the report.
// Throws ParseError on malformed lines and std::invalid_argument on
// conflicting metadata rows.
BuildResult build_graph(std::istream& edges, std::istream* meta = nullptr);

// Same, reading from files. Throws std::system_error-style std::runtime_error
// if a path cannot be opened.
BuildResult build_graph_from_files(const std::string& edge_path,
                                   const std::optional<std::string>& meta_path = std::nullopt);

// Metadata TSV reader (header `id\tyear\tgroup\tdoctype`; `#` comment lines
// skipped; empty field = absent). Shared by the graph builder and by the
// stats pipeline when grouping a precomputed indicator file.
std::vector<PublicationMeta> read_metadata_tsv(std::istream& in);

// Writes all edges back out in the canonical format, citing publications in
// dense-index order. Rebuilding from this stream reproduces the same
// token-level adjacency.
void write_edge_list(std::ostream& out, const CitationGraph& g);

}  // namespace cimpact
