// cimpact: multi-dimensional citation impact indicators over citation
// networks. Subcommands wire ingestion, indicator computation, statistics,
// ranking, and synthetic network generation into reproducible batch runs.
//
// Exit codes: 0 success, 2 I/O error, 3 input parse error, 4 usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cimpact/graph.hpp"
#include "cimpact/indicators.hpp"
#include "cimpact/io.hpp"
#include "cimpact/stats.hpp"
#include "cimpact/synthgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 2;
constexpr int kExitParse = 3;
constexpr int kExitUsage = 4;

struct InputFile {
    std::ifstream file;
    std::istream* stream = nullptr;  // &std::cin for "-"
};

InputFile open_input(const std::string& path) {
    InputFile in;
    if (path == "-") {
        in.stream = &std::cin;
        return in;
    }
    in.file.open(path);
    if (!in.file) throw std::runtime_error("cannot open input file '" + path + "'");
    in.stream = &in.file;
    return in;
}

struct OutputFile {
    std::ofstream file;
    std::ostream* stream = nullptr;

    void finish(const std::string& path) {
        stream->flush();
        if (!*stream) throw std::runtime_error("failed writing output file '" + path + "'");
    }
};

OutputFile open_output(const std::string& path) {
    OutputFile out;
    if (path == "-") {
        out.stream = &std::cout;
        return out;
    }
    out.file.open(path);
    if (!out.file) throw std::runtime_error("cannot open output file '" + path + "'");
    out.stream = &out.file;
    return out;
}

struct SourceOpts {
    std::string edges = "-";
    std::string indicators;  // non-empty: load a precomputed indicator CSV
    std::string meta;
    std::uint32_t min_cp = 100;
    unsigned threads = 0;  // 0 = all cores
    std::string format = "csv";
    std::string out = "-";
};

void add_source_flags(CLI::App* cmd, SourceOpts& o, bool with_indicators = true) {
    cmd->add_option("--edges", o.edges, "Edge list file, '-' for stdin")
        ->capture_default_str();
    if (with_indicators) {
        cmd->add_option("--indicators", o.indicators,
                        "Precomputed indicator CSV instead of --edges, '-' for stdin");
    }
    cmd->add_option("--meta", o.meta, "Metadata TSV (id, year, group, doctype)");
    cmd->add_option("--min-cp", o.min_cp, "Citation threshold for the batch")
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads (default: all cores)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Output path, '-' for stdout")->capture_default_str();
}

cimpact::OutputFormat format_of(const SourceOpts& o) {
    return *cimpact::parse_format(o.format);
}

cimpact::BuildResult build_from(const SourceOpts& o) {
    InputFile edges = open_input(o.edges);
    if (!o.meta.empty()) {
        InputFile meta = open_input(o.meta);
        return cimpact::build_graph(*edges.stream, meta.stream);
    }
    return cimpact::build_graph(*edges.stream);
}

// Computes or loads the indicator table, including group labels when
// available. Prints the validation summary to the diagnostics stream when a
// graph is built.
cimpact::IndicatorTable load_table(const SourceOpts& o) {
    if (!o.indicators.empty()) {
        InputFile in = open_input(o.indicators);
        cimpact::IndicatorTable table = cimpact::read_indicator_csv(*in.stream);
        if (!o.meta.empty()) {
            InputFile meta = open_input(o.meta);
            auto rows = cimpact::read_metadata_tsv(*meta.stream);
            cimpact::apply_groups(table, rows);
        }
        return table;
    }
    cimpact::BuildResult built = build_from(o);
    std::cerr << cimpact::report_summary(built.graph, built.report) << '\n';
    auto records = cimpact::batch_compute(built.graph, o.min_cp, o.threads);
    return cimpact::make_table(built.graph, std::move(records));
}

cimpact::IndicatorId parse_indicator_or_fail(const std::string& name) {
    auto id = cimpact::parse_indicator(name);
    if (!id) throw std::invalid_argument("unknown indicator name '" + name + "'");
    return *id;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return parts;
}

int run_compute(const SourceOpts& o) {
    cimpact::BuildResult built = build_from(o);
    std::cerr << cimpact::report_summary(built.graph, built.report) << '\n';
    auto records = cimpact::batch_compute(built.graph, o.min_cp, o.threads);
    auto table = cimpact::make_table(built.graph, std::move(records));
    OutputFile out = open_output(o.out);
    if (format_of(o) == cimpact::OutputFormat::csv) {
        cimpact::write_indicator_csv(*out.stream, table);
    } else {
        cimpact::write_indicator_json(*out.stream, table);
    }
    out.finish(o.out);
    return kExitOk;
}

int run_stats(const SourceOpts& o, const std::string& by, bool group_by, bool want_cdf) {
    cimpact::IndicatorTable table = load_table(o);
    if (!group_by) table.groups.clear();  // everything lands in the ALL column

    std::vector<cimpact::IndicatorId> indicators;
    if (by.empty()) {
        indicators.assign(cimpact::kAllIndicators.begin(), cimpact::kAllIndicators.end());
    } else {
        for (const auto& name : split_commas(by)) {
            indicators.push_back(parse_indicator_or_fail(name));
        }
    }

    OutputFile out = open_output(o.out);
    if (want_cdf) {
        if (indicators.size() != 1) {
            throw std::invalid_argument("--cdf needs exactly one indicator via --by");
        }
        const cimpact::IndicatorId ind = indicators[0];
        // values per group label, mirroring group_summaries semantics
        std::map<std::string, std::vector<double>> per_group;
        std::vector<double> all;
        for (const auto& rec : table.records) {
            auto value = cimpact::indicator_value(rec, ind);
            if (!value) continue;
            all.push_back(*value);
            if (auto grp = table.group_of(rec)) per_group[std::string(*grp)].push_back(*value);
        }
        if (all.empty()) throw std::invalid_argument("no defined values");
        cimpact::GroupedCdf series;
        for (auto& [group, values] : per_group) {
            series.emplace_back(group, cimpact::cdf(std::move(values)));
        }
        series.emplace_back(std::string(cimpact::kAllGroup), cimpact::cdf(std::move(all)));
        if (format_of(o) == cimpact::OutputFormat::csv) {
            cimpact::write_cdf_csv(*out.stream, series);
        } else {
            cimpact::write_cdf_json(*out.stream, series);
        }
    } else {
        auto summary = cimpact::group_summaries(table, indicators);
        if (format_of(o) == cimpact::OutputFormat::csv) {
            cimpact::write_summary_csv(*out.stream, summary);
        } else {
            cimpact::write_summary_json(*out.stream, summary);
        }
    }
    out.finish(o.out);
    return kExitOk;
}

int run_rank(const SourceOpts& o, const std::string& by, std::size_t top) {
    cimpact::IndicatorTable table = load_table(o);
    auto rank = cimpact::rank_top(table, parse_indicator_or_fail(by), top);
    OutputFile out = open_output(o.out);
    if (format_of(o) == cimpact::OutputFormat::csv) {
        cimpact::write_rank_csv(*out.stream, rank);
    } else {
        cimpact::write_rank_json(*out.stream, rank);
    }
    out.finish(o.out);
    return kExitOk;
}

int run_scatter(const SourceOpts& o, const std::string& by) {
    auto names = split_commas(by);
    if (names.size() != 2) {
        throw std::invalid_argument("scatter needs --by X_INDICATOR,Y_INDICATOR");
    }
    cimpact::IndicatorTable table = load_table(o);
    auto series = cimpact::scatter(table, parse_indicator_or_fail(names[0]),
                                   parse_indicator_or_fail(names[1]));
    if (series.omitted_undefined > 0) {
        std::cerr << "omitted " << series.omitted_undefined
                  << " records with undefined coordinates\n";
    }
    OutputFile out = open_output(o.out);
    if (format_of(o) == cimpact::OutputFormat::csv) {
        cimpact::write_scatter_csv(*out.stream, series);
    } else {
        cimpact::write_scatter_json(*out.stream, series);
    }
    out.finish(o.out);
    return kExitOk;
}

int run_dist(const SourceOpts& o, const std::string& focal, const std::string& side_name) {
    auto side = cimpact::parse_side(side_name);
    if (!side) throw std::invalid_argument("unknown side '" + side_name + "'");
    cimpact::BuildResult built = build_from(o);
    std::cerr << cimpact::report_summary(built.graph, built.report) << '\n';
    auto id = built.graph.find(focal);
    if (!id) throw std::invalid_argument("unknown publication token '" + focal + "'");
    auto profiles = cimpact::profile_distribution(built.graph, *id);
    auto hist = cimpact::histogram(profiles, *side);
    OutputFile out = open_output(o.out);
    if (format_of(o) == cimpact::OutputFormat::csv) {
        cimpact::write_histogram_csv(*out.stream, hist, *side);
    } else {
        cimpact::write_histogram_json(*out.stream, hist, *side);
    }
    out.finish(o.out);
    return kExitOk;
}

int run_validate(const SourceOpts& o) {
    cimpact::BuildResult built = build_from(o);
    OutputFile out = open_output(o.out);
    if (format_of(o) == cimpact::OutputFormat::csv) {
        cimpact::write_report_csv(*out.stream, built.graph, built.report);
    } else {
        cimpact::write_report_json(*out.stream, built.graph, built.report);
    }
    out.finish(o.out);
    return kExitOk;
}

int run_synth(const cimpact::SynthParams& params, const std::string& out_path,
              const std::string& meta_path) {
    OutputFile out = open_output(out_path);
    if (!meta_path.empty()) {
        OutputFile meta = open_output(meta_path);
        cimpact::generate(params, *out.stream, meta.stream);
        meta.finish(meta_path);
    } else {
        cimpact::generate(params, *out.stream);
    }
    out.finish(out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-dimensional citation impact indicators over citation networks"};
    app.require_subcommand(1);

    SourceOpts compute_opts;
    auto* compute = app.add_subcommand(
        "compute", "Compute the 13 indicators for all publications with CP >= min-cp");
    add_source_flags(compute, compute_opts, /*with_indicators=*/false);

    SourceOpts stats_opts;
    std::string stats_by;
    bool stats_group_by = false;
    bool stats_cdf = false;
    auto* stats = app.add_subcommand(
        "stats", "Mean/median summary table (or CDF series) over indicator records");
    add_source_flags(stats, stats_opts);
    stats->add_option("--by", stats_by, "Comma-separated indicator names (default: all)");
    stats->add_flag("--group-by", stats_group_by, "Break summaries down by metadata group");
    stats->add_flag("--cdf", stats_cdf, "Emit the cumulative distribution of one indicator");

    SourceOpts rank_opts;
    std::string rank_by;
    std::size_t rank_top_n = 10;
    auto* rank = app.add_subcommand("rank", "Top-n publications by one indicator");
    add_source_flags(rank, rank_opts);
    rank->add_option("--by", rank_by, "Indicator to rank by")->required();
    rank->add_option("--top", rank_top_n, "Number of rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    SourceOpts scatter_opts;
    std::string scatter_by;
    auto* scatter = app.add_subcommand("scatter", "Per-publication (x, y) indicator pairs");
    add_source_flags(scatter, scatter_opts);
    scatter->add_option("--by", scatter_by, "X and Y indicators, comma-separated")->required();

    SourceOpts dist_opts;
    std::string dist_focal;
    std::string dist_side;
    auto* dist = app.add_subcommand(
        "dist", "Histogram of one focal publication's citer profiles");
    add_source_flags(dist, dist_opts, /*with_indicators=*/false);
    dist->add_option("--focal", dist_focal, "Focal publication token")->required();
    dist->add_option("--side", dist_side, "r_citing or r_cited")->required();

    SourceOpts validate_opts;
    auto* validate = app.add_subcommand(
        "validate", "Parse and validate inputs, emit the validation report only");
    add_source_flags(validate, validate_opts, /*with_indicators=*/false);

    cimpact::SynthParams synth_params;
    std::string synth_out = "-";
    std::string synth_meta;
    auto* synth = app.add_subcommand(
        "synth", "Generate a seeded synthetic citation network (edge list + metadata)");
    synth->add_option("--n", synth_params.n_pubs, "Number of publications")->required();
    synth->add_option("--refs-mean", synth_params.refs_mean, "Mean references per publication")
        ->capture_default_str();
    synth->add_option("--exponent", synth_params.pref_attach_exponent,
                      "Preferential attachment exponent")
        ->capture_default_str();
    synth->add_option("--groups", synth_params.n_groups, "Round-robin group label count")
        ->capture_default_str();
    synth->add_option("--seed", synth_params.seed, "RNG seed")->capture_default_str();
    synth->add_option("--out", synth_out, "Edge list output, '-' for stdout")
        ->capture_default_str();
    synth->add_option("--meta", synth_meta, "Metadata TSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*compute) return run_compute(compute_opts);
        if (*stats) return run_stats(stats_opts, stats_by, stats_group_by, stats_cdf);
        if (*rank) return run_rank(rank_opts, rank_by, rank_top_n);
        if (*scatter) return run_scatter(scatter_opts, scatter_by);
        if (*dist) return run_dist(dist_opts, dist_focal, dist_side);
        if (*validate) return run_validate(validate_opts);
        if (*synth) return run_synth(synth_params, synth_out, synth_meta);
    } catch (const cimpact::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
