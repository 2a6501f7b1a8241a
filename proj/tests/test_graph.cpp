#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "cimpact/graph.hpp"
#include "oracle.hpp"
#include "testutil.hpp"

using cimpact::build_graph;
using cimpact::CitationGraph;
using cimpact::ParseError;
using cimpact::PubId;
using cimpact::ValidationReport;

namespace {

std::vector<std::string> tokens_of(const CitationGraph& g, std::span<const PubId> ids) {
    std::vector<std::string> out;
    for (PubId id : ids) out.push_back(g.token(id));
    std::sort(out.begin(), out.end());
    return out;
}

// Token-level adjacency, independent of dense index assignment.
std::map<std::string, std::vector<std::string>> reference_map(const CitationGraph& g) {
    std::map<std::string, std::vector<std::string>> out;
    for (PubId f = 0; f < g.size(); ++f) {
        out[g.token(f)] = tokens_of(g, g.references(f));
    }
    return out;
}

}  // namespace

TEST_CASE("figure 1 fixture has the documented shape") {
    auto [g, report] = testutil::build_fixture("fig1.tsv");
    CHECK(g.size() == 12);
    CHECK(g.edge_count() == 20);
    CHECK(report == ValidationReport{});

    auto a = g.find("A");
    REQUIRE(a.has_value());
    CHECK(tokens_of(g, g.citers(*a)) ==
          std::vector<std::string>{"A1", "A2", "A3", "A4", "A5"});
    CHECK(g.citation_count(*a) == 5);
    CHECK(g.references(*a).empty());

    auto b1 = g.find("B1");
    REQUIRE(b1.has_value());
    CHECK(tokens_of(g, g.references(*b1)) == std::vector<std::string>{"B"});
    CHECK(g.citers(*b1).empty());
}

TEST_CASE("figure 2 fixture: references of A and a sink publication") {
    auto [g, report] = testutil::build_fixture("fig2.tsv");
    CHECK(g.size() == 18);
    CHECK(g.edge_count() == 31);

    auto a = g.find("A");
    REQUIRE(a.has_value());
    CHECK(tokens_of(g, g.references(*a)) == std::vector<std::string>{"X1", "X2", "X3"});

    auto x1 = g.find("X1");
    REQUIRE(x1.has_value());
    CHECK(g.references(*x1).empty());  // sink
    CHECK(g.citation_count(*x1) == 6);  // cited by A and all five of A's citers
}

TEST_CASE("empty edge stream gives the empty graph") {
    std::istringstream in("");
    auto [g, report] = build_graph(in);
    CHECK(g.size() == 0);
    CHECK(g.edge_count() == 0);
    CHECK(report == ValidationReport{});
}

TEST_CASE("duplicate edges collapse and self-loops drop, both tallied") {
    std::istringstream in("X\tY\nX\tY\nZ\tZ\n");
    auto [g, report] = build_graph(in);
    CHECK(g.size() == 3);  // Z still receives an index
    CHECK(g.edge_count() == 1);
    CHECK(report.duplicate_edges_dropped == 1);
    CHECK(report.self_loops_dropped == 1);
    auto z = g.find("Z");
    REQUIRE(z.has_value());
    CHECK(g.references(*z).empty());
    CHECK(g.citers(*z).empty());
}

TEST_CASE("malformed edge lines name the offending line") {
    SUBCASE("wrong column count") {
        std::istringstream in("A\tB\nA\tB\tC\n");
        CHECK_THROWS_WITH_AS(build_graph(in), doctest::Contains("line 2"), ParseError);
    }
    SUBCASE("single column") {
        std::istringstream in("# comment\nAB\n");
        try {
            build_graph(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("empty token") {
        std::istringstream in("A\t\n");
        CHECK_THROWS_AS(build_graph(in), ParseError);
    }
    SUBCASE("blank line") {
        std::istringstream in("A\tB\n\nC\tD\n");
        try {
            build_graph(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
}

TEST_CASE("comment lines are ignored but still counted for line numbers") {
    std::istringstream in("# header\nA\tB\n# another\nbad line here\t\t\n");
    try {
        build_graph(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("CRLF input parses like LF input") {
    std::istringstream in("A\tB\r\nC\tB\r\n");
    auto [g, report] = build_graph(in);
    CHECK(g.size() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.find("B").has_value());
}

TEST_CASE("metadata attaches year, group, and doctype") {
    auto [g, report] = testutil::build_fixture("fig1fig2.tsv", "fig1fig2_meta.tsv");
    CHECK(g.size() == 30);
    CHECK(g.edge_count() == 51);
    CHECK(g.has_meta());
    CHECK(report.temporal_violations == 0);
    CHECK(report.unknown_meta_ids == 0);

    auto a = g.find("A_fig1");
    REQUIRE(a.has_value());
    CHECK(g.year(*a) == 2000);
    CHECK(g.group(*a) == "fig1");
    CHECK(g.doctype(*a) == "article");
}

TEST_CASE("metadata-only ids are interned, isolated, and tallied") {
    std::istringstream edges("A\tB\n");
    std::istringstream meta("id\tyear\tgroup\tdoctype\nA\t2001\tg1\t\nGHOST\t\tg2\t\n");
    auto [g, report] = build_graph(edges, &meta);
    CHECK(g.size() == 3);
    CHECK(report.unknown_meta_ids == 1);
    auto ghost = g.find("GHOST");
    REQUIRE(ghost.has_value());
    CHECK(g.citers(*ghost).empty());
    CHECK(g.references(*ghost).empty());
    CHECK(g.group(*ghost) == "g2");
    CHECK_FALSE(g.year(*ghost).has_value());
}

TEST_CASE("temporal violations are counted but edges kept") {
    std::istringstream edges("OLD\tNEW\nNEW\tOLD\n");
    std::istringstream meta("id\tyear\tgroup\tdoctype\nOLD\t1990\t\t\nNEW\t2000\t\t\n");
    auto [g, report] = build_graph(edges, &meta);
    CHECK(report.temporal_violations == 1);  // OLD (1990) citing NEW (2000)
    CHECK(g.edge_count() == 2);              // both edges present
}

TEST_CASE("metadata errors") {
    SUBCASE("missing header") {
        std::istringstream edges("A\tB\n");
        std::istringstream meta("A\t2000\tg\t\n");
        CHECK_THROWS_AS(build_graph(edges, &meta), ParseError);
    }
    SUBCASE("conflicting rows for one id") {
        std::istringstream edges("A\tB\n");
        std::istringstream meta("id\tyear\tgroup\tdoctype\nA\t2000\tg\t\nA\t2001\tg\t\n");
        CHECK_THROWS_WITH_AS(build_graph(edges, &meta), doctest::Contains("conflict"),
                             ParseError);
    }
    SUBCASE("identical duplicate rows are fine") {
        std::istringstream edges("A\tB\n");
        std::istringstream meta("id\tyear\tgroup\tdoctype\nA\t2000\tg\t\nA\t2000\tg\t\n");
        auto [g, report] = build_graph(edges, &meta);
        CHECK(g.year(*g.find("A")) == 2000);
    }
    SUBCASE("year outside sanity bounds") {
        std::istringstream edges("A\tB\n");
        std::istringstream meta("id\tyear\tgroup\tdoctype\nA\t999\t\t\n");
        CHECK_THROWS_AS(build_graph(edges, &meta), ParseError);
    }
    SUBCASE("unparsable year") {
        std::istringstream edges("A\tB\n");
        std::istringstream meta("id\tyear\tgroup\tdoctype\nA\t20x0\t\t\n");
        CHECK_THROWS_AS(build_graph(edges, &meta), ParseError);
    }
}

TEST_CASE("index errors on out-of-range lookups") {
    auto [g, report] = testutil::build_fixture("fig1.tsv");
    CHECK_THROWS_AS(g.citers(g.size()), std::out_of_range);
    CHECK_THROWS_AS(g.references(g.size() + 7), std::out_of_range);
    CHECK_FALSE(g.find("NOPE").has_value());
}

TEST_CASE("adjacency lists are sorted, duplicate-free, and symmetric") {
    std::mt19937 rng(77);
    for (int round = 0; round < 8; ++round) {
        auto edges = testutil::random_edges(rng, 50, 3.0, round % 2 == 0, true);
        auto [g, report] = testutil::build_from_pairs(edges);
        std::uint64_t citer_total = 0;
        for (PubId f = 0; f < g.size(); ++f) {
            auto refs = g.references(f);
            CHECK(std::is_sorted(refs.begin(), refs.end()));
            CHECK(std::adjacent_find(refs.begin(), refs.end()) == refs.end());
            for (PubId r : refs) {
                auto citers = g.citers(r);
                CHECK(std::binary_search(citers.begin(), citers.end(), f));
            }
            auto citers = g.citers(f);
            citer_total += citers.size();
            for (PubId c : citers) {
                auto back = g.references(c);
                CHECK(std::binary_search(back.begin(), back.end(), f));
            }
        }
        CHECK(citer_total == g.edge_count());
    }
}

TEST_CASE("citers and references match the full-scan oracle on random graphs") {
    std::mt19937 rng(123);
    auto edges = testutil::random_edges(rng, 50, 4.0, false, true);
    oracle::EdgeListOracle orc(edges);
    auto [g, report] = testutil::build_from_pairs(edges);
    REQUIRE(g.size() == orc.publications().size());
    for (const auto& pub : orc.publications()) {
        auto id = g.find(pub);
        REQUIRE(id.has_value());
        CHECK(tokens_of(g, g.citers(*id)) == orc.citers_of(pub));
        CHECK(tokens_of(g, g.references(*id)) == orc.refs_of(pub));
    }
}

TEST_CASE("export/rebuild round-trips the token-level adjacency") {
    std::mt19937 rng(5);
    auto check_roundtrip = [](const CitationGraph& g) {
        std::ostringstream out;
        cimpact::write_edge_list(out, g);
        std::istringstream in(out.str());
        auto [rebuilt, report] = build_graph(in);
        CHECK(rebuilt.size() == g.size());
        CHECK(rebuilt.edge_count() == g.edge_count());
        CHECK(reference_map(rebuilt) == reference_map(g));
    };
    check_roundtrip(testutil::build_fixture("fig1.tsv").graph);
    check_roundtrip(testutil::build_fixture("fig2.tsv").graph);
    auto edges = testutil::random_edges(rng, 60, 3.0, false, false);
    check_roundtrip(testutil::build_from_pairs(edges).graph);
}

TEST_CASE("building from a k-times repeated stream is idempotent") {
    std::mt19937 rng(9);
    auto edges = testutil::random_edges(rng, 30, 2.0, true, false);
    auto once = testutil::build_from_pairs(edges);
    std::vector<oracle::TokenEdge> tripled;
    for (int k = 0; k < 3; ++k) tripled.insert(tripled.end(), edges.begin(), edges.end());
    auto thrice = testutil::build_from_pairs(tripled);
    CHECK(thrice.graph.size() == once.graph.size());
    CHECK(thrice.graph.edge_count() == once.graph.edge_count());
    CHECK(reference_map(thrice.graph) == reference_map(once.graph));
    // every kept edge now arrives three times: 2U extra drops on top of the
    // tripled original duplicates
    CHECK(thrice.report.duplicate_edges_dropped ==
          3 * once.report.duplicate_edges_dropped + 2 * once.graph.edge_count());
}
