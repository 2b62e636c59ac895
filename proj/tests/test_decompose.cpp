#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sumcast/decompose.hpp"
#include "sumcast/demo.hpp"
#include "sumcast/gen.hpp"

using namespace sumcast;

TEST_CASE("labels on the demo topology") {
    Network net = counterexample_3s3t();
    auto labels = label_nodes(net);
    for (int i = 1; i <= 3; ++i) {
        const NodeLabel& l = labels[static_cast<std::size_t>(net.source_node(i))];
        CHECK(l.cs == 1);
        CHECK(l.ct == 3);
    }
    for (int j = 1; j <= 3; ++j) {
        const NodeLabel& l = labels[static_cast<std::size_t>(net.terminal_node(j))];
        CHECK(l.cs == 3);
        CHECK(l.ct == 1);
    }
    const NodeLabel& relay = labels[static_cast<std::size_t>(net.find_node("r12"))];
    CHECK(relay.cs == 2);
    CHECK(relay.ct == 2);
}

TEST_CASE("edge classes on the demo topology") {
    Network net = counterexample_3s3t();
    DecompositionReport rep = decompose(net);
    // the edge feeding f(X1,X2) into t3's private cone
    int into_t3 = -1;
    for (const Edge& e : net.edges())
        if (net.node(e.tail).id == "c12" && net.node(e.head).id == "t3") into_t3 = e.id;
    REQUIRE(into_t3 >= 0);
    CHECK(rep.edge_classes[static_cast<std::size_t>(into_t3)].terminal_edge);
    CHECK(rep.edge_classes[static_cast<std::size_t>(into_t3)].terminal == 3);
    // r12 -> c12 stays shared between t1 and t3
    int shared = -1;
    for (const Edge& e : net.edges())
        if (net.node(e.tail).id == "r12" && net.node(e.head).id == "c12") shared = e.id;
    CHECK_FALSE(rep.edge_classes[static_cast<std::size_t>(shared)].terminal_edge);
    validate_decomposition(net, rep);
}

TEST_CASE("classification rejects dead ends") {
    Network net = parse_network(R"({
      "nodes": [
        {"id": "s1", "role": "source", "index": 1},
        {"id": "dead", "role": "internal"},
        {"id": "t1", "role": "terminal", "index": 1}
      ],
      "edges": [
        {"id": 0, "tail": "s1", "head": "t1"},
        {"id": 1, "tail": "s1", "head": "dead"}
      ]
    })");
    auto labels = label_nodes(net);
    CHECK_THROWS_AS(classify_edges(net, labels, reach_sets(net)), DispatchError);
}

TEST_CASE("source can be a leaf") {
    Network net = parse_network(R"({
      "nodes": [
        {"id": "s1", "role": "source", "index": 1},
        {"id": "a", "role": "internal"},
        {"id": "t1", "role": "terminal", "index": 1}
      ],
      "edges": [
        {"id": 0, "tail": "s1", "head": "a"},
        {"id": 1, "tail": "a", "head": "t1"}
      ]
    })");
    DecompositionReport rep = decompose(net);
    REQUIRE(rep.leaves.size() == 1);
    REQUIRE(rep.leaves[0].size() == 1);
    CHECK(rep.leaves[0][0] == net.find_node("s1"));
}

TEST_CASE("colors only exist for case-3 graphs") {
    Network star = gen::fixture_3s3t(gen::Stratum::Case0, 1);
    DecompositionReport rep = decompose(star);
    CHECK_FALSE(rep.case3);
    CHECK_THROWS_AS(color_nodes(star, rep.labels, rep.reach), DispatchError);
}

TEST_CASE("aux graph degree sequences per stratum") {
    struct Row {
        gen::Stratum stratum;
        std::vector<int> degrees;
        std::size_t colors;
    };
    for (const Row& row : {Row{gen::Stratum::Colors3Deg033, {0, 3, 3}, 3},
                           Row{gen::Stratum::Colors3Deg222ThreeSources, {2, 2, 2}, 3},
                           Row{gen::Stratum::Colors3Deg123, {1, 2, 3}, 3},
                           Row{gen::Stratum::Colors1, {0, 1, 1}, 1}}) {
        CAPTURE(gen::stratum_name(row.stratum));
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            Network net = gen::fixture_3s3t(row.stratum, seed);
            DecompositionReport rep = decompose(net);
            REQUIRE(rep.case3);
            CHECK(rep.aux.colors.size() == row.colors);
            CHECK(rep.aux.degree_sequence == row.degrees);
            validate_decomposition(net, rep);
        }
    }
}

TEST_CASE("color separation and leaf existence hold on every stratum") {
    for (gen::Stratum st : gen::all_strata()) {
        CAPTURE(gen::stratum_name(st));
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            Network net = gen::fixture_3s3t(st, seed);
            DecompositionReport rep = decompose(net);
            validate_decomposition(net, rep);
            if (!rep.case3) continue;
            for (const auto& [node, color] : rep.colors) {
                CHECK(rep.labels[static_cast<std::size_t>(node)].cs == 2);
                CHECK(rep.labels[static_cast<std::size_t>(node)].ct == 2);
                CHECK(color.sources[0] < color.sources[1]);
                CHECK(color.terminals[0] < color.terminals[1]);
            }
        }
    }
}

TEST_CASE("two-color frame puts the shared labels in the middle") {
    Color c1{{1, 2}, {1, 2}};
    Color c2{{2, 3}, {2, 3}};
    TwoColorFrame fr = two_color_frame(c1, c2);
    CHECK(fr.src_from_canonical == std::array<int, 3>{1, 2, 3});
    CHECK(fr.term_from_canonical == std::array<int, 3>{1, 2, 3});

    Color c3{{1, 3}, {2, 3}};
    Color c4{{2, 3}, {1, 2}};
    TwoColorFrame fr2 = two_color_frame(c3, c4);
    CHECK(fr2.src_from_canonical == std::array<int, 3>{1, 3, 2});
    CHECK(fr2.term_from_canonical == std::array<int, 3>{3, 2, 1});
    // round trip
    for (int i = 1; i <= 3; ++i) {
        CHECK(fr2.src_to_canonical[static_cast<std::size_t>(fr2.src_from_canonical[static_cast<std::size_t>(i - 1)] - 1)] == i);
        CHECK(fr2.term_to_canonical[static_cast<std::size_t>(fr2.term_from_canonical[static_cast<std::size_t>(i - 1)] - 1)] == i);
    }
}

TEST_CASE("decomposition report serializes") {
    Network net = gen::fixture_3s3t(gen::Stratum::Colors2SameTerminal, 2);
    DecompositionReport rep = decompose(net);
    std::string text = decomposition_to_json(net, rep);
    CHECK(text.find("auxDegreeSequence") != std::string::npos);
}
