#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sumcast/demo.hpp"
#include "sumcast/flow.hpp"
#include "sumcast/gen.hpp"
#include "sumcast/network.hpp"

using namespace sumcast;

namespace {

const char* kSingleEdge = R"({
  "nodes": [
    {"id": "s1", "role": "source", "index": 1},
    {"id": "t1", "role": "terminal", "index": 1}
  ],
  "edges": [{"id": 0, "tail": "s1", "head": "t1"}]
})";

} // namespace

TEST_CASE("parses a single edge network") {
    Network net = parse_network(kSingleEdge);
    CHECK(net.node_count() == 2);
    CHECK(net.edge_count() == 1);
    CHECK(net.source_count() == 1);
    CHECK(net.terminal_count() == 1);
}

TEST_CASE("parses the three-source demo topology") {
    Network net = counterexample_3s3t();
    CHECK(net.source_count() == 3);
    CHECK(net.terminal_count() == 3);
    CHECK(net.edge_count() == 12);
    CHECK(net.topo_order().size() == net.nodes().size());
}

TEST_CASE("rejects malformed networks") {
    CHECK_THROWS_WITH_AS(parse_network(R"({
      "nodes": [
        {"id": "s1", "role": "source", "index": 1},
        {"id": "t1", "role": "terminal", "index": 1}
      ],
      "edges": [
        {"id": 0, "tail": "s1", "head": "t1"},
        {"id": 1, "tail": "t1", "head": "s1"}
      ]
    })"),
                         doctest::Contains("cycle"), NetworkError);

    CHECK_THROWS_AS(parse_network(R"({
      "nodes": [{"id": "s1", "role": "source", "index": 1}],
      "edges": [{"id": 0, "tail": "s1", "head": "nowhere"}]
    })"),
                    NetworkError);

    CHECK_THROWS_AS(parse_network(R"({
      "nodes": [{"id": "s1"}],
      "edges": []
    })"),
                    NetworkError);

    // duplicate edge ids
    CHECK_THROWS_AS(parse_network(R"({
      "nodes": [
        {"id": "s1", "role": "source", "index": 1},
        {"id": "t1", "role": "terminal", "index": 1}
      ],
      "edges": [
        {"id": 0, "tail": "s1", "head": "t1"},
        {"id": 0, "tail": "s1", "head": "t1"}
      ]
    })"),
                    NetworkError);
}

TEST_CASE("json round trip") {
    Network net = counterexample_3s3t();
    Network again = parse_network(network_to_json(net));
    CHECK(network_to_json(net) == network_to_json(again));
}

TEST_CASE("normalization splits capacities into parallel unit edges") {
    Network net = parse_network(R"({
      "nodes": [
        {"id": "s1", "role": "source", "index": 1},
        {"id": "t1", "role": "terminal", "index": 1}
      ],
      "edges": [{"id": 0, "tail": "s1", "head": "t1", "capacity": 2}]
    })");
    Normalization norm = normalize(net);
    CHECK(norm.net.edge_count() == 2);
    CHECK(norm.edge_map[0].size() == 2);
    for (const Edge& e : norm.net.edges()) CHECK(e.capacity == 1);
    CHECK(max_flow(norm.net, norm.net.source_node(1), norm.net.terminal_node(1)) == 2);
}

TEST_CASE("normalization gives in-fed sources a virtual replacement") {
    Network net = parse_network(R"({
      "nodes": [
        {"id": "a", "role": "internal"},
        {"id": "s1", "role": "source", "index": 1},
        {"id": "s2", "role": "source", "index": 2},
        {"id": "t1", "role": "terminal", "index": 1}
      ],
      "edges": [
        {"id": 0, "tail": "a", "head": "s1"},
        {"id": 1, "tail": "s1", "head": "t1"},
        {"id": 2, "tail": "s2", "head": "t1"},
        {"id": 3, "tail": "s2", "head": "a"}
      ]
    })");
    Normalization norm = normalize(net);
    CHECK(norm.virtual_nodes.count("s1") == 1);
    int old_pos = norm.net.find_node("s1");
    CHECK(norm.net.node(old_pos).role == NodeRole::Internal);
    int new_pos = norm.net.find_node(norm.virtual_nodes.at("s1"));
    REQUIRE(new_pos >= 0);
    CHECK(norm.net.node(new_pos).role == NodeRole::Source);
    CHECK(norm.net.in_edges(new_pos).empty());
}

TEST_CASE("normalization is idempotent and preserves flows") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Network raw = gen::random_messy_network(seed, 2, 2);
        Normalization norm = normalize(raw);
        for (int i = 1; i <= raw.source_count(); ++i)
            for (int j = 1; j <= raw.terminal_count(); ++j)
                CHECK(max_flow(raw, raw.source_node(i), raw.terminal_node(j)) ==
                      max_flow(norm.net, norm.net.source_node(i), norm.net.terminal_node(j)));
        Normalization again = normalize(norm.net);
        CHECK(network_to_json(again.net) == network_to_json(norm.net));
    }
}

TEST_CASE("reach sets on the demo topology") {
    Network net = counterexample_3s3t();
    ReachSets rs = reach_sets(net);
    int r12 = net.find_node("r12");
    CHECK(rs.source_mask[static_cast<std::size_t>(r12)] == 0b011);  // sees s1, s2
    CHECK(rs.terminal_mask[static_cast<std::size_t>(r12)] == 0b101); // feeds t1, t3
    int s1 = net.find_node("s1");
    CHECK(rs.source_mask[static_cast<std::size_t>(s1)] == 0b001);
    CHECK(rs.terminal_mask[static_cast<std::size_t>(s1)] == 0b111);
}

TEST_CASE("reach sets of an isolated internal node are empty") {
    Network net = parse_network(R"({
      "nodes": [
        {"id": "s1", "role": "source", "index": 1},
        {"id": "lonely", "role": "internal"},
        {"id": "t1", "role": "terminal", "index": 1}
      ],
      "edges": [{"id": 0, "tail": "s1", "head": "t1"}]
    })");
    ReachSets rs = reach_sets(net);
    int v = net.find_node("lonely");
    CHECK(rs.source_mask[static_cast<std::size_t>(v)] == 0);
    CHECK(rs.terminal_mask[static_cast<std::size_t>(v)] == 0);
}
