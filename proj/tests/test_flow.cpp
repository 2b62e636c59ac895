#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sumcast/demo.hpp"
#include "sumcast/flow.hpp"
#include "sumcast/gen.hpp"
#include "sumcast/rng.hpp"

using namespace sumcast;

namespace {

Network diamond() {
    return parse_network(R"({
      "nodes": [
        {"id": "s", "role": "source", "index": 1},
        {"id": "a", "role": "internal"},
        {"id": "b", "role": "internal"},
        {"id": "t", "role": "terminal", "index": 1}
      ],
      "edges": [
        {"id": 0, "tail": "s", "head": "a"},
        {"id": 1, "tail": "s", "head": "b"},
        {"id": 2, "tail": "a", "head": "t"},
        {"id": 3, "tail": "b", "head": "t"}
      ]
    })");
}

} // namespace

TEST_CASE("max flow on simple shapes") {
    Network chain = parse_network(R"({
      "nodes": [
        {"id": "s", "role": "source", "index": 1},
        {"id": "v", "role": "internal"},
        {"id": "t", "role": "terminal", "index": 1}
      ],
      "edges": [
        {"id": 0, "tail": "s", "head": "v"},
        {"id": 1, "tail": "v", "head": "t"}
      ]
    })");
    CHECK(max_flow(chain, chain.source_node(1), chain.terminal_node(1)) == 1);

    Network parallel = parse_network(R"({
      "nodes": [
        {"id": "s", "role": "source", "index": 1},
        {"id": "t", "role": "terminal", "index": 1}
      ],
      "edges": [
        {"id": 0, "tail": "s", "head": "t"},
        {"id": 1, "tail": "s", "head": "t"}
      ]
    })");
    CHECK(max_flow(parallel, 0, 1) == 2);
}

TEST_CASE("every demo pair is connected, some pair only once") {
    Network net = counterexample_3s3t();
    int min_flow = 9;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            int f = max_flow(net, net.source_node(i), net.terminal_node(j));
            CHECK(f >= 1);
            min_flow = std::min(min_flow, f);
        }
    CHECK(min_flow == 1);
}

TEST_CASE("disjoint path extraction on the diamond") {
    Network net = diamond();
    PathSet edge_mode = disjoint_paths(net, 0, 3, 2, DisjointMode::Edge);
    REQUIRE(edge_mode.paths.size() == 2);
    for (const auto& p : edge_mode.paths) CHECK(p.size() == 2);
    PathSet vertex_mode = disjoint_paths(net, 0, 3, 2, DisjointMode::Vertex);
    REQUIRE(vertex_mode.paths.size() == 2);
    std::set<int> inner;
    for (const auto& p : vertex_mode.paths)
        for (int eid : p) {
            int h = net.edge(eid).head;
            if (h != 3) CHECK(inner.insert(h).second); // internally vertex disjoint
        }
    CHECK_THROWS_AS(disjoint_paths(net, 0, 3, 3, DisjointMode::Edge), NetworkError);
}

TEST_CASE("flow equals the largest extractable path set") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Network net = gen::random_connected_dag(seed, 2, 2, 18);
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                int s = net.source_node(i), t = net.terminal_node(j);
                int f = max_flow(net, s, t);
                PathSet ps = disjoint_paths(net, s, t, f, DisjointMode::Edge);
                CHECK(static_cast<int>(ps.paths.size()) == f);
                std::set<int> used;
                for (const auto& p : ps.paths) {
                    int at = s;
                    for (int eid : p) {
                        CHECK(net.edge(eid).tail == at); // contiguous
                        at = net.edge(eid).head;
                        CHECK(used.insert(eid).second); // edge-disjoint
                    }
                    CHECK(at == t);
                }
                CHECK_THROWS_AS(disjoint_paths(net, s, t, f + 1, DisjointMode::Edge), NetworkError);
            }
    }
}

TEST_CASE("vertex mode yields internally vertex-disjoint paths") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Network net = gen::fixture_3s3t(gen::Stratum::Colors2DifferRandom, seed);
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                int s = net.source_node(i), t = net.terminal_node(j);
                int vf = vertex_max_flow(net, s, t);
                CHECK(vf >= 2);
                PathSet ps = disjoint_paths(net, s, t, 2, DisjointMode::Vertex);
                std::set<int> inner;
                for (const auto& p : ps.paths) {
                    int at = s;
                    for (int eid : p) {
                        CHECK(net.edge(eid).tail == at);
                        at = net.edge(eid).head;
                        if (at != t) CHECK(inner.insert(at).second);
                    }
                    CHECK(at == t);
                }
            }
    }
}

TEST_CASE("path counting by DP matches DFS enumeration") {
    Network net = diamond();
    CHECK(path_count(net, 0, 3) == 2);
    Network single = parse_network(R"({
      "nodes": [
        {"id": "s", "role": "source", "index": 1},
        {"id": "t", "role": "terminal", "index": 1}
      ],
      "edges": [{"id": 0, "tail": "s", "head": "t"}]
    })");
    CHECK(path_count(single, 0, 1) == 1);

    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Network rnd = gen::random_connected_dag(seed, 2, 2, 11); // <= 15 nodes
        REQUIRE(rnd.node_count() <= 15);
        for (int u = 0; u < rnd.node_count(); ++u)
            for (int v = 0; v < rnd.node_count(); ++v)
                CHECK(path_count(rnd, u, v) == testing::dfs_count_paths(rnd, u, v));
    }
}
