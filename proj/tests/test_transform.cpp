#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sumcast/codegen.hpp"
#include "sumcast/flow.hpp"
#include "sumcast/gen.hpp"
#include "sumcast/transform.hpp"
#include "sumcast/verify.hpp"

using namespace sumcast;

namespace {

Network high_degree_relay() {
    // one internal node with in-degree 3 and out-degree 3
    return parse_network(R"({
      "nodes": [
        {"id": "s1", "role": "source", "index": 1},
        {"id": "s2", "role": "source", "index": 2},
        {"id": "a", "role": "internal"},
        {"id": "v", "role": "internal"},
        {"id": "t1", "role": "terminal", "index": 1},
        {"id": "t2", "role": "terminal", "index": 2},
        {"id": "t3", "role": "terminal", "index": 3}
      ],
      "edges": [
        {"id": 0, "tail": "s1", "head": "v"},
        {"id": 1, "tail": "s2", "head": "v"},
        {"id": 2, "tail": "s1", "head": "a"},
        {"id": 3, "tail": "a", "head": "v"},
        {"id": 4, "tail": "v", "head": "t1"},
        {"id": 5, "tail": "v", "head": "t2"},
        {"id": 6, "tail": "v", "head": "t3"}
      ]
    })");
}

} // namespace

TEST_CASE("gadget replaces a degree-six node and keeps every pairing connected") {
    Network net = high_degree_relay();
    StructuredReduction red = reduce_degrees(net);
    for (int v = 0; v < red.reduced.node_count(); ++v) {
        if (red.reduced.node(v).role != NodeRole::Internal) continue;
        CHECK(red.reduced.in_edges(v).size() + red.reduced.out_edges(v).size() <= 3);
    }
    // every in-link/out-link pairing of v has a path through the gadget
    for (int in_edge : {0, 1, 3})
        for (int out_edge : {4, 5, 6}) {
            REQUIRE(red.edge_map[static_cast<std::size_t>(in_edge)].size() == 1);
            REQUIRE(red.edge_map[static_cast<std::size_t>(out_edge)].size() == 1);
            int from = red.reduced.edge(red.edge_map[static_cast<std::size_t>(in_edge)][0]).head;
            int to = red.reduced.edge(red.edge_map[static_cast<std::size_t>(out_edge)][0]).tail;
            CHECK(path_count(red.reduced, from, to) >= 1);
        }
}

TEST_CASE("already-structured networks come back unchanged") {
    Network net = gen::fixture_3s3t(gen::Stratum::Colors1, 5);
    StructuredReduction red = reduce_degrees(net);
    CHECK(network_to_json(red.reduced) == network_to_json(net));
    for (int e = 0; e < net.edge_count(); ++e) {
        REQUIRE(red.edge_map[static_cast<std::size_t>(e)].size() == 1);
        CHECK(red.edge_map[static_cast<std::size_t>(e)][0] == e);
    }
}

TEST_CASE("reduction preserves acyclicity, endpoints and flow correspondence") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        CAPTURE(seed);
        Network raw = gen::random_messy_network(seed, 2, 3);
        Normalization norm = normalize(raw);
        StructuredReduction red = reduce_degrees(norm.net);
        CHECK(red.reduced.topo_order().size() == red.reduced.nodes().size());
        CHECK(red.reduced.source_count() == norm.net.source_count());
        CHECK(red.reduced.terminal_count() == norm.net.terminal_count());
        for (int v = 0; v < red.reduced.node_count(); ++v) {
            if (red.reduced.node(v).role != NodeRole::Internal) continue;
            CHECK(red.reduced.in_edges(v).size() + red.reduced.out_edges(v).size() <= 3);
        }
        for (int i = 1; i <= norm.net.source_count(); ++i)
            for (int j = 1; j <= norm.net.terminal_count(); ++j) {
                int f = max_flow(norm.net, norm.net.source_node(i), norm.net.terminal_node(j));
                int vf = vertex_max_flow(red.reduced, red.reduced.source_node(i), red.reduced.terminal_node(j));
                CHECK(vf >= std::min(f, 2));
            }
    }
}

TEST_CASE("lifting an identity reduction returns the code unchanged") {
    Network net = gen::fixture_3s3t(gen::Stratum::Case0, 3);
    StructuredReduction red = reduce_degrees(net);
    Field f3{FieldSpec::prime(3)};
    CodeAssignment code = assign_3s_3t(net, f3, 0).code;
    CodeAssignment lifted = lift_code(red, f3, code);
    CHECK(code_to_json(lifted) == code_to_json(code));
}

TEST_CASE("greedy code on a gadget-reduced diamond lifts back") {
    Network net = high_degree_relay();
    Normalization norm = normalize(net);
    StructuredReduction red = reduce_degrees(norm.net);
    Field f3{FieldSpec::prime(3)};
    CodeAssignment reduced_code = assign_greedy_2s(red.reduced, f3);
    REQUIRE(check_sum_decodable(red.reduced, f3, reduced_code).all_decodable);
    CodeAssignment lifted = lift_code(red, f3, reduced_code);
    VerificationReport rep = check_sum_decodable(norm.net, f3, lifted);
    CHECK(rep.all_decodable);
}

TEST_CASE("3s/3t code on the reduced star lifts back to the original") {
    // the hub gadget splits the all-pairs crossing into private paths, so the
    // reduced star has only small labels and lands in the color analysis
    Network star = gen::star_3s3t(2);
    Normalization norm = normalize(star);
    StructuredReduction red = reduce_degrees(norm.net);
    Field f3{FieldSpec::prime(3)};
    Assign3s3tResult res = assign_3s_3t(red.reduced, f3, 0);
    CHECK(res.dispatch.case_id == 3);
    CodeAssignment lifted = lift_code(red, f3, res.code);
    CHECK(check_sum_decodable(norm.net, f3, lifted).all_decodable);
}

TEST_CASE("lift rejects infeasible input codes") {
    Network net = high_degree_relay();
    Normalization norm = normalize(net);
    StructuredReduction red = reduce_degrees(norm.net);
    Field f3{FieldSpec::prime(3)};
    CodeAssignment zero(f3.spec(), red.reduced.edge_count());
    CHECK_THROWS_AS(lift_code(red, f3, zero), VerifyError);
}
