#include "sumcast/demo.hpp"

namespace sumcast {

const char* counterexample_3s3t_json() {
    return R"({
  "nodes": [
    {"id": "s1", "role": "source", "index": 1},
    {"id": "s2", "role": "source", "index": 2},
    {"id": "s3", "role": "source", "index": 3},
    {"id": "r12", "role": "internal"},
    {"id": "c12", "role": "internal"},
    {"id": "r23", "role": "internal"},
    {"id": "c23", "role": "internal"},
    {"id": "t1", "role": "terminal", "index": 1},
    {"id": "t2", "role": "terminal", "index": 2},
    {"id": "t3", "role": "terminal", "index": 3}
  ],
  "edges": [
    {"id": 0, "tail": "s1", "head": "r12"},
    {"id": 1, "tail": "s2", "head": "r12"},
    {"id": 2, "tail": "s2", "head": "r23"},
    {"id": 3, "tail": "s3", "head": "r23"},
    {"id": 4, "tail": "r12", "head": "c12"},
    {"id": 5, "tail": "c12", "head": "t1"},
    {"id": 6, "tail": "c12", "head": "t3"},
    {"id": 7, "tail": "r23", "head": "c23"},
    {"id": 8, "tail": "c23", "head": "t2"},
    {"id": 9, "tail": "c23", "head": "t3"},
    {"id": 10, "tail": "s3", "head": "t1"},
    {"id": 11, "tail": "s1", "head": "t2"}
  ]
})";
}

Network counterexample_3s3t() { return parse_network(counterexample_3s3t_json()); }

Network counterexample_3s3t_repaired() {
    Network base = counterexample_3s3t();
    std::vector<Node> nodes = base.nodes();
    std::vector<Edge> edges = base.edges();
    edges.push_back(Edge{static_cast<int>(edges.size()), base.find_node("s2"), base.find_node("t3"), 1});
    return Network::build(std::move(nodes), std::move(edges));
}

} // namespace sumcast
