#ifndef SUMCAST_FLOW_HPP
#define SUMCAST_FLOW_HPP

#include <cstdint>
#include <vector>

#include "sumcast/network.hpp"

namespace sumcast {

enum class DisjointMode { Edge, Vertex };

struct PathSet {
    DisjointMode mode = DisjointMode::Edge;
    std::vector<std::vector<int>> paths; // edge id sequences, each contiguous
};

// Maximum number of edge-disjoint s->t paths (integral max-flow, unit
// capacities), by augmenting paths with BFS in ascending edge-id order.
int max_flow(const Network& net, int s, int t);

// Max-flow after the node-splitting transform on internal nodes; counts
// internally vertex-disjoint paths (endpoints may be shared).
int vertex_max_flow(const Network& net, int s, int t);

// k pairwise disjoint s->t paths via flow decomposition; throws NetworkError
// when the flow is insufficient.  Deterministic given edge order.
PathSet disjoint_paths(const Network& net, int s, int t, int k, DisjointMode mode);

// Number of distinct u->v paths by dynamic programming over a topological
// order; saturates at UINT64_MAX.
std::uint64_t path_count(const Network& net, int u, int v);

} // namespace sumcast

#endif
