#ifndef SUMCAST_CODEGEN_INTERNAL_HPP
#define SUMCAST_CODEGEN_INTERNAL_HPP

#include <algorithm>
#include <set>
#include <vector>

#include "sumcast/codegen.hpp"
#include "sumcast/network.hpp"

namespace sumcast::detail {

// Unit capacities, sources without incoming edges, terminals without
// outgoing edges; the generators assume all three.
void require_normalized(const Network& net);

// BFS path over the active edge subset, exploring in ascending edge-id
// order; returns edge ids, empty when unreachable or from == to.
std::vector<int> bfs_path(const Network& net, const std::vector<char>& active, int from, int to);

bool reaches(const Network& net, const std::vector<char>& active, int from, int to);

std::vector<int> path_nodes(const Network& net, int start, const std::vector<int>& path_edges);

// Spanning in-tree toward root inside an edge union: every node keeps its
// lowest-id outgoing union edge, so each node has exactly one path to root.
std::vector<int> in_tree_toward(const Network& net, const std::vector<int>& edges, int root);

// Multicast out-tree from root: every node keeps its lowest-id incoming
// union edge, so root has exactly one path to each node.
std::vector<int> out_tree_from(const Network& net, const std::vector<int>& edges, int root);

// View of the network restricted to nodes that both see a source and reach a
// terminal.  Edge/node ids are re-packed; maps recover the original ids.
struct PrunedView {
    Network net;
    std::vector<int> edge_to_orig;
    std::vector<int> node_to_orig;
    bool identity = false;
};

PrunedView prune_useless(const Network& net);

// Pulls an assignment made on the pruned view back onto the original edges.
CodeAssignment unprune_code(const Network& orig, const PrunedView& pv, const CodeAssignment& code);

} // namespace sumcast::detail

#endif
