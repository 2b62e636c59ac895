#ifndef SUMCAST_NETWORK_HPP
#define SUMCAST_NETWORK_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sumcast {

struct NetworkError : std::runtime_error {
    explicit NetworkError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class NodeRole { Source, Internal, Terminal };

struct Node {
    std::string id;
    NodeRole role = NodeRole::Internal;
    int index = 0; // 1-based among sources / terminals, 0 for internal
};

struct Edge {
    int id = 0;
    int tail = 0; // node position
    int head = 0;
    int capacity = 1;
};

// Directed acyclic multigraph with unit (or integer) capacity edges.
// Immutable after construction; adjacency lists are sorted by edge id.
class Network {
public:
    Network() = default;
    static Network build(std::vector<Node> nodes, std::vector<Edge> edges);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    int find_node(const std::string& id) const; // -1 when missing
    const std::vector<int>& out_edges(int node) const { return out_[static_cast<std::size_t>(node)]; }
    const std::vector<int>& in_edges(int node) const { return in_[static_cast<std::size_t>(node)]; }
    const std::vector<int>& topo_order() const { return topo_; } // node positions

    int source_count() const { return static_cast<int>(sources_.size()); }
    int terminal_count() const { return static_cast<int>(terminals_.size()); }
    int source_node(int index1) const { return sources_[static_cast<std::size_t>(index1 - 1)]; }
    int terminal_node(int index1) const { return terminals_[static_cast<std::size_t>(index1 - 1)]; }

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_, in_;
    std::vector<int> topo_;
    std::vector<int> sources_, terminals_; // node position by 1-based index
};

Network parse_network(const std::string& json_text);
std::string network_to_json(const Network& net);

struct Normalization {
    Network net;
    // original edge id -> replacement edge ids in the normalized network
    std::vector<std::vector<int>> edge_map;
    // original source/terminal node id -> virtual replacement node id
    std::unordered_map<std::string, std::string> virtual_nodes;
};

// Splits capacities into parallel unit edges and gives sources with incoming
// edges (terminals with outgoing edges) a virtual replacement.  Idempotent.
Normalization normalize(const Network& net);

struct ReachSets {
    // bit i-1 set when source/terminal of index i reaches / is reachable
    std::vector<std::uint32_t> source_mask;
    std::vector<std::uint32_t> terminal_mask;
};

// Per node: which sources lie upstream, which terminals downstream (reflexive).
ReachSets reach_sets(const Network& net);

struct Subnetwork {
    Network net;
    std::vector<int> edge_to_orig; // new edge id -> original edge id
};

// Same node set, edges filtered by mask and re-packed to dense ids.
Subnetwork subnetwork(const Network& net, const std::vector<char>& keep_edges);

int popcount32(std::uint32_t v);

} // namespace sumcast

#endif
