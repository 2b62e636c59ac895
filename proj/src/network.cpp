#include "sumcast/network.hpp"

#include <algorithm>
#include <bit>
#include <queue>

#include <json.hpp>

namespace sumcast {

using nlohmann::json;

int popcount32(std::uint32_t v) { return std::popcount(v); }

Network Network::build(std::vector<Node> nodes, std::vector<Edge> edges) {
    Network net;
    net.nodes_ = std::move(nodes);
    net.edges_ = std::move(edges);

    std::unordered_map<std::string, int> seen;
    for (int i = 0; i < net.node_count(); ++i) {
        const Node& n = net.nodes_[static_cast<std::size_t>(i)];
        if (n.id.empty()) throw NetworkError("node with empty id");
        if (!seen.emplace(n.id, i).second) throw NetworkError("duplicate node id \"" + n.id + "\"");
    }

    std::sort(net.edges_.begin(), net.edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
    for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edges_[static_cast<std::size_t>(e)];
        if (ed.id != e) throw NetworkError("edge ids must be unique and dense 0..E-1");
        if (ed.tail < 0 || ed.tail >= net.node_count() || ed.head < 0 || ed.head >= net.node_count())
            throw NetworkError("edge " + std::to_string(ed.id) + " has a dangling endpoint");
        if (ed.capacity < 1) throw NetworkError("edge " + std::to_string(ed.id) + " has capacity < 1");
    }

    net.out_.assign(net.nodes_.size(), {});
    net.in_.assign(net.nodes_.size(), {});
    for (const Edge& e : net.edges_) {
        net.out_[static_cast<std::size_t>(e.tail)].push_back(e.id);
        net.in_[static_cast<std::size_t>(e.head)].push_back(e.id);
    }

    // Kahn's algorithm; also the cycle check
    std::vector<int> indeg(net.nodes_.size(), 0);
    for (const Edge& e : net.edges_) ++indeg[static_cast<std::size_t>(e.head)];
    std::vector<int> stack;
    for (int i = net.node_count() - 1; i >= 0; --i)
        if (indeg[static_cast<std::size_t>(i)] == 0) stack.push_back(i);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        net.topo_.push_back(v);
        for (int eid : net.out_[static_cast<std::size_t>(v)]) {
            int h = net.edges_[static_cast<std::size_t>(eid)].head;
            if (--indeg[static_cast<std::size_t>(h)] == 0) stack.push_back(h);
        }
    }
    if (net.topo_.size() != net.nodes_.size()) throw NetworkError("cycle detected: graph is not acyclic");

    int ns = 0, nt = 0;
    for (const Node& n : net.nodes_) {
        if (n.role == NodeRole::Source) ++ns;
        if (n.role == NodeRole::Terminal) ++nt;
    }
    if (ns > 32 || nt > 32) throw NetworkError("at most 32 sources and 32 terminals supported");
    net.sources_.assign(static_cast<std::size_t>(ns), -1);
    net.terminals_.assign(static_cast<std::size_t>(nt), -1);
    for (int i = 0; i < net.node_count(); ++i) {
        const Node& n = net.nodes_[static_cast<std::size_t>(i)];
        if (n.role == NodeRole::Internal) continue;
        auto& slot = n.role == NodeRole::Source ? net.sources_ : net.terminals_;
        const char* what = n.role == NodeRole::Source ? "source" : "terminal";
        if (n.index < 1 || n.index > static_cast<int>(slot.size()))
            throw NetworkError(std::string(what) + " indices must be dense 1..count (node \"" + n.id + "\")");
        if (slot[static_cast<std::size_t>(n.index - 1)] != -1)
            throw NetworkError(std::string("duplicate ") + what + " index " + std::to_string(n.index));
        slot[static_cast<std::size_t>(n.index - 1)] = i;
    }
    return net;
}

int Network::find_node(const std::string& id) const {
    for (int i = 0; i < node_count(); ++i)
        if (nodes_[static_cast<std::size_t>(i)].id == id) return i;
    return -1;
}

namespace {

NodeRole role_from_string(const std::string& s) {
    if (s == "source") return NodeRole::Source;
    if (s == "internal") return NodeRole::Internal;
    if (s == "terminal") return NodeRole::Terminal;
    throw NetworkError("unknown node role \"" + s + "\"");
}

const char* role_to_string(NodeRole r) {
    switch (r) {
        case NodeRole::Source: return "source";
        case NodeRole::Terminal: return "terminal";
        default: return "internal";
    }
}

} // namespace

Network parse_network(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw NetworkError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("nodes") || !j.contains("edges"))
        throw NetworkError("network JSON needs \"nodes\" and \"edges\" arrays");

    std::vector<Node> nodes;
    std::unordered_map<std::string, int> pos;
    for (const auto& jn : j.at("nodes")) {
        Node n;
        if (!jn.contains("id")) throw NetworkError("node without id");
        n.id = jn.at("id").get<std::string>();
        if (!jn.contains("role")) throw NetworkError("node \"" + n.id + "\" is missing a role");
        n.role = role_from_string(jn.at("role").get<std::string>());
        if (n.role != NodeRole::Internal) {
            if (!jn.contains("index")) throw NetworkError("node \"" + n.id + "\" needs an index");
            n.index = jn.at("index").get<int>();
        }
        pos.emplace(n.id, static_cast<int>(nodes.size()));
        nodes.push_back(std::move(n));
    }
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) {
        Edge e;
        e.id = je.at("id").get<int>();
        auto t = pos.find(je.at("tail").get<std::string>());
        auto h = pos.find(je.at("head").get<std::string>());
        if (t == pos.end() || h == pos.end())
            throw NetworkError("edge " + std::to_string(e.id) + " has a dangling endpoint");
        e.tail = t->second;
        e.head = h->second;
        e.capacity = je.value("capacity", 1);
        edges.push_back(e);
    }
    return Network::build(std::move(nodes), std::move(edges));
}

std::string network_to_json(const Network& net) {
    json j;
    j["nodes"] = json::array();
    for (const Node& n : net.nodes()) {
        json jn{{"id", n.id}, {"role", role_to_string(n.role)}};
        if (n.role != NodeRole::Internal) jn["index"] = n.index;
        j["nodes"].push_back(std::move(jn));
    }
    j["edges"] = json::array();
    for (const Edge& e : net.edges()) {
        json je{{"id", e.id}, {"tail", net.node(e.tail).id}, {"head", net.node(e.head).id}};
        if (e.capacity != 1) je["capacity"] = e.capacity;
        j["edges"].push_back(std::move(je));
    }
    return j.dump(2);
}

Normalization normalize(const Network& net) {
    Normalization out;
    out.edge_map.assign(static_cast<std::size_t>(net.edge_count()), {});

    std::vector<Node> nodes = net.nodes();
    std::vector<Edge> edges;
    // capacity splitting first, so virtual-edge multiplicities see final degrees
    for (const Edge& e : net.edges()) {
        for (int c = 0; c < e.capacity; ++c) {
            Edge u{static_cast<int>(edges.size()), e.tail, e.head, 1};
            out.edge_map[static_cast<std::size_t>(e.id)].push_back(u.id);
            edges.push_back(u);
        }
    }

    auto fresh_id = [&nodes](std::string base) {
        auto taken = [&nodes](const std::string& id) {
            for (const Node& n : nodes)
                if (n.id == id) return true;
            return false;
        };
        while (taken(base)) base += "'";
        return base;
    };

    std::vector<int> in_deg(nodes.size(), 0), out_deg(nodes.size(), 0);
    for (const Edge& e : edges) {
        ++out_deg[static_cast<std::size_t>(e.tail)];
        ++in_deg[static_cast<std::size_t>(e.head)];
    }

    int orig_count = static_cast<int>(nodes.size());
    for (int i = 0; i < orig_count; ++i) {
        Node& n = nodes[static_cast<std::size_t>(i)];
        if (n.role == NodeRole::Source && in_deg[static_cast<std::size_t>(i)] > 0) {
            Node repl{fresh_id(n.id + "'"), NodeRole::Source, n.index};
            int pos = static_cast<int>(nodes.size());
            int k = std::max(1, out_deg[static_cast<std::size_t>(i)]);
            out.virtual_nodes.emplace(n.id, repl.id);
            n.role = NodeRole::Internal;
            n.index = 0;
            nodes.push_back(std::move(repl));
            for (int c = 0; c < k; ++c) edges.push_back(Edge{static_cast<int>(edges.size()), pos, i, 1});
        } else if (n.role == NodeRole::Terminal && out_deg[static_cast<std::size_t>(i)] > 0) {
            Node repl{fresh_id(n.id + "'"), NodeRole::Terminal, n.index};
            int pos = static_cast<int>(nodes.size());
            int k = std::max(1, in_deg[static_cast<std::size_t>(i)]);
            out.virtual_nodes.emplace(n.id, repl.id);
            n.role = NodeRole::Internal;
            n.index = 0;
            nodes.push_back(std::move(repl));
            for (int c = 0; c < k; ++c) edges.push_back(Edge{static_cast<int>(edges.size()), i, pos, 1});
        }
    }

    out.net = Network::build(std::move(nodes), std::move(edges));
    return out;
}

Subnetwork subnetwork(const Network& net, const std::vector<char>& keep_edges) {
    Subnetwork sub;
    std::vector<Edge> edges;
    for (const Edge& e : net.edges()) {
        if (!keep_edges[static_cast<std::size_t>(e.id)]) continue;
        Edge ne = e;
        ne.id = static_cast<int>(edges.size());
        edges.push_back(ne);
        sub.edge_to_orig.push_back(e.id);
    }
    sub.net = Network::build(net.nodes(), std::move(edges));
    return sub;
}

ReachSets reach_sets(const Network& net) {
    ReachSets rs;
    rs.source_mask.assign(net.nodes().size(), 0);
    rs.terminal_mask.assign(net.nodes().size(), 0);
    for (int i = 0; i < net.node_count(); ++i) {
        const Node& n = net.node(i);
        if (n.role == NodeRole::Source) rs.source_mask[static_cast<std::size_t>(i)] |= 1u << (n.index - 1);
        if (n.role == NodeRole::Terminal) rs.terminal_mask[static_cast<std::size_t>(i)] |= 1u << (n.index - 1);
    }
    const auto& order = net.topo_order();
    for (int v : order)
        for (int eid : net.out_edges(v))
            rs.source_mask[static_cast<std::size_t>(net.edge(eid).head)] |= rs.source_mask[static_cast<std::size_t>(v)];
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        for (int eid : net.in_edges(*it))
            rs.terminal_mask[static_cast<std::size_t>(net.edge(eid).tail)] |= rs.terminal_mask[static_cast<std::size_t>(*it)];
    return rs;
}

} // namespace sumcast
