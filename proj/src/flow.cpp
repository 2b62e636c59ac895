#include "sumcast/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace sumcast {

namespace {

// Residual augmenting-path solver; honors integer edge capacities.
struct UnitFlow {
    const Network& net;
    std::vector<int> flow; // per edge, 0..capacity

    explicit UnitFlow(const Network& n) : net(n), flow(static_cast<std::size_t>(n.edge_count()), 0) {}

    // BFS on the residual graph, exploring forward then backward arcs of a
    // node in ascending edge-id order.
    bool augment(int s, int t) {
        // parent arc per node: (edge id, forward?)
        std::vector<std::pair<int, bool>> par(net.nodes().size(), {-1, false});
        std::vector<char> seen(net.nodes().size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[static_cast<std::size_t>(s)] = 1;
        while (!q.empty() && !seen[static_cast<std::size_t>(t)]) {
            int v = q.front();
            q.pop();
            for (int eid : net.out_edges(v)) {
                if (flow[static_cast<std::size_t>(eid)] >= net.edge(eid).capacity) continue;
                int h = net.edge(eid).head;
                if (seen[static_cast<std::size_t>(h)]) continue;
                seen[static_cast<std::size_t>(h)] = 1;
                par[static_cast<std::size_t>(h)] = {eid, true};
                q.push(h);
            }
            for (int eid : net.in_edges(v)) {
                if (flow[static_cast<std::size_t>(eid)] == 0) continue;
                int tl = net.edge(eid).tail;
                if (seen[static_cast<std::size_t>(tl)]) continue;
                seen[static_cast<std::size_t>(tl)] = 1;
                par[static_cast<std::size_t>(tl)] = {eid, false};
                q.push(tl);
            }
        }
        if (!seen[static_cast<std::size_t>(t)]) return false;
        int v = t;
        while (v != s) {
            auto [eid, fwd] = par[static_cast<std::size_t>(v)];
            flow[static_cast<std::size_t>(eid)] += fwd ? 1 : -1;
            v = fwd ? net.edge(eid).tail : net.edge(eid).head;
        }
        return true;
    }

    int run(int s, int t, int limit) {
        int f = 0;
        while (f < limit && augment(s, t)) ++f;
        return f;
    }

    // Decompose the current flow into unit paths, lowest edge id first.
    std::vector<std::vector<int>> decompose(int s, int t) {
        std::vector<std::vector<int>> paths;
        for (;;) {
            std::vector<int> path;
            int v = s;
            while (v != t) {
                int next = -1;
                for (int eid : net.out_edges(v))
                    if (flow[static_cast<std::size_t>(eid)] > 0) {
                        next = eid;
                        break;
                    }
                if (next == -1) break;
                --flow[static_cast<std::size_t>(next)];
                path.push_back(next);
                v = net.edge(next).head;
            }
            if (v != t || path.empty()) break;
            paths.push_back(std::move(path));
        }
        return paths;
    }
};

// Node-splitting for vertex-disjoint computations: internal node v becomes
// v_in -> v_out with a unit edge; sources and terminals are exempt.
struct SplitGraph {
    Network net;
    std::vector<int> orig_edge; // split-graph edge id -> original edge id, -1 for split arcs
    std::vector<int> node_in, node_out;

    explicit SplitGraph(const Network& g) {
        std::vector<Node> nodes;
        std::vector<Edge> edges;
        node_in.resize(g.nodes().size());
        node_out.resize(g.nodes().size());
        for (int i = 0; i < g.node_count(); ++i) {
            const Node& n = g.node(i);
            if (n.role == NodeRole::Internal) {
                node_in[static_cast<std::size_t>(i)] = static_cast<int>(nodes.size());
                nodes.push_back(Node{n.id + "#in", NodeRole::Internal, 0});
                node_out[static_cast<std::size_t>(i)] = static_cast<int>(nodes.size());
                nodes.push_back(Node{n.id + "#out", NodeRole::Internal, 0});
            } else {
                node_in[static_cast<std::size_t>(i)] = node_out[static_cast<std::size_t>(i)] = static_cast<int>(nodes.size());
                nodes.push_back(n);
            }
        }
        for (const Edge& e : g.edges()) {
            edges.push_back(Edge{static_cast<int>(edges.size()), node_out[static_cast<std::size_t>(e.tail)],
                                 node_in[static_cast<std::size_t>(e.head)], e.capacity});
            orig_edge.push_back(e.id);
        }
        for (int i = 0; i < g.node_count(); ++i) {
            if (g.node(i).role != NodeRole::Internal) continue;
            edges.push_back(Edge{static_cast<int>(edges.size()), node_in[static_cast<std::size_t>(i)],
                                 node_out[static_cast<std::size_t>(i)], 1});
            orig_edge.push_back(-1);
        }
        net = Network::build(std::move(nodes), std::move(edges));
    }
};

} // namespace

int max_flow(const Network& net, int s, int t) {
    if (s == t) return 0;
    UnitFlow uf(net);
    return uf.run(s, t, std::numeric_limits<int>::max());
}

int vertex_max_flow(const Network& net, int s, int t) {
    SplitGraph sg(net);
    return max_flow(sg.net, sg.node_out[static_cast<std::size_t>(s)], sg.node_in[static_cast<std::size_t>(t)]);
}

PathSet disjoint_paths(const Network& net, int s, int t, int k, DisjointMode mode) {
    PathSet ps;
    ps.mode = mode;
    if (k == 0) return ps;
    if (mode == DisjointMode::Edge) {
        UnitFlow uf(net);
        if (uf.run(s, t, k) < k)
            throw NetworkError("insufficient flow: fewer than " + std::to_string(k) + " edge-disjoint paths");
        ps.paths = uf.decompose(s, t);
    } else {
        SplitGraph sg(net);
        int ss = sg.node_out[static_cast<std::size_t>(s)];
        int tt = sg.node_in[static_cast<std::size_t>(t)];
        UnitFlow uf(sg.net);
        if (uf.run(ss, tt, k) < k)
            throw NetworkError("insufficient flow: fewer than " + std::to_string(k) + " vertex-disjoint paths");
        for (auto& p : uf.decompose(ss, tt)) {
            std::vector<int> mapped;
            for (int eid : p) {
                int oe = sg.orig_edge[static_cast<std::size_t>(eid)];
                if (oe >= 0) mapped.push_back(oe);
            }
            ps.paths.push_back(std::move(mapped));
        }
    }
    return ps;
}

std::uint64_t path_count(const Network& net, int u, int v) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> cnt(net.nodes().size(), 0);
    cnt[static_cast<std::size_t>(u)] = 1;
    for (int x : net.topo_order()) {
        if (cnt[static_cast<std::size_t>(x)] == 0) continue;
        for (int eid : net.out_edges(x)) {
            std::uint64_t& c = cnt[static_cast<std::size_t>(net.edge(eid).head)];
            std::uint64_t add = cnt[static_cast<std::size_t>(x)];
            c = (c > kMax - add) ? kMax : c + add;
        }
    }
    return cnt[static_cast<std::size_t>(v)];
}

} // namespace sumcast
