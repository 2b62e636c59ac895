#include "sumcast/codegen.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <set>

#include "codegen_internal.hpp"
#include "sumcast/flow.hpp"

namespace sumcast {

namespace detail {

std::vector<int> bfs_path(const Network& net, const std::vector<char>& active, int from, int to) {
    if (from == to) return {};
    std::vector<int> par(net.nodes().size(), -1); // arriving edge
    std::vector<char> seen(net.nodes().size(), 0);
    seen[static_cast<std::size_t>(from)] = 1;
    std::queue<int> q;
    q.push(from);
    while (!q.empty() && !seen[static_cast<std::size_t>(to)]) {
        int v = q.front();
        q.pop();
        for (int eid : net.out_edges(v)) {
            if (!active[static_cast<std::size_t>(eid)]) continue;
            int h = net.edge(eid).head;
            if (seen[static_cast<std::size_t>(h)]) continue;
            seen[static_cast<std::size_t>(h)] = 1;
            par[static_cast<std::size_t>(h)] = eid;
            q.push(h);
        }
    }
    if (!seen[static_cast<std::size_t>(to)]) return {};
    std::vector<int> path;
    for (int v = to; v != from;) {
        int eid = par[static_cast<std::size_t>(v)];
        path.push_back(eid);
        v = net.edge(eid).tail;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool reaches(const Network& net, const std::vector<char>& active, int from, int to) {
    return from == to || !bfs_path(net, active, from, to).empty();
}

std::vector<int> path_nodes(const Network& net, int start, const std::vector<int>& path_edges) {
    std::vector<int> nodes{start};
    for (int eid : path_edges) nodes.push_back(net.edge(eid).head);
    return nodes;
}

std::vector<int> in_tree_toward(const Network& net, const std::vector<int>& edges, int root) {
    std::set<int> nodes;
    for (int eid : edges) {
        nodes.insert(net.edge(eid).tail);
        nodes.insert(net.edge(eid).head);
    }
    std::vector<int> kept;
    for (int v : nodes) {
        if (v == root) continue;
        int best = -1;
        for (int eid : edges)
            if (net.edge(eid).tail == v && (best == -1 || eid < best)) best = eid;
        if (best == -1) throw CodegenError("in-tree extraction: node without an outgoing union edge");
        kept.push_back(best);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<int> out_tree_from(const Network& net, const std::vector<int>& edges, int root) {
    std::set<int> nodes;
    for (int eid : edges) {
        nodes.insert(net.edge(eid).tail);
        nodes.insert(net.edge(eid).head);
    }
    std::vector<int> kept;
    for (int v : nodes) {
        if (v == root) continue;
        int best = -1;
        for (int eid : edges)
            if (net.edge(eid).head == v && (best == -1 || eid < best)) best = eid;
        if (best == -1) throw CodegenError("out-tree extraction: node without an incoming union edge");
        kept.push_back(best);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

PrunedView prune_useless(const Network& net) {
    ReachSets rs = reach_sets(net);
    std::vector<char> keep(net.nodes().size(), 0);
    bool all = true;
    for (int v = 0; v < net.node_count(); ++v) {
        keep[static_cast<std::size_t>(v)] = rs.source_mask[static_cast<std::size_t>(v)] != 0 &&
                                            rs.terminal_mask[static_cast<std::size_t>(v)] != 0;
        all = all && keep[static_cast<std::size_t>(v)];
    }
    PrunedView pv;
    if (all) {
        pv.net = net;
        pv.identity = true;
        pv.edge_to_orig.resize(static_cast<std::size_t>(net.edge_count()));
        pv.node_to_orig.resize(net.nodes().size());
        for (int e = 0; e < net.edge_count(); ++e) pv.edge_to_orig[static_cast<std::size_t>(e)] = e;
        for (int v = 0; v < net.node_count(); ++v) pv.node_to_orig[static_cast<std::size_t>(v)] = v;
        return pv;
    }
    std::vector<Node> nodes;
    std::vector<int> node_new(net.nodes().size(), -1);
    for (int v = 0; v < net.node_count(); ++v)
        if (keep[static_cast<std::size_t>(v)]) {
            node_new[static_cast<std::size_t>(v)] = static_cast<int>(nodes.size());
            nodes.push_back(net.node(v));
            pv.node_to_orig.push_back(v);
        }
    std::vector<Edge> edges;
    for (const Edge& e : net.edges()) {
        if (!keep[static_cast<std::size_t>(e.tail)] || !keep[static_cast<std::size_t>(e.head)]) continue;
        edges.push_back(Edge{static_cast<int>(edges.size()), node_new[static_cast<std::size_t>(e.tail)],
                             node_new[static_cast<std::size_t>(e.head)], e.capacity});
        pv.edge_to_orig.push_back(e.id);
    }
    pv.net = Network::build(std::move(nodes), std::move(edges));
    return pv;
}

CodeAssignment unprune_code(const Network& orig, const PrunedView& pv, const CodeAssignment& code) {
    if (pv.identity) return code;
    CodeAssignment out(code.field, orig.edge_count());
    for (std::size_t e = 0; e < code.local.size(); ++e) {
        if (code.local[e].empty()) continue;
        std::vector<LocalCoeff> coeffs = code.local[e];
        for (LocalCoeff& lc : coeffs)
            if (!lc.input.is_source) lc.input.id = pv.edge_to_orig[static_cast<std::size_t>(lc.input.id)];
        out.set(pv.edge_to_orig[e], std::move(coeffs));
    }
    return out;
}

} // namespace detail

using detail::bfs_path;
using detail::path_nodes;

namespace {

// Generalized two-payload greedy: the two "sources" hold payload coding
// vectors (raw sources, or a partial sum computed at an internal node) and
// every active edge applies the union-of-supports rule of greedy encoding.
struct PayloadSource {
    int node = -1;
    std::vector<LocalCoeff> materialize; // produces the payload at that node
};

void greedy_two_payloads(const Network& net, const Field& f, const std::vector<char>& active,
                         const std::array<PayloadSource, 2>& ps, CodeAssignment& code) {
    std::vector<std::uint8_t> presence(static_cast<std::size_t>(net.edge_count()), 0);
    for (int v : net.topo_order()) {
        int payload = v == ps[0].node ? 0 : v == ps[1].node ? 1 : -1;
        for (int eid : net.out_edges(v)) {
            if (!active[static_cast<std::size_t>(eid)]) continue;
            if (payload >= 0) {
                code.set(eid, ps[static_cast<std::size_t>(payload)].materialize);
                presence[static_cast<std::size_t>(eid)] = static_cast<std::uint8_t>(1 << payload);
                continue;
            }
            std::uint8_t need = 0;
            for (int g : net.in_edges(v))
                if (active[static_cast<std::size_t>(g)]) need |= presence[static_cast<std::size_t>(g)];
            if (need == 0) continue;
            int exact = -1;
            for (int g : net.in_edges(v))
                if (active[static_cast<std::size_t>(g)] && presence[static_cast<std::size_t>(g)] == need) {
                    exact = g;
                    break;
                }
            if (exact >= 0) {
                code.set(eid, {LocalCoeff{InputRef::edge(exact), f.one()}});
            } else {
                // need == 3 and only partial inputs: one of each
                std::vector<LocalCoeff> coeffs;
                for (std::uint8_t bit : {std::uint8_t(1), std::uint8_t(2)})
                    for (int g : net.in_edges(v))
                        if (active[static_cast<std::size_t>(g)] && presence[static_cast<std::size_t>(g)] == bit) {
                            coeffs.push_back(LocalCoeff{InputRef::edge(g), f.one()});
                            break;
                        }
                code.set(eid, std::move(coeffs));
            }
            presence[static_cast<std::size_t>(eid)] = need;
        }
    }
}

void require_unit_connectivity(const Network& net) {
    for (int i = 1; i <= net.source_count(); ++i)
        for (int j = 1; j <= net.terminal_count(); ++j)
            if (max_flow(net, net.source_node(i), net.terminal_node(j)) < 1)
                throw CodegenError("max-flow(s" + std::to_string(i) + ", t" + std::to_string(j) +
                                   ") < 1: connectivity precondition fails");
}

} // namespace

namespace detail {

void require_normalized(const Network& net) {
    for (const Edge& e : net.edges())
        if (e.capacity != 1) throw CodegenError("normalize the network first (edge with capacity > 1)");
    for (int i = 1; i <= net.source_count(); ++i)
        if (!net.in_edges(net.source_node(i)).empty())
            throw CodegenError("normalize the network first (source with incoming edges)");
    for (int j = 1; j <= net.terminal_count(); ++j)
        if (!net.out_edges(net.terminal_node(j)).empty())
            throw CodegenError("normalize the network first (terminal with outgoing edges)");
}

} // namespace detail

CodeAssignment assign_greedy_2s(const Network& net, const Field& f) {
    if (net.source_count() != 2) throw CodegenError("greedy encoding needs exactly two sources");
    detail::require_normalized(net);
    require_unit_connectivity(net);
    std::vector<char> active(static_cast<std::size_t>(net.edge_count()), 1);
    CodeAssignment code(f.spec(), net.edge_count());
    std::array<PayloadSource, 2> ps{
        PayloadSource{net.source_node(1), {LocalCoeff{InputRef::source(1), f.one()}}},
        PayloadSource{net.source_node(2), {LocalCoeff{InputRef::source(2), f.one()}}}};
    greedy_two_payloads(net, f, active, ps, code);
    return code;
}

// ---------------------------------------------------------------------------
// One-path subgraph extraction (n sources, two terminals)

namespace {

// Mutable companion of the augmented network: the edge table can grow with
// artificial source arcs during the recursion.
struct Scratch {
    const Network& g; // node table is fixed; artificial sources pre-allocated
    std::vector<Edge> edges;

    explicit Scratch(const Network& net) : g(net), edges(net.edges()) {}

    int add_edge(int tail, int head) {
        edges.push_back(Edge{static_cast<int>(edges.size()), tail, head, 1});
        return edges.back().id;
    }
};

using EdgeSet = std::set<int>;

struct PathInfo {
    std::vector<int> edges;
    std::vector<int> nodes; // edges.size() + 1 entries
};

PathInfo find_path(const Scratch& sc, const EdgeSet& active, int from, int to) {
    if (from == to) return PathInfo{{}, {from}};
    std::size_t n = sc.g.nodes().size();
    std::vector<int> par(n, -1);
    std::vector<char> seen(n, 0);
    seen[static_cast<std::size_t>(from)] = 1;
    std::queue<int> q;
    q.push(from);
    while (!q.empty() && !seen[static_cast<std::size_t>(to)]) {
        int v = q.front();
        q.pop();
        for (int eid : active) { // ascending ids: deterministic
            const Edge& e = sc.edges[static_cast<std::size_t>(eid)];
            if (e.tail != v) continue;
            if (seen[static_cast<std::size_t>(e.head)]) continue;
            seen[static_cast<std::size_t>(e.head)] = 1;
            par[static_cast<std::size_t>(e.head)] = eid;
            q.push(e.head);
        }
    }
    if (!seen[static_cast<std::size_t>(to)]) return {};
    PathInfo p;
    for (int v = to; v != from;) {
        int eid = par[static_cast<std::size_t>(v)];
        p.edges.push_back(eid);
        v = sc.edges[static_cast<std::size_t>(eid)].tail;
    }
    std::reverse(p.edges.begin(), p.edges.end());
    p.nodes.push_back(from);
    for (int eid : p.edges) p.nodes.push_back(sc.edges[static_cast<std::size_t>(eid)].head);
    return p;
}

std::set<int> reverse_reachable(const Scratch& sc, const EdgeSet& active, int target) {
    std::set<int> seen{target};
    std::vector<int> stack{target};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int eid : active) {
            const Edge& e = sc.edges[static_cast<std::size_t>(eid)];
            if (e.head != v || seen.count(e.tail)) continue;
            seen.insert(e.tail);
            stack.push_back(e.tail);
        }
    }
    return seen;
}

// Base case: two paths out of a single source, rerouted to overlap up to
// their last common node and stay disjoint afterwards.
EdgeSet one_source_subgraph(const Scratch& sc, const EdgeSet& active, int s, int t1, int t2) {
    PathInfo p1 = find_path(sc, active, s, t1);
    PathInfo p2 = find_path(sc, active, s, t2);
    if (p1.nodes.empty() || p2.nodes.empty()) throw CodegenError("extraction: source lost its terminal connectivity");
    std::set<int> on_p2(p2.nodes.begin(), p2.nodes.end());
    int last_common = s;
    std::size_t pos1 = 0;
    for (std::size_t i = 0; i < p1.nodes.size(); ++i)
        if (on_p2.count(p1.nodes[i])) {
            last_common = p1.nodes[i];
            pos1 = i;
        }
    EdgeSet out(p1.edges.begin(), p1.edges.end());
    // shared prefix along p1, then p2's tail from the last common node
    for (std::size_t i = 0; i < pos1; ++i) out.insert(p1.edges[i]);
    std::size_t pos2 = 0;
    while (p2.nodes[pos2] != last_common) ++pos2;
    for (std::size_t i = pos2; i < p2.edges.size(); ++i) out.insert(p2.edges[i]);
    return out;
}

EdgeSet extract_rec(Scratch& sc, const EdgeSet& active, std::vector<int> sources, int t1, int t2) {
    int sn = sources.back();
    if (sources.size() == 1) return one_source_subgraph(sc, active, sn, t1, t2);
    sources.pop_back();
    EdgeSet blue = extract_rec(sc, active, sources, t1, t2);

    PathInfo red1 = find_path(sc, active, sn, t1);
    PathInfo red2 = find_path(sc, active, sn, t2);
    if (red1.nodes.empty() || red2.nodes.empty()) throw CodegenError("extraction: source lost its terminal connectivity");

    std::set<int> blue_nodes;
    for (int eid : blue) {
        blue_nodes.insert(sc.edges[static_cast<std::size_t>(eid)].tail);
        blue_nodes.insert(sc.edges[static_cast<std::size_t>(eid)].head);
    }
    auto first_blue = [&blue_nodes](const PathInfo& p) {
        for (std::size_t i = 0; i < p.nodes.size(); ++i)
            if (blue_nodes.count(p.nodes[i])) return i;
        throw CodegenError("extraction: red path misses the blue subgraph");
    };
    std::size_t i1 = first_blue(red1), i2 = first_blue(red2);
    int u1 = red1.nodes[i1], u2 = red2.nodes[i2];

    std::set<int> blue_to_t2 = reverse_reachable(sc, blue, t2);
    std::set<int> blue_to_t1 = reverse_reachable(sc, blue, t1);

    auto handle_meeting_case = [&](const PathInfo& red, std::size_t iu, int u) {
        // keep this red path, drop the other one's exclusive edges
        EdgeSet work = blue;
        work.insert(red.edges.begin(), red.edges.end());
        std::set<int> into_u = reverse_reachable(sc, work, u);
        std::vector<int> s_in, s_out;
        for (int s : sources) (into_u.count(s) ? s_in : s_out).push_back(s);
        if (s_in.empty()) throw CodegenError("extraction internal: no blue source feeds the meeting node");

        EdgeSet g_u1(red.edges.begin(), red.edges.begin() + static_cast<std::ptrdiff_t>(iu));
        for (int s : s_in) {
            PathInfo bp = find_path(sc, blue, s, u);
            if (bp.nodes.empty()) throw CodegenError("extraction internal: blue source lost the meeting node");
            g_u1.insert(bp.edges.begin(), bp.edges.end());
        }
        EdgeSet rest = work;
        for (int eid : g_u1) rest.erase(eid);

        int sa = -1;
        for (int v = 0; v < sc.g.node_count(); ++v)
            if (sc.g.node(v).id == "@aux" + std::to_string(sources.size())) sa = v;
        if (sa == -1) throw CodegenError("extraction internal: missing artificial source slot");
        int sa_edge = sc.add_edge(sa, u);
        rest.insert(sa_edge);
        s_out.push_back(sa);
        EdgeSet inner = extract_rec(sc, rest, s_out, t1, t2);
        inner.erase(sa_edge);
        inner.insert(g_u1.begin(), g_u1.end());
        return inner;
    };

    if (blue_to_t2.count(u1)) return handle_meeting_case(red1, i1, u1);
    if (blue_to_t1.count(u2)) return handle_meeting_case(red2, i2, u2);

    // neither meeting node continues to the other terminal in blue: keep the
    // blue subgraph and hang both red prefixes off a shared stem
    std::set<int> pre2_nodes(red2.nodes.begin(), red2.nodes.begin() + static_cast<std::ptrdiff_t>(i2) + 1);
    std::size_t w1 = 0;
    for (std::size_t i = 0; i <= i1; ++i)
        if (pre2_nodes.count(red1.nodes[i])) w1 = i;
    int w = red1.nodes[w1];
    EdgeSet out = blue;
    for (std::size_t i = 0; i < i1; ++i) out.insert(red1.edges[i]);
    std::size_t w2 = 0;
    while (red2.nodes[w2] != w) ++w2;
    for (std::size_t i = w2; i < i2; ++i) out.insert(red2.edges[i]);
    return out;
}

} // namespace

OnePathSubgraph extract_one_path_subgraph(const Network& net) {
    if (net.terminal_count() != 2) throw CodegenError("one-path extraction needs exactly two terminals");
    if (net.source_count() < 1) throw CodegenError("one-path extraction needs at least one source");
    detail::require_normalized(net);
    require_unit_connectivity(net);

    OnePathSubgraph sub;
    // augment with virtual sources/terminals so every pair has max-flow
    // exactly one, plus slots for the artificial sources of the recursion
    std::vector<Node> nodes = net.nodes();
    std::vector<Edge> edges = net.edges();
    sub.net_edge_of.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) sub.net_edge_of[e] = static_cast<int>(e);
    std::vector<int> vsrc, vterm;
    for (int i = 1; i <= net.source_count(); ++i) {
        int orig = net.source_node(i);
        int pos = static_cast<int>(nodes.size());
        nodes.push_back(Node{net.node(orig).id + "@v", NodeRole::Source, i});
        nodes[static_cast<std::size_t>(orig)].role = NodeRole::Internal;
        nodes[static_cast<std::size_t>(orig)].index = 0;
        edges.push_back(Edge{static_cast<int>(edges.size()), pos, orig, 1});
        sub.net_edge_of.push_back(-1);
        vsrc.push_back(pos);
    }
    for (int j = 1; j <= net.terminal_count(); ++j) {
        int orig = net.terminal_node(j);
        int pos = static_cast<int>(nodes.size());
        nodes.push_back(Node{net.node(orig).id + "@v", NodeRole::Terminal, j});
        nodes[static_cast<std::size_t>(orig)].role = NodeRole::Internal;
        nodes[static_cast<std::size_t>(orig)].index = 0;
        edges.push_back(Edge{static_cast<int>(edges.size()), orig, pos, 1});
        sub.net_edge_of.push_back(-1);
        vterm.push_back(pos);
    }
    for (int k = 1; k < net.source_count(); ++k)
        nodes.push_back(Node{"@aux" + std::to_string(k), NodeRole::Internal, 0});

    sub.gprime = Network::build(std::move(nodes), std::move(edges));
    sub.virtual_source = vsrc;
    sub.virtual_terminal = vterm;

    Scratch sc(sub.gprime);
    EdgeSet active;
    for (const Edge& e : sub.gprime.edges()) active.insert(e.id);
    EdgeSet chosen = extract_rec(sc, active, vsrc, vterm[0], vterm[1]);

    sub.in_subgraph.assign(static_cast<std::size_t>(sub.gprime.edge_count()), 0);
    for (int eid : chosen) {
        if (eid >= sub.gprime.edge_count()) throw CodegenError("extraction internal: artificial edge escaped");
        sub.in_subgraph[static_cast<std::size_t>(eid)] = 1;
    }
    return sub;
}

CodeAssignment assign_ns_2t(const Network& net, const Field& f) {
    return assign_ns_2t(net, f, extract_one_path_subgraph(net));
}

CodeAssignment assign_ns_2t(const Network& net, const Field& f, const OnePathSubgraph& sub) {
    CodeAssignment code(f.spec(), net.edge_count());
    const Network& gp = sub.gprime;
    for (const Edge& e : gp.edges()) {
        if (!sub.in_subgraph[static_cast<std::size_t>(e.id)]) continue;
        int orig = sub.net_edge_of[static_cast<std::size_t>(e.id)];
        if (orig < 0) continue; // virtual edges have no counterpart to encode
        const Node& tail = net.node(net.edge(orig).tail);
        if (tail.role == NodeRole::Source) {
            code.set(orig, {LocalCoeff{InputRef::source(tail.index), f.one()}});
            continue;
        }
        std::vector<LocalCoeff> coeffs; // forward the sum of all chosen inputs
        for (int g : gp.in_edges(e.tail)) {
            if (!sub.in_subgraph[static_cast<std::size_t>(g)]) continue;
            int og = sub.net_edge_of[static_cast<std::size_t>(g)];
            if (og >= 0) coeffs.push_back(LocalCoeff{InputRef::edge(og), f.one()});
        }
        code.set(orig, std::move(coeffs));
    }
    return code;
}

std::vector<FieldElem> table_encoding_payload(const Field& f, const std::array<int, 2>& source_pair, int nsrc) {
    if (f.characteristic() <= 2)
        throw CodegenError("the fixed pair encodings need field characteristic > 2");
    std::vector<FieldElem> payload(static_cast<std::size_t>(nsrc), 0);
    auto is = [&source_pair](int a, int b) { return source_pair[0] == a && source_pair[1] == b; };
    if (is(1, 2)) {
        payload[0] = f.from_int(2);
        payload[1] = f.one();
    } else if (is(2, 3)) {
        payload[1] = f.one();
        payload[2] = f.from_int(2);
    } else if (is(1, 3)) {
        payload[0] = f.one();
        payload[2] = f.neg(f.one());
    } else {
        throw CodegenError("unknown source pair for the fixed encodings");
    }
    return payload;
}

} // namespace sumcast
