#include "sumcast/transform.hpp"

#include <algorithm>

#include <json.hpp>

#include "sumcast/verify.hpp"

namespace sumcast {

using nlohmann::json;

namespace {

struct Builder {
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    int add_node(std::string id, NodeRole role = NodeRole::Internal, int index = 0) {
        nodes.push_back(Node{std::move(id), role, index});
        return static_cast<int>(nodes.size()) - 1;
    }
    int add_edge(int tail, int head) {
        edges.push_back(Edge{static_cast<int>(edges.size()), tail, head, 1});
        return edges.back().id;
    }
};

// Left-leaning binary tree below (or above, when inverted) a root; returns
// the leaf node positions in link order.
std::vector<int> grow_tree(Builder& b, int root, int leaves, const std::string& stem, bool inverted,
                           std::vector<int>* made) {
    std::vector<int> out;
    int attach = root;
    for (int i = 0; i < leaves; ++i) {
        bool last = i == leaves - 1;
        if (last) {
            out.push_back(attach);
            break;
        }
        int leaf = b.add_node(stem + "_l" + std::to_string(i));
        made->push_back(leaf);
        if (inverted)
            b.add_edge(leaf, attach);
        else
            b.add_edge(attach, leaf);
        out.push_back(leaf);
        int next = b.add_node(stem + "_n" + std::to_string(i));
        made->push_back(next);
        if (inverted)
            b.add_edge(next, attach);
        else
            b.add_edge(attach, next);
        attach = next;
    }
    return out;
}

} // namespace

StructuredReduction reduce_degrees(const Network& normalized) {
    const Network& g = normalized;
    StructuredReduction red;
    red.original = g;
    red.edge_map.assign(static_cast<std::size_t>(g.edge_count()), {});
    red.node_map.assign(g.nodes().size(), -1);

    // Dead-end internal nodes of degree > 3 cannot be replaced by a gadget
    // (it needs at least one link on each side); their edges carry no usable
    // information, so drop them and re-check the neighbours.
    std::vector<char> edge_alive(static_cast<std::size_t>(g.edge_count()), 1);
    std::vector<int> din(g.nodes().size(), 0), dout(g.nodes().size(), 0);
    for (const Edge& e : g.edges()) {
        ++dout[static_cast<std::size_t>(e.tail)];
        ++din[static_cast<std::size_t>(e.head)];
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < g.node_count(); ++v) {
            if (g.node(v).role != NodeRole::Internal) continue;
            auto vi = static_cast<std::size_t>(v);
            if (din[vi] + dout[vi] <= 3) continue;
            if (din[vi] != 0 && dout[vi] != 0) continue;
            for (int eid : g.out_edges(v))
                if (edge_alive[static_cast<std::size_t>(eid)]) {
                    edge_alive[static_cast<std::size_t>(eid)] = 0;
                    --dout[vi];
                    --din[static_cast<std::size_t>(g.edge(eid).head)];
                }
            for (int eid : g.in_edges(v))
                if (edge_alive[static_cast<std::size_t>(eid)]) {
                    edge_alive[static_cast<std::size_t>(eid)] = 0;
                    --din[vi];
                    --dout[static_cast<std::size_t>(g.edge(eid).tail)];
                }
            changed = true;
        }
    }

    Builder b;
    std::vector<char> replaced(g.nodes().size(), 0);
    for (int v = 0; v < g.node_count(); ++v) {
        auto vi = static_cast<std::size_t>(v);
        if (g.node(v).role == NodeRole::Internal && din[vi] + dout[vi] > 3) replaced[vi] = 1;
    }
    for (int v = 0; v < g.node_count(); ++v)
        if (!replaced[static_cast<std::size_t>(v)]) red.node_map[static_cast<std::size_t>(v)] = b.add_node(
            g.node(v).id, g.node(v).role, g.node(v).index);

    // Gadget skeletons.  Entry node and fan-out tree per live in-link, exit
    // node and inverted tree per live out-link, then the cross edges.
    struct Gadget {
        std::vector<int> in_edge_ids, out_edge_ids;   // original edge ids, ascending
        std::vector<int> entry, exit;                 // roots per link
        std::vector<std::vector<int>> entry_leaf, exit_leaf;
    };
    std::map<int, Gadget> gadgets;
    for (int v = 0; v < g.node_count(); ++v) {
        if (!replaced[static_cast<std::size_t>(v)]) continue;
        Gadget gd;
        for (int eid : g.in_edges(v))
            if (edge_alive[static_cast<std::size_t>(eid)]) gd.in_edge_ids.push_back(eid);
        for (int eid : g.out_edges(v))
            if (edge_alive[static_cast<std::size_t>(eid)]) gd.out_edge_ids.push_back(eid);
        auto& made = red.gadget_map[v];
        const std::string& base = g.node(v).id;
        int d_in = static_cast<int>(gd.in_edge_ids.size());
        int d_out = static_cast<int>(gd.out_edge_ids.size());
        for (int i = 0; i < d_in; ++i) {
            int root = b.add_node(base + "__x" + std::to_string(i));
            made.push_back(root);
            gd.entry.push_back(root);
            gd.entry_leaf.push_back(grow_tree(b, root, d_out, base + "__x" + std::to_string(i), false, &made));
        }
        for (int j = 0; j < d_out; ++j) {
            int root = b.add_node(base + "__y" + std::to_string(j));
            made.push_back(root);
            gd.exit.push_back(root);
            gd.exit_leaf.push_back(grow_tree(b, root, d_in, base + "__y" + std::to_string(j), true, &made));
        }
        for (int i = 0; i < d_in; ++i)
            for (int j = 0; j < d_out; ++j) b.add_edge(gd.entry_leaf[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                                       gd.exit_leaf[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
        gadgets.emplace(v, std::move(gd));
    }

    // Boundary edges, one per live original edge, in original id order.
    auto link_pos = [](const std::vector<int>& ids, int eid) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), eid) - ids.begin());
    };
    for (const Edge& e : g.edges()) {
        if (!edge_alive[static_cast<std::size_t>(e.id)]) continue;
        int tail, head;
        if (replaced[static_cast<std::size_t>(e.tail)]) {
            const Gadget& gd = gadgets.at(e.tail);
            tail = gd.exit[link_pos(gd.out_edge_ids, e.id)];
        } else {
            tail = red.node_map[static_cast<std::size_t>(e.tail)];
        }
        if (replaced[static_cast<std::size_t>(e.head)]) {
            const Gadget& gd = gadgets.at(e.head);
            head = gd.entry[link_pos(gd.in_edge_ids, e.id)];
        } else {
            head = red.node_map[static_cast<std::size_t>(e.head)];
        }
        red.edge_map[static_cast<std::size_t>(e.id)].push_back(b.add_edge(tail, head));
    }

    red.reduced = Network::build(std::move(b.nodes), std::move(b.edges));

    for (int v = 0; v < red.reduced.node_count(); ++v) {
        if (red.reduced.node(v).role != NodeRole::Internal) continue;
        std::size_t deg = red.reduced.in_edges(v).size() + red.reduced.out_edges(v).size();
        if (deg > 3) throw NetworkError("degree reduction left an internal node of degree > 3");
    }
    return red;
}

CodeAssignment lift_code(const StructuredReduction& red, const Field& f, const CodeAssignment& reduced_code) {
    const Network& g = red.original;
    const Network& h = red.reduced;

    VerificationReport rep = check_sum_decodable(h, f, reduced_code);
    if (!rep.all_decodable) throw VerifyError("lift_code: input code is not feasible on the reduced network");

    // reduced node -> original node it represents (gadget interiors included)
    std::vector<int> owner(h.nodes().size(), -1);
    for (int v = 0; v < g.node_count(); ++v)
        if (red.node_map[static_cast<std::size_t>(v)] >= 0) owner[static_cast<std::size_t>(red.node_map[static_cast<std::size_t>(v)])] = v;
    for (const auto& [v, members] : red.gadget_map)
        for (int m : members) owner[static_cast<std::size_t>(m)] = v;

    // topological position of reduced nodes, for gadget-local sweeps
    std::vector<int> topo_pos(h.nodes().size(), 0);
    for (std::size_t i = 0; i < h.topo_order().size(); ++i) topo_pos[static_cast<std::size_t>(h.topo_order()[i])] = static_cast<int>(i);

    CodeAssignment lifted(reduced_code.field, g.edge_count());
    for (const Edge& e : g.edges()) {
        if (red.edge_map[static_cast<std::size_t>(e.id)].empty()) continue;
        int eprime = red.edge_map[static_cast<std::size_t>(e.id)][0];
        int u = e.tail;

        if (red.node_map[static_cast<std::size_t>(u)] >= 0) {
            // tail kept as-is: translate input references back
            std::vector<LocalCoeff> out;
            for (const LocalCoeff& lc : reduced_code.local[static_cast<std::size_t>(eprime)]) {
                if (lc.input.is_source) {
                    out.push_back(lc);
                    continue;
                }
                int orig_in = -1;
                for (int gid : g.in_edges(u))
                    if (!red.edge_map[static_cast<std::size_t>(gid)].empty() &&
                        red.edge_map[static_cast<std::size_t>(gid)][0] == lc.input.id) {
                        orig_in = gid;
                        break;
                    }
                if (orig_in == -1) throw VerifyError("lift_code: reduced code references an unmapped input");
                out.push_back(LocalCoeff{InputRef::edge(orig_in), lc.coeff});
            }
            lifted.set(e.id, std::move(out));
            continue;
        }

        // tail replaced by a gadget: compose the gadget-internal maps from
        // the gadget's boundary inputs up to this boundary edge
        std::vector<int> live_in;
        for (int gid : g.in_edges(u))
            if (!red.edge_map[static_cast<std::size_t>(gid)].empty()) live_in.push_back(gid);
        std::size_t k = live_in.size();

        std::map<int, std::vector<FieldElem>> local_vec; // reduced edge -> coords over live_in
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<FieldElem> unit(k, 0);
            unit[i] = f.one();
            local_vec.emplace(red.edge_map[static_cast<std::size_t>(live_in[i])][0], std::move(unit));
        }
        std::vector<int> interior; // reduced edges with tail inside the gadget
        for (int m : red.gadget_map.at(u))
            for (int heid : h.out_edges(m)) interior.push_back(heid);
        std::sort(interior.begin(), interior.end(), [&](int a, int bid) {
            int ta = h.edge(a).tail, tb = h.edge(bid).tail;
            if (topo_pos[static_cast<std::size_t>(ta)] != topo_pos[static_cast<std::size_t>(tb)])
                return topo_pos[static_cast<std::size_t>(ta)] < topo_pos[static_cast<std::size_t>(tb)];
            return a < bid;
        });
        for (int heid : interior) {
            std::vector<FieldElem> vec(k, 0);
            for (const LocalCoeff& lc : reduced_code.local[static_cast<std::size_t>(heid)]) {
                if (lc.input.is_source) throw VerifyError("lift_code: gadget node observing a source");
                auto it = local_vec.find(lc.input.id);
                if (it == local_vec.end())
                    throw VerifyError("lift_code: gadget edge references an input outside the gadget");
                for (std::size_t i = 0; i < k; ++i) vec[i] = f.add(vec[i], f.mul(lc.coeff, it->second[i]));
            }
            local_vec[heid] = std::move(vec);
        }
        const auto& coeffs = local_vec.at(eprime);
        std::vector<LocalCoeff> out;
        for (std::size_t i = 0; i < k; ++i)
            if (coeffs[i] != 0) out.push_back(LocalCoeff{InputRef::edge(live_in[i]), coeffs[i]});
        lifted.set(e.id, std::move(out));
    }
    return lifted;
}

std::string reduction_maps_to_json(const StructuredReduction& red) {
    json j;
    json em = json::object();
    for (std::size_t e = 0; e < red.edge_map.size(); ++e) em[std::to_string(e)] = red.edge_map[e];
    j["edgeMap"] = std::move(em);
    json gm = json::object();
    for (const auto& [v, members] : red.gadget_map) {
        json names = json::array();
        for (int m : members) names.push_back(red.reduced.node(m).id);
        gm[red.original.node(v).id] = std::move(names);
    }
    j["gadgetMap"] = std::move(gm);
    return j.dump(2);
}

} // namespace sumcast
