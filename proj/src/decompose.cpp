#include "sumcast/decompose.hpp"

#include <algorithm>

#include <json.hpp>

namespace sumcast {

using nlohmann::json;

std::vector<NodeLabel> label_nodes(const Network& net, const ReachSets& rs) {
    std::vector<NodeLabel> labels(net.nodes().size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        labels[i] = NodeLabel{popcount32(rs.source_mask[i]), popcount32(rs.terminal_mask[i])};
    return labels;
}

std::vector<NodeLabel> label_nodes(const Network& net) { return label_nodes(net, reach_sets(net)); }

std::vector<EdgeClass> classify_edges(const Network& net, const std::vector<NodeLabel>& labels,
                                      const ReachSets& rs) {
    std::vector<EdgeClass> classes(static_cast<std::size_t>(net.edge_count()));
    for (const Edge& e : net.edges()) {
        auto h = static_cast<std::size_t>(e.head);
        if (labels[h].ct == 0)
            throw DispatchError("edge " + std::to_string(e.id) +
                                " leads to a node that reaches no terminal; prune the network first");
        if (labels[h].ct == 1) {
            int t = 1;
            while (!(rs.terminal_mask[h] >> (t - 1) & 1)) ++t;
            classes[static_cast<std::size_t>(e.id)] = EdgeClass{true, t};
        } else {
            classes[static_cast<std::size_t>(e.id)] = EdgeClass{false, 0};
        }
    }
    // the head of an r-edge is of type (.,2) or (.,3)
    for (const Edge& e : net.edges()) {
        if (classes[static_cast<std::size_t>(e.id)].terminal_edge) continue;
        if (labels[static_cast<std::size_t>(e.head)].ct < 2)
            throw DispatchError("r-edge with a single-terminal head"); // unreachable by construction
    }
    return classes;
}

std::vector<std::vector<int>> leaf_sets(const Network& net, const std::vector<EdgeClass>& classes) {
    std::vector<std::vector<int>> leaves(static_cast<std::size_t>(net.terminal_count()));
    for (int j = 1; j <= net.terminal_count(); ++j) {
        std::vector<char> in_cone(net.nodes().size(), 0), has_cone_in(net.nodes().size(), 0);
        for (const Edge& e : net.edges()) {
            const EdgeClass& c = classes[static_cast<std::size_t>(e.id)];
            if (!c.terminal_edge || c.terminal != j) continue;
            in_cone[static_cast<std::size_t>(e.tail)] = 1;
            in_cone[static_cast<std::size_t>(e.head)] = 1;
            has_cone_in[static_cast<std::size_t>(e.head)] = 1;
        }
        for (int v = 0; v < net.node_count(); ++v)
            if (in_cone[static_cast<std::size_t>(v)] && !has_cone_in[static_cast<std::size_t>(v)])
                leaves[static_cast<std::size_t>(j - 1)].push_back(v);
    }
    return leaves;
}

std::map<int, Color> color_nodes(const Network& net, const std::vector<NodeLabel>& labels, const ReachSets& rs) {
    for (int v = 0; v < net.node_count(); ++v) {
        const NodeLabel& l = labels[static_cast<std::size_t>(v)];
        if ((l.cs >= 3 && l.ct >= 2) || (l.cs >= 2 && l.ct >= 3))
            throw DispatchError("colors are defined only in case 3: node \"" + net.node(v).id + "\" is (" +
                                std::to_string(l.cs) + "," + std::to_string(l.ct) + ")");
    }
    auto pair_of = [](std::uint32_t mask) {
        std::array<int, 2> p{};
        int k = 0;
        for (int i = 0; i < 32 && k < 2; ++i)
            if (mask >> i & 1) p[static_cast<std::size_t>(k++)] = i + 1;
        return p;
    };
    std::map<int, Color> colors;
    for (int v = 0; v < net.node_count(); ++v) {
        auto vi = static_cast<std::size_t>(v);
        if (labels[vi].cs == 2 && labels[vi].ct == 2)
            colors.emplace(v, Color{pair_of(rs.source_mask[vi]), pair_of(rs.terminal_mask[vi])});
    }
    // no edge joins (2,2) nodes of different colors
    for (const Edge& e : net.edges()) {
        auto it = colors.find(e.tail);
        auto jt = colors.find(e.head);
        if (it != colors.end() && jt != colors.end() && !(it->second == jt->second))
            throw DispatchError("edge " + std::to_string(e.id) + " joins (2,2) nodes of different colors");
    }
    return colors;
}

AuxGraph build_aux(const Network& net, const std::map<int, Color>& colors) {
    AuxGraph aux;
    for (const auto& [node, c] : colors)
        if (std::find(aux.colors.begin(), aux.colors.end(), c) == aux.colors.end()) aux.colors.push_back(c);
    std::sort(aux.colors.begin(), aux.colors.end());
    aux.terminal_degree.assign(static_cast<std::size_t>(net.terminal_count()), 0);
    for (const Color& c : aux.colors) {
        aux.incident.push_back(c.terminals);
        for (int t : c.terminals) ++aux.terminal_degree[static_cast<std::size_t>(t - 1)];
        // each color node has degree exactly 2 and no multi-edges, by
        // construction from the (distinct) terminal pair
        if (c.terminals[0] == c.terminals[1]) throw DispatchError("degenerate color terminal pair");
    }
    if (aux.colors.size() <= 3)
        for (int d : aux.terminal_degree)
            if (d > 3) throw DispatchError("aux graph terminal degree exceeds 3");
    aux.degree_sequence = aux.terminal_degree;
    std::sort(aux.degree_sequence.begin(), aux.degree_sequence.end());
    return aux;
}

DecompositionReport decompose(const Network& net) {
    DecompositionReport rep;
    rep.reach = reach_sets(net);
    rep.labels = label_nodes(net, rep.reach);
    rep.edge_classes = classify_edges(net, rep.labels, rep.reach);
    rep.leaves = leaf_sets(net, rep.edge_classes);
    rep.case3 = true;
    for (const NodeLabel& l : rep.labels)
        if ((l.cs >= 3 && l.ct >= 2) || (l.cs >= 2 && l.ct >= 3)) rep.case3 = false;
    if (rep.case3) {
        rep.colors = color_nodes(net, rep.labels, rep.reach);
        rep.aux = build_aux(net, rep.colors);
    }
    return rep;
}

std::string decomposition_to_json(const Network& net, const DecompositionReport& rep) {
    json j;
    json labels = json::object();
    for (int v = 0; v < net.node_count(); ++v)
        labels[net.node(v).id] = json::array({rep.labels[static_cast<std::size_t>(v)].cs,
                                              rep.labels[static_cast<std::size_t>(v)].ct});
    j["labels"] = std::move(labels);
    json edges = json::array();
    for (const Edge& e : net.edges()) {
        const EdgeClass& c = rep.edge_classes[static_cast<std::size_t>(e.id)];
        json je{{"id", e.id}};
        if (c.terminal_edge) {
            je["class"] = "terminal-edge";
            je["terminal"] = c.terminal;
        } else {
            je["class"] = "r-edge";
        }
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    json leaves = json::object();
    for (std::size_t t = 0; t < rep.leaves.size(); ++t) {
        json names = json::array();
        for (int v : rep.leaves[t]) names.push_back(net.node(v).id);
        leaves[std::to_string(t + 1)] = std::move(names);
    }
    j["leafSets"] = std::move(leaves);
    if (rep.case3) {
        json colors = json::object();
        for (const auto& [v, c] : rep.colors)
            colors[net.node(v).id] = json{{"sources", c.sources}, {"terminals", c.terminals}};
        j["colors"] = std::move(colors);
        j["distinctColors"] = rep.aux.colors.size();
        json aux = json::array();
        for (std::size_t c = 0; c < rep.aux.colors.size(); ++c)
            aux.push_back(json{{"sources", rep.aux.colors[c].sources},
                               {"terminals", rep.aux.incident[c]}});
        j["auxGraph"] = std::move(aux);
        j["auxDegreeSequence"] = rep.aux.degree_sequence;
    } else {
        j["colors"] = nullptr;
        j["note"] = "colors are defined only for case-3 graphs";
    }
    return j.dump(2);
}

void validate_decomposition(const Network& net, const DecompositionReport& rep) {
    // no path from a terminal edge to an r-edge
    std::vector<char> downstream(net.nodes().size(), 0);
    for (const Edge& e : net.edges())
        if (rep.edge_classes[static_cast<std::size_t>(e.id)].terminal_edge)
            downstream[static_cast<std::size_t>(e.head)] = 1;
    for (int v : net.topo_order())
        if (downstream[static_cast<std::size_t>(v)])
            for (int eid : net.out_edges(v)) downstream[static_cast<std::size_t>(net.edge(eid).head)] = 1;
    for (const Edge& e : net.edges())
        if (!rep.edge_classes[static_cast<std::size_t>(e.id)].terminal_edge &&
            downstream[static_cast<std::size_t>(e.tail)])
            throw DispatchError("r-edge reachable from a terminal edge");

    // each terminal cone is connected and rooted at its terminal
    for (int j = 1; j <= net.terminal_count(); ++j) {
        int tj = net.terminal_node(j);
        std::vector<char> reaches(net.nodes().size(), 0);
        reaches[static_cast<std::size_t>(tj)] = 1;
        const auto& order = net.topo_order();
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            for (int eid : net.out_edges(*it)) {
                const EdgeClass& c = rep.edge_classes[static_cast<std::size_t>(eid)];
                if (c.terminal_edge && c.terminal == j && reaches[static_cast<std::size_t>(net.edge(eid).head)])
                    reaches[static_cast<std::size_t>(*it)] = 1;
            }
        for (const Edge& e : net.edges()) {
            const EdgeClass& c = rep.edge_classes[static_cast<std::size_t>(e.id)];
            if (c.terminal_edge && c.terminal == j &&
                (!reaches[static_cast<std::size_t>(e.tail)] || !reaches[static_cast<std::size_t>(e.head)]))
                throw DispatchError("terminal cone of t" + std::to_string(j) + " is not rooted at the terminal");
        }
        // leaf labels: terminal reach >= 2, or the leaf is a source
        for (int v : rep.leaves[static_cast<std::size_t>(j - 1)])
            if (rep.labels[static_cast<std::size_t>(v)].ct < 2 && net.node(v).role != NodeRole::Source)
                throw DispatchError("leaf of t" + std::to_string(j) + " with single-terminal label");
    }

    if (rep.case3) {
        // every terminal in a color's support has a leaf of that color
        for (const Color& c : rep.aux.colors)
            for (int t : c.terminals) {
                bool found = false;
                for (int v : rep.leaves[static_cast<std::size_t>(t - 1)]) {
                    auto it = rep.colors.find(v);
                    if (it != rep.colors.end() && it->second == c) found = true;
                }
                if (!found)
                    throw DispatchError("terminal t" + std::to_string(t) + " has no leaf of one of its colors");
            }
    }
}

TwoColorFrame two_color_frame(const Color& c1, const Color& c2) {
    auto shared = [](const std::array<int, 2>& a, const std::array<int, 2>& b) {
        for (int x : a)
            for (int y : b)
                if (x == y) return x;
        return -1;
    };
    auto other = [](const std::array<int, 2>& p, int not_this) { return p[0] == not_this ? p[1] : p[0]; };
    int s_shared = shared(c1.sources, c2.sources);
    int t_shared = shared(c1.terminals, c2.terminals);
    if (s_shared < 0 || t_shared < 0) throw DispatchError("two-color frame needs overlapping pairs");
    TwoColorFrame fr;
    int s1 = other(c1.sources, s_shared), s3 = other(c2.sources, s_shared);
    int t1 = other(c1.terminals, t_shared), t3 = other(c2.terminals, t_shared);
    fr.src_from_canonical = {s1, s_shared, s3};
    fr.term_from_canonical = {t1, t_shared, t3};
    for (int i = 0; i < 3; ++i) {
        fr.src_to_canonical[static_cast<std::size_t>(fr.src_from_canonical[static_cast<std::size_t>(i)] - 1)] = i + 1;
        fr.term_to_canonical[static_cast<std::size_t>(fr.term_from_canonical[static_cast<std::size_t>(i)] - 1)] = i + 1;
    }
    return fr;
}

} // namespace sumcast
