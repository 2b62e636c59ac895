#include <algorithm>
#include <array>
#include <map>
#include <set>

#include "codegen_internal.hpp"
#include "sumcast/codegen.hpp"
#include "sumcast/flow.hpp"
#include "sumcast/matrix.hpp"
#include "sumcast/rng.hpp"
#include "sumcast/verify.hpp"

namespace sumcast {

using detail::bfs_path;
using detail::in_tree_toward;
using detail::out_tree_from;
using detail::path_nodes;

namespace {

std::vector<char> all_edges(const Network& net) {
    return std::vector<char>(static_cast<std::size_t>(net.edge_count()), 1);
}

int find_labeled(const std::vector<NodeLabel>& labels, const Network& net, int cs, int ct) {
    for (int v = 0; v < net.node_count(); ++v) {
        if (net.node(v).role != NodeRole::Internal) continue;
        if (labels[static_cast<std::size_t>(v)].cs == cs && labels[static_cast<std::size_t>(v)].ct == ct) return v;
    }
    return -1;
}

// role bookkeeping: every edge may carry at most one of the construction's
// assignments; a second claim means the case analysis went wrong
struct RoleMap {
    std::vector<int> role;
    explicit RoleMap(int edges) : role(static_cast<std::size_t>(edges), -1) {}
    void claim(int eid, int r) {
        if (role[static_cast<std::size_t>(eid)] != -1 && role[static_cast<std::size_t>(eid)] != r)
            throw CodegenError("case analysis claimed edge " + std::to_string(eid) + " twice");
        role[static_cast<std::size_t>(eid)] = r;
    }
};

std::vector<int> tree_in_edges(const Network& net, const std::set<int>& tree, int v) {
    std::vector<int> out;
    for (int g : net.in_edges(v))
        if (tree.count(g)) out.push_back(g);
    return out;
}

// sum-of-inputs coefficients along an in-tree: sources observe, interior
// nodes add every tree input
void sum_tree_coeffs(const Network& net, const Field& f, const std::set<int>& tree, CodeAssignment& code) {
    for (int eid : tree) {
        int u = net.edge(eid).tail;
        const Node& nu = net.node(u);
        if (nu.role == NodeRole::Source) {
            code.set(eid, {LocalCoeff{InputRef::source(nu.index), f.one()}});
            continue;
        }
        std::vector<LocalCoeff> coeffs;
        for (int g : tree_in_edges(net, tree, u)) coeffs.push_back(LocalCoeff{InputRef::edge(g), f.one()});
        code.set(eid, std::move(coeffs));
    }
}

} // namespace

CodeAssignment case0_33(const Network& net, const Field& f, int v) {
    ReachSets rs = reach_sets(net);
    auto labels = label_nodes(net, rs);
    if (labels[static_cast<std::size_t>(v)].cs != 3 || labels[static_cast<std::size_t>(v)].ct != 3)
        throw CodegenError("case 0 needs a (3,3) node");
    auto active = all_edges(net);

    std::vector<int> red_union, blue_union;
    for (int i = 1; i <= 3; ++i) {
        auto p = bfs_path(net, active, net.source_node(i), v);
        red_union.insert(red_union.end(), p.begin(), p.end());
    }
    for (int j = 1; j <= 3; ++j) {
        auto p = bfs_path(net, active, v, net.terminal_node(j));
        blue_union.insert(blue_union.end(), p.begin(), p.end());
    }
    auto red_kept = in_tree_toward(net, red_union, v);
    auto blue_kept = out_tree_from(net, blue_union, v);
    std::set<int> red(red_kept.begin(), red_kept.end());
    std::set<int> blue(blue_kept.begin(), blue_kept.end());
    for (int eid : red)
        if (blue.count(eid)) throw CodegenError("acyclicity violated: edge colored both red and blue");

    CodeAssignment code(f.spec(), net.edge_count());
    sum_tree_coeffs(net, f, red, code);
    for (int eid : blue) {
        int u = net.edge(eid).tail;
        if (u == v) {
            std::vector<LocalCoeff> coeffs;
            for (int g : tree_in_edges(net, red, v)) coeffs.push_back(LocalCoeff{InputRef::edge(g), f.one()});
            code.set(eid, std::move(coeffs));
        } else {
            auto ins = tree_in_edges(net, blue, u);
            if (ins.size() != 1) throw CodegenError("multicast tree node without a unique input");
            code.set(eid, {LocalCoeff{InputRef::edge(ins[0]), f.one()}});
        }
    }
    return code;
}

CodeAssignment case1_23(const Network& net, const Field& f, int v) {
    ReachSets rs = reach_sets(net);
    auto labels = label_nodes(net, rs);
    if (labels[static_cast<std::size_t>(v)].cs != 2 || labels[static_cast<std::size_t>(v)].ct != 3)
        throw CodegenError("case 1 needs a (2,3) node");
    std::uint32_t smask = rs.source_mask[static_cast<std::size_t>(v)];
    int a = 0, b = 0, c = 0;
    for (int i = 1; i <= 3; ++i) {
        if (smask >> (i - 1) & 1)
            (a == 0 ? a : b) = i;
        else
            c = i;
    }

    auto active = all_edges(net);
    std::vector<int> blue_union;
    for (int s : {a, b}) {
        auto p = bfs_path(net, active, net.source_node(s), v);
        blue_union.insert(blue_union.end(), p.begin(), p.end());
    }
    auto blue_kept = in_tree_toward(net, blue_union, v);
    std::set<int> blue_tree(blue_kept.begin(), blue_kept.end());

    // the third source cannot touch the blue region, or v would see it
    for (int eid : blue_union)
        for (int w : {net.edge(eid).tail, net.edge(eid).head})
            if (rs.source_mask[static_cast<std::size_t>(w)] >> (c - 1) & 1)
                throw CodegenError("case 1: remaining source reaches the partial-sum region");

    for (int eid : blue_union) active[static_cast<std::size_t>(eid)] = 0;
    for (int j = 1; j <= 3; ++j) {
        if (!detail::reaches(net, active, net.source_node(c), net.terminal_node(j)))
            throw CodegenError("case 1: residual graph lost source connectivity");
        if (!detail::reaches(net, active, v, net.terminal_node(j)))
            throw CodegenError("case 1: residual graph lost the partial-sum node");
    }

    CodeAssignment code(f.spec(), net.edge_count());
    sum_tree_coeffs(net, f, blue_tree, code);

    // two-source problem on the residual graph: X_c against the pair sum at v
    std::vector<LocalCoeff> v_payload;
    for (int g : tree_in_edges(net, blue_tree, v)) v_payload.push_back(LocalCoeff{InputRef::edge(g), f.one()});
    struct {
        int node;
        std::vector<LocalCoeff> materialize;
    } ps0{net.source_node(c), {LocalCoeff{InputRef::source(c), f.one()}}}, ps1{v, std::move(v_payload)};

    // inline two-payload greedy over the residual edges
    std::vector<std::uint8_t> presence(static_cast<std::size_t>(net.edge_count()), 0);
    for (int u : net.topo_order()) {
        int payload = u == ps0.node ? 0 : u == ps1.node ? 1 : -1;
        for (int eid : net.out_edges(u)) {
            if (!active[static_cast<std::size_t>(eid)]) continue;
            if (payload >= 0) {
                code.set(eid, payload == 0 ? ps0.materialize : ps1.materialize);
                presence[static_cast<std::size_t>(eid)] = static_cast<std::uint8_t>(1 << payload);
                continue;
            }
            std::uint8_t need = 0;
            for (int g : net.in_edges(u))
                if (active[static_cast<std::size_t>(g)]) need |= presence[static_cast<std::size_t>(g)];
            if (need == 0) continue;
            int exact = -1;
            for (int g : net.in_edges(u))
                if (active[static_cast<std::size_t>(g)] && presence[static_cast<std::size_t>(g)] == need) {
                    exact = g;
                    break;
                }
            if (exact >= 0) {
                code.set(eid, {LocalCoeff{InputRef::edge(exact), f.one()}});
            } else {
                std::vector<LocalCoeff> coeffs;
                for (std::uint8_t bit : {std::uint8_t(1), std::uint8_t(2)})
                    for (int g : net.in_edges(u))
                        if (active[static_cast<std::size_t>(g)] && presence[static_cast<std::size_t>(g)] == bit) {
                            coeffs.push_back(LocalCoeff{InputRef::edge(g), f.one()});
                            break;
                        }
                code.set(eid, std::move(coeffs));
            }
            presence[static_cast<std::size_t>(eid)] = need;
        }
    }
    return code;
}

CodeAssignment case2_32(const Network& net, const Field& f, int v) {
    ReachSets rs = reach_sets(net);
    auto labels = label_nodes(net, rs);
    if (labels[static_cast<std::size_t>(v)].cs != 3 || labels[static_cast<std::size_t>(v)].ct != 2)
        throw CodegenError("case 2 needs a (3,2) node");
    std::uint32_t tmask = rs.terminal_mask[static_cast<std::size_t>(v)];
    int tp = 0, tq = 0, tr = 0;
    for (int j = 1; j <= 3; ++j) {
        if (tmask >> (j - 1) & 1)
            (tp == 0 ? tp : tq) = j;
        else
            tr = j;
    }
    auto active = all_edges(net);

    // tree into v out of the three source paths
    std::vector<int> vin_union;
    for (int i = 1; i <= 3; ++i) {
        auto p = bfs_path(net, active, net.source_node(i), v);
        vin_union.insert(vin_union.end(), p.begin(), p.end());
    }
    auto vtree_kept = in_tree_toward(net, vin_union, v);
    std::set<int> vtree(vtree_kept.begin(), vtree_kept.end());
    auto tree_path = [&](int from) { // walk the per-node chosen out-edges
        std::vector<int> edges;
        int u = from;
        while (u != v) {
            int next = -1;
            for (int g : net.out_edges(u))
                if (vtree.count(g)) {
                    next = g;
                    break;
                }
            if (next == -1) throw CodegenError("case 2: source fell off the in-tree");
            edges.push_back(next);
            u = net.edge(next).head;
        }
        return edges;
    };

    std::array<std::vector<int>, 3> tpath, t3path, t3nodes, tnodes;
    for (int i = 1; i <= 3; ++i) {
        tpath[static_cast<std::size_t>(i - 1)] = tree_path(net.source_node(i));
        t3path[static_cast<std::size_t>(i - 1)] = bfs_path(net, active, net.source_node(i), net.terminal_node(tr));
        if (t3path[static_cast<std::size_t>(i - 1)].empty())
            throw CodegenError("case 2: missing path to the third terminal");
        tnodes[static_cast<std::size_t>(i - 1)] = path_nodes(net, net.source_node(i), tpath[static_cast<std::size_t>(i - 1)]);
        t3nodes[static_cast<std::size_t>(i - 1)] = path_nodes(net, net.source_node(i), t3path[static_cast<std::size_t>(i - 1)]);
    }

    // the paths to the third terminal keep clear of the other sources' tree
    // paths and of the multicast region below v
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            std::set<int> tn(tnodes[static_cast<std::size_t>(j)].begin(), tnodes[static_cast<std::size_t>(j)].end());
            for (int w : t3nodes[static_cast<std::size_t>(i)])
                if (tn.count(w) && w != net.source_node(j + 1))
                    throw CodegenError("case 2: third-terminal path meets another source's tree path");
        }

    std::vector<int> dunion;
    for (int t : {tp, tq}) {
        auto p = bfs_path(net, active, v, net.terminal_node(t));
        if (p.empty()) throw CodegenError("case 2: lost a covered terminal");
        dunion.insert(dunion.end(), p.begin(), p.end());
    }
    {
        std::set<int> dn;
        for (int eid : dunion) {
            dn.insert(net.edge(eid).tail);
            dn.insert(net.edge(eid).head);
        }
        for (int i = 0; i < 3; ++i)
            for (int w : t3nodes[static_cast<std::size_t>(i)])
                if (dn.count(w)) throw CodegenError("case 2: third-terminal path meets the multicast region");
    }

    // v_i: node closest to v on both the tree path and the third-terminal path
    std::array<int, 3> vi{};
    std::array<std::vector<int>, 3> apath, bpath, cpath;
    for (int i = 0; i < 3; ++i) {
        std::set<int> on_t3(t3nodes[static_cast<std::size_t>(i)].begin(), t3nodes[static_cast<std::size_t>(i)].end());
        const auto& tn = tnodes[static_cast<std::size_t>(i)];
        std::size_t pos = 0;
        for (std::size_t k = 0; k < tn.size(); ++k)
            if (on_t3.count(tn[k])) pos = k;
        vi[static_cast<std::size_t>(i)] = tn[pos];
        if (vi[static_cast<std::size_t>(i)] == v) throw CodegenError("case 2: meeting point reached v");
        const auto& te = tpath[static_cast<std::size_t>(i)];
        apath[static_cast<std::size_t>(i)].assign(te.begin(), te.begin() + static_cast<std::ptrdiff_t>(pos));
        bpath[static_cast<std::size_t>(i)].assign(te.begin() + static_cast<std::ptrdiff_t>(pos), te.end());
        // suffix of the third-terminal path from v_i
        const auto& t3n = t3nodes[static_cast<std::size_t>(i)];
        std::size_t q = 0;
        while (t3n[q] != vi[static_cast<std::size_t>(i)]) ++q;
        cpath[static_cast<std::size_t>(i)].assign(t3path[static_cast<std::size_t>(i)].begin() + static_cast<std::ptrdiff_t>(q),
                                                  t3path[static_cast<std::size_t>(i)].end());
    }

    std::vector<int> cunion;
    for (int i = 0; i < 3; ++i) cunion.insert(cunion.end(), cpath[static_cast<std::size_t>(i)].begin(), cpath[static_cast<std::size_t>(i)].end());
    auto ctree_kept = in_tree_toward(net, cunion, net.terminal_node(tr));
    auto dtree_kept = out_tree_from(net, dunion, v);
    std::set<int> ctree(ctree_kept.begin(), ctree_kept.end());
    std::set<int> dtree(dtree_kept.begin(), dtree_kept.end());
    std::set<int> bset;
    for (int i = 0; i < 3; ++i) bset.insert(bpath[static_cast<std::size_t>(i)].begin(), bpath[static_cast<std::size_t>(i)].end());

    RoleMap roles(net.edge_count());
    for (int i = 0; i < 3; ++i)
        for (int eid : apath[static_cast<std::size_t>(i)]) roles.claim(eid, i);
    for (int eid : bset) roles.claim(eid, 3);
    for (int eid : ctree) roles.claim(eid, 4);
    for (int eid : dtree) roles.claim(eid, 5);

    CodeAssignment code(f.spec(), net.edge_count());
    // X_i rides its private prefix
    for (int i = 0; i < 3; ++i) {
        const auto& ap = apath[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < ap.size(); ++k) {
            int eid = ap[k];
            if (k == 0)
                code.set(eid, {LocalCoeff{InputRef::source(i + 1), f.one()}});
            else
                code.set(eid, {LocalCoeff{InputRef::edge(ap[k - 1]), f.one()}});
        }
    }
    // injection of X_i where its prefix forks into the two sum trees
    auto injection = [&](int i, int u) -> std::optional<LocalCoeff> {
        if (vi[static_cast<std::size_t>(i)] != u) return std::nullopt;
        const auto& ap = apath[static_cast<std::size_t>(i)];
        if (ap.empty()) return LocalCoeff{InputRef::source(i + 1), f.one()};
        return LocalCoeff{InputRef::edge(ap.back()), f.one()};
    };
    for (const std::set<int>* tree : {&bset, &ctree}) {
        for (int eid : *tree) {
            int u = net.edge(eid).tail;
            std::vector<LocalCoeff> coeffs;
            for (int g : tree_in_edges(net, *tree, u)) coeffs.push_back(LocalCoeff{InputRef::edge(g), f.one()});
            for (int i = 0; i < 3; ++i)
                if (auto inj = injection(i, u)) coeffs.push_back(*inj);
            code.set(eid, std::move(coeffs));
        }
    }
    for (int eid : dtree) {
        int u = net.edge(eid).tail;
        if (u == v) {
            std::vector<LocalCoeff> coeffs;
            for (int g : tree_in_edges(net, bset, v)) coeffs.push_back(LocalCoeff{InputRef::edge(g), f.one()});
            code.set(eid, std::move(coeffs));
        } else {
            auto ins = tree_in_edges(net, dtree, u);
            if (ins.size() != 1) throw CodegenError("case 2: multicast node without a unique input");
            code.set(eid, {LocalCoeff{InputRef::edge(ins[0]), f.one()}});
        }
    }
    return code;
}

// ---------------------------------------------------------------------------
// Case 3: color analysis

namespace {

enum class PlanKind { Greedy, Payload };

struct ColorPlan {
    PlanKind kind = PlanKind::Greedy;
    std::vector<FieldElem> payload; // for PlanKind::Payload
};

// leaf of a terminal along a path: tail of the first cone edge
int leaf_on_path(const Network& net, const DecompositionReport& rep, int start, const std::vector<int>& path,
                 int terminal) {
    int u = start;
    for (int eid : path) {
        const EdgeClass& c = rep.edge_classes[static_cast<std::size_t>(eid)];
        if (c.terminal_edge && c.terminal == terminal) return u;
        u = net.edge(eid).head;
    }
    throw CodegenError("path to terminal never enters its cone");
}

// the r-edge carrying the path's information into the leaf (none when the
// leaf is the path's start, i.e. a source)
std::optional<int> leaf_in_edge_on_path(const DecompositionReport& rep, const std::vector<int>& path,
                                        int terminal) {
    std::optional<int> prev;
    for (int eid : path) {
        const EdgeClass& c = rep.edge_classes[static_cast<std::size_t>(eid)];
        if (c.terminal_edge && c.terminal == terminal) return prev;
        prev = eid;
    }
    throw CodegenError("path to terminal never enters its cone");
}

// Materializes the shared (non-cone) region given per-color plans: single
// source regions forward, colored regions run greedy / payload multicast.
void materialize_r_region(const Network& net, const Field& f, const DecompositionReport& rep,
                          const std::map<Color, ColorPlan>& plans, CodeAssignment& code,
                          std::vector<std::vector<FieldElem>>& beta) {
    int n = net.source_count();
    beta.assign(static_cast<std::size_t>(net.edge_count()), std::vector<FieldElem>(static_cast<std::size_t>(n), 0));
    auto support = [&](const std::vector<FieldElem>& vec) {
        std::uint32_t m = 0;
        for (int i = 0; i < n; ++i)
            if (vec[static_cast<std::size_t>(i)] != 0) m |= 1u << i;
        return m;
    };
    auto recompute = [&](int eid) {
        auto& b = beta[static_cast<std::size_t>(eid)];
        std::fill(b.begin(), b.end(), 0);
        for (const LocalCoeff& lc : code.local[static_cast<std::size_t>(eid)]) {
            if (lc.input.is_source) {
                b[static_cast<std::size_t>(lc.input.id - 1)] = f.add(b[static_cast<std::size_t>(lc.input.id - 1)], lc.coeff);
            } else {
                const auto& bg = beta[static_cast<std::size_t>(lc.input.id)];
                for (int i = 0; i < n; ++i)
                    b[static_cast<std::size_t>(i)] = f.add(b[static_cast<std::size_t>(i)], f.mul(lc.coeff, bg[static_cast<std::size_t>(i)]));
            }
        }
    };

    for (int u : net.topo_order()) {
        for (int eid : net.out_edges(u)) {
            if (rep.edge_classes[static_cast<std::size_t>(eid)].terminal_edge) continue; // cone phase
            const Node& nu = net.node(u);
            if (nu.role == NodeRole::Source) {
                code.set(eid, {LocalCoeff{InputRef::source(nu.index), f.one()}});
                recompute(eid);
                continue;
            }
            const NodeLabel& lab = rep.labels[static_cast<std::size_t>(u)];
            if (lab.cs == 1) {
                // forward the single source, coefficient one
                int g = -1;
                for (int in : net.in_edges(u))
                    if (!vec_is_zero(beta[static_cast<std::size_t>(in)])) {
                        g = in;
                        break;
                    }
                if (g >= 0) code.set(eid, {LocalCoeff{InputRef::edge(g), f.one()}});
                recompute(eid);
                continue;
            }
            // (2,2) node of some color
            auto cit = rep.colors.find(u);
            if (cit == rep.colors.end()) throw CodegenError("r-edge tail is neither singleton nor colored");
            const Color& color = cit->second;
            const ColorPlan& plan = plans.at(color);
            if (plan.kind == PlanKind::Greedy) {
                std::uint32_t needed = 0;
                for (int g : net.in_edges(u)) needed |= support(beta[static_cast<std::size_t>(g)]);
                if (needed == 0) {
                    recompute(eid);
                    continue;
                }
                int exact = -1;
                for (int g : net.in_edges(u))
                    if (support(beta[static_cast<std::size_t>(g)]) == needed) {
                        exact = g;
                        break;
                    }
                if (exact >= 0) {
                    code.set(eid, {LocalCoeff{InputRef::edge(exact), f.one()}});
                } else {
                    std::vector<LocalCoeff> coeffs;
                    for (std::uint32_t bit = 0; bit < static_cast<std::uint32_t>(n); ++bit) {
                        if (!(needed >> bit & 1)) continue;
                        for (int g : net.in_edges(u))
                            if (support(beta[static_cast<std::size_t>(g)]) == (1u << bit)) {
                                coeffs.push_back(LocalCoeff{InputRef::edge(g), f.one()});
                                break;
                            }
                    }
                    code.set(eid, std::move(coeffs));
                }
                recompute(eid);
            } else {
                // multicast the payload through the color subgraph
                const std::vector<FieldElem>& pay = plan.payload;
                int same_color_in = -1;
                for (int g : net.in_edges(u)) {
                    auto t = rep.colors.find(net.edge(g).tail);
                    if (t != rep.colors.end() && t->second == color && beta[static_cast<std::size_t>(g)] == pay) {
                        same_color_in = g;
                        break;
                    }
                }
                if (same_color_in >= 0) {
                    code.set(eid, {LocalCoeff{InputRef::edge(same_color_in), f.one()}});
                } else {
                    // entry node: scale the two cleanly delivered sources
                    std::vector<LocalCoeff> coeffs;
                    for (int s : color.sources) {
                        FieldElem want = pay[static_cast<std::size_t>(s - 1)];
                        if (want == 0) continue;
                        int g = -1;
                        for (int in : net.in_edges(u)) {
                            const auto& bg = beta[static_cast<std::size_t>(in)];
                            if (support(bg) == (1u << (s - 1))) {
                                g = in;
                                break;
                            }
                        }
                        if (g == -1) throw CodegenError("color entry node is missing a clear source input");
                        FieldElem have = beta[static_cast<std::size_t>(g)][static_cast<std::size_t>(s - 1)];
                        coeffs.push_back(LocalCoeff{InputRef::edge(g), f.mul(want, f.inv(have))});
                    }
                    code.set(eid, std::move(coeffs));
                }
                recompute(eid);
            }
        }
    }
}

// Completes the private cone of every terminal: an in-tree toward the
// terminal, leaf contents combined per the decode solution and forwarded.
void cone_routing(const Network& net, const Field& f, const DecompositionReport& rep, CodeAssignment& code) {
    auto beta = propagate(net, f, code);
    int n = net.source_count();
    std::vector<FieldElem> ones(static_cast<std::size_t>(n), f.one());
    for (int j = 1; j <= net.terminal_count(); ++j) {
        int tj = net.terminal_node(j);
        std::vector<int> cone;
        for (const Edge& e : net.edges()) {
            const EdgeClass& c = rep.edge_classes[static_cast<std::size_t>(e.id)];
            if (c.terminal_edge && c.terminal == j) cone.push_back(e.id);
        }
        if (cone.empty()) throw CodegenError("terminal t" + std::to_string(j) + " has no cone");
        auto tree_kept = in_tree_toward(net, cone, tj);
        std::set<int> tree(tree_kept.begin(), tree_kept.end());

        // leaf contents: coding vectors on leaf inputs, or the observed source
        Matrix rows(0, static_cast<std::size_t>(n));
        std::vector<std::pair<int, InputRef>> provenance; // leaf node, input
        for (int leaf : rep.leaves[static_cast<std::size_t>(j - 1)]) {
            const Node& nl = net.node(leaf);
            if (nl.role == NodeRole::Source) {
                std::vector<FieldElem> unit(static_cast<std::size_t>(n), 0);
                unit[static_cast<std::size_t>(nl.index - 1)] = f.one();
                rows.append_row(unit);
                provenance.emplace_back(leaf, InputRef::source(nl.index));
            }
            for (int g : net.in_edges(leaf)) {
                rows.append_row(beta[static_cast<std::size_t>(g)]);
                provenance.emplace_back(leaf, InputRef::edge(g));
            }
        }
        SpanResult sr = in_span(f, ones, rows);
        if (!sr.in_span)
            throw CodegenError("terminal t" + std::to_string(j) + " cannot decode from its leaf contents");

        std::map<int, std::vector<LocalCoeff>> extra; // leaf -> injected terms
        for (std::size_t r = 0; r < provenance.size(); ++r)
            if (sr.coeffs[r] != 0)
                extra[provenance[r].first].push_back(LocalCoeff{provenance[r].second, sr.coeffs[r]});

        for (int eid : tree) {
            int u = net.edge(eid).tail;
            std::vector<LocalCoeff> coeffs;
            for (int g : tree_in_edges(net, tree, u)) coeffs.push_back(LocalCoeff{InputRef::edge(g), f.one()});
            auto it = extra.find(u);
            if (it != extra.end())
                coeffs.insert(coeffs.end(), it->second.begin(), it->second.end());
            code.set(eid, std::move(coeffs));
        }
    }
}

struct TwoColorAnalysis {
    Color c1, c2;
    TwoColorFrame frame;
    bool singleton_shortcut = false; // a clear singleton on the disjoint paths
};

TwoColorAnalysis analyze_two_colors(const Network& net, const DecompositionReport& rep) {
    TwoColorAnalysis an;
    an.c1 = rep.aux.colors[0];
    an.c2 = rep.aux.colors[1];
    an.frame = two_color_frame(an.c1, an.c2);
    for (int side : {0, 2}) {
        int s = an.frame.src_from_canonical[static_cast<std::size_t>(side)];
        int t2 = an.frame.term_from_canonical[1];
        PathSet ps = disjoint_paths(net, net.source_node(s), net.terminal_node(t2), 2, DisjointMode::Vertex);
        for (const auto& path : ps.paths) {
            int leaf = leaf_on_path(net, rep, net.source_node(s), path, t2);
            if (net.node(leaf).role == NodeRole::Source || rep.labels[static_cast<std::size_t>(leaf)].cs == 1)
                an.singleton_shortcut = true;
        }
    }
    return an;
}

} // namespace

RandomColorCode random_color_code(const Network& net, const Field& f, std::uint64_t seed) {
    DecompositionReport rep = decompose(net);
    if (!rep.case3 || rep.aux.colors.size() != 2)
        throw CodegenError("randomized construction applies to two-color case-3 graphs");
    TwoColorAnalysis an = analyze_two_colors(net, rep);
    const TwoColorFrame& fr = an.frame;
    int x1 = fr.src_from_canonical[0], x2 = fr.src_from_canonical[1], x3 = fr.src_from_canonical[2];
    int T1 = fr.term_from_canonical[0], T2 = fr.term_from_canonical[1], T3 = fr.term_from_canonical[2];

    RandomColorCode out;
    out.partial = CodeAssignment(f.spec(), net.edge_count());
    CodeAssignment& code = out.partial;
    Rng rng(seed);

    // uniform local coefficients over the shared region (the color subgraphs
    // plus every singleton feeder); cones are left for the routing phase
    for (int u : net.topo_order()) {
        for (int eid : net.out_edges(u)) {
            if (rep.edge_classes[static_cast<std::size_t>(eid)].terminal_edge) continue;
            const Node& nu = net.node(u);
            std::vector<LocalCoeff> coeffs;
            if (nu.role == NodeRole::Source) {
                coeffs.push_back(LocalCoeff{InputRef::source(nu.index), f.from_int(rng.below(f.size()))});
            } else {
                for (int g : net.in_edges(u))
                    coeffs.push_back(LocalCoeff{InputRef::edge(g), f.from_int(rng.below(f.size()))});
            }
            code.set(eid, std::move(coeffs));
        }
    }
    auto beta = propagate(net, f, code);

    auto fail = [&out](std::string why) {
        out.accepted = false;
        out.failure = std::move(why);
        return out;
    };
    auto leaf_vec = [&](int leaf, std::optional<int> in_edge) -> std::vector<FieldElem> {
        if (!in_edge) { // the leaf is a source: delivered clear by the cone phase
            std::vector<FieldElem> unit(static_cast<std::size_t>(net.source_count()), 0);
            unit[static_cast<std::size_t>(net.node(leaf).index - 1)] = f.one();
            return unit;
        }
        return beta[static_cast<std::size_t>(*in_edge)];
    };
    // Claim-5 check: both relevant coordinates nonzero
    auto full_support = [&](const std::vector<FieldElem>& v, int sa, int sb, const char* what) {
        if (v[static_cast<std::size_t>(sa - 1)] == 0 || v[static_cast<std::size_t>(sb - 1)] == 0)
            return std::string(what) + ": spurious zero coordinate";
        return std::string();
    };
    // Claim-6 check: the two designated vectors are independent
    auto independent = [&](const std::vector<FieldElem>& a, const std::vector<FieldElem>& b, int sa, int sb,
                           const char* what) {
        Matrix m(2, 2);
        m.at(0, 0) = a[static_cast<std::size_t>(sa - 1)];
        m.at(0, 1) = a[static_cast<std::size_t>(sb - 1)];
        m.at(1, 0) = b[static_cast<std::size_t>(sa - 1)];
        m.at(1, 1) = b[static_cast<std::size_t>(sb - 1)];
        if (mat_det(f, m) == 0) return std::string(what) + ": designated leaves dependent (determinant zero)";
        return std::string();
    };
    auto singleton_leaf_vec = [&](int term, int src) -> std::optional<std::vector<FieldElem>> {
        for (int leaf : rep.leaves[static_cast<std::size_t>(term - 1)]) {
            if (net.node(leaf).role == NodeRole::Source && net.node(leaf).index == src) {
                std::vector<FieldElem> unit(static_cast<std::size_t>(net.source_count()), 0);
                unit[static_cast<std::size_t>(src - 1)] = f.one();
                return unit;
            }
            if (rep.reach.source_mask[static_cast<std::size_t>(leaf)] == (1u << (src - 1)))
                for (int g : net.in_edges(leaf)) {
                    if (!vec_is_zero(beta[static_cast<std::size_t>(g)])) return beta[static_cast<std::size_t>(g)];
                }
        }
        return std::nullopt;
    };

    // shared terminal: both disjoint-path leaf pairs must be independent
    for (auto [src, color_lo, color_hi, tag] :
         {std::tuple{x1, x1, x2, "shared terminal, first color"}, std::tuple{x3, x2, x3, "shared terminal, second color"}}) {
        PathSet ps = disjoint_paths(net, net.source_node(src), net.terminal_node(T2), 2, DisjointMode::Vertex);
        std::array<std::vector<FieldElem>, 2> vecs;
        for (int k = 0; k < 2; ++k) {
            const auto& path = ps.paths[static_cast<std::size_t>(k)];
            int leaf = leaf_on_path(net, rep, net.source_node(src), path, T2);
            if (rep.labels[static_cast<std::size_t>(leaf)].cs != 2)
                throw CodegenError("randomized branch expects (2,2) leaves at the shared terminal");
            auto in_edge = leaf_in_edge_on_path(rep, path, T2);
            vecs[static_cast<std::size_t>(k)] = leaf_vec(leaf, in_edge);
            if (auto why = full_support(vecs[static_cast<std::size_t>(k)], color_lo, color_hi, tag); !why.empty())
                return fail(why);
        }
        if (auto why = independent(vecs[0], vecs[1], color_lo, color_hi, tag); !why.empty()) return fail(why);
    }

    // exclusive terminals: independence over their color, plus a live
    // singleton of the opposite source
    for (auto [term, src, color_lo, color_hi, other_src, tag] :
         {std::tuple{T1, x1, x1, x2, x3, "first exclusive terminal"}, std::tuple{T3, x3, x2, x3, x1, "second exclusive terminal"}}) {
        PathSet ps = disjoint_paths(net, net.source_node(src), net.terminal_node(term), 2, DisjointMode::Vertex);
        std::array<std::vector<FieldElem>, 2> vecs;
        std::array<bool, 2> is_clear{};
        for (int k = 0; k < 2; ++k) {
            const auto& path = ps.paths[static_cast<std::size_t>(k)];
            int leaf = leaf_on_path(net, rep, net.source_node(src), path, term);
            auto in_edge = leaf_in_edge_on_path(rep, path, term);
            is_clear[static_cast<std::size_t>(k)] =
                net.node(leaf).role == NodeRole::Source || rep.labels[static_cast<std::size_t>(leaf)].cs == 1;
            vecs[static_cast<std::size_t>(k)] = leaf_vec(leaf, in_edge);
        }
        if (!is_clear[0] && !is_clear[1]) {
            for (int k = 0; k < 2; ++k)
                if (auto why = full_support(vecs[static_cast<std::size_t>(k)], color_lo, color_hi, tag); !why.empty())
                    return fail(why);
            if (auto why = independent(vecs[0], vecs[1], color_lo, color_hi, tag); !why.empty()) return fail(why);
        } else {
            // one clear leaf: pair it with any (2,2) leaf of the color
            int clear_k = is_clear[0] ? 0 : 1;
            if (vecs[static_cast<std::size_t>(clear_k)][static_cast<std::size_t>(src - 1)] == 0)
                return fail(std::string(tag) + ": clear leaf lost its source");
            std::optional<std::vector<FieldElem>> pair;
            for (int leaf : rep.leaves[static_cast<std::size_t>(term - 1)]) {
                if (rep.labels[static_cast<std::size_t>(leaf)].cs != 2) continue;
                for (int g : net.in_edges(leaf)) {
                    pair = beta[static_cast<std::size_t>(g)];
                    break;
                }
                if (pair) break;
            }
            if (!pair) throw CodegenError("exclusive terminal has no (2,2) leaf");
            if (auto why = full_support(*pair, color_lo, color_hi, tag); !why.empty()) return fail(why);
        }
        if (auto sv = singleton_leaf_vec(term, other_src); !sv || (*sv)[static_cast<std::size_t>(other_src - 1)] == 0)
            return fail(std::string(tag) + ": singleton leaf carries nothing");
    }

    out.accepted = true;
    return out;
}

Assign3s3tResult case3_colors(const Network& net, const Field& f, std::uint64_t seed, int retries) {
    DecompositionReport rep = decompose(net);
    if (!rep.case3) throw CodegenError("case 3 dispatched on a graph with large-label nodes");
    Assign3s3tResult res;
    res.dispatch.case_id = 3;
    res.dispatch.color_count = static_cast<int>(rep.aux.colors.size());
    res.dispatch.degree_sequence = rep.aux.degree_sequence;
    res.code = CodeAssignment(f.spec(), net.edge_count());

    std::map<Color, ColorPlan> plans;
    auto greedy_all = [&] {
        for (const Color& c : rep.aux.colors) plans[c] = ColorPlan{PlanKind::Greedy, {}};
    };
    auto table_plan = [&](const Color& c) {
        plans[c] = ColorPlan{PlanKind::Payload, table_encoding_payload(f, c.sources, net.source_count())};
    };
    bool randomized = false;

    std::size_t ncolors = rep.aux.colors.size();
    if (ncolors == 0) {
        res.dispatch.branch = "no colors: singleton routing";
    } else if (ncolors == 1) {
        greedy_all();
        res.dispatch.branch = "one color: greedy";
    } else if (ncolors == 2) {
        const Color& c1 = rep.aux.colors[0];
        const Color& c2 = rep.aux.colors[1];
        if (c1.terminals == c2.terminals) {
            table_plan(c1);
            table_plan(c2);
            res.dispatch.branch = "two colors, same terminal label: pair encodings";
        } else if (c1.sources == c2.sources) {
            greedy_all();
            res.dispatch.branch = "two colors, same source label: greedy";
        } else {
            TwoColorAnalysis an = analyze_two_colors(net, rep);
            if (an.singleton_shortcut) {
                greedy_all();
                res.dispatch.branch = "two colors, labels differ: clear singleton, greedy";
            } else {
                randomized = true;
                res.dispatch.branch = "two colors, labels differ: randomized";
            }
        }
    } else if (ncolors == 3) {
        std::vector<int> deg = rep.aux.degree_sequence;
        std::set<std::array<int, 2>> src_pairs;
        for (const Color& c : rep.aux.colors) src_pairs.insert(c.sources);
        if (deg == std::vector<int>{0, 3, 3}) {
            greedy_all();
            res.dispatch.branch = "three colors, degree (0,3,3): greedy";
        } else if (deg == std::vector<int>{2, 2, 2}) {
            if (src_pairs.size() == 1) {
                greedy_all();
                res.dispatch.branch = "three colors, degree (2,2,2), one source label: greedy";
            } else if (src_pairs.size() == 2) {
                // greedy on the repeated source label, propagate the odd one's
                // exclusive source on its subgraph
                std::array<int, 2> repeated{};
                for (const auto& sp : src_pairs) {
                    int count = 0;
                    for (const Color& c : rep.aux.colors)
                        if (c.sources == sp) ++count;
                    if (count == 2) repeated = sp;
                }
                for (const Color& c : rep.aux.colors) {
                    if (c.sources == repeated) {
                        plans[c] = ColorPlan{PlanKind::Greedy, {}};
                        continue;
                    }
                    int lone = c.sources[0];
                    if (lone == repeated[0] || lone == repeated[1]) lone = c.sources[1];
                    std::vector<FieldElem> payload(static_cast<std::size_t>(net.source_count()), 0);
                    payload[static_cast<std::size_t>(lone - 1)] = f.one();
                    plans[c] = ColorPlan{PlanKind::Payload, payload};
                }
                res.dispatch.branch = "three colors, degree (2,2,2), two source labels: greedy + propagate";
            } else {
                for (const Color& c : rep.aux.colors) table_plan(c);
                res.dispatch.branch = "three colors, degree (2,2,2), three source labels: pair encodings";
            }
        } else if (deg == std::vector<int>{1, 2, 3}) {
            // two colors share a terminal pair; their source labels differ
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t k = i + 1; k < 3; ++k)
                    if (rep.aux.colors[i].terminals == rep.aux.colors[k].terminals) {
                        table_plan(rep.aux.colors[i]);
                        table_plan(rep.aux.colors[k]);
                    }
            for (const Color& c : rep.aux.colors)
                if (!plans.count(c)) plans[c] = ColorPlan{PlanKind::Greedy, {}};
            res.dispatch.branch = "three colors, degree (1,2,3): pair encodings + greedy";
        } else {
            throw CodegenError("three-color degree sequence out of range");
        }
    } else {
        // four or more colors: some two share a terminal pair
        std::array<int, 2> shared{};
        bool found = false;
        for (std::size_t i = 0; i < ncolors && !found; ++i)
            for (std::size_t k = i + 1; k < ncolors && !found; ++k)
                if (rep.aux.colors[i].terminals == rep.aux.colors[k].terminals) {
                    table_plan(rep.aux.colors[i]);
                    table_plan(rep.aux.colors[k]);
                    shared = rep.aux.colors[i].terminals;
                    found = true;
                }
        if (!found) throw CodegenError("four colors cannot avoid a shared terminal pair");
        int tz = 6 - shared[0] - shared[1];
        std::vector<Color> z_colors;
        for (const Color& c : rep.aux.colors)
            if (c.terminals[0] == tz || c.terminals[1] == tz) z_colors.push_back(c);
        std::set<std::array<int, 2>> z_pairs;
        for (const Color& c : z_colors) z_pairs.insert(c.sources);
        if (z_pairs.size() >= 2)
            for (const Color& c : z_colors) table_plan(c);
        for (const Color& c : rep.aux.colors)
            if (!plans.count(c)) plans[c] = ColorPlan{PlanKind::Greedy, {}};
        res.dispatch.branch = "four or more colors: pair encodings + greedy";
    }

    if (randomized) {
        RandomColorCode rcc;
        int attempt = 0;
        for (; attempt < retries; ++attempt) {
            rcc = random_color_code(net, f, seed + static_cast<std::uint64_t>(attempt));
            if (rcc.accepted) break;
        }
        if (!rcc.accepted)
            throw CodegenError("randomized construction exhausted " + std::to_string(retries) +
                               " retries; last failure: " + rcc.failure);
        res.dispatch.retries_used = attempt;
        res.code = rcc.partial;
    } else {
        std::vector<std::vector<FieldElem>> beta;
        materialize_r_region(net, f, rep, plans, res.code, beta);
    }
    cone_routing(net, f, rep, res.code);
    return res;
}

Assign3s3tResult assign_3s_3t(const Network& net, const Field& f, std::uint64_t seed, int retries) {
    if (net.source_count() != 3 || net.terminal_count() != 3)
        throw CodegenError("this construction needs three sources and three terminals");
    detail::require_normalized(net);
    for (int v = 0; v < net.node_count(); ++v) {
        if (net.node(v).role != NodeRole::Internal) continue;
        if (net.in_edges(v).size() + net.out_edges(v).size() > 3)
            throw CodegenError("network is not structured (internal degree > 3); apply the degree reduction first");
    }
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (vertex_max_flow(net, net.source_node(i), net.terminal_node(j)) < 2)
                throw CodegenError("fewer than two vertex-disjoint paths between s" + std::to_string(i) + " and t" +
                                   std::to_string(j));

    detail::PrunedView pv = detail::prune_useless(net);
    ReachSets rs = reach_sets(pv.net);
    auto labels = label_nodes(pv.net, rs);

    Assign3s3tResult res;
    if (int v = find_labeled(labels, pv.net, 3, 3); v >= 0) {
        res.code = case0_33(pv.net, f, v);
        res.dispatch.case_id = 0;
        res.dispatch.branch = "a (3,3) node: compute and multicast";
    } else if (int w = find_labeled(labels, pv.net, 2, 3); w >= 0) {
        res.code = case1_23(pv.net, f, w);
        res.dispatch.case_id = 1;
        res.dispatch.branch = "a (2,3) node: two-source reduction";
    } else if (int x = find_labeled(labels, pv.net, 3, 2); x >= 0) {
        res.code = case2_32(pv.net, f, x);
        res.dispatch.case_id = 2;
        res.dispatch.branch = "a (3,2) node: split delivery";
    } else {
        res = case3_colors(pv.net, f, seed, retries);
    }

    res.code = detail::unprune_code(net, pv, res.code);
    VerificationReport rep = check_sum_decodable(net, f, res.code);
    if (!rep.all_decodable) throw CodegenError("internal: generated code failed verification");
    return res;
}

} // namespace sumcast
