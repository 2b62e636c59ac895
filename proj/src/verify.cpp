#include "sumcast/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

namespace sumcast {

using nlohmann::json;

std::vector<std::vector<FieldElem>> propagate(const Network& net, const Field& f, const CodeAssignment& code) {
    int n = net.source_count();
    std::vector<std::vector<FieldElem>> beta(static_cast<std::size_t>(net.edge_count()),
                                             std::vector<FieldElem>(static_cast<std::size_t>(n), 0));
    for (int v : net.topo_order()) {
        for (int eid : net.out_edges(v)) {
            auto& b = beta[static_cast<std::size_t>(eid)];
            for (const LocalCoeff& lc : code.local[static_cast<std::size_t>(eid)]) {
                if (lc.input.is_source) {
                    const Node& nd = net.node(v);
                    if (nd.role != NodeRole::Source || nd.index != lc.input.id)
                        throw VerifyError("edge " + std::to_string(eid) + " references source " +
                                          std::to_string(lc.input.id) + " not observed at its tail");
                    b[static_cast<std::size_t>(lc.input.id - 1)] =
                        f.add(b[static_cast<std::size_t>(lc.input.id - 1)], lc.coeff);
                } else {
                    int g = lc.input.id;
                    if (g < 0 || g >= net.edge_count() || net.edge(g).head != v)
                        throw VerifyError("edge " + std::to_string(eid) + " references edge " + std::to_string(g) +
                                          " which does not enter its tail");
                    const auto& bg = beta[static_cast<std::size_t>(g)];
                    for (int i = 0; i < n; ++i)
                        b[static_cast<std::size_t>(i)] =
                            f.add(b[static_cast<std::size_t>(i)], f.mul(lc.coeff, bg[static_cast<std::size_t>(i)]));
                }
            }
        }
    }
    return beta;
}

VerificationReport check_sum_decodable(const Network& net, const Field& f, const CodeAssignment& code) {
    auto beta = propagate(net, f, code);
    int n = net.source_count();
    std::vector<FieldElem> ones(static_cast<std::size_t>(n), f.one());

    VerificationReport rep;
    rep.field = code.field;
    rep.all_decodable = true;
    for (int j = 1; j <= net.terminal_count(); ++j) {
        TerminalReport tr;
        tr.terminal = j;
        tr.node = net.terminal_node(j);
        Matrix rows(0, static_cast<std::size_t>(n));
        const auto& in = net.in_edges(tr.node);
        for (int eid : in) rows.append_row(beta[static_cast<std::size_t>(eid)]);
        SpanResult sr = in_span(f, ones, rows);
        tr.decodable = sr.in_span;
        tr.rank = sr.rank_rows;
        tr.rank_aug = sr.rank_aug;
        if (sr.in_span)
            for (std::size_t i = 0; i < in.size(); ++i)
                if (sr.coeffs[i] != 0) tr.decode_coeffs.emplace_back(in[i], sr.coeffs[i]);
        rep.all_decodable = rep.all_decodable && tr.decodable;
        rep.terminals.push_back(std::move(tr));
    }
    return rep;
}

std::string report_to_json(const VerificationReport& rep) {
    json j;
    j["field"] = rep.field.str();
    j["decodable"] = rep.all_decodable;
    j["terminals"] = json::array();
    for (const TerminalReport& tr : rep.terminals) {
        json t{{"terminal", tr.terminal}, {"decodable", tr.decodable}};
        if (tr.decodable) {
            json cs = json::array();
            for (auto [eid, c] : tr.decode_coeffs) cs.push_back(json{{"edge", eid}, {"coeff", c}});
            t["decodeCoeffs"] = std::move(cs);
        } else {
            t["rank"] = tr.rank;
            t["rankWithTarget"] = tr.rank_aug;
        }
        j["terminals"].push_back(std::move(t));
    }
    return j.dump(2);
}

FunctionalityResult sum_functionality_oracle(const Field& f) {
    FunctionalityResult res;
    std::uint32_t q = f.size();
    // key (x1+x2, x2+x3) -> first witness tuple and its sum
    std::map<std::pair<FieldElem, FieldElem>, std::pair<std::vector<FieldElem>, FieldElem>> seen;
    for (std::uint32_t x1 = 0; x1 < q; ++x1)
        for (std::uint32_t x2 = 0; x2 < q; ++x2)
            for (std::uint32_t x3 = 0; x3 < q; ++x3) {
                auto key = std::make_pair(f.add(x1, x2), f.add(x2, x3));
                FieldElem sum = f.add(f.add(x1, x2), x3);
                auto it = seen.find(key);
                if (it == seen.end()) {
                    seen.emplace(key, std::make_pair(std::vector<FieldElem>{x1, x2, x3}, sum));
                } else if (it->second.second != sum) {
                    res.functional = false;
                    res.colliding_inputs[0] = it->second.first;
                    res.colliding_inputs[1] = {x1, x2, x3};
                    res.sums[0] = it->second.second;
                    res.sums[1] = sum;
                    return res;
                }
            }
    return res;
}

namespace {

// Behavior of an edge: its symbol on every source tuple, tuples enumerated
// with source 1 as the most significant digit.
using Behavior = std::vector<FieldElem>;

struct SearchCtx {
    const Network& net;
    const Field& f;
    std::uint32_t q;
    int nsrc;
    std::size_t ntuple;
    // Behaviors are stored only on "root" edges: source-tail edges, dead
    // edges, and merge edges.  Every other edge copies its single input, so
    // chain_root points it at the root whose behavior it shares.
    std::vector<Behavior> behavior;
    std::vector<int> chain_root;
    std::vector<int> merge_edges;         // enumerated edges in topo-edge order
    std::vector<std::vector<int>> check_after; // terminals to test after assigning merge edge i
    std::vector<int> check_upfront;
    std::uint64_t checked = 0;
    CodeSearchResult result;

    const Behavior& beh(int eid) const { return behavior[static_cast<std::size_t>(chain_root[static_cast<std::size_t>(eid)])]; }

    bool terminal_ok(int t_node) const {
        // in-symbols must determine the sum on every source tuple
        std::map<std::vector<FieldElem>, FieldElem> table;
        const auto& in = net.in_edges(t_node);
        for (std::size_t tup = 0; tup < ntuple; ++tup) {
            std::vector<FieldElem> key;
            key.reserve(in.size());
            for (int eid : in) key.push_back(beh(eid)[tup]);
            FieldElem sum = 0;
            std::size_t rem = tup;
            for (int i = nsrc - 1; i >= 0; --i) {
                sum = f.add(sum, static_cast<FieldElem>(rem % q));
                rem /= q;
            }
            auto [it, inserted] = table.emplace(std::move(key), sum);
            if (!inserted && it->second != sum) return false;
        }
        return true;
    }
};

} // namespace

CodeSearchResult exhaustive_code_search(const Network& net, const Field& f, double budget) {
    for (int i = 1; i <= net.source_count(); ++i)
        if (!net.in_edges(net.source_node(i)).empty())
            throw VerifyError("exhaustive search expects a normalized network (source with incoming edges)");
    for (const Edge& e : net.edges())
        if (e.capacity != 1) throw VerifyError("exhaustive search expects unit capacities; normalize first");

    SearchCtx ctx{net, f, f.size(), net.source_count(), 1, {}, {}, {}, {}, {}, 0, {}};
    for (int i = 0; i < ctx.nsrc; ++i) ctx.ntuple *= ctx.q;
    ctx.behavior.assign(static_cast<std::size_t>(net.edge_count()), {});
    ctx.chain_root.assign(static_cast<std::size_t>(net.edge_count()), -1);

    // Edges in topological order of their tails; merge edges get enumerated.
    std::vector<int> edge_order;
    for (int v : net.topo_order())
        for (int eid : net.out_edges(v)) edge_order.push_back(eid);
    double log_budget = std::log(budget);
    double log_space = 0;
    for (int eid : edge_order) {
        int tail = net.edge(eid).tail;
        if (net.node(tail).role != NodeRole::Source && net.in_edges(tail).size() >= 2) {
            ctx.merge_edges.push_back(eid);
            double entries = std::pow(static_cast<double>(ctx.q), static_cast<double>(net.in_edges(tail).size()));
            log_space += entries * std::log(static_cast<double>(ctx.q));
        }
    }
    if (log_space > log_budget)
        throw VerifyError("instance too large for exhaustive code search");

    // a terminal is checkable once its last upstream merge edge is assigned
    {
        std::vector<int> merge_pos(static_cast<std::size_t>(net.edge_count()), -1);
        for (std::size_t i = 0; i < ctx.merge_edges.size(); ++i)
            merge_pos[static_cast<std::size_t>(ctx.merge_edges[i])] = static_cast<int>(i);
        // upstream merge dependency = max merge position over ancestors
        std::vector<int> dep(static_cast<std::size_t>(net.edge_count()), -1);
        for (int eid : edge_order) {
            int tail = net.edge(eid).tail;
            int d = merge_pos[static_cast<std::size_t>(eid)];
            for (int g : net.in_edges(tail)) d = std::max(d, dep[static_cast<std::size_t>(g)]);
            dep[static_cast<std::size_t>(eid)] = d;
        }
        ctx.check_after.assign(ctx.merge_edges.size(), {});
        for (int j = 1; j <= net.terminal_count(); ++j) {
            int tn = net.terminal_node(j);
            int d = -1;
            for (int g : net.in_edges(tn)) d = std::max(d, dep[static_cast<std::size_t>(g)]);
            if (d < 0)
                ctx.check_upfront.push_back(tn);
            else
                ctx.check_after[static_cast<std::size_t>(d)].push_back(tn);
        }
    }

    // chain roots + fixed behaviors (identity canonicalization on single-input edges)
    for (int eid : edge_order) {
        const Edge& e = net.edge(eid);
        const Node& tail = net.node(e.tail);
        auto& b = ctx.behavior[static_cast<std::size_t>(eid)];
        if (tail.role == NodeRole::Source) {
            ctx.chain_root[static_cast<std::size_t>(eid)] = eid;
            b.assign(ctx.ntuple, 0);
            for (std::size_t tup = 0; tup < ctx.ntuple; ++tup) {
                std::size_t rem = tup;
                for (int i = ctx.nsrc - 1; i >= 0; --i) {
                    if (i + 1 == tail.index) b[tup] = static_cast<FieldElem>(rem % ctx.q);
                    rem /= ctx.q;
                }
            }
        } else if (net.in_edges(e.tail).size() == 1) {
            ctx.chain_root[static_cast<std::size_t>(eid)] =
                ctx.chain_root[static_cast<std::size_t>(net.in_edges(e.tail)[0])];
        } else if (net.in_edges(e.tail).empty()) {
            ctx.chain_root[static_cast<std::size_t>(eid)] = eid;
            b.assign(ctx.ntuple, 0); // dead internal node carries nothing
        } else {
            ctx.chain_root[static_cast<std::size_t>(eid)] = eid; // merge edge, enumerated below
        }
    }

    // DFS over merge-edge tables in lexicographic order.  A pruned branch
    // decides all the deeper assignments below it in one step; the count
    // reports how many full assignments were covered.
    std::vector<std::uint64_t> below(ctx.merge_edges.size() + 1, 1);
    for (std::size_t i = ctx.merge_edges.size(); i-- > 0;) {
        std::size_t k = net.in_edges(net.edge(ctx.merge_edges[i]).tail).size();
        std::uint64_t dom = 1;
        for (std::size_t j = 0; j < k; ++j) dom *= ctx.q;
        std::uint64_t tabs = 1;
        for (std::uint64_t j = 0; j < dom; ++j) tabs *= ctx.q;
        below[i] = below[i + 1] * tabs;
    }
    std::vector<std::vector<FieldElem>> tables(ctx.merge_edges.size());
    auto dfs = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == ctx.merge_edges.size()) {
            ++ctx.checked;
            return true;
        }
        int eid = ctx.merge_edges[depth];
        const auto& ins = net.in_edges(net.edge(eid).tail);
        std::size_t dom = 1;
        for (std::size_t i = 0; i < ins.size(); ++i) dom *= ctx.q;
        std::vector<FieldElem>& tab = tables[depth];
        tab.assign(dom, 0);
        auto& b = ctx.behavior[static_cast<std::size_t>(eid)];
        b.assign(ctx.ntuple, 0);
        for (;;) {
            // apply table to the tail's input behaviors
            for (std::size_t tup = 0; tup < ctx.ntuple; ++tup) {
                std::size_t key = 0;
                for (int g : ins) key = key * ctx.q + ctx.beh(g)[tup];
                b[tup] = tab[key];
            }
            bool ok = true;
            for (int tn : ctx.check_after[depth])
                if (!ctx.terminal_ok(tn)) {
                    ok = false;
                    break;
                }
            if (ok && self(self, depth + 1)) return true;
            if (!ok) ctx.checked += below[depth + 1];
            // next table, lexicographic
            std::size_t pos = dom;
            while (pos > 0 && tab[pos - 1] == ctx.q - 1) tab[--pos] = 0;
            if (pos == 0) return false;
            tab[pos - 1] = static_cast<FieldElem>(tab[pos - 1] + 1);
        }
    };
    bool upfront_ok = true;
    for (int tn : ctx.check_upfront)
        if (!ctx.terminal_ok(tn)) upfront_ok = false;
    if (!upfront_ok) {
        ctx.result.tables_checked = below[0]; // decided without touching a table
        return ctx.result;
    }
    if (dfs(dfs, 0)) {
        ctx.result.feasible = true;
        for (std::size_t i = 0; i < ctx.merge_edges.size(); ++i)
            ctx.result.witness.emplace_back(ctx.merge_edges[i], tables[i]);
    }
    ctx.result.tables_checked = ctx.checked;
    return ctx.result;
}

namespace {

// rows of [[1,0,1,0],[0,1,0,1]] must lie in the row space of the 2x4 transfer
bool decodes_vector_sum(const Field& f, const Matrix& transfer) {
    Matrix aug = transfer;
    std::size_t base = mat_rank(f, aug);
    aug.append_row({1, 0, 1, 0});
    aug.append_row({0, 1, 0, 1});
    return mat_rank(f, aug) == base;
}

} // namespace

Vector2s2tResult vector_2s2t_oracle(const Field& f, bool both_terminals) {
    std::uint32_t q = f.size();
    Vector2s2tResult res;
    double combos = std::pow(static_cast<double>(q), 16);
    res.combos = static_cast<std::uint64_t>(combos);
    if (q > 5) throw VerifyError("vector oracle enumeration limited to field size <= 5");

    auto transfer = [&f](const std::array<FieldElem, 8>& M2x4, const std::array<FieldElem, 4>& A,
                         const std::array<FieldElem, 4>& B) {
        // M * blockdiag(A, B): M columns 0,1 hit A, columns 2,3 hit B
        Matrix t(2, 4);
        for (std::size_t r = 0; r < 2; ++r) {
            t.at(r, 0) = f.add(f.mul(M2x4[r * 4 + 0], A[0]), f.mul(M2x4[r * 4 + 1], A[2]));
            t.at(r, 1) = f.add(f.mul(M2x4[r * 4 + 0], A[1]), f.mul(M2x4[r * 4 + 1], A[3]));
            t.at(r, 2) = f.add(f.mul(M2x4[r * 4 + 2], B[0]), f.mul(M2x4[r * 4 + 3], B[2]));
            t.at(r, 3) = f.add(f.mul(M2x4[r * 4 + 2], B[1]), f.mul(M2x4[r * 4 + 3], B[3]));
        }
        return t;
    };

    std::array<FieldElem, 4> A{}, B{};
    auto next4 = [q](std::array<FieldElem, 4>& v) {
        std::size_t pos = 4;
        while (pos > 0 && v[pos - 1] == q - 1) v[--pos] = 0;
        if (pos == 0) return false;
        v[pos - 1] = static_cast<FieldElem>(v[pos - 1] + 1);
        return true;
    };

    do {
        do {
            // terminal 1 coefficient tuples (a1,a2,b1,b2) that decode
            std::vector<std::array<FieldElem, 4>> t1ok;
            if (both_terminals) {
                std::array<FieldElem, 4> c{};
                do {
                    std::array<FieldElem, 8> M{c[0], c[1], c[2], 0, 0, c[1], c[2], c[3]};
                    if (decodes_vector_sum(f, transfer(M, A, B))) t1ok.push_back(c);
                } while (next4(c));
                if (t1ok.empty()) continue;
            }
            std::array<FieldElem, 4> c{};
            do {
                std::array<FieldElem, 8> M{c[0], 0, c[2], 0, 0, c[1], 0, c[3]};
                if (decodes_vector_sum(f, transfer(M, A, B))) {
                    res.feasible = true;
                    if (both_terminals) {
                        const auto& t1 = t1ok.front();
                        res.coeffs = {t1[0], t1[1], t1[2], t1[3], c[0], c[1], c[2], c[3]};
                    } else {
                        res.coeffs = {0, 0, 0, 0, c[0], c[1], c[2], c[3]};
                    }
                    res.A1 = A;
                    res.B1 = B;
                    return res;
                }
            } while (next4(c));
        } while (next4(B));
    } while (next4(A));
    return res;
}

} // namespace sumcast
