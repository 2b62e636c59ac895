#include "sumcast/gen.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "sumcast/flow.hpp"
#include "sumcast/rng.hpp"

namespace sumcast::gen {

namespace {

struct FixtureBuilder {
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    Rng& rng;
    int counter = 0;
    std::array<int, 3> src{}, term{}; // node positions by index-1
    std::array<int, 3> sperm{}, tperm{}; // fixture label -> actual index

    explicit FixtureBuilder(Rng& r, bool permute) : rng(r) {
        sperm = {1, 2, 3};
        tperm = {1, 2, 3};
        if (permute) {
            for (int i = 2; i >= 1; --i) std::swap(sperm[static_cast<std::size_t>(i)], sperm[static_cast<std::size_t>(rng.range(0, i))]);
            for (int i = 2; i >= 1; --i) std::swap(tperm[static_cast<std::size_t>(i)], tperm[static_cast<std::size_t>(rng.range(0, i))]);
        }
        for (int i = 0; i < 3; ++i) {
            src[static_cast<std::size_t>(i)] = add("s" + std::to_string(i + 1), NodeRole::Source, i + 1);
            term[static_cast<std::size_t>(i)] = add("t" + std::to_string(i + 1), NodeRole::Terminal, i + 1);
        }
    }

    int add(std::string id, NodeRole role = NodeRole::Internal, int index = 0) {
        nodes.push_back(Node{std::move(id), role, index});
        return static_cast<int>(nodes.size()) - 1;
    }
    int fresh() { return add("v" + std::to_string(counter++)); }
    int s(int i) { return src[static_cast<std::size_t>(sperm[static_cast<std::size_t>(i - 1)] - 1)]; }
    int t(int j) { return term[static_cast<std::size_t>(tperm[static_cast<std::size_t>(j - 1)] - 1)]; }

    void edge(int a, int b) { edges.push_back(Edge{static_cast<int>(edges.size()), a, b, 1}); }

    // connection with 0..max_hops relay nodes in between
    void chain(int a, int b, int max_hops = 2) {
        int hops = rng.range(0, max_hops);
        int cur = a;
        for (int k = 0; k < hops; ++k) {
            int nxt = fresh();
            edge(cur, nxt);
            cur = nxt;
        }
        edge(cur, b);
    }

    void direct(int i, int j) { chain(s(i), t(j)); }
    void double_direct(int i, int j) {
        direct(i, j);
        direct(i, j);
    }

    // (2,2) region of one color: feeders from both sources merge at g, the
    // pair value fans out at h into both terminal cones
    void gadget(int sa, int sb, int tp, int tq) {
        int xa = fresh(), xb = fresh(), g = fresh(), h = fresh(), lp = fresh(), lq = fresh();
        chain(s(sa), xa, 1);
        chain(s(sb), xb, 1);
        edge(xa, g);
        edge(xb, g);
        edge(g, h);
        edge(h, lp);
        edge(h, lq);
        chain(lp, t(tp), 1);
        chain(lq, t(tq), 1);
    }

    Network build() { return Network::build(std::move(nodes), std::move(edges)); }
};

// in-tree over two merge stages: (s1, s2) -> m, (m, s3) -> v
int source_merge_tree(FixtureBuilder& fb, const std::array<int, 3>& order) {
    int a1 = fb.fresh(), a2 = fb.fresh(), a3 = fb.fresh();
    fb.chain(fb.s(order[0]), a1, 1);
    fb.chain(fb.s(order[1]), a2, 1);
    fb.chain(fb.s(order[2]), a3, 1);
    int m = fb.fresh(), v = fb.fresh();
    fb.edge(a1, m);
    fb.edge(a2, m);
    fb.edge(m, v);
    fb.edge(a3, v);
    return v;
}

// out-tree reaching the given terminals
void terminal_fan(FixtureBuilder& fb, int from, const std::vector<int>& terms) {
    if (terms.size() == 1) {
        fb.chain(from, fb.t(terms[0]), 1);
        return;
    }
    int w = fb.fresh();
    fb.edge(from, w);
    if (terms.size() == 2) {
        int b1 = fb.fresh(), b2 = fb.fresh();
        fb.edge(w, b1);
        fb.edge(w, b2);
        fb.chain(b1, fb.t(terms[0]), 1);
        fb.chain(b2, fb.t(terms[1]), 1);
        return;
    }
    int b1 = fb.fresh(), b2 = fb.fresh();
    fb.edge(w, b1);
    fb.edge(w, b2);
    fb.chain(b1, fb.t(terms[0]), 1);
    int c1 = fb.fresh(), c2 = fb.fresh();
    fb.edge(b2, c1);
    fb.edge(b2, c2);
    fb.chain(c1, fb.t(terms[1]), 1);
    fb.chain(c2, fb.t(terms[2]), 1);
}

} // namespace

const std::vector<Stratum>& all_strata() {
    static const std::vector<Stratum> strata = {
        Stratum::Case0,
        Stratum::Case1,
        Stratum::Case2,
        Stratum::Colors0,
        Stratum::Colors1,
        Stratum::Colors2SameTerminal,
        Stratum::Colors2SameSource,
        Stratum::Colors2DifferGreedy,
        Stratum::Colors2DifferRandom,
        Stratum::Colors3Deg033,
        Stratum::Colors3Deg222OneSource,
        Stratum::Colors3Deg222TwoSources,
        Stratum::Colors3Deg222ThreeSources,
        Stratum::Colors3Deg123,
        Stratum::Colors4Plus,
    };
    return strata;
}

std::string stratum_name(Stratum s) {
    switch (s) {
        case Stratum::Case0: return "case0";
        case Stratum::Case1: return "case1";
        case Stratum::Case2: return "case2";
        case Stratum::Colors0: return "colors0";
        case Stratum::Colors1: return "colors1";
        case Stratum::Colors2SameTerminal: return "colors2-same-terminal";
        case Stratum::Colors2SameSource: return "colors2-same-source";
        case Stratum::Colors2DifferGreedy: return "colors2-differ-greedy";
        case Stratum::Colors2DifferRandom: return "colors2-differ-random";
        case Stratum::Colors3Deg033: return "colors3-deg033";
        case Stratum::Colors3Deg222OneSource: return "colors3-deg222-1src";
        case Stratum::Colors3Deg222TwoSources: return "colors3-deg222-2src";
        case Stratum::Colors3Deg222ThreeSources: return "colors3-deg222-3src";
        case Stratum::Colors3Deg123: return "colors3-deg123";
        case Stratum::Colors4Plus: return "colors4plus";
    }
    return "?";
}

StratumExpectation expectation(Stratum s) {
    switch (s) {
        case Stratum::Case0: return {0, -1, "", false};
        case Stratum::Case1: return {1, -1, "", false};
        case Stratum::Case2: return {2, -1, "", false};
        case Stratum::Colors0: return {3, 0, "singleton routing", false};
        case Stratum::Colors1: return {3, 1, "one color", false};
        case Stratum::Colors2SameTerminal: return {3, 2, "same terminal label", false};
        case Stratum::Colors2SameSource: return {3, 2, "same source label", false};
        case Stratum::Colors2DifferGreedy: return {3, 2, "clear singleton", false};
        case Stratum::Colors2DifferRandom: return {3, 2, "randomized", true};
        case Stratum::Colors3Deg033: return {3, 3, "degree (0,3,3)", false};
        case Stratum::Colors3Deg222OneSource: return {3, 3, "(2,2,2), one source label", false};
        case Stratum::Colors3Deg222TwoSources: return {3, 3, "(2,2,2), two source labels", false};
        case Stratum::Colors3Deg222ThreeSources: return {3, 3, "(2,2,2), three source labels", false};
        case Stratum::Colors3Deg123: return {3, 3, "degree (1,2,3)", false};
        case Stratum::Colors4Plus: return {3, 4, "four or more", false};
    }
    return {3, -1, "", false};
}

Network fixture_3s3t(Stratum s, std::uint64_t seed) {
    Rng rng(seed * 1000003ull + static_cast<std::uint64_t>(s));
    FixtureBuilder fb(rng, true);
    switch (s) {
        case Stratum::Case0: {
            int v = source_merge_tree(fb, {1, 2, 3});
            terminal_fan(fb, v, {1, 2, 3});
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) fb.direct(i, j);
            break;
        }
        case Stratum::Case1: {
            // v collects two sources and reaches everything; the third source
            // only has direct routes
            int lone = rng.range(1, 3);
            std::array<int, 2> pair{};
            int k = 0;
            for (int i = 1; i <= 3; ++i)
                if (i != lone) pair[static_cast<std::size_t>(k++)] = i;
            int a1 = fb.fresh(), a2 = fb.fresh(), v = fb.fresh();
            fb.chain(fb.s(pair[0]), a1, 1);
            fb.chain(fb.s(pair[1]), a2, 1);
            fb.edge(a1, v);
            fb.edge(a2, v);
            terminal_fan(fb, v, {1, 2, 3});
            for (int j = 1; j <= 3; ++j) {
                fb.double_direct(lone, j);
                fb.direct(pair[0], j);
                fb.direct(pair[1], j);
            }
            break;
        }
        case Stratum::Case2: {
            int lone = rng.range(1, 3); // terminal outside v's reach
            std::array<int, 2> pair{};
            int k = 0;
            for (int j = 1; j <= 3; ++j)
                if (j != lone) pair[static_cast<std::size_t>(k++)] = j;
            int v = source_merge_tree(fb, {1, 2, 3});
            terminal_fan(fb, v, {pair[0], pair[1]});
            for (int i = 1; i <= 3; ++i) {
                fb.double_direct(i, lone);
                fb.direct(i, pair[0]);
                fb.direct(i, pair[1]);
            }
            break;
        }
        case Stratum::Colors0: {
            for (int i = 1; i <= 3; ++i) {
                int r = fb.fresh(); // a (1,2) relay, no merging anywhere
                fb.chain(fb.s(i), r, 1);
                int j1 = i, j2 = i % 3 + 1;
                int b1 = fb.fresh(), b2 = fb.fresh();
                fb.edge(r, b1);
                fb.edge(r, b2);
                fb.chain(b1, fb.t(j1), 1);
                fb.chain(b2, fb.t(j2), 1);
                for (int j = 1; j <= 3; ++j) fb.double_direct(i, j);
            }
            break;
        }
        case Stratum::Colors1: {
            fb.gadget(1, 2, 1, 2);
            fb.direct(1, 1);
            fb.direct(1, 2);
            fb.direct(2, 1);
            fb.direct(2, 2);
            fb.double_direct(1, 3);
            fb.double_direct(2, 3);
            for (int j = 1; j <= 3; ++j) fb.double_direct(3, j);
            break;
        }
        case Stratum::Colors2SameTerminal: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(2, 3, 1, 2);
            for (int i : {1, 3}) {
                fb.direct(i, 1);
                fb.direct(i, 2);
            }
            for (int i = 1; i <= 3; ++i) fb.double_direct(i, 3);
            break;
        }
        case Stratum::Colors2SameSource: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(1, 2, 2, 3);
            for (int i : {1, 2}) {
                fb.direct(i, 1);
                fb.direct(i, 3);
            }
            for (int j = 1; j <= 3; ++j) fb.double_direct(3, j);
            break;
        }
        case Stratum::Colors2DifferGreedy: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(2, 3, 2, 3);
            fb.direct(1, 1);
            fb.direct(1, 2); // the clear singleton on the disjoint paths into t2
            fb.double_direct(1, 3);
            fb.direct(2, 1);
            fb.direct(2, 3);
            fb.double_direct(3, 1);
            fb.direct(3, 2);
            fb.direct(3, 3);
            break;
        }
        case Stratum::Colors2DifferRandom: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(1, 2, 1, 2);
            fb.gadget(2, 3, 2, 3);
            fb.gadget(2, 3, 2, 3);
            fb.double_direct(1, 3);
            fb.double_direct(3, 1);
            break;
        }
        case Stratum::Colors3Deg033: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(2, 3, 1, 2);
            fb.gadget(1, 3, 1, 2);
            for (int i = 1; i <= 3; ++i) fb.double_direct(i, 3);
            break;
        }
        case Stratum::Colors3Deg222OneSource: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(1, 2, 2, 3);
            fb.gadget(1, 2, 1, 3);
            for (int j = 1; j <= 3; ++j) fb.double_direct(3, j);
            break;
        }
        case Stratum::Colors3Deg222TwoSources: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(1, 2, 2, 3);
            fb.gadget(2, 3, 1, 3);
            fb.direct(1, 1);
            fb.direct(1, 3);
            fb.direct(3, 1);
            fb.double_direct(3, 2);
            fb.direct(3, 3);
            break;
        }
        case Stratum::Colors3Deg222ThreeSources: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(2, 3, 2, 3);
            fb.gadget(1, 3, 1, 3);
            fb.direct(1, 2);
            fb.direct(1, 3);
            fb.direct(2, 1);
            fb.direct(2, 3);
            fb.direct(3, 1);
            fb.direct(3, 2);
            break;
        }
        case Stratum::Colors3Deg123: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(2, 3, 1, 2);
            fb.gadget(2, 3, 1, 3);
            fb.direct(1, 1);
            fb.direct(1, 2);
            fb.double_direct(1, 3);
            fb.direct(2, 3);
            fb.direct(3, 2);
            fb.direct(3, 3);
            break;
        }
        case Stratum::Colors4Plus: {
            fb.gadget(1, 2, 1, 2);
            fb.gadget(2, 3, 1, 2);
            fb.gadget(1, 2, 2, 3);
            fb.gadget(1, 3, 1, 3);
            fb.direct(2, 3);
            fb.direct(3, 2);
            fb.direct(3, 3);
            break;
        }
    }
    return fb.build();
}

Network mixed_3s3t(std::uint64_t seed) {
    Rng rng(seed);
    FixtureBuilder fb(rng, true);
    // a random base pattern plus extra decoration; connectivity only grows,
    // so the two-disjoint-paths requirement keeps holding
    switch (rng.range(0, 3)) {
        case 0: {
            int v = source_merge_tree(fb, {1, 2, 3});
            terminal_fan(fb, v, {1, 2, 3});
            break;
        }
        case 1: {
            int a1 = fb.fresh(), a2 = fb.fresh(), v = fb.fresh();
            fb.chain(fb.s(1), a1, 1);
            fb.chain(fb.s(2), a2, 1);
            fb.edge(a1, v);
            fb.edge(a2, v);
            terminal_fan(fb, v, {1, 2, 3});
            break;
        }
        case 2: {
            int v = source_merge_tree(fb, {1, 2, 3});
            terminal_fan(fb, v, {1, 2});
            break;
        }
        default: break;
    }
    int gadgets = rng.range(0, 3);
    for (int k = 0; k < gadgets; ++k) {
        int sa = rng.range(1, 2), sb = rng.range(sa + 1, 3);
        int tp = rng.range(1, 2), tq = rng.range(tp + 1, 3);
        fb.gadget(sa, sb, tp, tq);
    }
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) fb.double_direct(i, j);
    return fb.build();
}

Network star_3s3t(std::uint64_t seed) {
    Rng rng(seed);
    FixtureBuilder fb(rng, true);
    int hub = fb.fresh(); // degree six: needs the reduction
    for (int i = 1; i <= 3; ++i) fb.chain(fb.s(i), hub, 1);
    for (int j = 1; j <= 3; ++j) fb.chain(hub, fb.t(j), 1);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) fb.direct(i, j);
    return fb.build();
}

Network two_color_random_fixture(std::uint64_t seed) { return fixture_3s3t(Stratum::Colors2DifferRandom, seed); }

Network random_connected_dag(std::uint64_t seed, int nsources, int nterminals, int max_internal) {
    Rng rng(seed);
    std::vector<Node> nodes;
    for (int i = 1; i <= nsources; ++i) nodes.push_back(Node{"s" + std::to_string(i), NodeRole::Source, i});
    int ninternal = rng.range(3, std::max(3, max_internal));
    for (int k = 0; k < ninternal; ++k) nodes.push_back(Node{"v" + std::to_string(k), NodeRole::Internal, 0});
    for (int j = 1; j <= nterminals; ++j)
        nodes.push_back(Node{"t" + std::to_string(j), NodeRole::Terminal, j});

    auto internal_at = [&](int k) { return nsources + k; };
    auto terminal_at = [&](int j) { return nsources + ninternal + j - 1; };
    std::vector<Edge> edges;
    auto add = [&edges](int a, int b) { edges.push_back(Edge{static_cast<int>(edges.size()), a, b, 1}); };

    for (int i = 0; i < nsources; ++i) {
        int fanout = rng.range(1, 3);
        for (int c = 0; c < fanout; ++c) add(i, internal_at(rng.range(0, ninternal - 1)));
    }
    for (int a = 0; a < ninternal; ++a)
        for (int b = a + 1; b < ninternal; ++b)
            if (rng.chance(std::min(0.5, 3.0 / ninternal))) add(internal_at(a), internal_at(b));
    for (int k = 0; k < ninternal; ++k) {
        if (rng.chance(0.5)) add(internal_at(k), terminal_at(rng.range(1, nterminals)));
    }

    Network net = Network::build(nodes, edges);
    // patch any pair the random draw left unconnected
    for (int i = 1; i <= nsources; ++i)
        for (int j = 1; j <= nterminals; ++j) {
            if (max_flow(net, net.source_node(i), net.terminal_node(j)) >= 1) continue;
            int w = internal_at(rng.range(0, ninternal - 1));
            add(i - 1, w);
            add(w, terminal_at(j));
            net = Network::build(nodes, edges);
        }
    return net;
}

Network random_messy_network(std::uint64_t seed, int nsources, int nterminals) {
    Rng rng(seed);
    std::vector<Node> nodes;
    // a few pre-source and post-terminal relays so normalization has virtual
    // nodes to insert
    int npre = rng.range(0, 2), npost = rng.range(0, 2);
    for (int k = 0; k < npre; ++k) nodes.push_back(Node{"p" + std::to_string(k), NodeRole::Internal, 0});
    for (int i = 1; i <= nsources; ++i) nodes.push_back(Node{"s" + std::to_string(i), NodeRole::Source, i});
    int ninternal = rng.range(4, 10);
    for (int k = 0; k < ninternal; ++k) nodes.push_back(Node{"v" + std::to_string(k), NodeRole::Internal, 0});
    for (int j = 1; j <= nterminals; ++j) nodes.push_back(Node{"t" + std::to_string(j), NodeRole::Terminal, j});
    for (int k = 0; k < npost; ++k) nodes.push_back(Node{"q" + std::to_string(k), NodeRole::Internal, 0});

    int total = static_cast<int>(nodes.size());
    std::vector<Edge> edges;
    auto add = [&](int a, int b, int cap) { edges.push_back(Edge{static_cast<int>(edges.size()), a, b, cap}); };
    // edges respect the declaration order, so the graph stays acyclic
    for (int a = 0; a < total; ++a)
        for (int b = a + 1; b < total; ++b) {
            if (nodes[static_cast<std::size_t>(b)].role == NodeRole::Source && a >= npre) continue;
            if (nodes[static_cast<std::size_t>(a)].role == NodeRole::Terminal &&
                b < total - npost)
                continue;
            if (rng.chance(0.28)) add(a, b, rng.chance(0.25) ? rng.range(2, 3) : 1);
        }

    Network net = Network::build(nodes, edges);
    for (int i = 1; i <= nsources; ++i)
        for (int j = 1; j <= nterminals; ++j) {
            if (max_flow(net, net.source_node(i), net.terminal_node(j)) >= 1) continue;
            add(net.source_node(i), net.terminal_node(j), 1);
            net = Network::build(nodes, edges);
        }
    return net;
}

} // namespace sumcast::gen
