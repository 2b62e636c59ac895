#include "sumcast/selftest.hpp"

#include <chrono>
#include <sstream>

#include "sumcast/codegen.hpp"
#include "sumcast/flow.hpp"
#include "sumcast/gen.hpp"
#include "sumcast/rng.hpp"
#include "sumcast/transform.hpp"
#include "sumcast/verify.hpp"

namespace sumcast {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string describe(const std::exception& e, std::uint64_t seed) {
    std::ostringstream os;
    os << "seed " << seed << ": " << e.what();
    return os.str();
}

} // namespace

SuiteResult suite_greedy_2s(std::uint64_t seed, int instances) {
    SuiteResult res;
    res.name = "greedy two-source multicast";
    res.total = instances;
    Timer timer;
    Field f3(FieldSpec::prime(3));
    for (int k = 0; k < instances; ++k) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        try {
            Rng rng(s);
            Network net = gen::random_connected_dag(s, 2, rng.range(2, 4), 34);
            CodeAssignment code = assign_greedy_2s(net, f3);
            auto beta = propagate(net, f3, code);
            for (const auto& b : beta)
                for (FieldElem x : b)
                    if (x > 1) throw CodegenError("greedy coding vector left {0,1}");
            VerificationReport rep = check_sum_decodable(net, f3, code);
            if (!rep.all_decodable) throw CodegenError("terminal failed to decode");
            ++res.passed;
        } catch (const std::exception& e) {
            if (res.detail.empty()) res.detail = describe(e, s);
        }
    }
    res.seconds = timer.elapsed();
    return res;
}

SuiteResult suite_one_path_2t(std::uint64_t seed, int instances) {
    SuiteResult res;
    res.name = "one-path extraction, two terminals";
    res.total = instances;
    Timer timer;
    Field f3(FieldSpec::prime(3));
    for (int k = 0; k < instances; ++k) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        try {
            Rng rng(s);
            int nsrc = rng.range(3, 5);
            Network net = gen::random_connected_dag(s, nsrc, 2, 24);
            OnePathSubgraph sub = extract_one_path_subgraph(net);
            Subnetwork chosen = subnetwork(sub.gprime, sub.in_subgraph);
            for (int i = 1; i <= nsrc; ++i)
                for (int j = 1; j <= 2; ++j)
                    if (path_count(chosen.net, sub.virtual_source[static_cast<std::size_t>(i - 1)],
                                   sub.virtual_terminal[static_cast<std::size_t>(j - 1)]) != 1)
                        throw CodegenError("pair without exactly one path");
            // minimality: dropping any chosen edge severs some pair
            for (int drop = 0; drop < chosen.net.edge_count(); ++drop) {
                std::vector<char> keep(static_cast<std::size_t>(chosen.net.edge_count()), 1);
                keep[static_cast<std::size_t>(drop)] = 0;
                Subnetwork smaller = subnetwork(chosen.net, keep);
                bool broke = false;
                for (int i = 1; i <= nsrc && !broke; ++i)
                    for (int j = 1; j <= 2 && !broke; ++j)
                        broke = max_flow(smaller.net, sub.virtual_source[static_cast<std::size_t>(i - 1)],
                                         sub.virtual_terminal[static_cast<std::size_t>(j - 1)]) < 1;
                if (!broke) throw CodegenError("subgraph not minimal");
            }
            CodeAssignment code = assign_ns_2t(net, f3, sub);
            VerificationReport rep = check_sum_decodable(net, f3, code);
            if (!rep.all_decodable) throw CodegenError("terminal failed to decode");
            ++res.passed;
        } catch (const std::exception& e) {
            if (res.detail.empty()) res.detail = describe(e, s);
        }
    }
    res.seconds = timer.elapsed();
    return res;
}

SuiteResult suite_3s3t(std::uint64_t seed, int instances) {
    SuiteResult res;
    res.name = "structured 3s/3t case analysis";
    res.total = instances;
    Timer timer;
    Field f3(FieldSpec::prime(3));
    Field f256(FieldSpec::gf2m(8));
    const auto& strata = gen::all_strata();
    for (int k = 0; k < instances; ++k) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        gen::Stratum st = strata[static_cast<std::size_t>(k) % strata.size()];
        try {
            Network net = gen::fixture_3s3t(st, s);
            gen::StratumExpectation exp = gen::expectation(st);
            const Field& f = exp.needs_big_field ? f256 : f3;
            Assign3s3tResult out = assign_3s_3t(net, f, s);
            if (out.dispatch.case_id != exp.case_id) throw CodegenError("dispatched to the wrong case");
            if (exp.case_id == 3) {
                int cc = out.dispatch.color_count;
                bool cc_ok = exp.color_count == 4 ? cc >= 4 : cc == exp.color_count;
                if (!cc_ok) throw CodegenError("unexpected color count " + std::to_string(cc));
                if (out.dispatch.branch.find(exp.branch_fragment) == std::string::npos)
                    throw CodegenError("unexpected branch: " + out.dispatch.branch);
            }
            VerificationReport rep = check_sum_decodable(net, f, out.code);
            if (!rep.all_decodable) throw CodegenError("terminal failed to decode");
            ++res.passed;
        } catch (const std::exception& e) {
            if (res.detail.empty()) res.detail = gen::stratum_name(st) + ", " + describe(e, s);
        }
    }
    res.seconds = timer.elapsed();
    return res;
}

SuiteResult suite_transform(std::uint64_t seed, int instances) {
    SuiteResult res;
    res.name = "degree reduction round trip";
    res.total = instances;
    Timer timer;
    Field f3(FieldSpec::prime(3));
    for (int k = 0; k < instances; ++k) {
        std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        bool star = k % 5 == 4; // every fifth instance is a 3s/3t star
        try {
            Network raw = star ? gen::star_3s3t(s) : gen::random_messy_network(s, 2, 2 + static_cast<int>(s % 3));
            Normalization norm = normalize(raw);
            StructuredReduction red = reduce_degrees(norm.net);
            for (int v = 0; v < red.reduced.node_count(); ++v) {
                if (red.reduced.node(v).role != NodeRole::Internal) continue;
                if (red.reduced.in_edges(v).size() + red.reduced.out_edges(v).size() > 3)
                    throw CodegenError("internal degree above three after reduction");
            }
            if (red.reduced.source_count() != norm.net.source_count() ||
                red.reduced.terminal_count() != norm.net.terminal_count())
                throw CodegenError("sources or terminals lost in the reduction");
            for (int i = 1; i <= norm.net.source_count(); ++i)
                for (int j = 1; j <= norm.net.terminal_count(); ++j) {
                    int f_orig = max_flow(norm.net, norm.net.source_node(i), norm.net.terminal_node(j));
                    int f_red = vertex_max_flow(red.reduced, red.reduced.source_node(i),
                                                red.reduced.terminal_node(j));
                    if (f_red < std::min(f_orig, 2)) throw CodegenError("flow correspondence violated");
                }
            CodeAssignment reduced_code =
                star ? assign_3s_3t(red.reduced, f3, s).code : assign_greedy_2s(red.reduced, f3);
            if (!check_sum_decodable(red.reduced, f3, reduced_code).all_decodable)
                throw CodegenError("code on the reduced network failed");
            CodeAssignment lifted = lift_code(red, f3, reduced_code);
            if (!check_sum_decodable(norm.net, f3, lifted).all_decodable)
                throw CodegenError("lifted code failed on the original");
            ++res.passed;
        } catch (const std::exception& e) {
            if (res.detail.empty()) res.detail = describe(e, s);
        }
    }
    res.seconds = timer.elapsed();
    return res;
}

std::vector<SuiteResult> run_selftests(std::uint64_t seed) {
    return {suite_greedy_2s(seed), suite_one_path_2t(seed ^ 0x9e3779b9ull, 100),
            suite_3s3t(seed ^ 0x51ed2701ull, 100), suite_transform(seed ^ 0xabcde123ull, 50)};
}

} // namespace sumcast
