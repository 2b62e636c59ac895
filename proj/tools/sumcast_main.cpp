// Command-line front end: check connectivity hypotheses, transform and
// decompose networks, assign and verify sum-multicast codes, run the
// impossibility demos and the randomized self-test suites.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumcast/codegen.hpp"
#include "sumcast/decompose.hpp"
#include "sumcast/demo.hpp"
#include "sumcast/flow.hpp"
#include "sumcast/gen.hpp"
#include "sumcast/selftest.hpp"
#include "sumcast/transform.hpp"
#include "sumcast/verify.hpp"

using nlohmann::json;
using namespace sumcast;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NetworkError("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text << std::endl;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw NetworkError("cannot write \"" + out_path + "\"");
    out << text << std::endl;
}

json flow_table(const Network& net) {
    json pairs = json::array();
    int min_edge = -1;
    for (int i = 1; i <= net.source_count(); ++i)
        for (int j = 1; j <= net.terminal_count(); ++j) {
            int f = max_flow(net, net.source_node(i), net.terminal_node(j));
            int vf = vertex_max_flow(net, net.source_node(i), net.terminal_node(j));
            pairs.push_back(json{{"source", i}, {"terminal", j}, {"maxFlow", f}, {"vertexDisjoint", vf}});
            min_edge = min_edge < 0 ? f : std::min(min_edge, f);
        }
    json out;
    out["pairs"] = std::move(pairs);
    out["minMaxFlow"] = min_edge;
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"network codes that multicast the sum of sources"};
    app.require_subcommand(1);
    app.fallthrough(); // --field/--seed/--retries may follow the subcommand

    std::string input, output, field_spec = "prime:3", strategy = "auto";
    std::uint64_t seed = 0;
    int retries = 32;
    app.add_option("--field", field_spec, "field spec, e.g. prime:3 or gf2m:8")->capture_default_str();
    app.add_option("--seed", seed, "seed for all randomized choices")->capture_default_str();
    app.add_option("--retries", retries, "resampling budget of the randomized branch")->capture_default_str();

    auto* check = app.add_subcommand("check", "per-pair max-flow table and which hypotheses hold");
    check->add_option("--input", input)->required();
    check->add_option("--output", output);

    auto* transform = app.add_subcommand("transform", "reduce internal degrees to at most three");
    transform->add_option("--input", input)->required();
    transform->add_option("--output", output);
    std::string map_output;
    transform->add_option("--map-output", map_output, "where to write the edge/gadget maps");

    auto* decomp = app.add_subcommand("decompose", "labels, edge classes, leaf sets, colors");
    decomp->add_option("--input", input)->required();
    decomp->add_option("--output", output);

    auto* assign = app.add_subcommand("assign", "construct a verified code assignment");
    assign->add_option("--input", input)->required();
    assign->add_option("--output", output);
    assign->add_option("--strategy", strategy, "auto | greedy2s | ns2t | 3s3t")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "check sum-decodability of a code");
    verify->add_option("--input", input)->required();
    std::string code_path;
    verify->add_option("--code", code_path, "code assignment JSON")->required();
    verify->add_option("--output", output);

    auto* demo = app.add_subcommand("demo", "reproduce the impossibility arguments");
    std::string which;
    demo->add_option("name", which, "counterexample-3s3t | vector-2s2t")->required();
    demo->add_option("--output", output);

    auto* selftest = app.add_subcommand("selftest", "run the randomized instance-family suites");

    CLI11_PARSE(app, argc, argv);

    try {
        Field field{FieldSpec::parse(field_spec)};

        if (*check) {
            Network net = parse_network(slurp(input));
            Normalization norm = normalize(net);
            json out = flow_table(norm.net);
            int n = norm.net.source_count(), m = norm.net.terminal_count();
            bool unit = out["minMaxFlow"].get<int>() >= 1;
            out["sources"] = n;
            out["terminals"] = m;
            out["unitConnectivity"] = unit;
            bool two_disjoint = true;
            for (const auto& p : out["pairs"]) two_disjoint = two_disjoint && p["maxFlow"].get<int>() >= 2;
            out["twoEdgeDisjoint"] = two_disjoint;
            if (n == 2 || m == 2)
                out["sufficient"] = unit;
            else if (n == 3 && m == 3)
                out["sufficient"] = two_disjoint;
            else
                out["sufficient"] = nullptr;
            emit(output, out.dump(2));
        } else if (*transform) {
            Network net = parse_network(slurp(input));
            Normalization norm = normalize(net);
            StructuredReduction red = reduce_degrees(norm.net);
            emit(output, network_to_json(red.reduced));
            if (!map_output.empty()) emit(map_output, reduction_maps_to_json(red));
        } else if (*decomp) {
            Network net = parse_network(slurp(input));
            Normalization norm = normalize(net);
            DecompositionReport rep = decompose(norm.net);
            emit(output, decomposition_to_json(norm.net, rep));
        } else if (*assign) {
            Network raw = parse_network(slurp(input));
            Normalization norm = normalize(raw);
            const Network& net = norm.net;
            int n = net.source_count(), m = net.terminal_count();
            json out;
            CodeAssignment code(field.spec(), 0);
            if (strategy == "auto")
                strategy = n == 2 ? "greedy2s" : m == 2 ? "ns2t" : n == 3 && m == 3 ? "3s3t" : "";
            if (strategy == "greedy2s") {
                code = assign_greedy_2s(net, field);
            } else if (strategy == "ns2t") {
                code = assign_ns_2t(net, field);
            } else if (strategy == "3s3t") {
                StructuredReduction red = reduce_degrees(net);
                Assign3s3tResult res = assign_3s_3t(red.reduced, field, seed, retries);
                code = lift_code(red, field, res.code);
                out["dispatch"] = json{{"case", res.dispatch.case_id},
                                       {"branch", res.dispatch.branch},
                                       {"retries", res.dispatch.retries_used}};
                if (res.dispatch.case_id == 3) {
                    out["dispatch"]["colors"] = res.dispatch.color_count;
                    out["dispatch"]["auxDegreeSequence"] = res.dispatch.degree_sequence;
                }
            } else {
                json err{{"error", {{"kind", "unsupported"},
                                    {"message", "no constructive characterization for " + std::to_string(n) +
                                                    " sources and " + std::to_string(m) + " terminals"}}}};
                std::cerr << err.dump(2) << std::endl;
                return 2;
            }
            VerificationReport rep = check_sum_decodable(net, field, code);
            if (!rep.all_decodable) throw CodegenError("generated code failed verification");
            out["code"] = json::parse(code_to_json(code));
            out["verification"] = json::parse(report_to_json(rep));
            out["normalizedNetwork"] = json::parse(network_to_json(net));
            emit(output, out.dump(2));
        } else if (*verify) {
            Network net = parse_network(slurp(input));
            CodeAssignment code = code_from_json(slurp(code_path), net);
            Field code_field{code.field};
            VerificationReport rep = check_sum_decodable(net, code_field, code);
            emit(output, report_to_json(rep));
            return rep.all_decodable ? 0 : 1;
        } else if (*demo) {
            json out;
            if (which == "counterexample-3s3t") {
                Network net = counterexample_3s3t();
                FunctionalityResult fr = sum_functionality_oracle(field);
                out["network"] = json::parse(network_to_json(net));
                out["flows"] = flow_table(net);
                out["pairSumsDetermineTotal"] = fr.functional;
                if (!fr.functional) {
                    out["collidingInputs"] = json::array({fr.colliding_inputs[0], fr.colliding_inputs[1]});
                    out["collidingSums"] = json::array({fr.sums[0], fr.sums[1]});
                }
                try {
                    CodeSearchResult sr = exhaustive_code_search(net, field);
                    out["exhaustiveSearch"] =
                        json{{"feasible", sr.feasible}, {"tablesChecked", sr.tables_checked}};
                    out["conclusion"] = sr.feasible ? "a code exists"
                                                    : "no code of any kind computes the sum at every terminal";
                } catch (const VerifyError& e) {
                    out["exhaustiveSearch"] = json{{"skipped", e.what()}};
                    out["conclusion"] = "pair sums cannot determine the total; the nonlinear search needs a smaller field";
                }
            } else if (which == "vector-2s2t") {
                Vector2s2tResult both = vector_2s2t_oracle(field, true);
                Vector2s2tResult relaxed = vector_2s2t_oracle(field, false);
                out["bothTerminals"] = json{{"feasible", both.feasible}, {"combosDecided", both.combos}};
                out["singleTerminal"] = json{{"feasible", relaxed.feasible}};
                if (relaxed.feasible) {
                    out["singleTerminal"]["coeffs"] = relaxed.coeffs;
                    out["singleTerminal"]["A1"] = relaxed.A1;
                    out["singleTerminal"]["B1"] = relaxed.B1;
                }
                out["conclusion"] = both.feasible
                                        ? "a linear vector code serves both terminals"
                                        : "no linear vector code serves both terminals";
            } else {
                throw NetworkError("unknown demo \"" + which + "\"");
            }
            emit(output, out.dump(2));
        } else if (*selftest) {
            auto results = run_selftests(seed);
            bool all = true;
            for (const SuiteResult& r : results) {
                std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.passed << "/" << r.total
                          << " (" << r.seconds << " s)";
                if (!r.ok()) std::cout << " first failure: " << r.detail;
                std::cout << std::endl;
                all = all && r.ok();
            }
            return all ? 0 : 1;
        }
    } catch (const std::exception& e) {
        const char* kind = "failure";
        if (dynamic_cast<const NetworkError*>(&e))
            kind = "network";
        else if (dynamic_cast<const FieldError*>(&e))
            kind = "field";
        else if (dynamic_cast<const DispatchError*>(&e))
            kind = "dispatch";
        else if (dynamic_cast<const CodegenError*>(&e))
            kind = "codegen";
        else if (dynamic_cast<const VerifyError*>(&e))
            kind = "verify";
        json err{{"error", {{"kind", kind}, {"message", e.what()}}}};
        std::cerr << err.dump(2) << std::endl;
        return 1;
    }
    return 0;
}
