// Python bindings: the main operations, JSON strings in and out so the
// python side stays a thin wrapper.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "sumcast/codegen.hpp"
#include "sumcast/decompose.hpp"
#include "sumcast/demo.hpp"
#include "sumcast/flow.hpp"
#include "sumcast/gen.hpp"
#include "sumcast/transform.hpp"
#include "sumcast/verify.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace sumcast;

namespace {

Network net_of(const std::string& text) { return parse_network(text); }

int node_pos(const Network& net, const std::string& id) {
    int v = net.find_node(id);
    if (v < 0) throw NetworkError("unknown node \"" + id + "\"");
    return v;
}

} // namespace

PYBIND11_MODULE(_sumcast, m) {
    m.doc() = "network codes for multicasting the sum of sources";

    m.def("normalize_json", [](const std::string& text) { return network_to_json(normalize(net_of(text)).net); });

    m.def("max_flow", [](const std::string& text, const std::string& s, const std::string& t) {
        Network net = net_of(text);
        return max_flow(net, node_pos(net, s), node_pos(net, t));
    });
    m.def("vertex_max_flow", [](const std::string& text, const std::string& s, const std::string& t) {
        Network net = net_of(text);
        return vertex_max_flow(net, node_pos(net, s), node_pos(net, t));
    });
    m.def("path_count", [](const std::string& text, const std::string& u, const std::string& v) {
        Network net = net_of(text);
        return path_count(net, node_pos(net, u), node_pos(net, v));
    });
    m.def("disjoint_paths",
          [](const std::string& text, const std::string& s, const std::string& t, int k, const std::string& mode) {
              Network net = net_of(text);
              PathSet ps = disjoint_paths(net, node_pos(net, s), node_pos(net, t), k,
                                          mode == "vertex" ? DisjointMode::Vertex : DisjointMode::Edge);
              return ps.paths;
          });

    m.def("reduce_degrees_json", [](const std::string& text) {
        StructuredReduction red = reduce_degrees(normalize(net_of(text)).net);
        json out{{"reduced", json::parse(network_to_json(red.reduced))},
                 {"maps", json::parse(reduction_maps_to_json(red))}};
        return out.dump();
    });

    m.def("decompose_json", [](const std::string& text) {
        Network net = normalize(net_of(text)).net;
        return decomposition_to_json(net, decompose(net));
    });

    m.def(
        "assign_json",
        [](const std::string& text, const std::string& strategy, const std::string& field_spec, std::uint64_t seed,
           int retries) {
            Network net = normalize(net_of(text)).net;
            Field field{FieldSpec::parse(field_spec)};
            json out;
            CodeAssignment code(field.spec(), 0);
            std::string how = strategy;
            if (how == "auto")
                how = net.source_count() == 2                                ? "greedy2s"
                      : net.terminal_count() == 2                            ? "ns2t"
                      : net.source_count() == 3 && net.terminal_count() == 3 ? "3s3t"
                                                                             : "";
            if (how == "greedy2s") {
                code = assign_greedy_2s(net, field);
            } else if (how == "ns2t") {
                code = assign_ns_2t(net, field);
            } else if (how == "3s3t") {
                StructuredReduction red = reduce_degrees(net);
                Assign3s3tResult res = assign_3s_3t(red.reduced, field, seed, retries);
                code = lift_code(red, field, res.code);
                out["dispatch"] = json{{"case", res.dispatch.case_id}, {"branch", res.dispatch.branch}};
            } else {
                throw CodegenError("unsupported source/terminal regime");
            }
            VerificationReport rep = check_sum_decodable(net, field, code);
            if (!rep.all_decodable) throw CodegenError("generated code failed verification");
            out["code"] = json::parse(code_to_json(code));
            out["verification"] = json::parse(report_to_json(rep));
            out["normalizedNetwork"] = json::parse(network_to_json(net));
            return out.dump();
        },
        py::arg("network"), py::arg("strategy") = "auto", py::arg("field") = "prime:3", py::arg("seed") = 0,
        py::arg("retries") = 32);

    m.def("verify_json", [](const std::string& net_text, const std::string& code_text) {
        Network net = net_of(net_text);
        CodeAssignment code = code_from_json(code_text, net);
        Field field{code.field};
        return report_to_json(check_sum_decodable(net, field, code));
    });

    m.def("sum_functionality", [](const std::string& field_spec) {
        Field field{FieldSpec::parse(field_spec)};
        FunctionalityResult fr = sum_functionality_oracle(field);
        json out{{"functional", fr.functional}};
        if (!fr.functional) {
            out["collidingInputs"] = json::array({fr.colliding_inputs[0], fr.colliding_inputs[1]});
            out["collidingSums"] = json::array({fr.sums[0], fr.sums[1]});
        }
        return out.dump();
    });
    m.def("exhaustive_code_search", [](const std::string& net_text, const std::string& field_spec) {
        Field field{FieldSpec::parse(field_spec)};
        CodeSearchResult sr = exhaustive_code_search(net_of(net_text), field);
        return json{{"feasible", sr.feasible}, {"tablesChecked", sr.tables_checked}}.dump();
    });
    m.def("vector_2s2t", [](const std::string& field_spec, bool both) {
        Field field{FieldSpec::parse(field_spec)};
        Vector2s2tResult r = vector_2s2t_oracle(field, both);
        return json{{"feasible", r.feasible}, {"combosDecided", r.combos}}.dump();
    });

    m.def("counterexample_3s3t_json", [] { return std::string(counterexample_3s3t_json()); });
    m.def("random_connected_dag_json", [](std::uint64_t seed, int nsrc, int nterm, int max_internal) {
        return network_to_json(gen::random_connected_dag(seed, nsrc, nterm, max_internal));
    });
}
