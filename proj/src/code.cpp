#include "sumcast/code.hpp"

#include <json.hpp>

namespace sumcast {

using nlohmann::json;

std::string code_to_json(const CodeAssignment& code) {
    json j;
    j["field"] = code.field.str();
    j["edges"] = json::array();
    for (std::size_t e = 0; e < code.local.size(); ++e) {
        if (code.local[e].empty()) continue;
        json inputs = json::array();
        for (const LocalCoeff& lc : code.local[e]) {
            json in;
            in[lc.input.is_source ? "source" : "edge"] = lc.input.id;
            in["coeff"] = lc.coeff;
            inputs.push_back(std::move(in));
        }
        j["edges"].push_back(json{{"edge", e}, {"inputs", std::move(inputs)}});
    }
    return j.dump(2);
}

CodeAssignment code_from_json(const std::string& text, const Network& net) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw NetworkError(std::string("invalid code JSON: ") + e.what());
    }
    CodeAssignment code(FieldSpec::parse(j.at("field").get<std::string>()), net.edge_count());
    for (const auto& je : j.at("edges")) {
        int eid = je.at("edge").get<int>();
        if (eid < 0 || eid >= net.edge_count()) throw NetworkError("code references unknown edge " + std::to_string(eid));
        for (const auto& ji : je.at("inputs")) {
            FieldElem c = ji.at("coeff").get<FieldElem>();
            if (ji.contains("edge"))
                code.add(eid, InputRef::edge(ji.at("edge").get<int>()), c);
            else
                code.add(eid, InputRef::source(ji.at("source").get<int>()), c);
        }
    }
    return code;
}

} // namespace sumcast
