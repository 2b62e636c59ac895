#ifndef SUMCAST_CODE_HPP
#define SUMCAST_CODE_HPP

#include <string>
#include <vector>

#include "sumcast/field.hpp"
#include "sumcast/network.hpp"

namespace sumcast {

// Reference to one input of an edge's tail: either another edge entering the
// tail, or the source observed there.
struct InputRef {
    bool is_source = false;
    int id = 0; // edge id, or 1-based source index

    static InputRef edge(int eid) { return InputRef{false, eid}; }
    static InputRef source(int idx) { return InputRef{true, idx}; }
    bool operator==(const InputRef&) const = default;
};

struct LocalCoeff {
    InputRef input;
    FieldElem coeff = 0;
};

// Per-edge local encoding coefficients.  Edges without an entry carry the
// zero assignment.
struct CodeAssignment {
    FieldSpec field;
    std::vector<std::vector<LocalCoeff>> local; // indexed by edge id

    explicit CodeAssignment(FieldSpec fs = FieldSpec::prime(3), int edge_count = 0)
        : field(fs), local(static_cast<std::size_t>(edge_count)) {}

    void set(int edge_id, std::vector<LocalCoeff> coeffs) { local[static_cast<std::size_t>(edge_id)] = std::move(coeffs); }
    void add(int edge_id, InputRef in, FieldElem c) { local[static_cast<std::size_t>(edge_id)].push_back({in, c}); }
};

std::string code_to_json(const CodeAssignment& code);
CodeAssignment code_from_json(const std::string& text, const Network& net);

} // namespace sumcast

#endif
