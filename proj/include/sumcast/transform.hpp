#ifndef SUMCAST_TRANSFORM_HPP
#define SUMCAST_TRANSFORM_HPP

#include <map>
#include <vector>

#include "sumcast/code.hpp"
#include "sumcast/network.hpp"

namespace sumcast {

// Reduction of a normalized network to a structured one where every internal
// node has total degree at most three.  Each high-degree internal node v is
// replaced by a gadget: per incoming link a fan-out binary tree, per outgoing
// link an inverted binary tree, and a cross edge for every (in, out) pair, so
// each input/output pairing of v keeps a private path through the gadget.
struct StructuredReduction {
    Network original;
    Network reduced;
    // original edge id -> the corresponding boundary edge in the reduced
    // network (empty when the edge was dropped with a dead-end node)
    std::vector<std::vector<int>> edge_map;
    // replaced original node -> all gadget node positions in the reduced net
    std::map<int, std::vector<int>> gadget_map;
    // original node -> reduced node position, -1 for replaced nodes
    std::vector<int> node_map;
};

StructuredReduction reduce_degrees(const Network& normalized);

// Back-maps a feasible linear code on the reduced network to the original:
// each original edge takes the composite map its boundary edge implements
// over the gadget's inputs.  Throws when the input code is not feasible.
CodeAssignment lift_code(const StructuredReduction& red, const Field& f, const CodeAssignment& reduced_code);

std::string reduction_maps_to_json(const StructuredReduction& red);

} // namespace sumcast

#endif
