#ifndef SUMCAST_DECOMPOSE_HPP
#define SUMCAST_DECOMPOSE_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sumcast/network.hpp"

namespace sumcast {

struct DispatchError : std::runtime_error {
    explicit DispatchError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NodeLabel {
    int cs = 0; // sources upstream
    int ct = 0; // terminals downstream
};

struct EdgeClass {
    bool terminal_edge = false;
    int terminal = 0; // 1-based, valid for terminal edges
};

// Color of a (2,2) node: the unordered source pair and terminal pair it is
// connected to, stored sorted by index.
struct Color {
    std::array<int, 2> sources{};
    std::array<int, 2> terminals{};
    auto operator<=>(const Color&) const = default;
};

std::vector<NodeLabel> label_nodes(const Network& net, const ReachSets& rs);
std::vector<NodeLabel> label_nodes(const Network& net);

// Terminal edges point at (.,1) nodes; everything else is an r-edge.  Also
// asserts the head of every r-edge is of type (.,2) or (.,3).
std::vector<EdgeClass> classify_edges(const Network& net, const std::vector<NodeLabel>& labels,
                                      const ReachSets& rs);

// Leaf set of each terminal: the in-degree-0 nodes of its terminal-edge
// subgraph.
std::vector<std::vector<int>> leaf_sets(const Network& net, const std::vector<EdgeClass>& classes);

// Colors of the (2,2) nodes; requires a case-3 graph (no (3,3), (2,3) or
// (3,2) nodes) and checks that no edge joins different colors.
std::map<int, Color> color_nodes(const Network& net, const std::vector<NodeLabel>& labels, const ReachSets& rs);

struct AuxGraph {
    std::vector<Color> colors;                 // distinct colors, sorted
    std::vector<std::array<int, 2>> incident;  // per color: its two terminals
    std::vector<int> terminal_degree;          // per terminal index-1
    std::vector<int> degree_sequence;          // terminal degrees, ascending
};

AuxGraph build_aux(const Network& net, const std::map<int, Color>& colors);

struct DecompositionReport {
    ReachSets reach;
    std::vector<NodeLabel> labels;
    std::vector<EdgeClass> edge_classes;
    std::vector<std::vector<int>> leaves; // per terminal index-1
    bool case3 = false;                   // colors defined only in case 3
    std::map<int, Color> colors;
    AuxGraph aux;
};

DecompositionReport decompose(const Network& net);
std::string decomposition_to_json(const Network& net, const DecompositionReport& rep);

// Structural checks the decomposition relies on: no path from a terminal
// edge back to an r-edge, terminal cones connected and rooted at their
// terminal, leaf labels, color separation, per-color leaf existence.
// Throws on violation.
void validate_decomposition(const Network& net, const DecompositionReport& rep);

// Relabeling of source/terminal indices that puts a two-color instance in
// canonical position: shared source -> 2, first color's exclusive source -> 1,
// shared terminal -> 2, first color's exclusive terminal -> 1.
struct TwoColorFrame {
    std::array<int, 3> src_to_canonical{};  // [orig index-1] -> canonical index
    std::array<int, 3> term_to_canonical{};
    std::array<int, 3> src_from_canonical{}; // [canonical index-1] -> orig index
    std::array<int, 3> term_from_canonical{};
};
TwoColorFrame two_color_frame(const Color& c1, const Color& c2);

} // namespace sumcast

#endif
