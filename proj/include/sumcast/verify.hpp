#ifndef SUMCAST_VERIFY_HPP
#define SUMCAST_VERIFY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumcast/code.hpp"
#include "sumcast/matrix.hpp"
#include "sumcast/network.hpp"

namespace sumcast {

struct VerifyError : std::runtime_error {
    explicit VerifyError(const std::string& msg) : std::runtime_error(msg) {}
};

// Global coding vectors: beta[e][i] expresses edge e's symbol in terms of
// source X_{i+1}.  Single topological sweep of the linear recurrence.
std::vector<std::vector<FieldElem>> propagate(const Network& net, const Field& f, const CodeAssignment& code);

struct TerminalReport {
    int terminal = 0;   // 1-based index
    int node = 0;       // node position
    bool decodable = false;
    std::vector<std::pair<int, FieldElem>> decode_coeffs; // (in-edge id, coefficient)
    std::size_t rank = 0, rank_aug = 0; // failure witness: rank deficit
};

struct VerificationReport {
    FieldSpec field;
    bool all_decodable = false;
    std::vector<TerminalReport> terminals;
};

// Sum-decodability: the all-ones vector lies in the span of each terminal's
// incoming coding vectors.
VerificationReport check_sum_decodable(const Network& net, const Field& f, const CodeAssignment& code);

std::string report_to_json(const VerificationReport& rep);

// Does the pair (X1+X2, X2+X3) determine X1+X2+X3 over this field?
// Decided by exhaustive enumeration; returns the first colliding input pair.
struct FunctionalityResult {
    bool functional = true;
    std::array<std::vector<FieldElem>, 2> colliding_inputs;
    std::array<FieldElem, 2> sums{};
};
FunctionalityResult sum_functionality_oracle(const Field& f);

// Brute-force feasibility over ALL (including nonlinear) per-edge function
// tables respecting the topology.  Single-input edges are fixed to the
// identity (feasibility-preserving canonicalization); only tables on edges
// whose tail merges two or more inputs are enumerated.
struct CodeSearchResult {
    bool feasible = false;
    std::uint64_t tables_checked = 0;
    // witness for feasible instances: per enumerated edge, its output column
    std::vector<std::pair<int, std::vector<FieldElem>>> witness;
};
CodeSearchResult exhaustive_code_search(const Network& net, const Field& f, double budget = 1e8);

// Vector (block length 2) sum multicast for two sources and two terminals in
// the fixed transfer-matrix parametrization; exhaustive over all coefficient
// tuples and mixing matrices.
struct Vector2s2tResult {
    bool feasible = false;
    std::uint64_t combos = 0; // size of the decided assignment space
    std::array<FieldElem, 8> coeffs{}; // a1,a2,b1,b2,a1',a2',b1',b2' if feasible
    std::array<FieldElem, 4> A1{}, B1{};
};
Vector2s2tResult vector_2s2t_oracle(const Field& f, bool both_terminals = true);

} // namespace sumcast

#endif
