#ifndef SUMCAST_CODEGEN_HPP
#define SUMCAST_CODEGEN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sumcast/code.hpp"
#include "sumcast/decompose.hpp"
#include "sumcast/field.hpp"
#include "sumcast/network.hpp"

namespace sumcast {

struct CodegenError : std::runtime_error {
    explicit CodegenError(const std::string& msg) : std::runtime_error(msg) {}
};

// Greedy encoding for two sources: every coding vector keeps {0,1} entries,
// coordinate i is 1 exactly when some input already carries source i.
// Requires max-flow(s_i, t_j) >= 1 for every pair.
CodeAssignment assign_greedy_2s(const Network& net, const Field& f);

// Subgraph of the ns/2t network (augmented with virtual sources s_i' and
// virtual terminals t_j') holding exactly one s_i'-t_j' path per pair, and
// minimal under edge deletion.
struct OnePathSubgraph {
    Network gprime;                  // original + virtual sources/terminals
    std::vector<int> net_edge_of;    // gprime edge id -> original edge id, -1 for virtual edges
    std::vector<char> in_subgraph;   // per gprime edge
    std::vector<int> virtual_source; // node positions in gprime, by source index-1
    std::vector<int> virtual_terminal;
};

OnePathSubgraph extract_one_path_subgraph(const Network& net);

// Every node of the one-path subgraph forwards the sum of its inputs; both
// terminals then receive the full source sum.
CodeAssignment assign_ns_2t(const Network& net, const Field& f);
CodeAssignment assign_ns_2t(const Network& net, const Field& f, const OnePathSubgraph& sub);

// Three sources / three terminals on a structured network (internal degree
// <= 3, two vertex-disjoint paths per pair).  Dispatch: a (3,3) node -> case
// 0; else (2,3) -> case 1; else (3,2) -> case 2; else the color analysis.
struct Dispatch3s3t {
    int case_id = -1;           // 0..3
    int color_count = -1;       // case 3 only
    std::vector<int> degree_sequence;
    std::string branch;         // human-readable sub-branch tag
    int retries_used = 0;       // randomized branch resamples
};

struct Assign3s3tResult {
    CodeAssignment code;
    Dispatch3s3t dispatch;
};

Assign3s3tResult assign_3s_3t(const Network& net, const Field& f, std::uint64_t seed = 0, int retries = 32);

CodeAssignment case0_33(const Network& net, const Field& f, int v);
CodeAssignment case1_23(const Network& net, const Field& f, int v);
CodeAssignment case2_32(const Network& net, const Field& f, int v);
Assign3s3tResult case3_colors(const Network& net, const Field& f, std::uint64_t seed, int retries);

// One sample of the Lemma-5 randomized construction: uniform random local
// coefficients on the two color subgraphs plus their singleton feeders, then
// the per-terminal checks (designated leaf vectors have no spurious zero
// coordinate; designated leaf pairs are linearly independent).
struct RandomColorCode {
    bool accepted = false;
    CodeAssignment partial;     // assignment on the randomized region
    std::string failure;        // first failed check, for diagnostics
};

RandomColorCode random_color_code(const Network& net, const Field& f, std::uint64_t seed);

// Payload encodings per source color used by the three-or-more-color cases:
// (s1,s2) -> 2*X1 + X2, (s2,s3) -> X2 + 2*X3, (s1,s3) -> X1 - X3.
std::vector<FieldElem> table_encoding_payload(const Field& f, const std::array<int, 2>& source_pair, int nsrc);

} // namespace sumcast

#endif
