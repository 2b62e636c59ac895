#ifndef SUMCAST_GEN_HPP
#define SUMCAST_GEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sumcast/network.hpp"

namespace sumcast::gen {

// Random DAG with the requested sources/terminals and max-flow >= 1 between
// every pair (patched up with extra routes where the random draw missed).
Network random_connected_dag(std::uint64_t seed, int nsources, int nterminals, int max_internal);

// Random network with capacities > 1, high-degree nodes, and sources
// (terminals) that still have incoming (outgoing) edges; exercises
// normalization and the degree reduction.
Network random_messy_network(std::uint64_t seed, int nsources, int nterminals);

// Structured 3s/3t instances, one family per dispatch branch of the case
// analysis.  Every instance has two internally vertex-disjoint paths between
// each source/terminal pair and internal degree <= 3.
enum class Stratum {
    Case0,
    Case1,
    Case2,
    Colors0,
    Colors1,
    Colors2SameTerminal,
    Colors2SameSource,
    Colors2DifferGreedy,
    Colors2DifferRandom,
    Colors3Deg033,
    Colors3Deg222OneSource,
    Colors3Deg222TwoSources,
    Colors3Deg222ThreeSources,
    Colors3Deg123,
    Colors4Plus,
};

const std::vector<Stratum>& all_strata();
std::string stratum_name(Stratum s);
Network fixture_3s3t(Stratum s, std::uint64_t seed);

struct StratumExpectation {
    int case_id;            // expected dispatch case
    int color_count;        // expected distinct colors, -1 when not applicable
    std::string branch_fragment; // substring of the reported branch tag
    bool needs_big_field;   // randomized branch wants a large field
};
StratumExpectation expectation(Stratum s);

// A star-shaped 3s/3t network with a degree-6 hub; needs the degree
// reduction before the case analysis applies.
Network star_3s3t(std::uint64_t seed);

// Random structured 3s/3t instance outside the named strata: a random base
// pattern with extra gadgets and full double direct coverage.
Network mixed_3s3t(std::uint64_t seed);

// Two-color fixture of the randomized construction with no clear singleton
// on the disjoint paths into the shared terminal (the Lemma-5 hard case).
Network two_color_random_fixture(std::uint64_t seed);

} // namespace sumcast::gen

#endif
