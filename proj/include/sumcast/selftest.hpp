#ifndef SUMCAST_SELFTEST_HPP
#define SUMCAST_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sumcast {

struct SuiteResult {
    std::string name;
    int passed = 0;
    int total = 0;
    double seconds = 0;
    std::string detail; // first failure description
    bool ok() const { return passed == total; }
};

// Randomized instance-family suites: greedy two-source multicast, one-path
// extraction for two terminals, the structured 3s/3t case analysis, and the
// degree-reduction round trip.
SuiteResult suite_greedy_2s(std::uint64_t seed, int instances = 200);
SuiteResult suite_one_path_2t(std::uint64_t seed, int instances = 100);
SuiteResult suite_3s3t(std::uint64_t seed, int instances = 100);
SuiteResult suite_transform(std::uint64_t seed, int instances = 50);

std::vector<SuiteResult> run_selftests(std::uint64_t seed);

} // namespace sumcast

#endif
