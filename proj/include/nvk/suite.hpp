#pragma once

#include <cstdint>
#include <string>

namespace nvk {

struct SuiteOptions {
    std::uint64_t seed = 0;
    int scale = 1;  // multiplies instance counts
};

struct SuiteResult {
    std::string report;  // deterministic text, one line per family
    int familiesRun = 0;
    int familiesPassed = 0;
    bool allPassed() const { return familiesRun == familiesPassed; }
};

// Seeded randomized property run across every module; the report depends
// only on the seed and scale.
SuiteResult runSuite(const SuiteOptions& opts);

}  // namespace nvk
