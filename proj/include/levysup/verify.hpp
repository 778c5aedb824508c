#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace levysup::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass;
    double observed;  // quantity under test (typically |difference|)
    double bound;     // tolerance it must satisfy
    std::string detail;
};

// Names of the verification suites, in run order.
std::vector<std::string> suite_names();

// Run one suite; throws std::invalid_argument for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed,
                                   unsigned workers);

// Run every suite.
std::vector<CheckResult> run_all(std::uint64_t seed, unsigned workers);

} // namespace levysup::verify
