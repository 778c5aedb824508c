#include "levysup/verify.hpp"

#include <stdexcept>

namespace levysup::verify {

std::vector<std::string> suite_names() { return {}; }

std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t,
                                   unsigned) {
    throw std::invalid_argument("unknown suite: " + name);
}

std::vector<CheckResult> run_all(std::uint64_t, unsigned) { return {}; }

} // namespace levysup::verify
