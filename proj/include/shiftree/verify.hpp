// verify.hpp -- seeded property suites over every module.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace shiftree::verify {

struct PropertyResult
{
    std::string suite;
    std::string property;
    std::size_t cases = 0;
    bool passed = true;
    std::string detail; ///< first counterexample, empty on success
};

/// Suite names in declaration order (excluding "all").
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument
/// for an unknown name. Results depend only on the seed.
std::vector<PropertyResult> run_suite(std::string_view suite, std::uint64_t seed);

/// Fixed-width pass/fail table with a summary line.
std::string format_table(const std::vector<PropertyResult>& results);

bool all_passed(const std::vector<PropertyResult>& results);

} // namespace shiftree::verify
