#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace helstrom::repro {

// One comparison between a closed-form prediction and the computed value.
struct ReproRow {
    std::string group;
    std::string quantity;
    double expected = 0.0;
    double computed = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    double diff() const;
};

struct ReproReport {
    std::vector<ReproRow> rows;
    bool all_pass = true;
};

// Named groups, in run order ("all" is accepted by run_repro but not listed).
const std::vector<std::string>& case_names();

// Reruns the closed-form checks of the named group (or every group) against
// the computational routes. The seed drives the randomized comparisons.
ReproReport run_repro(const std::string& which, std::uint64_t seed);

std::string format_table(const ReproReport& report);

}  // namespace helstrom::repro
