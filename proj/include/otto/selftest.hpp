// selftest.hpp — Randomised invariant checks behind `otto-forge selftest`

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace otto {

struct SelftestResult {
    std::string name;
    int draws{0};
    double worst{0.0};      // largest violation seen (0 for boolean checks that held)
    double tolerance{0.0};
    bool passed{false};
};

std::vector<SelftestResult> run_selftest(std::uint64_t seed, int draws);

}  // namespace otto
