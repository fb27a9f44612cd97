#pragma once

#include <vector>

#include "qjf/rational.hpp"

namespace qjf {

// Exact solution of A x = b over the rationals by full row reduction.
struct LinearSolution {
    bool consistent = true;
    // One solution with every free unknown set to zero (valid when consistent).
    std::vector<Rat> particular;
    // pinned[j]: x_j takes the same value in every solution.
    std::vector<bool> pinned;
};

LinearSolution solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> b);

}  // namespace qjf
