#pragma once

#include <vector>

#include "balor/common.hpp"

namespace balor {

using Matrix = std::vector<std::vector<double>>;

struct EigenResult {
  std::vector<double> values;  // descending
  Matrix vectors;              // vectors[k] is the eigenvector of values[k]
};

// Cyclic Jacobi rotations on a symmetric matrix. Sweeps until all off-diagonal
// magnitudes fall below tol; EigenFailure if the sweep cap is exhausted first.
EigenResult jacobi_eigen(Matrix a, double tol = 1e-12, int max_sweeps = 100);

}  // namespace balor
