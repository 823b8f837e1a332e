#pragma once

#include <cstddef>
#include <vector>

#include "hchain/matrix.hpp"

namespace hchain {

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  SquareMatrix eigenvectors;        // column k belongs to eigenvalues[k]
  std::size_t iterations = 0;       // number of plane rotations applied
  double residual = 0.0;            // max_k max_i |(A v_k)_i - lambda_k v_k,i|
};

/// Full eigendecomposition of a real symmetric matrix by classical Jacobi
/// rotations. Each step annihilates the largest off-diagonal entry (ties go
/// to the lowest row, then the lowest column), so the rotation sequence is
/// deterministic. Intended as a brute-force reference, not for large inputs.
///
/// Throws ValidationError if the input is not symmetric within 1e-12 or if
/// tolerance <= 0, and ConvergenceError (carrying the achieved residual) if
/// the residual cannot be driven below `tolerance` within 64 N^2 rotations.
EigenResult symmetric_eigen(const SquareMatrix& matrix, double tolerance);

}  // namespace hchain
