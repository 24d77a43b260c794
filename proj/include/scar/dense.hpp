#pragma once

#include <cstddef>
#include <vector>

#include "scar/krylov.hpp"
#include "scar/sparse.hpp"

namespace scar {

struct EigenSystem {
  std::size_t dim = 0;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major, column n is eigenvector n

  double vec(std::size_t row, std::size_t n) const { return vectors[n * dim + row]; }
};

// Dense problems above kDenseDefaultCap need allow_large; nothing above kDenseHardCap is attempted.
inline constexpr std::size_t kDenseDefaultCap = 8000;
inline constexpr std::size_t kDenseHardCap = 16000;

EigenSystem eigendecompose(const SparseMatrix& H, bool allow_large = false);
/// Row-major (equivalently column-major, since symmetric) n x n input.
EigenSystem eigendecompose_dense(std::vector<double> a, std::size_t n);
EigenSystem eigendecompose(const Tridiagonal& t);

/// max |H - V diag(E) V^T| and max |V^T V - I|
double reconstruction_error(const SparseMatrix& H, const EigenSystem& eig);
double orthogonality_error(const EigenSystem& eig);

}  // namespace scar
