#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scar/simd.hpp"

namespace scar {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

// Compressed-row real matrix. Column indices are sorted within each row and
// explicit zeros are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  /// Duplicates are summed; entries that cancel to exactly zero are dropped.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> t);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return vals_.size(); }

  const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  const std::vector<simd::Index>& col_idx() const { return cols_idx_; }
  const std::vector<double>& values() const { return vals_; }

  double at(std::size_t r, std::size_t c) const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  void multiply(std::span<const std::complex<double>> x, std::span<std::complex<double>> y) const;
  std::vector<double> operator*(std::span<const double> x) const;

  SparseMatrix transpose() const;
  std::vector<Triplet> triplets() const;
  double max_abs() const;
  bool is_symmetric(double tol) const;
  std::vector<double> to_dense() const;  // row-major

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<simd::Index> cols_idx_;
  std::vector<double> vals_;
};

/// a*A + b*B
SparseMatrix add(const SparseMatrix& A, const SparseMatrix& B, double a = 1.0, double b = 1.0);
SparseMatrix multiply(const SparseMatrix& A, const SparseMatrix& B);
/// A*B - B*A
SparseMatrix commutator(const SparseMatrix& A, const SparseMatrix& B);
/// max_ij |A_ij - B_ij|
double max_abs_diff(const SparseMatrix& A, const SparseMatrix& B);

}  // namespace scar
