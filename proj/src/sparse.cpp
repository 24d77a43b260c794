#include "scar/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scar/error.hpp"

namespace scar {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {
  if (cols > static_cast<std::size_t>(std::numeric_limits<simd::Index>::max()))
    throw CapacityError("sparse matrix too wide for 32-bit column indices");
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> t) {
  SparseMatrix m(rows, cols);
  std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  m.cols_idx_.reserve(t.size());
  m.vals_.reserve(t.size());
  std::size_t i = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    while (i < t.size() && t[i].row == r) {
      if (t[i].col >= cols) throw DimensionError("triplet column out of range");
      const std::size_t c = t[i].col;
      double v = 0.0;
      for (; i < t.size() && t[i].row == r && t[i].col == c; ++i) v += t[i].value;
      if (v != 0.0) {
        m.cols_idx_.push_back(static_cast<simd::Index>(c));
        m.vals_.push_back(v);
      }
    }
    m.row_ptr_[r + 1] = m.vals_.size();
  }
  if (i != t.size()) throw DimensionError("triplet row out of range");
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<double> d(n, 1.0);
  return diagonal(d);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
  std::vector<Triplet> t;
  t.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return from_triplets(d.size(), d.size(), std::move(t));
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto b = cols_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
  auto e = cols_idx_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
  auto it = std::lower_bound(b, e, static_cast<simd::Index>(c));
  if (it == e || *it != static_cast<simd::Index>(c)) return 0.0;
  return vals_[static_cast<std::size_t>(it - cols_idx_.begin())];
}

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw DimensionError("matvec dimension mismatch");
  simd::active().csr_spmv(rows_, row_ptr_.data(), cols_idx_.data(), vals_.data(), x.data(),
                          y.data());
}

void SparseMatrix::multiply(std::span<const std::complex<double>> x,
                            std::span<std::complex<double>> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw DimensionError("matvec dimension mismatch");
  simd::active().csr_spmv_complex(rows_, row_ptr_.data(), cols_idx_.data(), vals_.data(),
                                  reinterpret_cast<const double*>(x.data()),
                                  reinterpret_cast<double*>(y.data()));
}

std::vector<double> SparseMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(rows_);
  multiply(x, y);
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  std::vector<std::size_t> count(cols_ + 1, 0);
  for (auto c : cols_idx_) ++count[static_cast<std::size_t>(c) + 1];
  for (std::size_t c = 0; c < cols_; ++c) count[c + 1] += count[c];
  t.row_ptr_ = count;
  t.cols_idx_.resize(nnz());
  t.vals_.resize(nnz());
  // Rows are visited in order, so each transposed row comes out sorted.
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const std::size_t dst = count[static_cast<std::size_t>(cols_idx_[k])]++;
      t.cols_idx_[dst] = static_cast<simd::Index>(r);
      t.vals_[dst] = vals_[k];
    }
  }
  return t;
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      out.push_back({r, static_cast<std::size_t>(cols_idx_[k]), vals_[k]});
  return out;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : vals_) m = std::max(m, std::abs(v));
  return m;
}

bool SparseMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  return max_abs_diff(*this, transpose()) <= tol;
}

std::vector<double> SparseMatrix::to_dense() const {
  std::vector<double> d(rows_ * cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
      d[r * cols_ + static_cast<std::size_t>(cols_idx_[k])] = vals_[k];
  return d;
}

SparseMatrix add(const SparseMatrix& A, const SparseMatrix& B, double a, double b) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw DimensionError("add: shape mismatch");
  std::vector<Triplet> t;
  t.reserve(A.nnz() + B.nnz());
  for (auto x : A.triplets()) t.push_back({x.row, x.col, a * x.value});
  for (auto x : B.triplets()) t.push_back({x.row, x.col, b * x.value});
  return SparseMatrix::from_triplets(A.rows(), A.cols(), std::move(t));
}

SparseMatrix multiply(const SparseMatrix& A, const SparseMatrix& B) {
  if (A.cols() != B.rows()) throw DimensionError("multiply: inner dimension mismatch");
  // Gustavson row-by-row product with a dense accumulator.
  std::vector<double> acc(B.cols(), 0.0);
  std::vector<char> used(B.cols(), 0);
  std::vector<std::size_t> touched;
  std::vector<Triplet> t;
  const auto& ap = A.row_ptr();
  const auto& ac = A.col_idx();
  const auto& av = A.values();
  const auto& bp = B.row_ptr();
  const auto& bc = B.col_idx();
  const auto& bv = B.values();
  for (std::size_t r = 0; r < A.rows(); ++r) {
    touched.clear();
    for (std::size_t k = ap[r]; k < ap[r + 1]; ++k) {
      const auto j = static_cast<std::size_t>(ac[k]);
      for (std::size_t m = bp[j]; m < bp[j + 1]; ++m) {
        const auto c = static_cast<std::size_t>(bc[m]);
        if (!used[c]) {
          used[c] = 1;
          touched.push_back(c);
        }
        acc[c] += av[k] * bv[m];
      }
    }
    for (auto c : touched) {
      t.push_back({r, c, acc[c]});
      acc[c] = 0.0;
      used[c] = 0;
    }
  }
  return SparseMatrix::from_triplets(A.rows(), B.cols(), std::move(t));
}

SparseMatrix commutator(const SparseMatrix& A, const SparseMatrix& B) {
  return add(multiply(A, B), multiply(B, A), 1.0, -1.0);
}

double max_abs_diff(const SparseMatrix& A, const SparseMatrix& B) {
  return add(A, B, 1.0, -1.0).max_abs();
}

}  // namespace scar
