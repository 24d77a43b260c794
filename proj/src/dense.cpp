#include "scar/dense.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "scar/error.hpp"

namespace scar {

EigenSystem eigendecompose_dense(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw DimensionError("dense matrix has wrong size");
  if (n > kDenseHardCap)
    throw CapacityError("dense eigensolver limited to dim " + std::to_string(kDenseHardCap));
  EigenSystem e;
  e.dim = n;
  e.values.resize(n);
  if (n == 0) return e;
  const auto ln = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', ln, a.data(), ln, e.values.data());
  if (info != 0) throw Error("dsyevd failed with info " + std::to_string(info));
  e.vectors = std::move(a);
  return e;
}

EigenSystem eigendecompose(const SparseMatrix& H, bool allow_large) {
  if (H.rows() != H.cols()) throw DimensionError("eigendecompose needs a square matrix");
  const std::size_t cap = allow_large ? kDenseHardCap : kDenseDefaultCap;
  if (H.rows() > cap)
    throw CapacityError("dimension " + std::to_string(H.rows()) + " exceeds dense limit " +
                        std::to_string(cap) + (allow_large ? "" : " (large problems need an explicit opt-in)"));
  return eigendecompose_dense(H.to_dense(), H.rows());
}

EigenSystem eigendecompose(const Tridiagonal& t) {
  const std::size_t n = t.dim();
  if (n == 0) throw InputError("empty tridiagonal matrix");
  if (t.off.size() + 1 != n) throw DimensionError("off-diagonal must have dim - 1 entries");
  EigenSystem e;
  e.dim = n;
  e.values = t.diag;
  std::vector<double> off = t.off;
  off.resize(n);  // dstev wants n entries of workspace-visible storage
  e.vectors.assign(n * n, 0.0);
  const auto ln = static_cast<lapack_int>(n);
  const lapack_int info =
      LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', ln, e.values.data(), off.data(), e.vectors.data(), ln);
  if (info != 0) throw Error("dstev failed with info " + std::to_string(info));
  return e;
}

double reconstruction_error(const SparseMatrix& H, const EigenSystem& eig) {
  const std::size_t n = eig.dim;
  const std::vector<double> d = H.to_dense();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += eig.vec(i, k) * eig.values[k] * eig.vec(j, k);
      m = std::max(m, std::abs(s - d[i * n + j]));
    }
  return m;
}

double orthogonality_error(const EigenSystem& eig) {
  const std::size_t n = eig.dim;
  double m = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b <= a; ++b) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += eig.vec(k, a) * eig.vec(k, b);
      m = std::max(m, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  return m;
}

}  // namespace scar
