#include "scar/simd.hpp"

namespace scar::simd {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_sq_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void csr_spmv_scalar(std::size_t n_rows, const std::size_t* row_ptr, const Index* cols,
                     const double* vals, const double* x, double* y) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    double s = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

void csr_spmv_complex_scalar(std::size_t n_rows, const std::size_t* row_ptr, const Index* cols,
                             const double* vals, const double* x, double* y) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const double a = vals[k];
      const std::size_t c = 2 * static_cast<std::size_t>(cols[k]);
      re += a * x[c];
      im += a * x[c + 1];
    }
    y[2 * r] = re;
    y[2 * r + 1] = im;
  }
}

void zdotc_scalar(const double* x, const double* y, std::size_t n, double* out) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    const double yr = y[2 * i], yi = y[2 * i + 1];
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  out[0] = re;
  out[1] = im;
}

void zaxpy_scalar(double ar, double ai, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    y[2 * i] += ar * xr - ai * xi;
    y[2 * i + 1] += ar * xi + ai * xr;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar,     dot_scalar,
                                 sum_sq_scalar,   axpy_scalar,
                                 scale_scalar,    csr_spmv_scalar,
                                 csr_spmv_complex_scalar, zdotc_scalar,
                                 zaxpy_scalar};
  return table;
}

}  // namespace scar::simd
