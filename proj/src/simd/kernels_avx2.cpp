// Compiled with -mavx2 -mfma; only reached after a CPUID check in dispatch.cpp.

#include <immintrin.h>

#include "scar/simd.hpp"

namespace scar::simd::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  __m256d a2 = _mm256_setzero_pd(), a3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
    a2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8), a2);
    a3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12), _mm256_loadu_pd(y + i + 12), a3);
  }
  for (; i + 4 <= n; i += 4)
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  double s = hsum(_mm256_add_pd(_mm256_add_pd(a0, a1), _mm256_add_pd(a2, a3)));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_sq_avx2(const double* x, std::size_t n) { return dot_avx2(x, x, n); }

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void csr_spmv_avx2(std::size_t n_rows, const std::size_t* row_ptr, const Index* cols,
                   const double* vals, const double* x, double* y) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t k = row_ptr[r];
    const std::size_t end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(vals + k), xv, acc);
    }
    double s = hsum(acc);
    for (; k < end; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

void csr_spmv_complex_avx2(std::size_t n_rows, const std::size_t* row_ptr, const Index* cols,
                           const double* vals, const double* x, double* y) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    std::size_t k = row_ptr[r];
    const std::size_t end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 2 <= end; k += 2) {
      const __m128d x0 = _mm_loadu_pd(x + 2 * static_cast<std::size_t>(cols[k]));
      const __m128d x1 = _mm_loadu_pd(x + 2 * static_cast<std::size_t>(cols[k + 1]));
      const __m256d xv = _mm256_insertf128_pd(_mm256_castpd128_pd256(x0), x1, 1);
      const __m256d av = _mm256_set_pd(vals[k + 1], vals[k + 1], vals[k], vals[k]);
      acc = _mm256_fmadd_pd(av, xv, acc);
    }
    __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    if (k < end) {
      const __m128d xv = _mm_loadu_pd(x + 2 * static_cast<std::size_t>(cols[k]));
      s = _mm_add_pd(s, _mm_mul_pd(_mm_set1_pd(vals[k]), xv));
    }
    _mm_storeu_pd(y + 2 * r, s);
  }
}

void zdotc_avx2(const double* x, const double* y, std::size_t n, double* out) {
  // acc_d lanes: xr*yr, xi*yi ; acc_x lanes: xr*yi, xi*yr
  __m256d acc_d = _mm256_setzero_pd(), acc_x = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    const __m256d yv = _mm256_loadu_pd(y + 2 * i);
    acc_d = _mm256_fmadd_pd(xv, yv, acc_d);
    acc_x = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_x);
  }
  alignas(32) double d[4], c[4];
  _mm256_store_pd(d, acc_d);
  _mm256_store_pd(c, acc_x);
  double re = (d[0] + d[2]) + (d[1] + d[3]);
  double im = (c[0] + c[2]) - (c[1] + c[3]);
  for (; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    const double yr = y[2 * i], yi = y[2 * i + 1];
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  out[0] = re;
  out[1] = im;
}

void zaxpy_avx2(double ar, double ai, const double* x, double* y, std::size_t n) {
  const __m256d vr = _mm256_set1_pd(ar);
  const __m256d vi = _mm256_set_pd(ai, -ai, ai, -ai);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    __m256d yv = _mm256_loadu_pd(y + 2 * i);
    yv = _mm256_fmadd_pd(vr, xv, yv);
    yv = _mm256_fmadd_pd(vi, _mm256_permute_pd(xv, 0b0101), yv);
    _mm256_storeu_pd(y + 2 * i, yv);
  }
  for (; i < n; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    y[2 * i] += ar * xr - ai * xi;
    y[2 * i + 1] += ar * xi + ai * xr;
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::avx2,   dot_avx2,   sum_sq_avx2,
                                 axpy_avx2,   scale_avx2, csr_spmv_avx2,
                                 csr_spmv_complex_avx2, zdotc_avx2, zaxpy_avx2};
  return table;
}

}  // namespace scar::simd::detail
