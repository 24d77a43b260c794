#pragma once

// Data-parallel inner loops shared by the Krylov, FSA and time-evolution code.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant compiled in its own translation unit. The active table is chosen once
// at startup from CPUID; SCAR_SIMD=scalar in the environment forces the reference.
// Variants agree to rounding (reduction order differs), and each variant is
// deterministic on its own.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace scar::simd {

enum class Isa { scalar, avx2 };

using Index = std::int32_t;

struct KernelTable {
  Isa isa;
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum_sq)(const double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  void (*scale)(double a, double* x, std::size_t n);
  // y = A x for a CSR matrix with n_rows rows.
  void (*csr_spmv)(std::size_t n_rows, const std::size_t* row_ptr, const Index* cols,
                   const double* vals, const double* x, double* y);
  // Same, real matrix times interleaved complex vector.
  void (*csr_spmv_complex)(std::size_t n_rows, const std::size_t* row_ptr, const Index* cols,
                           const double* vals, const double* x, double* y);
  // sum_i conj(x_i) y_i over n complex entries (interleaved storage), result in out[0..1]
  void (*zdotc)(const double* x, const double* y, std::size_t n, double* out);
  // y += a * x over n complex entries
  void (*zaxpy)(double a_re, double a_im, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_kernels();
bool isa_available(Isa isa);
const KernelTable& kernels_for(Isa isa);

/// Active table used by the span wrappers below.
const KernelTable& active();
void set_active(Isa isa);
std::string_view isa_name(Isa isa);

// Span front-ends (no size checks beyond debug asserts; callers validate).
double dot(std::span<const double> x, std::span<const double> y);
double norm(std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
void scale(double a, std::span<double> x);

using cplx = std::complex<double>;
cplx zdotc(std::span<const cplx> x, std::span<const cplx> y);
void zaxpy(cplx a, std::span<const cplx> x, std::span<cplx> y);
double znorm(std::span<const cplx> x);
void zscale(double a, std::span<cplx> x);

namespace detail {
#ifdef SCAR_HAVE_AVX2
const KernelTable& avx2_kernels();
#endif
}  // namespace detail

}  // namespace scar::simd
