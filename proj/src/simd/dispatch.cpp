#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <string>

#include "scar/error.hpp"
#include "scar/simd.hpp"

namespace scar::simd {
namespace {

bool cpu_has_avx2() {
#if defined(SCAR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* pick_default() {
  const char* env = std::getenv("SCAR_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return &scalar_kernels();
  if (isa_available(Isa::avx2)) return &kernels_for(Isa::avx2);
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> table{pick_default()};
  return table;
}

}  // namespace

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
  static const bool avx2 = cpu_has_avx2();
  return avx2;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) throw UnsupportedError("instruction set not available on this CPU");
#ifdef SCAR_HAVE_AVX2
  if (isa == Isa::avx2) return detail::avx2_kernels();
#endif
  return scalar_kernels();
}

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) { slot().store(&kernels_for(isa), std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

double norm(std::span<const double> x) { return std::sqrt(active().sum_sq(x.data(), x.size())); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(a, x.data(), y.data(), x.size());
}

void scale(double a, std::span<double> x) { active().scale(a, x.data(), x.size()); }

cplx zdotc(std::span<const cplx> x, std::span<const cplx> y) {
  assert(x.size() == y.size());
  double out[2];
  active().zdotc(reinterpret_cast<const double*>(x.data()),
                 reinterpret_cast<const double*>(y.data()), x.size(), out);
  return {out[0], out[1]};
}

void zaxpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  assert(x.size() == y.size());
  active().zaxpy(a.real(), a.imag(), reinterpret_cast<const double*>(x.data()),
                 reinterpret_cast<double*>(y.data()), x.size());
}

double znorm(std::span<const cplx> x) {
  return std::sqrt(active().sum_sq(reinterpret_cast<const double*>(x.data()), 2 * x.size()));
}

void zscale(double a, std::span<cplx> x) {
  active().scale(a, reinterpret_cast<double*>(x.data()), 2 * x.size());
}

}  // namespace scar::simd
