#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "scar/hilbert.hpp"
#include "scar/operators.hpp"
#include "scar/simd.hpp"
#include "scar/sparse.hpp"

using namespace scar;
using simd::Isa;
using simd::KernelTable;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(g);
  return v;
}

// Lengths straddle every unroll width and remainder path.
const std::vector<std::size_t> kLengths{0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 31, 33, 64, 100, 1001};

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!simd::isa_available(Isa::avx2)) GTEST_SKIP() << "AVX2 not available";
    ref = &simd::scalar_kernels();
    vec = &simd::kernels_for(Isa::avx2);
  }
  const KernelTable* ref = nullptr;
  const KernelTable* vec = nullptr;
};

}  // namespace

TEST(SimdDispatch, ScalarAlwaysAvailable) {
  EXPECT_TRUE(simd::isa_available(Isa::scalar));
  EXPECT_EQ(simd::kernels_for(Isa::scalar).isa, Isa::scalar);
  EXPECT_EQ(simd::isa_name(Isa::scalar), "scalar");
}

TEST(SimdDispatch, SwitchingActiveTable) {
  const Isa before = simd::active().isa;
  simd::set_active(Isa::scalar);
  EXPECT_EQ(simd::active().isa, Isa::scalar);
  if (simd::isa_available(Isa::avx2)) {
    simd::set_active(Isa::avx2);
    EXPECT_EQ(simd::active().isa, Isa::avx2);
  } else {
    EXPECT_THROW(simd::set_active(Isa::avx2), std::exception);
  }
  simd::set_active(before);
}

TEST_F(KernelEquivalence, DotAndSumSq) {
  for (std::size_t n : kLengths) {
    auto x = random_vec(n, 1 + n), y = random_vec(n, 100 + n);
    const double scale = std::max<double>(1.0, static_cast<double>(n));
    EXPECT_NEAR(ref->dot(x.data(), y.data(), n), vec->dot(x.data(), y.data(), n), 1e-14 * scale) << n;
    EXPECT_NEAR(ref->sum_sq(x.data(), n), vec->sum_sq(x.data(), n), 1e-14 * scale) << n;
  }
}

TEST_F(KernelEquivalence, AxpyAndScaleBitwise) {
  for (std::size_t n : kLengths) {
    auto x = random_vec(n, 3 + n), y1 = random_vec(n, 7 + n), y2 = y1;
    ref->axpy(0.37, x.data(), y1.data(), n);
    vec->axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15) << n;
    ref->scale(-1.7, y1.data(), n);
    vec->scale(-1.7, y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15) << n;
  }
}

TEST_F(KernelEquivalence, ComplexDotAndAxpy) {
  for (std::size_t n : kLengths) {
    auto x = random_vec(2 * n, 11 + n), y = random_vec(2 * n, 13 + n);
    double a[2], b[2];
    ref->zdotc(x.data(), y.data(), n, a);
    vec->zdotc(x.data(), y.data(), n, b);
    const double tol = 1e-14 * std::max<double>(1.0, static_cast<double>(n));
    EXPECT_NEAR(a[0], b[0], tol);
    EXPECT_NEAR(a[1], b[1], tol);
    auto y2 = y;
    ref->zaxpy(0.3, -0.8, x.data(), y.data(), n);
    vec->zaxpy(0.3, -0.8, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < 2 * n; ++i) EXPECT_NEAR(y[i], y2[i], 1e-15);
  }
}

TEST_F(KernelEquivalence, CsrProductsOnModelHamiltonians) {
  for (int L : {8, 12, 15}) {
    const ConstrainedBasis b = enumerate_basis(L);
    ModelConfig m;
    m.L = L;
    m.terms = {{"sigma3", 0.31}, {"sigma5", 0.2}};
    const SparseMatrix H = assemble(b, m);
    const std::size_t n = H.rows();
    auto x = random_vec(n, L), y1 = std::vector<double>(n), y2 = y1;
    ref->csr_spmv(n, H.row_ptr().data(), H.col_idx().data(), H.values().data(), x.data(), y1.data());
    vec->csr_spmv(n, H.row_ptr().data(), H.col_idx().data(), H.values().data(), x.data(), y2.data());
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-13);

    auto z = random_vec(2 * n, 2 * L), w1 = std::vector<double>(2 * n), w2 = w1;
    ref->csr_spmv_complex(n, H.row_ptr().data(), H.col_idx().data(), H.values().data(), z.data(), w1.data());
    vec->csr_spmv_complex(n, H.row_ptr().data(), H.col_idx().data(), H.values().data(), z.data(), w2.data());
    for (std::size_t i = 0; i < 2 * n; ++i) EXPECT_NEAR(w1[i], w2[i], 1e-13);
  }
}

TEST(SimdWrappers, MatchHandWrittenLoops) {
  auto x = random_vec(37, 5), y = random_vec(37, 6);
  double d = 0, s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d += x[i] * y[i];
    s += x[i] * x[i];
  }
  EXPECT_NEAR(simd::dot(x, y), d, 1e-13);
  EXPECT_NEAR(simd::norm(x), std::sqrt(s), 1e-13);

  std::vector<simd::cplx> u(9), v(9);
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = {x[i], y[i]};
    v[i] = {y[i + 9], x[i + 9]};
  }
  simd::cplx ref{};
  for (std::size_t i = 0; i < u.size(); ++i) ref += std::conj(u[i]) * v[i];
  const simd::cplx got = simd::zdotc(u, v);
  EXPECT_NEAR(got.real(), ref.real(), 1e-13);
  EXPECT_NEAR(got.imag(), ref.imag(), 1e-13);
}
