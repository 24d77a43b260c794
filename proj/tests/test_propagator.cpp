#include <gtest/gtest.h>

#include <cmath>

#include "scar/dense.hpp"
#include "scar/dynamics.hpp"
#include "scar/error.hpp"
#include "scar/operators.hpp"
#include "scar/propagator.hpp"

using namespace scar;

TEST(KrylovPropagator, TwoLevelRabi) {
  const SparseMatrix H = SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}});
  const std::vector<cplx> psi0{1.0, 0.0};
  const auto times = time_grid(0.05, 10.0);
  KrylovPropagator p(H, 2);
  p.evolve(psi0, times, [&](std::size_t i, std::span<const cplx> psi) {
    const double t = times[i];
    EXPECT_NEAR(psi[0].real(), std::cos(t), 1e-10);
    EXPECT_NEAR(psi[0].imag(), 0.0, 1e-10);
    EXPECT_NEAR(psi[1].imag(), -std::sin(t), 1e-10);
  });
}

TEST(KrylovPropagator, MatchesDenseOnPxp) {
  const int L = 14;
  const ConstrainedBasis b = enumerate_basis(L);
  ModelConfig m;
  m.L = L;
  m.terms = {{"z2pert", 0.108}};
  const SparseMatrix H = assemble(b, m);
  const auto v0 = special_state(b, StateTag::z2);
  const auto times = time_grid(0.1, 30.0);
  std::vector<std::vector<cplx>> dense;
  DenseEvolution(eigendecompose(H)).evolve(v0, times, [&](std::size_t, std::span<const cplx> psi) {
    dense.emplace_back(psi.begin(), psi.end());
  });
  KrylovPropagator p(H);
  std::vector<cplx> psi0(v0.begin(), v0.end());
  double worst = 0.0;
  p.evolve(psi0, times, [&](std::size_t i, std::span<const cplx> psi) {
    double norm = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
      worst = std::max(worst, std::abs(psi[j] - dense[i][j]));
      norm += std::norm(psi[j]);
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
  });
  EXPECT_LT(worst, 1e-9);
  // One Krylov space covers several grid points.
  EXPECT_LT(p.chunks_used(), static_cast<int>(times.size()));
}

TEST(KrylovPropagator, InputChecks) {
  const SparseMatrix H = SparseMatrix::identity(3);
  KrylovPropagator p(H, 3);
  const std::vector<cplx> psi{1.0, 0.0, 0.0};
  const std::vector<double> bad{0.0, 2.0, 1.0};
  auto ignore = [](std::size_t, std::span<const cplx>) {};
  EXPECT_THROW(p.evolve(psi, bad, ignore), InputError);
  EXPECT_THROW(p.evolve(std::vector<cplx>{1.0}, std::vector<double>{0.0}, ignore), DimensionError);
  EXPECT_THROW(KrylovPropagator(SparseMatrix(2, 3)), DimensionError);
  EXPECT_THROW(KrylovPropagator(H, 1), InputError);
}

TEST(KrylovPropagator, InvariantSubspaceStart) {
  // An eigenvector only picks up a phase; the Krylov space has dimension one.
  const SparseMatrix H = SparseMatrix::diagonal(std::vector<double>{2.0, -1.0, 0.5});
  const std::vector<cplx> psi0{0.0, 1.0, 0.0};
  const std::vector<double> times{0.0, 1.0, 7.5};
  KrylovPropagator(H).evolve(psi0, times, [&](std::size_t i, std::span<const cplx> psi) {
    EXPECT_NEAR(std::abs(psi[1] - std::polar(1.0, times[i])), 0.0, 1e-12);
  });
}
