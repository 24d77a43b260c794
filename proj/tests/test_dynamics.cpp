#include <gtest/gtest.h>

#include <cmath>

#include "scar/dense.hpp"
#include "scar/dynamics.hpp"
#include "scar/error.hpp"
#include "scar/krylov.hpp"
#include "scar/operators.hpp"

using namespace scar;

namespace {

SparseMatrix two_level() { return SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}}); }

ModelConfig model(int L, StateTag tag, std::map<std::string, double> terms = {}) {
  ModelConfig m;
  m.L = L;
  m.initial = tag;
  m.terms = std::move(terms);
  return m;
}

}  // namespace

TEST(TimeGrid, EndpointsIncluded) {
  const auto t = time_grid(0.02, 40.0);
  ASSERT_EQ(t.size(), 2001u);
  EXPECT_NEAR(t.back(), 40.0, 1e-12);
  EXPECT_EQ(time_grid(0.5, 0.0).size(), 1u);
  EXPECT_THROW(time_grid(0.0, 1.0), ConfigError);
}

TEST(TwoLevel, ReturnProbabilityAndComplexity) {
  const SparseMatrix H = two_level();
  const std::vector<double> psi0{1.0, 0.0};
  const std::vector<Vector> K{{1.0, 0.0}, {0.0, 1.0}};
  const auto times = time_grid(0.01, 6.0);
  const DenseEvolution dense(eigendecompose(H));
  const KrylovEvolution kry(H, 2);
  for (const Evolution* ev : {static_cast<const Evolution*>(&dense), static_cast<const Evolution*>(&kry)}) {
    const TimeSeries R = return_probability(*ev, psi0, times);
    const ComplexitySeries C = spread_complexity(*ev, psi0, K, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      EXPECT_NEAR(R.values[i], std::pow(std::cos(times[i]), 2), 1e-10);
      EXPECT_NEAR(C.complexity.values[i], std::pow(std::sin(times[i]), 2), 1e-10);
      EXPECT_NEAR(C.leakage.values[i], 0.0, 1e-10);
    }
  }
  const TimeSeries Rc = return_probability(eigendecompose(H), psi0, times);
  for (std::size_t i = 0; i < times.size(); ++i) EXPECT_NEAR(Rc.values[i], std::pow(std::cos(times[i]), 2), 1e-10);
}

TEST(Pxp, InitialValuesAndEnergyConservation) {
  const int L = 12;
  const ConstrainedBasis b = enumerate_basis(L);
  const SparseMatrix H = assemble(b, model(L, StateTag::z2, {{"z2pert", 0.108}}));
  const auto v0 = special_state(b, StateTag::z2);
  const auto times = time_grid(0.05, 20.0);
  for (Propagation p : {Propagation::dense, Propagation::krylov}) {
    const auto ev = make_evolution(H, p);
    const TimeSeries R = return_probability(*ev, v0, times);
    EXPECT_NEAR(R.values[0], 1.0, 1e-14);
    const TimeSeries E = expectation_series(*ev, v0, H, times);
    for (double e : E.values) EXPECT_NEAR(e, E.values[0], 1e-10);
    const KrylovData kd = lanczos(H, v0, 30);
    const ComplexitySeries C = spread_complexity(*ev, v0, kd.vectors, times);
    EXPECT_NEAR(C.complexity.values[0], 0.0, 1e-14);
  }
}

TEST(Pxp, DenseAndKrylovAgree) {
  const int L = 16;
  const ConstrainedBasis b = enumerate_basis(L);
  const SparseMatrix H = assemble(b, model(L, StateTag::z2));
  const auto v0 = special_state(b, StateTag::z2);
  const auto times = time_grid(0.1, 25.0);
  const auto Rd = return_probability(*make_evolution(H, Propagation::dense), v0, times);
  const auto Rk = return_probability(*make_evolution(H, Propagation::krylov), v0, times);
  for (std::size_t i = 0; i < times.size(); ++i) EXPECT_NEAR(Rd.values[i], Rk.values[i], 1e-9);
}

TEST(Fsa, NoLeakageForExactAlgebras) {
  const auto times = time_grid(0.05, 10.0);
  {
    const int L = 8;
    const LadderPair lp = free_paramagnet_ladder(L);
    std::vector<double> v0(std::size_t{1} << L, 0.0);
    v0[0] = 1.0;
    const FsaData fd = fsa(lp, v0);
    const auto ev = make_evolution(add(lp.plus, lp.minus), Propagation::dense);
    const ComplexitySeries C = spread_complexity(*ev, v0, fd.vectors, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      EXPECT_LT(std::abs(C.leakage.values[i]), 1e-8);
      EXPECT_LE(C.complexity.values[i], fd.closed_after - 1 + 1e-12);
      // Spin-L/2 rotation: C(t) = L sin^2(t)
      EXPECT_NEAR(C.complexity.values[i], L * std::pow(std::sin(times[i]), 2), 1e-10);
    }
  }
  {
    const int L = 12;
    const ConstrainedBasis b = enumerate_basis(L);
    const auto m = model(L, StateTag::z3);
    const LadderPair lp = ladder_split(b, m, Scheme::z3exact);
    const auto v0 = special_state(b, StateTag::z3);
    const FsaData fd = fsa(lp, v0);
    const auto ev = make_evolution(assemble(b, lp.config), Propagation::automatic);
    const ComplexitySeries C = spread_complexity(*ev, v0, fd.vectors, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      EXPECT_LT(std::abs(C.leakage.values[i]), 1e-8);
      EXPECT_LE(C.complexity.values[i], fd.closed_after - 1 + 1e-12);
    }
  }
}

TEST(Fsa, ComplexityBoundedForBrokenAlgebra) {
  const int L = 14;
  const ConstrainedBasis b = enumerate_basis(L);
  const auto m = model(L, StateTag::z2);
  const auto v0 = special_state(b, StateTag::z2);
  const FsaData fd = fsa(ladder_split(b, m, Scheme::z2), v0);
  const ComplexitySeries C =
      spread_complexity(*make_evolution(assemble(b, m), Propagation::automatic), v0, fd.vectors, time_grid(0.1, 20));
  for (std::size_t i = 0; i < C.complexity.values.size(); ++i) {
    EXPECT_LE(C.complexity.values[i], fd.closed_after - 1);
    EXPECT_GT(C.leakage.values[i], -1e-8);
  }
}

TEST(Complexity, RejectsBadBases) {
  const SparseMatrix H = two_level();
  const DenseEvolution ev(eigendecompose(H));
  const std::vector<double> psi0{1.0, 0.0};
  const std::vector<double> t{0.0};
  EXPECT_THROW(spread_complexity(ev, psi0, {{0.0, 1.0}, {1.0, 0.0}}, t), InputError);
  EXPECT_THROW(spread_complexity(ev, psi0, {{1.0, 0.0}, {1.0, 0.0}}, t), InputError);
  EXPECT_THROW(spread_complexity(ev, psi0, {}, t), InputError);
  EXPECT_THROW(return_probability(ev, std::vector<double>{1.0, 1.0}, t), InputError);
}

TEST(Complexity, ConvergenceTableWithFullBasisIsExact) {
  const int L = 10;
  const ConstrainedBasis b = enumerate_basis(L);
  const SparseMatrix H = assemble(b, model(L, StateTag::z2));
  const auto v0 = special_state(b, StateTag::z2);
  const auto ev = make_evolution(H, Propagation::dense);
  const auto times = time_grid(0.1, 5.0);
  const ConvergenceTable t = complexity_convergence(H, *ev, v0, {5, 40, 40}, times);
  ASSERT_EQ(t.complexity.size(), 3u);
  EXPECT_EQ(t.max_spread(5.0, 10), 0.0);
  EXPECT_GT(t.max_spread(5.0, 1), 0.0);
  EXPECT_THROW(complexity_convergence(H, *ev, v0, {}, times), InputError);
}

TEST(Observables, DiagonalEnsembleHandlesDegeneracy) {
  // H = 0: every state is stationary, so the ensemble equals <psi|O|psi>.
  const SparseMatrix H(3, 3);
  const EigenSystem e = eigendecompose(H);
  const SparseMatrix O = SparseMatrix::from_triplets(3, 3, {{0, 1, 1.0}, {1, 0, 1.0}, {2, 2, 2.0}});
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(diagonal_ensemble(e, std::vector<double>{s, s, 0.0}, O), 1.0, 1e-12);
  // Non-degenerate two-level: the off-diagonal part averages away.
  const EigenSystem e2 = eigendecompose(two_level());
  const SparseMatrix Z = SparseMatrix::diagonal(std::vector<double>{1.0, -1.0});
  EXPECT_NEAR(diagonal_ensemble(e2, std::vector<double>{1.0, 0.0}, Z), 0.0, 1e-12);
}

TEST(Observables, CrossCorrelationPeaksAtShift) {
  TimeSeries a, b;
  for (int i = 0; i < 400; ++i) {
    const double t = 0.05 * i;
    a.times.push_back(t);
    b.times.push_back(t);
    a.values.push_back(std::sin(t));
    b.values.push_back(std::sin(t - 0.5));
  }
  const auto rows = cross_correlation(a, b, 30);
  ASSERT_EQ(rows.size(), 61u);
  auto best = std::max_element(rows.begin(), rows.end(),
                               [](const auto& x, const auto& y) { return x.normalized < y.normalized; });
  EXPECT_EQ(best->lag, -10);
  EXPECT_NEAR(best->tau, -0.5, 1e-12);
  EXPECT_THROW(cross_correlation(a, TimeSeries{}, 3), DimensionError);
}

TEST(Evolution, AutomaticChoice) {
  const SparseMatrix small = SparseMatrix::identity(10);
  EXPECT_NE(dynamic_cast<DenseEvolution*>(make_evolution(small, Propagation::automatic).get()), nullptr);
  const SparseMatrix big = SparseMatrix::identity(kAutoDenseLimit + 1);
  EXPECT_NE(dynamic_cast<KrylovEvolution*>(make_evolution(big, Propagation::automatic).get()), nullptr);
  EXPECT_THROW(parse_propagation("magic"), ConfigError);
}
