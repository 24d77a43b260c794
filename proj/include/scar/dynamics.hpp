#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "scar/dense.hpp"
#include "scar/krylov.hpp"
#include "scar/propagator.hpp"

namespace scar {

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

/// 0, dt, 2dt, ... up to and including t_max (to within 1e-9 dt).
std::vector<double> time_grid(double dt, double t_max);

// Source of psi(t) = exp(-iHt) psi0 on a time grid.
class Evolution {
 public:
  virtual ~Evolution() = default;
  virtual std::size_t dim() const = 0;
  virtual void evolve(std::span<const double> psi0, std::span<const double> times,
                      const StateVisitor& visit) const = 0;
};

class DenseEvolution final : public Evolution {
 public:
  explicit DenseEvolution(std::shared_ptr<const EigenSystem> eig);
  explicit DenseEvolution(EigenSystem eig);
  std::size_t dim() const override { return eig_->dim; }
  void evolve(std::span<const double> psi0, std::span<const double> times,
              const StateVisitor& visit) const override;
  const EigenSystem& eigensystem() const { return *eig_; }

 private:
  std::shared_ptr<const EigenSystem> eig_;
};

class KrylovEvolution final : public Evolution {
 public:
  explicit KrylovEvolution(SparseMatrix H, int krylov_dim = 40, double tol = 1e-12);
  std::size_t dim() const override { return H_->rows(); }
  void evolve(std::span<const double> psi0, std::span<const double> times,
              const StateVisitor& visit) const override;

 private:
  std::unique_ptr<SparseMatrix> H_;  // stable address for the propagator
  KrylovPropagator prop_;
};

enum class Propagation { automatic, dense, krylov };

Propagation parse_propagation(const std::string& s);
/// Dense for small problems, Krylov above kAutoDenseLimit (or when asked).
inline constexpr std::size_t kAutoDenseLimit = 2000;
std::unique_ptr<Evolution> make_evolution(const SparseMatrix& H, Propagation kind,
                                          bool allow_large = false);

TimeSeries return_probability(const EigenSystem& eig, std::span<const double> psi0,
                              std::span<const double> times);
TimeSeries return_probability(const Evolution& ev, std::span<const double> psi0,
                              std::span<const double> times);

struct ComplexitySeries {
  TimeSeries complexity;
  TimeSeries leakage;  // 1 - sum_k |psi_k(t)|^2
};

/// C(t) = sum_k k |<K_k|psi(t)>|^2; the basis must be orthonormal and start at psi0.
ComplexitySeries spread_complexity(const Evolution& ev, std::span<const double> psi0,
                                   const std::vector<Vector>& krylov, std::span<const double> times);
ComplexitySeries spread_complexity(const EigenSystem& eig, std::span<const double> psi0,
                                   const std::vector<Vector>& krylov, std::span<const double> times);

struct ConvergenceTable {
  std::vector<int> counts;
  std::vector<double> times;
  std::vector<std::vector<double>> complexity;  // [count][time]
  int lanczos_vectors = 0;

  /// max over t <= t_limit and over count pairs with both counts > min_count of |C_a - C_b|
  double max_spread(double t_limit, int min_count) const;
};

ConvergenceTable complexity_convergence(const SparseMatrix& H, const Evolution& ev,
                                        std::span<const double> psi0, std::vector<int> counts,
                                        std::span<const double> times);

TimeSeries expectation_series(const Evolution& ev, std::span<const double> psi0,
                              const SparseMatrix& O, std::span<const double> times);

/// Long-time average of <O>; degenerate eigenspaces are handled by block projection.
double diagonal_ensemble(const EigenSystem& eig, std::span<const double> psi0,
                         const SparseMatrix& O, double degeneracy_tol = 1e-9);

struct CrossCorrelation {
  int lag;
  double tau;
  double raw;         // sum_n A_{n+lag} B_n (zero outside the series)
  double normalized;  // same on mean-subtracted series, divided by their norms
};

std::vector<CrossCorrelation> cross_correlation(const TimeSeries& a, const TimeSeries& b, int max_lag);

}  // namespace scar
