#pragma once

#include <complex>
#include <functional>
#include <span>

#include "scar/sparse.hpp"

namespace scar {

using cplx = std::complex<double>;
using StateVisitor = std::function<void(std::size_t index, std::span<const cplx> psi)>;

// Short-iterative-Lanczos propagator for psi(t) = exp(-iHt) psi0.
//
// One Krylov space is built per chunk and reused for every grid time it covers;
// the chunk ends where the a-posteriori error estimate beta_m |[exp(-iT tau)]_{m-1,0}|
// would exceed `tol`.
class KrylovPropagator {
 public:
  explicit KrylovPropagator(const SparseMatrix& H, int krylov_dim = 40, double tol = 1e-12);

  /// Calls visit(i, psi(times[i])) for every i. times must be ascending and >= 0.
  void evolve(std::span<const cplx> psi0, std::span<const double> times, const StateVisitor& visit) const;

  /// Number of Krylov spaces built by the last evolve() call.
  int chunks_used() const { return chunks_; }

 private:
  const SparseMatrix& H_;
  int m_;
  double tol_;
  mutable int chunks_ = 0;
};

}  // namespace scar
