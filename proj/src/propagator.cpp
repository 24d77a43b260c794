#include "scar/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scar/dense.hpp"
#include "scar/error.hpp"
#include "scar/simd.hpp"

namespace scar {

namespace {

using CVec = std::vector<cplx>;

struct KrylovChunk {
  std::vector<CVec> V;
  EigenSystem T;           // eigen-decomposition of the projected tridiagonal matrix
  double norm = 0.0;       // ||psi|| at the start of the chunk
  double beta_next = 0.0;  // residual coupling out of the space (0 on exact closure)

  CVec coeffs(double tau) const {
    const std::size_t m = T.dim;
    CVec y(m, cplx{});
    for (std::size_t k = 0; k < m; ++k) {
      const cplx ph = T.vec(0, k) * std::polar(1.0, -T.values[k] * tau);
      for (std::size_t i = 0; i < m; ++i) y[i] += T.vec(i, k) * ph;
    }
    for (auto& c : y) c *= norm;
    return y;
  }

  double error(const CVec& y) const { return beta_next * std::abs(y.back()); }

  void state(const CVec& y, CVec& out) const {
    std::fill(out.begin(), out.end(), cplx{});
    for (std::size_t i = 0; i < V.size(); ++i) simd::zaxpy(y[i], V[i], out);
  }
};

KrylovChunk build_chunk(const SparseMatrix& H, const CVec& psi, int max_m) {
  KrylovChunk c;
  c.norm = simd::znorm(psi);
  if (c.norm == 0.0) throw InputError("cannot propagate the zero vector");
  CVec v = psi;
  simd::zscale(1.0 / c.norm, v);
  std::vector<double> alpha, beta;
  CVec w(psi.size());
  const int m = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(max_m), psi.size()));
  c.V.push_back(std::move(v));
  while (true) {
    H.multiply(c.V.back(), w);
    alpha.push_back(simd::zdotc(c.V.back(), w).real());
    std::vector<cplx> proj(c.V.size());
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < c.V.size(); ++i) proj[i] = simd::zdotc(c.V[i], w);
      for (std::size_t i = 0; i < c.V.size(); ++i) simd::zaxpy(-proj[i], c.V[i], w);
    }
    const double b = simd::znorm(w);
    if (b < 1e-13 * (1.0 + std::abs(alpha.back()))) {
      c.beta_next = 0.0;
      break;
    }
    if (static_cast<int>(c.V.size()) == m) {
      c.beta_next = b;
      break;
    }
    beta.push_back(b);
    simd::zscale(1.0 / b, w);
    c.V.push_back(w);
  }
  Tridiagonal t;
  t.diag = alpha;
  t.off = beta;
  c.T = eigendecompose(t);
  return c;
}

}  // namespace

KrylovPropagator::KrylovPropagator(const SparseMatrix& H, int krylov_dim, double tol)
    : H_(H), m_(krylov_dim), tol_(tol) {
  if (H.rows() != H.cols()) throw DimensionError("propagator needs a square matrix");
  if (krylov_dim < 2) throw InputError("Krylov dimension must be at least 2");
}

void KrylovPropagator::evolve(std::span<const cplx> psi0, std::span<const double> times,
                              const StateVisitor& visit) const {
  if (psi0.size() != H_.rows()) throw DimensionError("state has wrong dimension");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1]))
      throw InputError("times must be ascending and non-negative");
  chunks_ = 0;
  CVec psi(psi0.begin(), psi0.end());
  CVec out(psi.size());
  double t_cur = 0.0;
  std::size_t next = 0;
  while (next < times.size() && times[next] == t_cur) visit(next++, psi);

  while (next < times.size()) {
    const KrylovChunk chunk = build_chunk(H_, psi, m_);
    ++chunks_;
    bool advanced = false;
    double t_last = t_cur;
    while (next < times.size()) {
      const CVec y = chunk.coeffs(times[next] - t_cur);
      if (chunk.error(y) > tol_) break;
      chunk.state(y, out);
      visit(next, out);
      t_last = times[next++];
      advanced = true;
    }
    if (advanced) {
      psi = out;
      t_cur = t_last;
      continue;
    }
    // Not even the next grid time is reachable: take a shorter unobserved step.
    double tau = times[next] - t_cur;
    CVec y;
    for (int halvings = 0;; ++halvings) {
      tau *= 0.5;
      y = chunk.coeffs(tau);
      if (chunk.error(y) <= tol_) break;
      if (halvings > 60) throw Error("Krylov propagator failed to reach tolerance");
    }
    chunk.state(y, psi);
    t_cur += tau;
  }
}

}  // namespace scar
