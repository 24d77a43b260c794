#include "scar/krylov.hpp"

#include <algorithm>
#include <cmath>

#include "scar/error.hpp"
#include "scar/simd.hpp"

namespace scar {

namespace {

void require_unit(std::span<const double> v0, std::size_t dim) {
  if (v0.size() != dim) throw DimensionError("initial vector has wrong dimension");
  if (std::abs(simd::norm(v0) - 1.0) > kNormTol) throw InputError("initial vector is not normalized");
}

// delta_av = (sum_{k=3}^{n*+2} delta_k) / n*
void set_delta_av(FsaData& d, int n_star) {
  d.delta_av = 0.0;
  if (n_star <= 0) return;
  double s = 0.0;
  for (int k = 3; k <= n_star + 2 && k < static_cast<int>(d.errors_norm.size()); ++k)
    s += d.errors_norm[static_cast<std::size_t>(k)];
  d.delta_av = s / n_star;
}

}  // namespace

KrylovData lanczos(const SparseMatrix& H, std::span<const double> v0, int max_vectors) {
  require_unit(v0, H.rows());
  if (max_vectors < 1 || static_cast<std::size_t>(max_vectors) > H.rows())
    throw InputError("max_vectors must lie in [1, dim]");
  KrylovData out;
  out.vectors.emplace_back(v0.begin(), v0.end());
  Vector w(H.rows());
  while (true) {
    const Vector& v = out.vectors.back();
    H.multiply(v, w);
    out.alphas.push_back(simd::dot(v, w));
    if (static_cast<int>(out.vectors.size()) == max_vectors) break;
    // Two passes of classical Gram-Schmidt against the whole basis; this also
    // removes the alpha and beta components of the three-term recursion.
    std::vector<double> c(out.vectors.size());
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < out.vectors.size(); ++i) c[i] = simd::dot(out.vectors[i], w);
      for (std::size_t i = 0; i < out.vectors.size(); ++i) simd::axpy(-c[i], out.vectors[i], w);
    }
    const double b = simd::norm(w);
    if (b < kLanczosStop) break;
    out.betas.push_back(b);
    simd::scale(1.0 / b, w);
    out.vectors.push_back(w);
  }
  out.steps_run = static_cast<int>(out.vectors.size());
  return out;
}

int fsa_n_star(Scheme scheme, int L, int closed_after) {
  switch (scheme) {
    case Scheme::z2: return L - 3;
    case Scheme::vacuum: return L / 2 - 2;
    default: return std::max(0, closed_after - 3);
  }
}

FsaData fsa(const SparseMatrix& plus, const SparseMatrix& minus, std::span<const double> v0,
            double tol, int n_star) {
  require_unit(v0, plus.rows());
  Vector w(plus.rows());
  minus.multiply(v0, w);
  const double back0 = simd::norm(w);
  if (back0 >= tol) throw SchemeMismatchError("initial state is not annihilated by the lowering part");

  FsaData out;
  out.vectors.emplace_back(v0.begin(), v0.end());
  out.errors_norm.push_back(back0);
  const std::size_t cap = plus.rows() + 1;
  while (out.vectors.size() < cap) {
    plus.multiply(out.vectors.back(), w);
    const double b = simd::norm(w);
    if (b < tol) {
      out.closing_beta = b;
      break;
    }
    simd::scale(1.0 / b, w);
    out.betas.push_back(b);
    out.vectors.push_back(w);
    // delta_n = || H- v_n - beta_n v_{n-1} ||
    Vector back(plus.rows());
    minus.multiply(out.vectors.back(), back);
    simd::axpy(-b, out.vectors[out.vectors.size() - 2], back);
    out.errors_norm.push_back(simd::norm(back));
  }
  out.closed_after = static_cast<int>(out.vectors.size());
  out.errors_sq.resize(out.errors_norm.size());
  for (std::size_t i = 0; i < out.errors_norm.size(); ++i)
    out.errors_sq[i] = out.errors_norm[i] * out.errors_norm[i];

  set_delta_av(out, n_star);
  return out;
}

FsaData fsa(const LadderPair& ladder, std::span<const double> v0, double tol) {
  FsaData d = fsa(ladder.plus, ladder.minus, v0, tol, -1);
  set_delta_av(d, fsa_n_star(ladder.scheme, ladder.config.L, d.closed_after));
  return d;
}

std::vector<ErrorRow> fsa_error_profile(const LadderPair& ladder, std::span<const double> v0) {
  const FsaData d = fsa(ladder, v0);
  std::vector<ErrorRow> rows;
  for (std::size_t n = 1; n < d.errors_norm.size(); ++n)
    rows.push_back({static_cast<int>(n), d.errors_norm[n], d.errors_sq[n]});
  return rows;
}

Tridiagonal tridiagonal(const KrylovData& data) {
  if (data.alphas.empty()) throw InputError("empty Krylov data");
  Tridiagonal t;
  t.diag = data.alphas;
  t.off.assign(data.betas.begin(), data.betas.begin() + static_cast<std::ptrdiff_t>(t.diag.size() - 1));
  return t;
}

Tridiagonal tridiagonal_from_betas(std::span<const double> betas) {
  Tridiagonal t;
  t.diag.assign(betas.size() + 1, 0.0);
  t.off.assign(betas.begin(), betas.end());
  return t;
}

Tridiagonal tridiagonal(const FsaData& data) {
  if (data.vectors.empty()) throw InputError("empty FSA data");
  Tridiagonal t;
  t.diag.assign(static_cast<std::size_t>(data.closed_after), 0.0);
  t.off = data.betas;
  return t;
}

double orthonormality_defect(const std::vector<Vector>& vectors) {
  double m = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double d = simd::dot(vectors[i], vectors[j]);
      m = std::max(m, std::abs(i == j ? d - 1.0 : d));
    }
  return m;
}

}  // namespace scar
