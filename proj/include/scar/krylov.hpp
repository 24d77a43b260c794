#pragma once

#include <span>
#include <vector>

#include "scar/operators.hpp"
#include "scar/sparse.hpp"

namespace scar {

using Vector = std::vector<double>;

struct KrylovData {
  std::vector<double> alphas;  // alpha_0 .. alpha_{m-1}
  std::vector<double> betas;   // beta_1 .. beta_{m-1}; betas[i] couples vectors i and i+1
  std::vector<Vector> vectors;
  int steps_run = 0;           // number of Krylov vectors
};

struct FsaData {
  std::vector<double> betas;         // betas[i] = beta_{i+1} = ||H+ v_i||
  std::vector<Vector> vectors;       // v_0 .. v_{closed_after-1}
  std::vector<double> errors_norm;   // errors_norm[n] = delta_n, with delta_0 = ||H- v_0||
  std::vector<double> errors_sq;     // eps_n = delta_n^2
  double delta_av = 0.0;
  int closed_after = 0;              // basis size at closure
  double closing_beta = 0.0;         // ||H+ v_last|| that triggered closure
};

struct ErrorRow {
  int n;
  double delta;
  double eps;
};

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  std::size_t dim() const { return diag.size(); }
};

inline constexpr double kNormTol = 1e-12;
inline constexpr double kLanczosStop = 1e-12;
inline constexpr double kClosureTol = 1e-8;

/// Lanczos with full two-pass classical Gram-Schmidt reorthogonalization.
/// Builds at most `max_vectors` Krylov vectors.
KrylovData lanczos(const SparseMatrix& H, std::span<const double> v0, int max_vectors);

/// Forward-scattering recursion; the ladder overload averages errors over the scheme's window.
FsaData fsa(const LadderPair& ladder, std::span<const double> v0, double tol = kClosureTol);
FsaData fsa(const SparseMatrix& plus, const SparseMatrix& minus, std::span<const double> v0,
            double tol, int n_star);

/// Averaging length n* used for delta_av.
int fsa_n_star(Scheme scheme, int L, int closed_after);

std::vector<ErrorRow> fsa_error_profile(const LadderPair& ladder, std::span<const double> v0);

Tridiagonal tridiagonal(const KrylovData& data);
Tridiagonal tridiagonal(const FsaData& data);
/// Zero diagonal, given off-diagonal.
Tridiagonal tridiagonal_from_betas(std::span<const double> betas);

/// max_{i != j} |<v_i|v_j>| and max_i | ||v_i|| - 1 |
double orthonormality_defect(const std::vector<Vector>& vectors);

}  // namespace scar
