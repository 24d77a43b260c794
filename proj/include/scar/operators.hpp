#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scar/hilbert.hpp"
#include "scar/sparse.hpp"

namespace scar {

using SparseHamiltonian = SparseMatrix;

enum class Scheme { z2, z3, vacuum, z3exact };

Scheme parse_scheme(std::string_view s);
std::string to_string(Scheme s);

/// pxp, z2pert, z3pert1..3, sigma3..sigma13
const std::vector<std::string>& term_names();
bool is_term_name(std::string_view name);
/// Half-width k of a sigma(2k+1) term, or 0 for any other name.
int sigma_half_width(std::string_view name);

struct ModelConfig {
  int L = 0;
  StateTag initial = StateTag::vacuum;
  // Perturbation strengths in units of the PXP amplitude (which is fixed to 1).
  std::map<std::string, double> terms;

  double strength(const std::string& name) const;
};

/// Throws ConfigError for unknown names, non-finite strengths, or terms that do not fit on L sites.
void validate(const ModelConfig& config);

SparseHamiltonian build_pxp(const ConstrainedBasis& basis);
SparseHamiltonian build_term(const ConstrainedBasis& basis, std::string_view name);
SparseHamiltonian assemble(const ConstrainedBasis& basis, const ModelConfig& config);

struct LadderPair {
  SparseMatrix plus;
  SparseMatrix minus;
  Scheme scheme = Scheme::z2;
  ModelConfig config;
};

/// Reference configuration a scheme grades against (the FSA start state).
Config scheme_reference(int L, Scheme scheme, StateTag initial);
/// Hamiltonian that the ladder of `scheme` decomposes (z3exact forces z3pert1 = -1).
ModelConfig scheme_model(const ModelConfig& config, Scheme scheme);

LadderPair ladder_split(const ConstrainedBasis& basis, const ModelConfig& config, Scheme scheme);

/// Splits any real matrix on a set of configurations by Hamming distance to `reference`.
LadderPair grade_split(const SparseMatrix& H, std::span<const Config> states, Config reference);

std::vector<double> matvec(const SparseMatrix& H, std::span<const double> v);

/// Operator 2-norm (largest singular value), by power iteration.
double spectral_norm(const SparseMatrix& A);
/// max of ||[Hz, H+] - H+|| and ||[Hz, H-] + H-|| in the 2-norm, with Hz = [H+, H-]/2.
double algebra_defect(const LadderPair& ladder);
/// Same defect measured only on the given vectors: max_i ||D v_i||_2.
double sector_algebra_defect(const LadderPair& ladder, const std::vector<std::vector<double>>& vectors);

// Unconstrained paramagnet sum_j sigma^x_j on all 2^L configurations, with its
// popcount-raising/lowering split. Used as an exact su(2) control.
SparseMatrix free_paramagnet(int L);
LadderPair free_paramagnet_ladder(int L);

// Diagonal observables.
SparseMatrix up_density(const ConstrainedBasis& basis);
SparseMatrix nnn_correlator(const ConstrainedBasis& basis);

}  // namespace scar
