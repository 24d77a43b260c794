#include "scar/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "scar/error.hpp"
#include "scar/simd.hpp"

namespace scar {

Scheme parse_scheme(std::string_view s) {
  if (s == "z2") return Scheme::z2;
  if (s == "z3") return Scheme::z3;
  if (s == "vacuum") return Scheme::vacuum;
  if (s == "z3exact") return Scheme::z3exact;
  throw ConfigError("unknown scheme '" + std::string(s) + "'");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::z2: return "z2";
    case Scheme::z3: return "z3";
    case Scheme::vacuum: return "vacuum";
    case Scheme::z3exact: return "z3exact";
  }
  return "?";
}

const std::vector<std::string>& term_names() {
  static const std::vector<std::string> names{"pxp",     "z2pert",  "z3pert1", "z3pert2",
                                              "z3pert3", "sigma3",  "sigma5",  "sigma7",
                                              "sigma9",  "sigma11", "sigma13"};
  return names;
}

bool is_term_name(std::string_view name) {
  const auto& n = term_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

int sigma_half_width(std::string_view name) {
  if (!name.starts_with("sigma") || !is_term_name(name)) return 0;
  const int width = std::stoi(std::string(name.substr(5)));
  return (width - 1) / 2;
}

double ModelConfig::strength(const std::string& name) const {
  auto it = terms.find(name);
  return it == terms.end() ? 0.0 : it->second;
}

static void check_term_fits(int L, std::string_view name) {
  if (name.starts_with("z3pert") && L % 3 != 0)
    throw ConfigError(std::string(name) + " needs L divisible by 3");
  // At L = 2k+2 the two down-flanks of the window are the same site.
  if (const int k = sigma_half_width(name); k > 0 && L < 2 * k + 2)
    throw ConfigError(std::string(name) + " needs L >= " + std::to_string(2 * k + 2));
  if (name == "z2pert" && L < 4) throw ConfigError("z2pert needs L >= 4");
}

void validate(const ModelConfig& config) {
  if (config.L < kMinSites || config.L > kMaxSites)
    throw SizeError("L out of range: " + std::to_string(config.L));
  for (const auto& [name, value] : config.terms) {
    if (!is_term_name(name)) throw ConfigError("unknown term '" + name + "'");
    if (!std::isfinite(value)) throw ConfigError("non-finite strength for " + name);
    if (name == "pxp" && value != 1.0) throw ConfigError("pxp strength is fixed to 1");
    check_term_fits(config.L, name);
  }
  tag_config(config.L, config.initial);
}

namespace {

inline int bit(Config c, int site, int L) {
  site %= L;
  if (site < 0) site += L;
  return static_cast<int>((c >> site) & 1u);
}

inline Config site_mask(int site, int L) {
  site %= L;
  if (site < 0) site += L;
  return Config{1} << site;
}

// Sum over anchors j of (prod_{p in proj} P_{j+p}) (prod_{f in flips} sigma^x_{j+f}),
// projected onto the constrained space.
struct LocalTerm {
  std::vector<int> proj;
  std::vector<int> flips;
  int anchor_step = 1;
};

void add_local(const ConstrainedBasis& basis, const LocalTerm& term, std::vector<Triplet>& out) {
  const int L = basis.L();
  for (std::size_t a = 0; a < basis.dim(); ++a) {
    const Config s = basis.state(a);
    for (int j = 0; j < L; j += term.anchor_step) {
      bool ok = true;
      for (int p : term.proj) ok = ok && bit(s, j + p, L) == 0;
      if (!ok) continue;
      Config t = s;
      for (int f : term.flips) t ^= site_mask(j + f, L);
      if (auto b = basis.find(t)) out.push_back({*b, a, 1.0});
    }
  }
}

// Lowering window map of sigma(2k+1): 1010...1 on sites i-k..i+k with both
// flanking sites down goes to the complementary 0101...0 pattern.
void add_sigma_lowering(const ConstrainedBasis& basis, int k, std::vector<Triplet>& out) {
  const int L = basis.L();
  const int w = 2 * k + 1;
  for (std::size_t a = 0; a < basis.dim(); ++a) {
    const Config s = basis.state(a);
    for (int i = 0; i < L; ++i) {
      const int lo = i - k;
      if (bit(s, lo - 1, L) || bit(s, lo + w, L)) continue;
      bool ok = true;
      for (int m = 0; m < w && ok; ++m) ok = bit(s, lo + m, L) == (m % 2 == 0 ? 1 : 0);
      if (!ok) continue;
      Config t = s;
      for (int m = 0; m < w; ++m) t ^= site_mask(lo + m, L);
      out.push_back({basis.index(t), a, 1.0});
    }
  }
}

std::vector<LocalTerm> local_terms(std::string_view name) {
  if (name == "pxp") return {{{-1, 1}, {0}, 1}};
  if (name == "z2pert") return {{{-2, -1, 1}, {0}, 1}, {{-2, 0, 1}, {-1}, 1}};
  if (name == "z3pert1")
    return {{{-2, 0, 1}, {-1}, 3}, {{-1, 0, 2}, {1}, 3}, {{-1, 1, 2}, {0}, 3}, {{-2, -1, 1}, {0}, 3}};
  if (name == "z3pert2") return {{{0, 1, 3}, {2}, 3}, {{0, 2, 3}, {1}, 3}};
  if (name == "z3pert3") return {{{0, 4}, {1, 2, 3}, 3}, {{-1, 3}, {0, 1, 2}, 3}};
  return {};
}

}  // namespace

SparseHamiltonian build_pxp(const ConstrainedBasis& basis) { return build_term(basis, "pxp"); }

SparseHamiltonian build_term(const ConstrainedBasis& basis, std::string_view name) {
  if (!is_term_name(name)) throw ConfigError("unknown term '" + std::string(name) + "'");
  check_term_fits(basis.L(), name);
  std::vector<Triplet> t;
  if (const int k = sigma_half_width(name); k > 0) {
    add_sigma_lowering(basis, k, t);
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) t.push_back({t[i].col, t[i].row, t[i].value});
  } else {
    for (const auto& lt : local_terms(name)) add_local(basis, lt, t);
  }
  return SparseMatrix::from_triplets(basis.dim(), basis.dim(), std::move(t));
}

SparseHamiltonian assemble(const ConstrainedBasis& basis, const ModelConfig& config) {
  if (config.L != basis.L()) throw ConfigError("model L does not match basis");
  validate(config);
  std::vector<Triplet> t = build_pxp(basis).triplets();
  for (const auto& [name, value] : config.terms) {
    if (name == "pxp" || value == 0.0) continue;
    for (auto x : build_term(basis, name).triplets()) t.push_back({x.row, x.col, value * x.value});
  }
  return SparseMatrix::from_triplets(basis.dim(), basis.dim(), std::move(t));
}

Config scheme_reference(int L, Scheme scheme, StateTag initial) {
  switch (scheme) {
    case Scheme::z2:
      if (initial != StateTag::z2 && initial != StateTag::z2prime)
        throw ConfigError("z2 scheme needs a z2 or z2prime initial state");
      return tag_config(L, initial);
    case Scheme::z3:
    case Scheme::z3exact:
      if (initial != StateTag::z3) throw ConfigError(to_string(scheme) + " scheme needs the z3 state");
      return tag_config(L, initial);
    case Scheme::vacuum:
      if (initial != StateTag::vacuum) throw ConfigError("vacuum scheme needs the vacuum state");
      return 0;
  }
  return 0;
}

ModelConfig scheme_model(const ModelConfig& config, Scheme scheme) {
  if (scheme != Scheme::z3exact) return config;
  ModelConfig m = config;
  auto it = m.terms.find("z3pert1");
  if (it != m.terms.end() && it->second != -1.0)
    throw ConfigError("z3exact fixes z3pert1 = -1; got " + std::to_string(it->second));
  m.terms["z3pert1"] = -1.0;
  return m;
}

LadderPair grade_split(const SparseMatrix& H, std::span<const Config> states, Config reference) {
  std::vector<Triplet> up;
  for (const auto& x : H.triplets()) {
    const int dr = hamming(states[x.row], reference);
    const int dc = hamming(states[x.col], reference);
    if (dr == dc)
      throw UnsupportedSplitError("operator connects configurations at equal distance from the reference");
    if (dr > dc) up.push_back(x);
  }
  LadderPair p;
  p.plus = SparseMatrix::from_triplets(H.rows(), H.cols(), std::move(up));
  p.minus = p.plus.transpose();
  return p;
}

LadderPair ladder_split(const ConstrainedBasis& basis, const ModelConfig& config, Scheme scheme) {
  validate(config);
  const Config ref = scheme_reference(basis.L(), scheme, config.initial);
  if (scheme == Scheme::vacuum) {
    for (const auto& [name, value] : config.terms)
      if (value != 0.0 && (name == "z2pert" || name.starts_with("z3pert")))
        throw UnsupportedSplitError(name + " has no ladder form in the vacuum scheme");
  }
  const ModelConfig model = scheme_model(config, scheme);
  LadderPair p = grade_split(assemble(basis, model), basis.states(), ref);
  p.scheme = scheme;
  p.config = model;
  return p;
}

std::vector<double> matvec(const SparseMatrix& H, std::span<const double> v) { return H * v; }

namespace {

struct Defects {
  SparseMatrix up, down;
};

Defects defect_operators(const LadderPair& l) {
  const SparseMatrix hz = add(commutator(l.plus, l.minus), SparseMatrix(l.plus.rows(), l.plus.cols()), 0.5, 0.0);
  return {add(commutator(hz, l.plus), l.plus, 1.0, -1.0), add(commutator(hz, l.minus), l.minus, 1.0, 1.0)};
}

}  // namespace

// Largest singular value by power iteration on A^T A from a fixed start vector.
double spectral_norm(const SparseMatrix& A) {
  if (A.nnz() == 0) return 0.0;
  const SparseMatrix At = A.transpose();
  std::vector<double> v(A.cols());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 7.0 * static_cast<double>(i));
  double sigma = 0.0;
  for (int it = 0; it < 2000; ++it) {
    const double nv = simd::norm(v);
    if (nv == 0.0) return 0.0;
    simd::scale(1.0 / nv, v);
    const std::vector<double> w = A * v;
    const double next = simd::norm(w);
    v = At * w;
    if (std::abs(next - sigma) <= 1e-13 * std::max(1.0, next)) return next;
    sigma = next;
  }
  return sigma;
}

double algebra_defect(const LadderPair& ladder) {
  const Defects d = defect_operators(ladder);
  return std::max(spectral_norm(d.up), spectral_norm(d.down));
}

double sector_algebra_defect(const LadderPair& ladder, const std::vector<std::vector<double>>& vectors) {
  const Defects d = defect_operators(ladder);
  double m = 0.0;
  for (const auto& v : vectors)
    for (const auto* op : {&d.up, &d.down}) m = std::max(m, simd::norm((*op) * v));
  return m;
}

SparseMatrix free_paramagnet(int L) {
  const LadderPair p = free_paramagnet_ladder(L);
  return add(p.plus, p.minus);
}

LadderPair free_paramagnet_ladder(int L) {
  if (L < 1 || L > 20) throw SizeError("free paramagnet supports 1 <= L <= 20");
  const std::size_t n = std::size_t{1} << L;
  std::vector<Triplet> up;
  for (std::size_t s = 0; s < n; ++s)
    for (int j = 0; j < L; ++j)
      if (!((s >> j) & 1u)) up.push_back({s | (std::size_t{1} << j), s, 1.0});
  LadderPair p;
  p.plus = SparseMatrix::from_triplets(n, n, std::move(up));
  p.minus = p.plus.transpose();
  p.scheme = Scheme::vacuum;
  p.config.L = L;
  return p;
}

SparseMatrix up_density(const ConstrainedBasis& basis) {
  std::vector<double> d(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i)
    d[i] = static_cast<double>(std::popcount(basis.state(i))) / basis.L();
  return SparseMatrix::diagonal(d);
}

SparseMatrix nnn_correlator(const ConstrainedBasis& basis) {
  std::vector<double> d(basis.dim());
  const int L = basis.L();
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const Config c = basis.state(i);
    d[i] = static_cast<double>(std::popcount(c & translate(c, L, -2))) / L;
  }
  return SparseMatrix::diagonal(d);
}

}  // namespace scar
