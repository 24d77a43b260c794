#include "scar/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "scar/error.hpp"
#include "scar/simd.hpp"

namespace scar {

std::vector<double> time_grid(double dt, double t_max) {
  if (!(dt > 0.0) || !(t_max >= 0.0)) throw ConfigError("time grid needs dt > 0 and t_max >= 0");
  const auto n = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) * dt;
  return t;
}

namespace {

void require_state(std::span<const double> psi0, std::size_t dim) {
  if (psi0.size() != dim) throw DimensionError("state has wrong dimension");
  if (std::abs(simd::norm(psi0) - 1.0) > 1e-10) throw InputError("state is not normalized");
}

std::vector<cplx> to_complex(std::span<const double> v) { return {v.begin(), v.end()}; }

}  // namespace

DenseEvolution::DenseEvolution(std::shared_ptr<const EigenSystem> eig) : eig_(std::move(eig)) {}
DenseEvolution::DenseEvolution(EigenSystem eig)
    : eig_(std::make_shared<const EigenSystem>(std::move(eig))) {}

void DenseEvolution::evolve(std::span<const double> psi0, std::span<const double> times,
                            const StateVisitor& visit) const {
  const EigenSystem& e = *eig_;
  const std::size_t n = e.dim;
  if (psi0.size() != n) throw DimensionError("state has wrong dimension");
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = simd::dot({&e.vectors[k * n], n}, psi0);
  std::vector<double> re(n), im(n);
  std::vector<cplx> psi(n);
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::fill(re.begin(), re.end(), 0.0);
    std::fill(im.begin(), im.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      if (c[k] == 0.0) continue;
      const double ph = -e.values[k] * times[i];
      const std::span<const double> col(&e.vectors[k * n], n);
      simd::axpy(c[k] * std::cos(ph), col, re);
      simd::axpy(c[k] * std::sin(ph), col, im);
    }
    for (std::size_t j = 0; j < n; ++j) psi[j] = {re[j], im[j]};
    visit(i, psi);
  }
}

KrylovEvolution::KrylovEvolution(SparseMatrix H, int krylov_dim, double tol)
    : H_(std::make_unique<SparseMatrix>(std::move(H))), prop_(*H_, krylov_dim, tol) {}

void KrylovEvolution::evolve(std::span<const double> psi0, std::span<const double> times,
                             const StateVisitor& visit) const {
  const auto z = to_complex(psi0);
  prop_.evolve(z, times, visit);
}

Propagation parse_propagation(const std::string& s) {
  if (s == "auto") return Propagation::automatic;
  if (s == "dense") return Propagation::dense;
  if (s == "krylov") return Propagation::krylov;
  throw ConfigError("unknown propagation method '" + s + "'");
}

std::unique_ptr<Evolution> make_evolution(const SparseMatrix& H, Propagation kind, bool allow_large) {
  if (kind == Propagation::krylov ||
      (kind == Propagation::automatic && H.rows() > kAutoDenseLimit))
    return std::make_unique<KrylovEvolution>(H);
  return std::make_unique<DenseEvolution>(eigendecompose(H, allow_large));
}

TimeSeries return_probability(const EigenSystem& eig, std::span<const double> psi0,
                              std::span<const double> times) {
  const std::size_t n = eig.dim;
  require_state(psi0, n);
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double c = simd::dot({&eig.vectors[k * n], n}, psi0);
    w[k] = c * c;
  }
  TimeSeries r{{times.begin(), times.end()}, std::vector<double>(times.size())};
  for (std::size_t i = 0; i < times.size(); ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double ph = eig.values[k] * times[i];
      re += w[k] * std::cos(ph);
      im -= w[k] * std::sin(ph);
    }
    r.values[i] = re * re + im * im;
  }
  return r;
}

TimeSeries return_probability(const Evolution& ev, std::span<const double> psi0,
                              std::span<const double> times) {
  require_state(psi0, ev.dim());
  const auto z0 = to_complex(psi0);
  TimeSeries r{{times.begin(), times.end()}, std::vector<double>(times.size())};
  ev.evolve(psi0, times, [&](std::size_t i, std::span<const cplx> psi) {
    r.values[i] = std::norm(simd::zdotc(z0, psi));
  });
  return r;
}

ComplexitySeries spread_complexity(const Evolution& ev, std::span<const double> psi0,
                                   const std::vector<Vector>& krylov, std::span<const double> times) {
  require_state(psi0, ev.dim());
  if (krylov.empty()) throw InputError("empty Krylov basis");
  for (const auto& k : krylov)
    if (k.size() != ev.dim()) throw DimensionError("Krylov vector has wrong dimension");
  if (orthonormality_defect(krylov) > 1e-8) throw InputError("Krylov basis is not orthonormal");
  double d = 0.0;
  for (std::size_t i = 0; i < psi0.size(); ++i) d = std::max(d, std::abs(psi0[i] - krylov[0][i]));
  if (d > 1e-10) throw InputError("Krylov basis must start at the initial state");

  std::vector<std::vector<cplx>> K;
  K.reserve(krylov.size());
  for (const auto& k : krylov) K.push_back(to_complex(k));
  ComplexitySeries out;
  out.complexity = {{times.begin(), times.end()}, std::vector<double>(times.size())};
  out.leakage = out.complexity;
  ev.evolve(psi0, times, [&](std::size_t i, std::span<const cplx> psi) {
    double c = 0.0, w = 0.0;
    for (std::size_t k = 0; k < K.size(); ++k) {
      const double p = std::norm(simd::zdotc(K[k], psi));
      c += static_cast<double>(k) * p;
      w += p;
    }
    out.complexity.values[i] = c;
    out.leakage.values[i] = 1.0 - w;
  });
  return out;
}

ComplexitySeries spread_complexity(const EigenSystem& eig, std::span<const double> psi0,
                                   const std::vector<Vector>& krylov, std::span<const double> times) {
  // Non-owning view; the eigensystem outlives this call.
  const DenseEvolution ev(std::shared_ptr<const EigenSystem>(&eig, [](const EigenSystem*) {}));
  return spread_complexity(ev, psi0, krylov, times);
}

double ConvergenceTable::max_spread(double t_limit, int min_count) const {
  double m = 0.0;
  for (std::size_t t = 0; t < times.size(); ++t) {
    if (times[t] > t_limit + 1e-12) continue;
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t a = 0; a < counts.size(); ++a) {
      if (counts[a] <= min_count) continue;
      lo = std::min(lo, complexity[a][t]);
      hi = std::max(hi, complexity[a][t]);
    }
    if (hi >= lo) m = std::max(m, hi - lo);
  }
  return m;
}

ConvergenceTable complexity_convergence(const SparseMatrix& H, const Evolution& ev,
                                        std::span<const double> psi0, std::vector<int> counts,
                                        std::span<const double> times) {
  require_state(psi0, ev.dim());
  if (counts.empty()) throw InputError("no basis counts given");
  for (int c : counts)
    if (c < 1 || static_cast<std::size_t>(c) > H.rows()) throw InputError("basis count outside [1, dim]");
  const int n_max = *std::max_element(counts.begin(), counts.end());
  const KrylovData kd = lanczos(H, psi0, n_max);

  std::vector<std::vector<cplx>> K;
  for (const auto& k : kd.vectors) K.push_back(to_complex(k));
  std::vector<std::vector<double>> prob(times.size(), std::vector<double>(K.size()));
  ev.evolve(psi0, times, [&](std::size_t i, std::span<const cplx> psi) {
    for (std::size_t k = 0; k < K.size(); ++k) prob[i][k] = std::norm(simd::zdotc(K[k], psi));
  });

  ConvergenceTable table;
  table.counts = counts;
  table.times.assign(times.begin(), times.end());
  table.lanczos_vectors = kd.steps_run;
  for (int c : counts) {
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(c), K.size());
    std::vector<double> row(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += static_cast<double>(k) * prob[i][k];
      row[i] = s;
    }
    table.complexity.push_back(std::move(row));
  }
  return table;
}

TimeSeries expectation_series(const Evolution& ev, std::span<const double> psi0,
                              const SparseMatrix& O, std::span<const double> times) {
  require_state(psi0, ev.dim());
  if (O.rows() != ev.dim() || O.cols() != ev.dim()) throw DimensionError("observable has wrong dimension");
  TimeSeries r{{times.begin(), times.end()}, std::vector<double>(times.size())};
  std::vector<cplx> o(ev.dim());
  ev.evolve(psi0, times, [&](std::size_t i, std::span<const cplx> psi) {
    O.multiply(psi, o);
    r.values[i] = simd::zdotc(psi, o).real();
  });
  return r;
}

double diagonal_ensemble(const EigenSystem& eig, std::span<const double> psi0,
                         const SparseMatrix& O, double degeneracy_tol) {
  const std::size_t n = eig.dim;
  require_state(psi0, n);
  if (O.rows() != n) throw DimensionError("observable has wrong dimension");
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = simd::dot({&eig.vectors[k * n], n}, psi0);
  std::vector<double> block(n), o(n);
  double total = 0.0;
  std::size_t a = 0;
  while (a < n) {
    std::size_t b = a + 1;
    while (b < n && eig.values[b] - eig.values[b - 1] <= degeneracy_tol * std::max(1.0, std::abs(eig.values[b])))
      ++b;
    std::fill(block.begin(), block.end(), 0.0);
    bool any = false;
    for (std::size_t k = a; k < b; ++k) {
      if (c[k] == 0.0) continue;
      simd::axpy(c[k], {&eig.vectors[k * n], n}, block);
      any = true;
    }
    if (any) {
      O.multiply(block, o);
      total += simd::dot(block, o);
    }
    a = b;
  }
  return total;
}

std::vector<CrossCorrelation> cross_correlation(const TimeSeries& a, const TimeSeries& b, int max_lag) {
  if (a.times.size() != b.times.size() || a.values.size() != b.values.size() ||
      a.values.size() != a.times.size())
    throw DimensionError("cross-correlation needs series on the same grid");
  for (std::size_t i = 0; i < a.times.size(); ++i)
    if (std::abs(a.times[i] - b.times[i]) > 1e-12) throw DimensionError("time grids differ");
  if (max_lag < 0) throw InputError("max_lag must be non-negative");
  const auto n = static_cast<long>(a.values.size());
  const double dt = n > 1 ? a.times[1] - a.times[0] : 0.0;

  double ma = 0.0, mb = 0.0;
  for (long i = 0; i < n; ++i) {
    ma += a.values[static_cast<std::size_t>(i)];
    mb += b.values[static_cast<std::size_t>(i)];
  }
  if (n > 0) {
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
  }
  double na = 0.0, nb = 0.0;
  for (long i = 0; i < n; ++i) {
    na += std::pow(a.values[static_cast<std::size_t>(i)] - ma, 2);
    nb += std::pow(b.values[static_cast<std::size_t>(i)] - mb, 2);
  }
  const double denom = std::sqrt(na * nb);

  std::vector<CrossCorrelation> out;
  for (long lag = -max_lag; lag <= max_lag; ++lag) {
    double raw = 0.0, cen = 0.0;
    for (long i = std::max(0L, -lag); i < n && i + lag < n; ++i) {
      const double x = a.values[static_cast<std::size_t>(i + lag)];
      const double y = b.values[static_cast<std::size_t>(i)];
      raw += x * y;
      cen += (x - ma) * (y - mb);
    }
    out.push_back({static_cast<int>(lag), static_cast<double>(lag) * dt, raw,
                   denom > 0.0 ? cen / denom : 0.0});
  }
  return out;
}

}  // namespace scar
