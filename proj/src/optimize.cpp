#include "scar/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "scar/analytic.hpp"
#include "scar/error.hpp"
#include "scar/krylov.hpp"
#include "scar/parallel.hpp"

namespace scar {

namespace {

// Memoizes an objective on exact parameter vectors; safe to call from several threads.
ObjectiveFn memoize(ObjectiveFn fn) {
  struct Cache {
    std::mutex mu;
    std::map<std::vector<double>, double> values;
  };
  auto cache = std::make_shared<Cache>();
  return [fn = std::move(fn), cache](std::span<const double> x) {
    std::vector<double> key(x.begin(), x.end());
    {
      std::lock_guard lock(cache->mu);
      if (auto it = cache->values.find(key); it != cache->values.end()) return it->second;
    }
    const double v = fn(x);
    std::lock_guard lock(cache->mu);
    cache->values.emplace(std::move(key), v);
    return v;
  };
}

ModelConfig with_strengths(const ModelConfig& base, const std::vector<std::string>& names,
                           std::span<const double> x) {
  if (x.size() != names.size()) throw DimensionError("objective called with wrong dimension");
  ModelConfig c = base;
  for (std::size_t i = 0; i < names.size(); ++i) c.terms[names[i]] = x[i];
  return c;
}

void check_free_terms(const ModelConfig& base, const std::vector<std::string>& names) {
  ModelConfig probe = base;
  for (const auto& n : names) {
    if (n == "pxp") throw ConfigError("the pxp strength is fixed");
    probe.terms[n] = 0.0;
  }
  validate(probe);
}

}  // namespace

Objective revival_objective(const ModelConfig& base, std::vector<std::string> free_terms,
                            RevivalSettings settings) {
  check_free_terms(base, free_terms);
  auto basis = std::make_shared<const ConstrainedBasis>(enumerate_basis(base.L));
  ModelConfig fixed = base;
  for (const auto& n : free_terms) fixed.terms.erase(n);
  auto h0 = std::make_shared<const SparseMatrix>(assemble(*basis, fixed));
  auto terms = std::make_shared<std::vector<SparseMatrix>>();
  for (const auto& n : free_terms) terms->push_back(build_term(*basis, n));
  auto psi0 = std::make_shared<const std::vector<double>>(special_state(*basis, base.initial));
  auto times = std::make_shared<const std::vector<double>>(time_grid(settings.dt, settings.t_max));

  ObjectiveFn fn = [=](std::span<const double> x) {
    if (x.size() != terms->size()) throw DimensionError("objective called with wrong dimension");
    SparseMatrix H = *h0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0.0) H = add(H, (*terms)[i], 1.0, x[i]);
    TimeSeries R;
    const bool dense = settings.propagation == Propagation::dense ||
                       (settings.propagation == Propagation::automatic && H.rows() <= kAutoDenseLimit);
    if (dense) {
      R = return_probability(eigendecompose(H), *psi0, *times);
    } else {
      const KrylovEvolution ev(std::move(H));
      R = return_probability(ev, *psi0, *times);
    }
    return revival_height(R, settings.prominence);
  };
  return {"revival_height", std::move(free_terms), memoize(std::move(fn))};
}

Objective neg_delta_av_objective(const ModelConfig& base, std::vector<std::string> free_terms, Scheme scheme) {
  check_free_terms(base, free_terms);
  auto basis = std::make_shared<const ConstrainedBasis>(enumerate_basis(base.L));
  const std::vector<std::string> names = free_terms;
  ObjectiveFn fn = [=](std::span<const double> x) {
    const ModelConfig c = with_strengths(base, names, x);
    const LadderPair lp = ladder_split(*basis, c, scheme);
    return -fsa(lp, special_state(*basis, c.initial)).delta_av;
  };
  return {"neg_delta_av", std::move(free_terms), memoize(std::move(fn))};
}

Objective neg_error3_analytic_objective(double L) {
  analytic::error3_vacuum(0.0, L);  // validates L
  ObjectiveFn fn = [L](std::span<const double> x) {
    if (x.size() != 1) throw DimensionError("error3 objective takes one parameter");
    return -analytic::error3_vacuum(x[0], L);
  };
  return {"neg_error3_analytic", {"h"}, std::move(fn)};
}

Objective neg_error_n_objective(const ModelConfig& base, const std::string& term, Scheme scheme, int n) {
  check_free_terms(base, {term});
  if (n < 1) throw InputError("FSA step must be >= 1");
  auto basis = std::make_shared<const ConstrainedBasis>(enumerate_basis(base.L));
  ObjectiveFn fn = [=](std::span<const double> x) {
    const ModelConfig c = with_strengths(base, {term}, x);
    const FsaData d = fsa(ladder_split(*basis, c, scheme), special_state(*basis, c.initial));
    if (static_cast<std::size_t>(n) >= d.errors_sq.size())
      throw InputError("FSA closed before step " + std::to_string(n));
    return -d.errors_sq[static_cast<std::size_t>(n)];
  };
  return {"neg_error_n_numeric(" + std::to_string(n) + ")", {term}, memoize(std::move(fn))};
}

OptimResult scan_1d(const Objective& objective, double lo, double hi, int steps, double tol, int threads) {
  if (!(lo < hi)) throw InputError("scan_1d needs lo < hi");
  if (steps < 3) throw InputError("scan_1d needs at least 3 grid points");
  if (objective.dimension() != 1) throw InputError("scan_1d needs a one-parameter objective");
  OptimResult r;
  const double h = (hi - lo) / (steps - 1);
  std::vector<double> grid(static_cast<std::size_t>(steps)), vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = lo + static_cast<double>(i) * h;
  grid.back() = hi;
  parallel_for(grid.size(), threads, [&](std::size_t i) { vals[i] = objective.fn({&grid[i], 1}); });
  for (std::size_t i = 0; i < grid.size(); ++i) r.trace.push_back({{grid[i]}, vals[i]});
  r.evaluations = steps;
  const auto ib = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());

  auto eval = [&](double x) {
    const double v = objective.fn({&x, 1});
    ++r.evaluations;
    r.trace.push_back({{x}, v});
    return v;
  };
  double a = grid[ib == 0 ? 0 : ib - 1];
  double b = grid[std::min(ib + 1, grid.size() - 1)];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = eval(c), fd = eval(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = eval(d);
    }
  }
  // Best over everything evaluated; ties keep the earliest point.
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    if (r.trace[i].second > r.trace[best].second) best = i;
  r.best = r.trace[best].first;
  r.value = r.trace[best].second;
  return r;
}

OptimResult optimize_vector(const Objective& objective, std::vector<double> x0, double radius,
                            const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0 || n > 6) throw InputError("optimize_vector supports 1 to 6 parameters");
  if (n != objective.dimension()) throw DimensionError("start vector does not match objective");
  if (!(radius > 0.0)) throw InputError("simplex radius must be positive");

  OptimResult r;
  auto eval = [&](const std::vector<double>& x) {
    const double v = objective.fn(x);
    ++r.evaluations;
    r.trace.push_back({x, v});
    return -v;  // minimize the negative
  };
  std::mt19937_64 rng(options.seed);
  std::vector<double> best = x0;
  double best_g = eval(best);
  bool budget_hit = false;

  for (int restart = 0; restart <= options.max_restarts && !budget_hit; ++restart) {
    const double rad = radius * std::pow(0.5, restart);
    std::vector<std::vector<double>> S(n + 1, best);
    std::vector<double> G(n + 1, best_g);
    for (std::size_t i = 0; i < n; ++i) {
      const double sign = restart == 0 ? 1.0 : ((rng() & 1u) ? 1.0 : -1.0);
      S[i + 1][i] += sign * rad;
      G[i + 1] = eval(S[i + 1]);
    }
    const double start_g = best_g;
    while (true) {
      std::vector<std::size_t> order(n + 1);
      for (std::size_t i = 0; i <= n; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return G[a] < G[b]; });
      std::vector<std::vector<double>> S2;
      std::vector<double> G2;
      for (auto i : order) {
        S2.push_back(S[i]);
        G2.push_back(G[i]);
      }
      S = std::move(S2);
      G = std::move(G2);

      double diam = 0.0;
      for (std::size_t i = 1; i <= n; ++i) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < n; ++k) d2 += (S[i][k] - S[0][k]) * (S[i][k] - S[0][k]);
        diam = std::max(diam, std::sqrt(d2));
      }
      if (diam < options.tol) break;
      if (r.evaluations >= options.max_evaluations) {
        budget_hit = true;
        break;
      }

      std::vector<double> c(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) c[k] += S[i][k] / static_cast<double>(n);
      auto along = [&](double t) {
        std::vector<double> x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = c[k] + t * (S[n][k] - c[k]);
        return x;
      };
      const auto xr = along(-1.0);
      const double gr = eval(xr);
      if (gr < G[0]) {
        const auto xe = along(-2.0);
        const double ge = eval(xe);
        if (ge < gr) {
          S[n] = xe;
          G[n] = ge;
        } else {
          S[n] = xr;
          G[n] = gr;
        }
      } else if (gr < G[n - 1]) {
        S[n] = xr;
        G[n] = gr;
      } else {
        const bool outside = gr < G[n];
        const auto xc = along(outside ? -0.5 : 0.5);
        const double gc = eval(xc);
        if (gc < (outside ? gr : G[n])) {
          S[n] = xc;
          G[n] = gc;
        } else {
          for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) S[i][k] = S[0][k] + 0.5 * (S[i][k] - S[0][k]);
            G[i] = eval(S[i]);
          }
        }
      }
    }
    const auto ib = static_cast<std::size_t>(std::min_element(G.begin(), G.end()) - G.begin());
    if (G[ib] < best_g) {
      best_g = G[ib];
      best = S[ib];
    }
    if (restart > 0 && start_g - best_g < 1e-12) break;
  }
  r.best = best;
  r.value = -best_g;
  r.converged = !budget_hit;
  return r;
}

double revival_height(const TimeSeries& R, double prominence) {
  const auto& v = R.values;
  if (v.size() < 3) throw InputError("series too short for a revival");
  if (std::abs(v[0] - 1.0) > 1e-9) throw InputError("return probability must start at 1");
  double run_min = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    run_min = std::min(run_min, v[i]);
    if (v[i] > run_min + prominence) return *std::max_element(v.begin() + static_cast<std::ptrdiff_t>(i), v.end());
  }
  return 0.0;
}

}  // namespace scar
