#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scar/dynamics.hpp"
#include "scar/operators.hpp"

namespace scar {

// Objectives are oriented for maximization.
using ObjectiveFn = std::function<double(std::span<const double>)>;

struct Objective {
  std::string kind;
  std::vector<std::string> parameters;  // names of the free strengths, in order
  ObjectiveFn fn;
  std::size_t dimension() const { return parameters.size(); }
};

struct RevivalSettings {
  double dt = 0.02;
  double t_max = 40.0;
  double prominence = 0.02;
  Propagation propagation = Propagation::automatic;
};

/// revival_height of R(t) from the config's initial state, with the named strengths free.
Objective revival_objective(const ModelConfig& base, std::vector<std::string> free_terms,
                            RevivalSettings settings = {});
/// -delta_av of the FSA in `scheme`.
Objective neg_delta_av_objective(const ModelConfig& base, std::vector<std::string> free_terms, Scheme scheme);
/// -error3_vacuum(h, L), one parameter h.
Objective neg_error3_analytic_objective(double L);
/// -eps_n of the numerical FSA with `term` as the single free strength.
Objective neg_error_n_objective(const ModelConfig& base, const std::string& term, Scheme scheme, int n);

struct OptimResult {
  std::vector<double> best;
  double value = 0.0;
  int evaluations = 0;
  std::vector<std::pair<std::vector<double>, double>> trace;
  bool converged = true;
};

/// Uniform grid of `steps` points on [lo, hi], then golden-section refinement
/// around the best grid point down to `tol` in the parameter.
OptimResult scan_1d(const Objective& objective, double lo, double hi, int steps, double tol = 1e-4,
                    int threads = 1);

struct NelderMeadOptions {
  int max_evaluations = 600;
  double tol = 1e-4;  // simplex diameter
  int max_restarts = 3;
  std::uint64_t seed = 1;
};

OptimResult optimize_vector(const Objective& objective, std::vector<double> x0, double radius,
                            const NelderMeadOptions& options = {});

/// Largest R(t) after the first dip. The dip is the running minimum, confirmed
/// once R has climbed `prominence` above it; 0 if no dip is confirmed.
double revival_height(const TimeSeries& R, double prominence = 0.02);

}  // namespace scar
