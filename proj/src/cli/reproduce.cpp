#include <algorithm>
#include <cmath>

#include "commands.hpp"
#include "csv.hpp"
#include "json.hpp"
#include "scar/analytic.hpp"
#include "scar/error.hpp"
#include "scar/optimize.hpp"
#include "scar/presets.hpp"

namespace scar::cli {

using nlohmann::json;

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> t{"z2-beta-compare", "z2-complexity",   "z3-summary",
                                          "z3-exact",        "vacuum-complexity", "fsa-errors-z2",
                                          "fsa-errors-vacuum", "error3-scan",   "q-scan"};
  return t;
}

namespace {

struct Target {
  Context& ctx;
  int L(int fallback) const { return ctx.cfg.model.L ? ctx.cfg.model.L : fallback; }
  double lambda() const {
    if (ctx.opt.lambda) return *ctx.opt.lambda;
    auto it = ctx.cfg.model.terms.find("z2pert");
    return it != ctx.cfg.model.terms.end() ? it->second : presets::kZ2Lambda;
  }
  Propagation prop() const { return parse_propagation(ctx.opt.propagation); }
  std::vector<double> times() const { return time_grid(ctx.cfg.dt, ctx.cfg.t_max); }
};

ModelConfig make_model(int L, StateTag tag, presets::Terms terms = {}) {
  ModelConfig m;
  m.L = L;
  m.initial = tag;
  m.terms = std::move(terms);
  validate(m);
  return m;
}

std::string tag_of(double x) {
  std::string s = format_double(x);
  std::replace(s.begin(), s.end(), '.', 'p');
  std::replace(s.begin(), s.end(), '-', 'm');
  return s;
}

// Lanczos, FSA and dynamics for one model, written as <prefix>lanczos.csv etc.
void krylov_bundle(Target& t, const ModelConfig& m, Scheme s, const std::string& prefix, int lanczos_vectors,
                   bool dynamics) {
  const ConstrainedBasis b = enumerate_basis(m.L);
  const SparseMatrix H = assemble(b, m);
  const auto psi0 = special_state(b, m.initial);
  const FsaData fd = fsa(ladder_split(b, m, s), psi0);
  const KrylovData kd =
      lanczos(H, psi0, static_cast<int>(std::min<std::size_t>(b.dim(), static_cast<std::size_t>(lanczos_vectors))));
  write_lanczos_csv(t.ctx.out.open(prefix + "lanczos.csv"), kd);
  write_fsa_csv(t.ctx.out.open(prefix + "fsa.csv"), fd);
  if (dynamics) {
    const DynamicsRun d = run_dynamics(H, b, psi0, t.times(), &kd.vectors, &fd.vectors, t.prop(), t.ctx.opt.allow_large);
    write_dynamics_csv(t.ctx.out.open(prefix + "dynamics.csv"), d);
  }
}

void z2_beta_compare(Target& t) {
  const ModelConfig m = make_model(t.L(18), StateTag::z2, {{"z2pert", t.lambda()}});
  krylov_bundle(t, m, Scheme::z2, "", t.ctx.opt.steps > 0 ? t.ctx.opt.steps : 3 * m.L, false);
}

void z2_complexity(Target& t) {
  for (double lam : {0.0, t.lambda()}) {
    const ModelConfig m = make_model(t.L(18), StateTag::z2, {{"z2pert", lam}});
    krylov_bundle(t, m, Scheme::z2, "lambda_" + tag_of(lam) + "_", t.ctx.opt.steps > 0 ? t.ctx.opt.steps : 100, true);
  }
}

void z3_summary(Target& t) {
  const int L = t.L(18);
  krylov_bundle(t, make_model(L, StateTag::z3), Scheme::z3, "bare_", 3 * L, true);
  krylov_bundle(t, make_model(L, StateTag::z3, presets::z3_optimal()), Scheme::z3, "optimal_", 3 * L, true);
}

void z3_exact(Target& t) {
  const int L = t.L(18);
  const ModelConfig m = make_model(L, StateTag::z3, {{"z3pert1", -1.0}});
  krylov_bundle(t, m, Scheme::z3exact, "", 3 * L, true);
  const ConstrainedBasis b = enumerate_basis(L);
  const LadderPair lp = ladder_split(b, m, Scheme::z3exact);
  const FsaData fd = fsa(lp, special_state(b, m.initial));
  json j{{"L", L},
         {"closed_after", fd.closed_after},
         {"algebra_defect_full_space", algebra_defect(lp)},
         {"algebra_defect_on_fsa_vectors", sector_algebra_defect(lp, fd.vectors)}};
  t.ctx.out.open("summary.json") << j.dump(2) << '\n';
}

void vacuum_complexity(Target& t) {
  const int L = t.L(14);
  for (const auto& [name, terms] : presets::vacuum_sets())
    krylov_bundle(t, make_model(L, StateTag::vacuum, terms), Scheme::vacuum, name + "_", 3 * L, true);
}

void fsa_errors_z2(Target& t) {
  CsvWriter all(t.ctx.out.open("errors.csv"), {"L", "n", "delta", "eps"});
  CsvWriter third(t.ctx.out.open("third_step.csv"),
                  {"L", "beta3", "beta3_formula", "eps3", "eps3_formula"});
  for (int L = 6; L <= t.L(18); L += 2) {
    const ModelConfig m = make_model(L, StateTag::z2);
    const ConstrainedBasis b = enumerate_basis(L);
    const FsaData d = fsa(ladder_split(b, m, Scheme::z2), special_state(b, m.initial));
    for (std::size_t n = 1; n < d.errors_norm.size(); ++n)
      all.row({static_cast<long long>(L), static_cast<long long>(n), d.errors_norm[n], d.errors_sq[n]});
    third.row({static_cast<long long>(L), d.betas[2], analytic::beta3_z2(L), d.errors_sq[3], analytic::delta3_z2(L)});
  }
}

void fsa_errors_vacuum(Target& t) {
  const int L = t.L(14);
  const ConstrainedBasis b = enumerate_basis(L);
  const auto psi0 = special_state(b, StateTag::vacuum);
  CsvWriter w(t.ctx.out.open("errors_vs_h.csv"), {"h", "n", "delta", "eps", "ln_eps"});
  for (int i = 0; i <= 100; ++i) {
    const double h = 0.01 * i;
    const FsaData d = fsa(ladder_split(b, make_model(L, StateTag::vacuum, {{"sigma3", h}}), Scheme::vacuum), psi0);
    for (std::size_t n = 3; n < d.errors_sq.size(); ++n)
      w.row({h, static_cast<long long>(n), d.errors_norm[n], d.errors_sq[n], std::log(d.errors_sq[n])});
  }
  CsvWriter s(t.ctx.out.open("errors_sets.csv"), {"set", "n", "delta", "eps", "ln_eps"});
  for (const auto& [name, terms] : presets::vacuum_sets()) {
    const FsaData d = fsa(ladder_split(b, make_model(L, StateTag::vacuum, terms), Scheme::vacuum), psi0);
    for (std::size_t n = 3; n < d.errors_sq.size(); ++n)
      s.row({name, static_cast<long long>(n), d.errors_norm[n], d.errors_sq[n], std::log(d.errors_sq[n])});
  }
}

void error3_scan(Target& t) {
  CsvWriter a(t.ctx.out.open("error3_analytic.csv"), {"L", "h", "error3"});
  CsvWriter mins(t.ctx.out.open("minima.csv"), {"L", "h_min_analytic", "h_min_numeric"});
  CsvWriter num(t.ctx.out.open("error3_numeric.csv"), {"L", "h", "eps3"});
  for (int L : {10, 14, 18, 30, 100, 1000}) {
    for (int i = 0; i <= 200; ++i) a.row({static_cast<long long>(L), 0.005 * i, analytic::error3_vacuum(0.005 * i, L)});
    const OptimResult ra = scan_1d(neg_error3_analytic_objective(L), 0.0, 1.0, 101);
    double hn = NAN;
    if (L <= 18) {
      ModelConfig m = make_model(L, StateTag::vacuum);
      const Objective o = neg_error_n_objective(m, "sigma3", Scheme::vacuum, 3);
      for (int i = 0; i <= 50; ++i) {
        const double h = 0.02 * i;
        num.row({static_cast<long long>(L), h, -o.fn({&h, 1})});
      }
      hn = scan_1d(o, 0.0, 1.0, 51).best[0];
    }
    mins.row({static_cast<long long>(L), ra.best[0], hn});
  }
}

void q_scan(Target& t) {
  const int L = t.L(18);
  const ConstrainedBasis b = enumerate_basis(L);
  const auto psi0 = special_state(b, StateTag::z2);
  CsvWriter w(t.ctx.out.open("q_scan.csv"), {"lambda", "q", "alpha", "residual", "closed_after"});
  for (int i = 0; i <= 20; ++i) {
    const double lam = 0.01 * i;
    const FsaData d = fsa(ladder_split(b, make_model(L, StateTag::z2, {{"z2pert", lam}}), Scheme::z2), psi0);
    const analytic::QFit f = analytic::fit_q(d.betas);
    w.row({lam, f.q, f.alpha, f.residual, static_cast<long long>(d.closed_after)});
  }
}

}  // namespace

void cmd_reproduce(Context& ctx) {
  Target t{ctx};
  const std::string& name = ctx.opt.target;
  if (name == "z2-beta-compare") z2_beta_compare(t);
  else if (name == "z2-complexity") z2_complexity(t);
  else if (name == "z3-summary") z3_summary(t);
  else if (name == "z3-exact") z3_exact(t);
  else if (name == "vacuum-complexity") vacuum_complexity(t);
  else if (name == "fsa-errors-z2") fsa_errors_z2(t);
  else if (name == "fsa-errors-vacuum") fsa_errors_vacuum(t);
  else if (name == "error3-scan") error3_scan(t);
  else if (name == "q-scan") q_scan(t);
  else throw Error("unreachable: target validated by the parser");
  for (const auto& p : ctx.out.written()) ctx.log << p << '\n';
}

}  // namespace scar::cli
