#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "csv.hpp"
#include "json.hpp"
#include "scar/analytic.hpp"
#include "scar/error.hpp"
#include "scar/optimize.hpp"
#include "scar/parallel.hpp"
#include "scar/simd.hpp"

namespace scar::cli {

using nlohmann::json;

Outputs::Outputs(std::string dir, std::ostream& console) : dir_(std::move(dir)), console_(console) {}

std::ostream& Outputs::open(const std::string& name, bool primary) {
  if (dir_.empty()) return primary ? console_ : null_;
  std::filesystem::create_directories(dir_);
  const std::string path = (std::filesystem::path(dir_) / name).string();
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*f) throw ConfigError("cannot open output file " + path);
  files_.push_back(std::move(f));
  written_.push_back(path);
  return *files_.back();
}

namespace {

void require_L(const RunConfig& c) {
  if (c.model.L == 0) throw ConfigError("system size is required (--L or config)");
}

ModelConfig model_of(const Context& ctx) {
  ModelConfig m = ctx.cfg.model;
  if (ctx.opt.lambda) m.terms["z2pert"] = *ctx.opt.lambda;
  validate(m);
  return m;
}

std::vector<double> times_of(const RunConfig& c) { return time_grid(c.dt, c.t_max); }

int default_lanczos_vectors(const ConstrainedBasis& b) {
  return static_cast<int>(std::min<std::size_t>(b.dim(), static_cast<std::size_t>(3 * b.L())));
}

std::uint64_t lucas(int L) {
  std::uint64_t a = 2, b = 1;
  for (int i = 0; i < L; ++i) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

void dump_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

}  // namespace

void write_lanczos_csv(std::ostream& os, const KrylovData& d) {
  CsvWriter w(os, {"n", "alpha", "beta"});
  for (std::size_t n = 0; n < d.alphas.size(); ++n)
    w.row({static_cast<long long>(n), d.alphas[n], n == 0 ? 0.0 : d.betas[n - 1]});
}

void write_fsa_csv(std::ostream& os, const FsaData& d) {
  CsvWriter w(os, {"n", "beta", "delta", "eps", "delta_av"});
  for (std::size_t n = 1; n < d.errors_norm.size(); ++n)
    w.row({static_cast<long long>(n), d.betas[n - 1], d.errors_norm[n], d.errors_sq[n], d.delta_av});
}

DynamicsRun run_dynamics(const SparseMatrix& H, const ConstrainedBasis& basis, std::span<const double> psi0,
                         std::span<const double> times, const std::vector<Vector>* lanczos_vectors,
                         const std::vector<Vector>* fsa_vectors, Propagation prop, bool allow_large) {
  const auto ev = make_evolution(H, prop, allow_large);
  auto complexify = [](const std::vector<Vector>* vs) {
    std::vector<std::vector<cplx>> out;
    if (vs)
      for (const auto& v : *vs) out.emplace_back(v.begin(), v.end());
    return out;
  };
  const auto KL = complexify(lanczos_vectors);
  const auto KF = complexify(fsa_vectors);
  const std::vector<cplx> z0(psi0.begin(), psi0.end());
  const SparseMatrix dens_op = up_density(basis), nnn_op = nnn_correlator(basis);
  std::vector<double> dens(basis.dim()), nnn(basis.dim());
  for (std::size_t j = 0; j < basis.dim(); ++j) {
    dens[j] = dens_op.at(j, j);
    nnn[j] = nnn_op.at(j, j);
  }

  DynamicsRun d;
  d.times.assign(times.begin(), times.end());
  const std::size_t n = times.size();
  d.R.resize(n);
  d.density.resize(n);
  d.nnn.resize(n);
  if (lanczos_vectors) d.c_lanczos.resize(n), d.leak_lanczos.resize(n);
  if (fsa_vectors) d.c_fsa.resize(n), d.leak_fsa.resize(n);
  auto project = [](const std::vector<std::vector<cplx>>& K, std::span<const cplx> psi, double& c, double& leak) {
    double s = 0.0, w = 0.0;
    for (std::size_t k = 0; k < K.size(); ++k) {
      const double p = std::norm(simd::zdotc(K[k], psi));
      s += static_cast<double>(k) * p;
      w += p;
    }
    c = s;
    leak = 1.0 - w;
  };
  ev->evolve(psi0, times, [&](std::size_t i, std::span<const cplx> psi) {
    d.R[i] = std::norm(simd::zdotc(z0, psi));
    double a = 0.0, b = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
      const double p = std::norm(psi[j]);
      a += dens[j] * p;
      b += nnn[j] * p;
    }
    d.density[i] = a;
    d.nnn[i] = b;
    if (lanczos_vectors) project(KL, psi, d.c_lanczos[i], d.leak_lanczos[i]);
    if (fsa_vectors) project(KF, psi, d.c_fsa[i], d.leak_fsa[i]);
  });
  return d;
}

void write_dynamics_csv(std::ostream& os, const DynamicsRun& d) {
  std::vector<std::string> h{"t", "return_probability", "density", "nnn_correlator"};
  const bool L = !d.c_lanczos.empty(), F = !d.c_fsa.empty();
  if (L) h.insert(h.end(), {"C_lanczos", "leak_lanczos"});
  if (F) h.insert(h.end(), {"C_fsa", "leak_fsa"});
  CsvWriter w(os, h);
  for (std::size_t i = 0; i < d.times.size(); ++i) {
    std::vector<CsvWriter::Cell> r{d.times[i], d.R[i], d.density[i], d.nnn[i]};
    if (L) r.insert(r.end(), {d.c_lanczos[i], d.leak_lanczos[i]});
    if (F) r.insert(r.end(), {d.c_fsa[i], d.leak_fsa[i]});
    w.row(r);
  }
}

void cmd_basis(Context& ctx) {
  require_L(ctx.cfg);
  const ConstrainedBasis b = enumerate_basis(ctx.cfg.model.L);
  json j;
  j["L"] = b.L();
  j["dim"] = b.dim();
  j["lucas"] = lucas(b.L());
  j["sectors"] = json::array();
  for (int k = 0; k <= b.L() / 2; ++k) j["sectors"].push_back(count_sector(b, k));
  dump_json(ctx.out.open("basis.json"), j);
}

void cmd_spectrum(Context& ctx) {
  require_L(ctx.cfg);
  const ModelConfig m = model_of(ctx);
  const ConstrainedBasis b = enumerate_basis(m.L);
  const EigenSystem e = eigendecompose(assemble(b, m), ctx.opt.allow_large);
  CsvWriter w(ctx.out.open("spectrum.csv"), {"index", "energy"});
  for (std::size_t i = 0; i < e.dim; ++i) w.row({static_cast<long long>(i), e.values[i]});
}

void cmd_lanczos(Context& ctx) {
  require_L(ctx.cfg);
  const ModelConfig m = model_of(ctx);
  const ConstrainedBasis b = enumerate_basis(m.L);
  const int steps = ctx.opt.steps > 0 ? ctx.opt.steps : default_lanczos_vectors(b);
  write_lanczos_csv(ctx.out.open("lanczos.csv"), lanczos(assemble(b, m), special_state(b, m.initial), steps));
}

void cmd_fsa(Context& ctx) {
  require_L(ctx.cfg);
  const ModelConfig m = model_of(ctx);
  const ConstrainedBasis b = enumerate_basis(m.L);
  const Scheme s = ctx.cfg.resolved_scheme();
  const FsaData d = fsa(ladder_split(b, m, s), special_state(b, m.initial));
  write_fsa_csv(ctx.out.open("fsa.csv"), d);
  json j{{"L", m.L}, {"scheme", to_string(s)}, {"closed_after", d.closed_after},
         {"delta_av", d.delta_av}, {"closing_beta", d.closing_beta}};
  dump_json(ctx.out.open("fsa_summary.json", false), j);
}

void cmd_evolve(Context& ctx) {
  require_L(ctx.cfg);
  const ModelConfig m = model_of(ctx);
  const ConstrainedBasis b = enumerate_basis(m.L);
  const auto t = times_of(ctx.cfg);
  const DynamicsRun d = run_dynamics(assemble(b, m), b, special_state(b, m.initial), t, nullptr, nullptr,
                                     parse_propagation(ctx.opt.propagation), ctx.opt.allow_large);
  write_dynamics_csv(ctx.out.open("evolve.csv"), d);
}

void cmd_complexity(Context& ctx) {
  require_L(ctx.cfg);
  const ModelConfig m = model_of(ctx);
  const ConstrainedBasis b = enumerate_basis(m.L);
  const std::string& kind = ctx.opt.basis;
  if (kind != "lanczos" && kind != "fsa" && kind != "both") throw ConfigError("--basis must be lanczos, fsa or both");
  const SparseMatrix H = assemble(b, m);
  const auto psi0 = special_state(b, m.initial);
  std::optional<KrylovData> kd;
  std::optional<FsaData> fd;
  if (kind != "fsa") {
    const int n = ctx.opt.steps > 0 ? ctx.opt.steps : static_cast<int>(std::min<std::size_t>(b.dim(), 100));
    kd = lanczos(H, psi0, n);
  }
  if (kind != "lanczos") fd = fsa(ladder_split(b, m, ctx.cfg.resolved_scheme()), psi0);
  const DynamicsRun d = run_dynamics(H, b, psi0, times_of(ctx.cfg), kd ? &kd->vectors : nullptr,
                                     fd ? &fd->vectors : nullptr, parse_propagation(ctx.opt.propagation),
                                     ctx.opt.allow_large);
  write_dynamics_csv(ctx.out.open("complexity.csv"), d);
}

void cmd_errors(Context& ctx) {
  require_L(ctx.cfg);
  const ModelConfig m = model_of(ctx);
  const Scheme s = ctx.cfg.resolved_scheme();
  CsvWriter w(ctx.out.open("errors.csv"), {"L", "h", "n", "delta", "eps"});
  auto emit = [&](const ModelConfig& c, double h) {
    const ConstrainedBasis b = enumerate_basis(c.L);
    for (const auto& r : fsa_error_profile(ladder_split(b, c, s), special_state(b, c.initial)))
      w.row({static_cast<long long>(c.L), h, static_cast<long long>(r.n), r.delta, r.eps});
  };
  if (ctx.opt.sweep == "h") {
    std::vector<double> hs = ctx.opt.h_values;
    if (hs.empty())
      for (int i = 0; i <= 20; ++i) hs.push_back(0.05 * i);
    for (double h : hs) {
      ModelConfig c = m;
      c.terms[ctx.opt.term] = h;
      emit(c, h);
    }
  } else if (ctx.opt.sweep == "L") {
    std::vector<int> Ls = ctx.opt.L_values;
    if (Ls.empty()) Ls = {m.L};
    const double h = m.strength(ctx.opt.term);
    for (int L : Ls) {
      ModelConfig c = m;
      c.L = L;
      emit(c, h);
    }
  } else {
    throw ConfigError("--sweep must be h or L");
  }
}

void cmd_qfit(Context& ctx) {
  require_L(ctx.cfg);
  const ModelConfig m = model_of(ctx);
  const ConstrainedBasis b = enumerate_basis(m.L);
  const auto psi0 = special_state(b, m.initial);
  std::vector<double> betas;
  if (ctx.opt.source == "fsa") {
    betas = fsa(ladder_split(b, m, ctx.cfg.resolved_scheme()), psi0).betas;
  } else if (ctx.opt.source == "lanczos") {
    const int n = ctx.opt.steps > 0 ? ctx.opt.steps : m.L + 1;
    betas = lanczos(assemble(b, m), psi0, std::min<int>(n, static_cast<int>(b.dim()))).betas;
  } else {
    throw ConfigError("--source must be fsa or lanczos");
  }
  const analytic::QFit f = analytic::fit_q(betas);
  json j{{"L", m.L}, {"source", ctx.opt.source}, {"q", f.q}, {"alpha", f.alpha},
         {"j", f.j}, {"residual", f.residual}, {"betas", betas}};
  dump_json(ctx.out.open("qfit.json"), j);
}

void cmd_optimize(Context& ctx) {
  require_L(ctx.cfg);
  const std::string& kind = ctx.opt.objective;
  // The analytic objective needs only L, which may exceed the enumerable range.
  const ModelConfig m = kind == "neg_error3" ? ctx.cfg.model : model_of(ctx);
  std::vector<std::string> free = ctx.opt.free_terms;
  Objective obj;
  if (kind == "revival") {
    if (free.empty()) free = {"z2pert"};
    RevivalSettings rs;
    rs.dt = ctx.cfg.dt;
    rs.t_max = ctx.cfg.t_max;
    rs.propagation = parse_propagation(ctx.opt.propagation);
    obj = revival_objective(m, free, rs);
  } else if (kind == "neg_delta_av") {
    if (free.empty()) throw ConfigError("neg_delta_av needs --free");
    obj = neg_delta_av_objective(m, free, ctx.cfg.resolved_scheme());
  } else if (kind == "neg_error3") {
    obj = neg_error3_analytic_objective(m.L);
  } else if (kind == "neg_error_n") {
    obj = neg_error_n_objective(m, free.empty() ? "sigma3" : free.front(), ctx.cfg.resolved_scheme(), ctx.opt.n);
  } else {
    throw ConfigError("unknown objective '" + kind + "'");
  }

  OptimResult r;
  if (ctx.opt.lo || ctx.opt.hi) {
    if (!(ctx.opt.lo && ctx.opt.hi)) throw ConfigError("a scan needs both --lo and --hi");
    r = scan_1d(obj, *ctx.opt.lo, *ctx.opt.hi, ctx.opt.grid, 1e-4, ctx.cfg.threads);
  } else {
    std::vector<double> x0 = ctx.opt.x0;
    if (x0.empty())
      for (const auto& p : obj.parameters) x0.push_back(p == "h" ? 0.0 : m.strength(p));
    NelderMeadOptions o;
    o.seed = ctx.cfg.seed;
    o.max_evaluations = ctx.opt.max_evals;
    r = optimize_vector(obj, x0, ctx.opt.radius, o);
  }
  json j{{"objective", obj.kind}, {"parameters", obj.parameters}, {"best", r.best},
         {"value", r.value}, {"evaluations", r.evaluations}, {"converged", r.converged}};
  dump_json(ctx.out.open("optimize.json"), j);
  std::vector<std::string> header{"eval"};
  header.insert(header.end(), obj.parameters.begin(), obj.parameters.end());
  header.push_back("value");
  CsvWriter w(ctx.out.open("trace.csv", false), header);
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    std::vector<CsvWriter::Cell> row{static_cast<long long>(i)};
    for (double x : r.trace[i].first) row.emplace_back(x);
    row.emplace_back(r.trace[i].second);
    w.row(row);
  }
}

void cmd_xcorr(Context& ctx) {
  require_L(ctx.cfg);
  const ModelConfig m = model_of(ctx);
  const ConstrainedBasis b = enumerate_basis(m.L);
  const SparseMatrix H = assemble(b, m);
  const auto psi0 = special_state(b, m.initial);
  auto needs = [&](const std::string& s) { return ctx.opt.series_a == s || ctx.opt.series_b == s; };
  std::optional<KrylovData> kd;
  std::optional<FsaData> fd;
  if (needs("complexity_lanczos"))
    kd = lanczos(H, psi0, static_cast<int>(std::min<std::size_t>(b.dim(), 100)));
  if (needs("complexity_fsa")) fd = fsa(ladder_split(b, m, ctx.cfg.resolved_scheme()), psi0);
  const DynamicsRun d = run_dynamics(H, b, psi0, times_of(ctx.cfg), kd ? &kd->vectors : nullptr,
                                     fd ? &fd->vectors : nullptr, parse_propagation(ctx.opt.propagation),
                                     ctx.opt.allow_large);
  auto pick = [&](const std::string& s) {
    TimeSeries t{d.times, {}};
    if (s == "return_probability") t.values = d.R;
    else if (s == "density") t.values = d.density;
    else if (s == "nnn_correlator") t.values = d.nnn;
    else if (s == "complexity_lanczos") t.values = d.c_lanczos;
    else if (s == "complexity_fsa") t.values = d.c_fsa;
    else throw ConfigError("unknown series '" + s + "'");
    return t;
  };
  const auto rows = cross_correlation(pick(ctx.opt.series_a), pick(ctx.opt.series_b), ctx.opt.max_lag);
  CsvWriter w(ctx.out.open("xcorr.csv"), {"lag", "tau", "raw", "normalized"});
  for (const auto& r : rows) w.row({static_cast<long long>(r.lag), r.tau, r.raw, r.normalized});
}

}  // namespace scar::cli
