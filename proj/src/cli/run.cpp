#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "scar/cli.hpp"
#include "scar/error.hpp"
#include "scar/simd.hpp"

namespace scar::cli {
namespace {

// Flags are parsed into optionals so a JSON config can be overlaid first.
struct Flags {
  std::string config;
  std::optional<int> L;
  std::optional<std::string> initial, scheme, out, simd;
  std::vector<std::string> terms;
  std::optional<double> dt, t_max;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
};

using Handler = std::function<void(Context&)>;

void add_model_options(CLI::App* sc, Flags& f, CommandOptions& o) {
  sc->add_option("--config", f.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
  sc->add_option("--L", f.L, "number of sites");
  sc->add_option("--initial", f.initial, "vacuum | z2 | z2prime | z3");
  sc->add_option("--scheme", f.scheme, "ladder split: z2 | z3 | vacuum | z3exact");
  sc->add_option("--term", f.terms, "coupling as name=value (repeatable)");
  sc->add_option("--lambda", o.lambda, "shorthand for --term z2pert=VALUE");
  sc->add_option("--dt", f.dt, "time step of the output grid");
  sc->add_option("--t-max", f.t_max, "final time");
  sc->add_option("--out", f.out, "output directory (default: primary artifact on stdout)");
  sc->add_option("--threads", f.threads, "worker threads for scans");
  sc->add_option("--seed", f.seed, "seed for optimizer restarts");
  sc->add_option("--simd", f.simd, "kernel set: scalar | avx2")->check(CLI::IsMember({"scalar", "avx2"}));
}

void add_evolution_options(CLI::App* sc, CommandOptions& o) {
  sc->add_option("--propagation", o.propagation, "auto | dense | krylov")
      ->check(CLI::IsMember({"auto", "dense", "krylov"}));
  sc->add_flag("--allow-large", o.allow_large, "raise the dense eigensolver limit");
}

RunConfig overlay(const Flags& f, const std::string& command) {
  RunConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    std::stringstream ss;
    ss << in.rdbuf();
    c = config_from_json(ss.str());
  }
  c.command = command;
  if (f.L) c.model.L = *f.L;
  if (f.initial) c.model.initial = parse_state_tag(*f.initial);
  if (f.scheme) c.scheme = parse_scheme(*f.scheme);
  for (const auto& t : f.terms) apply_term(c.model, t);
  if (f.dt) c.dt = *f.dt;
  if (f.t_max) c.t_max = *f.t_max;
  if (f.out) c.out = *f.out;
  if (f.threads) c.threads = *f.threads;
  if (f.seed) c.seed = *f.seed;
  if (!(c.dt > 0.0) || c.t_max < 0.0) throw ConfigError("time grid needs dt > 0 and t_max >= 0");
  if (c.threads < 1) throw ConfigError("threads must be positive");
  return c;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CapacityError*>(&e)) return kCapacityError;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const SizeError*>(&e) ||
      dynamic_cast<const InputError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
      dynamic_cast<const SchemeMismatchError*>(&e) || dynamic_cast<const UnsupportedSplitError*>(&e) ||
      dynamic_cast<const DimensionError*>(&e) || dynamic_cast<const FitError*>(&e))
    return kConfigError;
  return kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Krylov and forward-scattering analysis of the PXP chain"};
  app.name("scar");
  app.require_subcommand(1);
  Flags f;
  CommandOptions o;
  std::map<CLI::App*, Handler> handlers;

  auto command = [&](const char* name, const char* help, Handler h, bool evolves) {
    CLI::App* sc = app.add_subcommand(name, help);
    add_model_options(sc, f, o);
    if (evolves) add_evolution_options(sc, o);
    handlers[sc] = std::move(h);
    return sc;
  };

  command("basis", "constrained basis size and sector counts", cmd_basis, false);
  command("spectrum", "full spectrum by dense diagonalization", cmd_spectrum, false)
      ->add_flag("--allow-large", o.allow_large, "raise the dense eigensolver limit");
  command("lanczos", "Lanczos coefficients from the initial state", cmd_lanczos, false)
      ->add_option("--steps", o.steps, "number of Krylov vectors");
  command("fsa", "forward-scattering coefficients and errors", cmd_fsa, false);
  command("evolve", "return probability and local observables", cmd_evolve, true);

  CLI::App* cx = command("complexity", "spread complexity in Lanczos and FSA bases", cmd_complexity, true);
  cx->add_option("--basis", o.basis, "lanczos | fsa | both")->check(CLI::IsMember({"lanczos", "fsa", "both"}));
  cx->add_option("--steps", o.steps, "number of Lanczos vectors");

  CLI::App* er = command("errors", "FSA error sweeps over a coupling or the system size", cmd_errors, false);
  er->add_option("--sweep", o.sweep, "h | L")->check(CLI::IsMember({"h", "L"}));
  er->add_option("--sweep-term", o.term, "coupling varied in the h sweep");
  er->add_option("--h-values", o.h_values, "coupling values")->delimiter(',');
  er->add_option("--L-values", o.L_values, "system sizes")->delimiter(',');

  CLI::App* qf = command("qfit", "fit the coefficients to a q-deformed su(2) profile", cmd_qfit, false);
  qf->add_option("--source", o.source, "fsa | lanczos")->check(CLI::IsMember({"fsa", "lanczos"}));
  qf->add_option("--steps", o.steps, "number of Lanczos vectors");

  CLI::App* op = command("optimize", "optimize couplings for revivals or small FSA errors", cmd_optimize, true);
  op->add_option("--objective", o.objective, "revival | neg_delta_av | neg_error3 | neg_error_n")
      ->check(CLI::IsMember({"revival", "neg_delta_av", "neg_error3", "neg_error_n"}));
  op->add_option("--free", o.free_terms, "coupling to optimize (repeatable)");
  op->add_option("--x0", o.x0, "starting point")->delimiter(',');
  op->add_option("--radius", o.radius, "initial simplex size");
  op->add_option("--lo", o.lo, "lower end of a 1D scan");
  op->add_option("--hi", o.hi, "upper end of a 1D scan");
  op->add_option("--grid", o.grid, "grid points of a 1D scan");
  op->add_option("--n", o.n, "FSA step for the error_n objective");
  op->add_option("--max-evals", o.max_evals, "objective evaluations per restart");

  CLI::App* xc = command("xcorr", "cross-correlation of two time series", cmd_xcorr, true);
  const std::vector<std::string> series{"return_probability", "complexity_fsa", "complexity_lanczos",
                                        "leakage_fsa", "leakage_lanczos", "density", "nnn_correlator"};
  xc->add_option("--max-lag", o.max_lag, "largest lag in grid steps");
  xc->add_option("--series-a", o.series_a, "first series")->check(CLI::IsMember(series));
  xc->add_option("--series-b", o.series_b, "second series")->check(CLI::IsMember(series));

  CLI::App* rp = command("reproduce", "regenerate a named data set", cmd_reproduce, true);
  rp->add_option("target", o.target, "data set name")->required()->check(CLI::IsMember(reproduce_targets()));
  rp->add_option("--steps", o.steps, "number of Lanczos vectors");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (CLI::App* sc = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sc->help();
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    if (f.simd) simd::set_active(*f.simd == "avx2" ? simd::Isa::avx2 : simd::Isa::scalar);
    RunConfig cfg = overlay(f, chosen->get_name());
    if (cfg.command == "reproduce" && cfg.out.empty()) cfg.out = o.target;
    Outputs outputs(cfg.out, out);
    Context ctx{std::move(cfg), o, outputs, err};
    handlers.at(chosen)(ctx);
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace scar::cli
