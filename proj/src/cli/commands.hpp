#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scar/cli.hpp"
#include "scar/dynamics.hpp"
#include "scar/krylov.hpp"

namespace scar::cli {

// Where command artifacts go: files inside RunConfig::out, or the primary
// artifact on stdout when no directory was given.
class Outputs {
 public:
  Outputs(std::string dir, std::ostream& console);
  /// Stream for `name`; non-primary artifacts are discarded when writing to the console.
  std::ostream& open(const std::string& name, bool primary = true);
  const std::vector<std::string>& written() const { return written_; }
  bool to_console() const { return dir_.empty(); }

 private:
  std::string dir_;
  std::ostream& console_;
  std::vector<std::unique_ptr<std::ofstream>> files_;
  std::ostream null_{nullptr};
  std::vector<std::string> written_;
};

struct CommandOptions {
  bool allow_large = false;
  std::string propagation = "auto";
  int steps = 0;            // Lanczos vectors (0 = command default)
  std::string basis = "both";  // complexity: lanczos | fsa | both
  std::string sweep = "h";  // errors: h | L
  std::string term = "sigma3";
  std::vector<double> h_values;
  std::vector<int> L_values;
  std::string source = "fsa";  // qfit
  std::string objective = "revival";
  std::vector<std::string> free_terms;
  std::vector<double> x0;
  double radius = 0.05;
  std::optional<double> lo, hi;
  int grid = 21;
  int n = 3;
  int max_evals = 600;
  int max_lag = 200;
  std::string series_a = "return_probability";
  std::string series_b = "complexity_fsa";
  std::optional<double> lambda;
  std::string target;
};

struct Context {
  RunConfig cfg;
  CommandOptions opt;
  Outputs& out;
  std::ostream& log;
};

void cmd_basis(Context& ctx);
void cmd_spectrum(Context& ctx);
void cmd_lanczos(Context& ctx);
void cmd_fsa(Context& ctx);
void cmd_evolve(Context& ctx);
void cmd_complexity(Context& ctx);
void cmd_errors(Context& ctx);
void cmd_qfit(Context& ctx);
void cmd_optimize(Context& ctx);
void cmd_xcorr(Context& ctx);
void cmd_reproduce(Context& ctx);

const std::vector<std::string>& reproduce_targets();

// Shared building blocks (also used by the reproduce targets).
void write_lanczos_csv(std::ostream& os, const KrylovData& d);
void write_fsa_csv(std::ostream& os, const FsaData& d);

struct DynamicsRun {
  std::vector<double> times;
  std::vector<double> R, density, nnn;
  std::vector<double> c_lanczos, leak_lanczos, c_fsa, leak_fsa;
};

/// One evolution pass producing every per-time quantity the CLI emits.
DynamicsRun run_dynamics(const SparseMatrix& H, const ConstrainedBasis& basis, std::span<const double> psi0,
                         std::span<const double> times, const std::vector<Vector>* lanczos_vectors,
                         const std::vector<Vector>* fsa_vectors, Propagation prop, bool allow_large);
void write_dynamics_csv(std::ostream& os, const DynamicsRun& d);

}  // namespace scar::cli
