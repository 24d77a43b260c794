#pragma once

#include <span>

namespace scar::analytic {

// Vacuum-state FSA coefficients of bare PXP (n = 1, 2, 3).
double beta_vacuum(int n, int L);
// Same with a sigma3 term of strength h (n = 2, 3).
double beta_vacuum_perturbed(int n, int L, double h);
// Squared third-step FSA error from the vacuum with a sigma3 term of strength h.
double error3_vacuum(double h, double L);
// h = 0 limit of error3_vacuum: 6(L-5)/(L^3-12L^2+47L-60).
double error3_vacuum_bare(double L);

// Z2-state quantities of bare PXP. delta3_z2 is a squared norm.
double delta3_z2(int L);
double beta3_z2(int L);

double su2_beta(int n, int N);

/// (q^x - q^-x)/(q - 1/q), continuous through q = 1.
double qnumber(double x, double q);

struct QFit {
  double q = 1.0;
  double alpha = 0.0;
  double j = 0.0;         // 2j + 1 = Krylov dimension
  double residual = 0.0;  // RMS of beta_n - alpha*sqrt([n]_q [2j-n+1]_q)
};

inline constexpr double kQMin = 0.3;
inline constexpr double kQMax = 1.0;

/// alpha*sqrt([n]_q [2j-n+1]_q) for n = 1..2j with 2j = betas.size(); q is searched on (0.3, 1].
QFit fit_q(std::span<const double> betas);
/// Fit residual at fixed q (alpha eliminated in closed form).
QFit fit_q_at(std::span<const double> betas, double q);

}  // namespace scar::analytic
