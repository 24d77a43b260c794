#include "scar/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "scar/error.hpp"

namespace scar::analytic {

namespace {

void require_even(int L, int min_L) {
  if (L < min_L || L % 2 != 0)
    throw DomainError("need even L >= " + std::to_string(min_L) + ", got " + std::to_string(L));
}

}  // namespace

double beta_vacuum(int n, int L) {
  require_even(L, 6);
  const double l = L;
  switch (n) {
    case 1: return std::sqrt(l);
    case 2: return std::sqrt(2.0 * (l - 3.0));
    case 3: return std::sqrt(3.0 * (l - 4.0) * (l - 5.0) / (l - 3.0));
    default: throw UnsupportedError("beta_vacuum is known only for n = 1, 2, 3");
  }
}

double beta_vacuum_perturbed(int n, int L, double h) {
  require_even(L, 8);
  const double l = L;
  const double b2sq = h * h + 4.0 * h + 2.0 * l - 6.0;
  if (b2sq <= 0.0) throw DomainError("beta_2 argument is not positive");
  const double b2 = std::sqrt(b2sq);
  if (n == 2) return b2;
  if (n == 3) {
    const double num = 9.0 * (l - 3.0) * h * h + 36.0 * (l - 5.0) * h + 6.0 * (l - 4.0) * (l - 5.0);
    if (num < 0.0) throw DomainError("beta_3 argument is negative");
    return std::sqrt(num) / b2;
  }
  throw UnsupportedError("beta_vacuum_perturbed is known only for n = 2, 3");
}

double error3_vacuum(double h, double L) {
  if (L < 8 || std::fmod(L, 2.0) != 0.0) throw DomainError("need even L >= 8");
  const double h2 = h * h, h3 = h2 * h, h4 = h3 * h, h5 = h4 * h, h6 = h5 * h;
  const double f = (6 * L + 6) * h6 + (72 * L - 168) * h5 + (300 * L - 1368) * h4 +
                   (288 * L - 1608) * h3 + (30 * L - 438) * h2 + (-120 * L + 696) * h +
                   (24 * L - 120);
  const double g = (3 * L - 9) * h4 + (24 * L - 96) * h3 + (8 * L * L - 6 * L - 146) * h2 +
                   (32 * L * L - 264 * L + 520) * h + 4 * L * L * L - 48 * L * L + 188 * L - 240;
  if (!(g > 0.0) || !std::isfinite(f)) throw DomainError("error3 denominator is not positive");
  return f / g;
}

double error3_vacuum_bare(double L) {
  const double g = L * L * L - 12 * L * L + 47 * L - 60;
  if (!(g > 0.0)) throw DomainError("error3 denominator is not positive");
  return 6.0 * (L - 5.0) / g;
}

double delta3_z2(int L) {
  require_even(L, 6);
  const double l = L;
  return 8.0 * (l - 6.0) / ((l - 2.0) * (3.0 * l * l - 18.0 * l + 32.0));
}

double beta3_z2(int L) {
  require_even(L, 6);
  const double l = L;
  return std::sqrt(3.0 * (l - 4.0) / 2.0 + 4.0 / (l - 2.0));
}

double su2_beta(int n, int N) {
  if (n < 1 || n > N) throw DomainError("su2_beta needs 1 <= n <= N");
  return std::sqrt(static_cast<double>(n) * (N - n + 1));
}

double qnumber(double x, double q) {
  if (!(q > 0.0)) throw DomainError("q must be positive");
  if (std::abs(q - 1.0) < 1e-9) return x;
  const double lq = std::log(q);
  return std::sinh(x * lq) / std::sinh(lq);
}

QFit fit_q_at(std::span<const double> betas, double q) {
  const std::size_t two_j = betas.size();
  std::vector<double> f(two_j);
  double fb = 0.0, ff = 0.0;
  for (std::size_t i = 0; i < two_j; ++i) {
    const double n = static_cast<double>(i + 1);
    const double prod = qnumber(n, q) * qnumber(static_cast<double>(two_j) - n + 1.0, q);
    f[i] = std::sqrt(std::max(prod, 0.0));
    fb += f[i] * betas[i];
    ff += f[i] * f[i];
  }
  QFit r;
  r.q = q;
  r.j = 0.5 * static_cast<double>(two_j);
  r.alpha = ff > 0.0 ? fb / ff : 0.0;
  double ss = 0.0;
  for (std::size_t i = 0; i < two_j; ++i) {
    const double d = betas[i] - r.alpha * f[i];
    ss += d * d;
  }
  r.residual = std::sqrt(ss / static_cast<double>(two_j));
  return r;
}

QFit fit_q(std::span<const double> betas) {
  int nonzero = 0;
  for (double b : betas) {
    if (!std::isfinite(b)) throw FitError("non-finite beta");
    if (b != 0.0) ++nonzero;
  }
  if (nonzero < 3) throw FitError("need at least three nonzero betas to fit q");

  // Coarse scan, then golden-section refinement inside the best bracket.
  constexpr int kGrid = 700;
  const double h = (kQMax - kQMin) / kGrid;
  int best = 1;
  double best_r = fit_q_at(betas, kQMin + h).residual;
  for (int i = 2; i <= kGrid; ++i) {
    const double r = fit_q_at(betas, kQMin + i * h).residual;
    if (r < best_r) {
      best_r = r;
      best = i;
    }
  }
  double a = std::max(kQMin + 1e-12, kQMin + (best - 1) * h);
  double b = std::min(kQMax, kQMin + (best + 1) * h);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = fit_q_at(betas, c).residual, fd = fit_q_at(betas, d).residual;
  while (b - a > 1e-12) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = fit_q_at(betas, c).residual;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = fit_q_at(betas, d).residual;
    }
  }
  QFit out = fit_q_at(betas, 0.5 * (a + b));
  const QFit edge = fit_q_at(betas, kQMax);
  if (edge.residual < out.residual) out = edge;
  return out;
}

}  // namespace scar::analytic
