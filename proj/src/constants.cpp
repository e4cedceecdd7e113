#include "rellich/constants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rellich/errors.hpp"
#include "rellich/spectra.hpp"

namespace rellich {

void check_params(const Params& p) {
  if (p.n < 2) throw DomainError("dimension n must be >= 2, got " + std::to_string(p.n));
  if (!std::isfinite(p.gamma)) throw DomainError("gamma must be finite");
}

double shift_q(const Params& p) {
  return (p.n + p.gamma - 4.0) * (p.n - p.gamma) / 4.0;
}

double shift_d(const Params& p) {
  const double h = (p.n + p.gamma - 4.0) / 2.0;
  return h * h;
}

double hardy_constant(const Params& p) {
  check_params(p);
  const double h = (p.n - 2.0 + p.gamma) / 2.0;
  return h * h;
}

double rellich_mode_constant(const Params& p, int j) {
  check_params(p);
  const double t = eigenvalue(p.n, j) + shift_q(p);
  return t * t;
}

MinimizerResult rellich_constant(const Params& p) {
  check_params(p);
  const double c = shift_q(p);
  const double threshold = std::max(0.0, -c);
  MinimizerResult best{rellich_mode_constant(p, 0), 0, 0};
  // (lambda + c)^2 is nondecreasing once lambda >= -c
  for (int j = 0;; ++j) {
    const double v = rellich_mode_constant(p, j);
    if (v < best.value) best = {v, j, 0};
    if (eigenvalue(p.n, j) >= threshold) {
      best.scan_bound = j;
      return best;
    }
  }
}

double hardy_rellich_alpha(const Params& p, int j) {
  check_params(p);
  if (j < 0) throw DomainError("mode index j must be >= 0");
  if (j == 0) {
    const double h = (p.n - p.gamma) / 2.0;
    return h * h;
  }
  const double lam = eigenvalue(p.n, j);
  const double num = shift_q(p) + lam;
  return num * num / (shift_d(p) + lam);
}

MinimizerResult hardy_rellich_constant(const Params& p) {
  check_params(p);
  const double q = shift_q(p);
  const double d = shift_d(p);
  // d/dlambda of (q+lambda)^2/(d+lambda) has the sign of (q+lambda)(lambda+2d-q)
  const double threshold = std::max({1.0, -q, q - 2.0 * d});
  MinimizerResult best{hardy_rellich_alpha(p, 0), 0, 0};
  for (int j = 1;; ++j) {
    const double v = hardy_rellich_alpha(p, j);
    if (v < best.value) best = {v, j, 0};
    if (eigenvalue(p.n, j) >= threshold) {
      best.scan_bound = j;
      return best;
    }
  }
}

bool lemma49_condition(const Params& p, int j) {
  check_params(p);
  if (j < 1) throw DomainError("lemma49_condition needs j >= 1");
  const double g = p.gamma;
  if (g >= -8.0 * j + 2.0 && g <= 2.0) return true;
  const double disc = g * g / 4.0 + (2.0 * j - 1.0) * g - 4.0 * j + 1.0;
  const double root = 2.0 * std::sqrt(std::max(disc, 0.0));
  const double centre = -2.0 * (g - 3.0 + j);
  return p.n >= centre + root || p.n <= centre - root;
}

std::optional<int> lemma410_bound(const Params& p, int cap) {
  check_params(p);
  const double q = shift_q(p);
  // Walk down from the cap while each j satisfies the lemma and the (q+lambda) >= 0 half of the
  // monotonicity certificate that the lemma's conditions do not cover.
  std::optional<int> j0;
  for (int j = cap; j >= 1; --j) {
    if (!lemma49_condition(p, j) || q + eigenvalue(p.n, j) < 0.0) break;
    j0 = j;
  }
  return j0;
}

Thm21Coefficients thm21_coefficients(double alpha, double beta, const Params& p) {
  check_params(p);
  const double n = p.n;
  const double g = p.gamma;
  Thm21Coefficients c{};
  c.alpha = alpha;
  c.beta = beta;
  c.c_grad = alpha * (g + n - 4.0) - 2.0 * beta;
  c.c_radial = -alpha * (alpha - 4.0 + 2.0 * g);
  c.c_pot = beta * ((n - 4.0) * (alpha - 2.0) - beta + g * (n + alpha + g - 6.0));
  c.cauchy_valid = alpha * (alpha - 4.0 + 2.0 * g) >= 0.0;
  return c;
}

Thm31Coefficients thm31_coefficients(double alpha, double beta, double tau, const Params& p) {
  Thm31Coefficients c{};
  static_cast<Thm21Coefficients&>(c) = thm21_coefficients(alpha, beta, p);
  const double n = p.n;
  const double g = p.gamma;
  c.tau = tau;
  c.c_sph_half = -tau * ((g + n - 4.0) * (2.0 - alpha - g) + 2.0 * beta);
  c.c_sph_half_dr = -2.0 * tau;
  c.c_sph_full = -tau * (tau + 2.0);
  return c;
}

double lemma314_coefficient(double alpha, double beta, double tau, const Params& p) {
  check_params(p);
  if (!(tau > -2.0 && tau < 0.0)) throw DomainError("lemma314_coefficient needs -2 < tau < 0");
  const double n = p.n;
  const double g = p.gamma;
  return -tau * (2.0 * beta + (g + n - 4.0) * (n / 2.0 - g / 2.0 - alpha) + (tau + 2.0) * (n - 1.0));
}

SchminckeRange schmincke_range(const Params& p, SchminckeVariant v) {
  check_params(p);
  const double a = (p.n - 2.0) * (p.n - 2.0);
  const double b = (p.gamma - 2.0) * (p.gamma - 2.0);
  if (v == SchminckeVariant::sec2) return {-0.5 * (a - b), SchminckeCase::sec2};
  // gamma in [2 - sqrt(n-1), 2 + sqrt(n-1)], compared without the square root
  if (b <= p.n - 1.0) return {-0.5 * (a + b), SchminckeCase::sec3_case_i};
  return {-0.5 * (a - b) + 1.0 - p.n, SchminckeCase::sec3_case_ii};
}

double schmincke_rhs_constant(const Params& p, double s) {
  check_params(p);
  const double h = (p.gamma + p.n - 4.0) / 4.0;
  const double m = p.gamma - p.n;
  return h * h * (m * m + 4.0 * s);
}

double k3(double s) {
  if (s < -25.0 / 36.0) throw DomainError("k3 is defined for s >= -25/36");
  if (s >= -0.5) return (4.0 * s + 9.0) / 16.0;
  return (4.0 * s + 25.0 / 9.0) / 16.0;
}

SuperiorityPredicates superiority_predicates(const Params& p) {
  check_params(p);
  const double n = p.n;
  const double g = p.gamma;
  return {(n - 8.0) * (n - 4.0) > g * (g - 12.0), (g + n - 4.0) * (3.0 * g + n - 8.0) >= 0.0};
}

N3Chain n3_special_chain() {
  const double r = std::sqrt(3.5);
  N3Chain c{};
  c.A = -0.5;
  c.B_plus = 0.75 + r / 3.0;
  c.B_minus = 0.75 - r / 3.0;
  c.eps_plus = r / 6.0;
  c.eps_minus = -r / 6.0;
  c.tau_plus = -(1.0 + c.eps_plus);
  const double spread = 0.5 * std::sqrt(65.0 / 9.0 - (8.0 / 3.0) * r);
  c.alpha_hat_plus = 2.0 + spread;
  c.alpha_hat_minus = 2.0 - spread;
  const double a = c.alpha_hat_plus;
  c.s_alpha_hat_plus = a * a - 4.0 * a + 1.5 + (2.0 / 3.0) * r;
  c.discriminant =
      -(8.0 * c.B_plus - 6.0) * (1.0 + c.eps_plus) + 8.0 * c.eps_plus * c.eps_plus + 8.0;
  if (!(c.discriminant >= 0.0))
    throw ConsistencyError("n=3 chain: discriminant condition fails");
  if (std::abs(c.s_alpha_hat_plus + 25.0 / 36.0) > 1e-12)
    throw ConsistencyError("n=3 chain: s(alpha_hat_+) != -25/36");
  // eps_+ is the root selected by 8 eps^2 - (8B-6) eps + 7/9 = 0
  const double e = c.eps_plus;
  if (std::abs(8.0 * e * e - (8.0 * c.B_plus - 6.0) * e + 7.0 / 9.0) > 1e-12)
    throw ConsistencyError("n=3 chain: eps_+ does not solve its quadratic");
  return c;
}

double remarkA2_P(const Params& p) {
  check_params(p);
  const double n = p.n;
  const double g = p.gamma;
  return 5.0 * g * g + (2.0 * n - 24.0) * g + n * n - 8.0 * n + 32.0;
}

RemarkA2 remarkA2_helpers(const Params& p, double t, double A, double B, double C, double D,
                          double a) {
  if (!(A > 0 && C > 0 && D > 0 && a > 0)) throw DomainError("G(t) needs A, C, D, a > 0");
  if (A * D - B * C < 0) throw DomainError("G(t) needs AD - BC >= 0");
  if (t < a) throw DomainError("G(t) is considered on t >= a");
  return {(A * t + B) / (C * t + D), (A * a + B) / (C * a + D), remarkA2_P(p)};
}

double cor23_constant(const Params& p) {
  check_params(p);
  const double v = (p.n - p.gamma) * (p.gamma + p.n - 4.0) / 4.0;
  return v * v;
}

AlphaBeta cor39_parameters(const Params& p, bool plus) {
  check_params(p);
  const double g = p.gamma;
  const double n = p.n;
  const double root = std::sqrt(((g - 2.0) * (g - 2.0) + (n - 2.0) * (n - 2.0)) / 2.0);
  const double alpha = 2.0 - g + (plus ? root : -root);
  return {alpha, alpha * (n - alpha - g) / 2.0};
}

}  // namespace rellich
