#pragma once

#include <optional>

namespace rellich {

struct Params {
  int n;
  double gamma;
};

// Throws DomainError when n < 2.
void check_params(const Params& p);

struct MinimizerResult {
  double value;
  int argmin_j;
  int scan_bound;
};

struct Thm21Coefficients {
  double alpha, beta;
  double c_grad;    // |x|^{g-2} |grad f|^2
  double c_radial;  // |x|^{g-4} |x . grad f|^2
  double c_pot;     // |x|^{g-4} |f|^2
  bool cauchy_valid;
};

struct Thm31Coefficients : Thm21Coefficients {
  double tau;
  double c_sph_half;     // |x|^{g-4} |(-Lap_S)^{1/2} f|^2
  double c_sph_half_dr;  // |x|^{g-2} |(-Lap_S)^{1/2} d_r f|^2
  double c_sph_full;     // |x|^{g-4} |Lap_S f|^2
};

enum class SchminckeVariant { sec2, sec3 };
enum class SchminckeCase { sec2, sec3_case_i, sec3_case_ii };

struct SchminckeRange {
  double s_min;
  SchminckeCase case_tag;
};

struct SuperiorityPredicates {
  bool eq227;  // (n-8)(n-4) > g(g-12)
  bool eq228;  // (g+n-4)(3g+n-8) >= 0
};

struct N3Chain {
  double A;
  double B_plus, B_minus;
  double eps_plus, eps_minus;
  double tau_plus;
  double alpha_hat_plus, alpha_hat_minus;
  double s_alpha_hat_plus;
  double discriminant;  // -(8B-6)(1+eps) + 8 eps^2 + 8, at A=-1/2, B=B_+, eps=eps_+
};

struct RemarkA2 {
  double G;    // (A t + B)/(C t + D)
  double G_a;  // G at t = a, the infimum over [a, inf)
  double P;    // P_n(gamma)
};

// q = (n+g-4)(n-g)/4, also the Rellich shift (n-2)^2/4 - (g-2)^2/4.
double shift_q(const Params& p);
// d = (n+g-4)^2/4
double shift_d(const Params& p);

double hardy_constant(const Params& p);
MinimizerResult rellich_constant(const Params& p);
// (lambda_j + q)^2
double rellich_mode_constant(const Params& p, int j);
double hardy_rellich_alpha(const Params& p, int j);
MinimizerResult hardy_rellich_constant(const Params& p);

bool lemma49_condition(const Params& p, int j);
inline constexpr int kLemma410Cap = 64;
std::optional<int> lemma410_bound(const Params& p, int cap = kLemma410Cap);

Thm21Coefficients thm21_coefficients(double alpha, double beta, const Params& p);
Thm31Coefficients thm31_coefficients(double alpha, double beta, double tau, const Params& p);
double lemma314_coefficient(double alpha, double beta, double tau, const Params& p);

SchminckeRange schmincke_range(const Params& p, SchminckeVariant v);
double schmincke_rhs_constant(const Params& p, double s);
double k3(double s);

SuperiorityPredicates superiority_predicates(const Params& p);
N3Chain n3_special_chain();
RemarkA2 remarkA2_helpers(const Params& p, double t, double A, double B, double C, double D,
                          double a);
double remarkA2_P(const Params& p);

// Closed forms used by the corollaries.
double cor23_constant(const Params& p);  // [(n-g)(g+n-4)/4]^2
// alpha_pm = 2 - g +- sqrt(((g-2)^2 + (n-2)^2)/2), beta = alpha(n - alpha - g)/2.
struct AlphaBeta {
  double alpha, beta;
};
AlphaBeta cor39_parameters(const Params& p, bool plus);

}  // namespace rellich
