#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rellich/constants.hpp"
#include "rellich/profiles.hpp"
#include "rellich/quadrature.hpp"
#include "rellich/spectra.hpp"

namespace rellich {

// f(r, theta) = F(r) phi_j(theta) with phi_j a unit-normalized spherical harmonic.
struct ModeFunction {
  int j;
  RadialProfile F;
};

class MultiModeFunction {
 public:
  explicit MultiModeFunction(std::vector<ModeFunction> terms);
  MultiModeFunction(ModeFunction single);  // NOLINT(google-explicit-constructor)
  const std::vector<ModeFunction>& terms() const { return terms_; }
  // Union of all knots, used as quadrature breakpoints.
  std::vector<double> knots() const;

 private:
  std::vector<ModeFunction> terms_;
};

struct ModeIntegrals {
  double M0;    // int r^{g+n-5} F^2
  double M1;    // int r^{g+n-3} F'^2
  double M1hi;  // int r^{g+n-1} F'^2
  double M2;    // int r^{g+n-1} F''^2
  double L;     // int r^{g+n-1} (-F'' - (n-1)F'/r + lambda F/r^2)^2
  double P2;    // int r^{g+n-3} F^2
};

ModeIntegrals mode_integrals(const ModeFunction& mf, const Params& p, const QuadratureConfig& cfg = {});

double identity_363a_residual(const ModeFunction& mf, const Params& p, const QuadratureConfig& cfg = {});

enum class SphericalLemma { L3_5, L3_6, L3_7, L3_8 };

// Per-mode reductions, after cancelling the common lambda_j factor (u = r^{g/2} F, G = r^{g/2-2} F):
//   L3.5  -int r^{g/2} (r^{n-1} G')' F dr = (2g - g^2/4 - ng/2 + n - 4) M0 + M1
//   L3.6   int r^{g/2+n-2} G' F dr        = -(n/2) M0
//   L3.7  -int r^{g-2} (r^{n-1} F')' F dr = -(g-2)(g+n-4)/2 M0 + M1
//   L3.8   int r^{g+n-4} F' F dr          = -(g+n-4)/2 M0
// The left sides are integrated as written, without integration by parts.
double spherical_identity_residual(SphericalLemma lemma, const ModeFunction& mf, const Params& p,
                                   const QuadratureConfig& cfg = {});

struct Assembled {
  double lap2 = 0;         // int |x|^g |Lap f|^2
  double grad2_gm2 = 0;    // int |x|^{g-2} |grad f|^2
  double grad2_g = 0;      // int |x|^g |grad f|^2
  double pot_gm4 = 0;      // int |x|^{g-4} |f|^2
  double pot_gm2 = 0;      // int |x|^{g-2} |f|^2
  double radial_dir = 0;   // int |x|^{g-4} |x . grad f|^2
  double radial_g = 0;     // int |x|^g ||x|^{-1} x . grad f|^2
  double sph_half = 0;     // int |x|^{g-4} |(-Lap_S)^{1/2} f|^2
  double sph_half_dr = 0;  // int |x|^{g-2} |(-Lap_S)^{1/2} d_r f|^2
  double sph_full = 0;     // int |x|^{g-4} |Lap_S f|^2
  // Present when a LogWeightParams was supplied; W is log_refinement_weight.
  std::optional<double> logref_pot;   // int |x|^{g-4} W |f|^2
  std::optional<double> logref_grad;  // int |x|^{g-2} W |grad f|^2
  std::optional<double> logref_sph;   // int |x|^{g-4} W |grad_S f|^2
};

Assembled assemble(const MultiModeFunction& f, const Params& p, const QuadratureConfig& cfg = {},
                   const std::optional<LogWeightParams>& log_weight = std::nullopt);

// 1-D integrals of Lemma A.1 for a single profile, n suppressed.
struct OneDimIntegrals {
  double d2;  // int r^g F''^2
  double p4;  // int r^{g-4} F^2
  double d1;  // int r^g F'^2
  double p2;  // int r^{g-2} F^2
};
OneDimIntegrals one_dim_integrals(const RadialProfile& F, double gamma, const QuadratureConfig& cfg = {});

struct InequalityParams {
  double alpha = 0.0;
  double beta = 0.0;
  double tau = 0.0;
  double s = 0.0;
  int N = 1;
  std::optional<double> eta;  // empty: e_N * R
  double R = 1.0;
  bool abs_gamma_variant = false;  // 2.17 with 4(n-4-|g|)
};

struct InequalityReport {
  std::string ineq_id;
  double lhs;
  double rhs;
  double margin;
  std::optional<double> ratio;
  double constant_used;
  bool preconditions_met;
  double quadrature_tol;
};

const std::vector<std::string>& inequality_ids();

InequalityReport verify(const std::string& ineq_id, const Params& p, const InequalityParams& ip,
                        const MultiModeFunction& f, const QuadratureConfig& cfg = {});

struct ModeQuotients {
  double rellich_q;        // L / M0
  double hardy_rellich_q;  // L / (M1 + lambda M0)
};

ModeQuotients per_mode_quotients(const ModeFunction& mf, const Params& p, const QuadratureConfig& cfg = {});

struct SweepRow {
  double epsilon;
  double hardy_rellich_q;
  double rellich_q;
};

enum class SharpnessTarget { A, C };

inline QuadratureConfig sweep_config() { return {1e-8, 1e-14, 200}; }

// Trial family r^p psi_eps phi_{j0}. certify_A rejects the pairs (2,2) and (3,1).
std::vector<SweepRow> sharpness_sweep(const Params& p, int j0, double R, const std::vector<double>& schedule,
                                      const QuadratureConfig& cfg = sweep_config(), bool certify_A = true);

}  // namespace rellich
