#include "rellich/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rellich/errors.hpp"
#include "rellich/parallel.hpp"

namespace rellich {

MultiModeFunction::MultiModeFunction(std::vector<ModeFunction> terms) : terms_(std::move(terms)) {
  std::set<int> seen;
  for (const ModeFunction& t : terms_) {
    if (t.j < 0) throw DomainError("mode index must be >= 0");
    if (!seen.insert(t.j).second) throw DomainError("multi-mode function needs distinct mode indices");
  }
}

MultiModeFunction::MultiModeFunction(ModeFunction single) : MultiModeFunction(std::vector<ModeFunction>{std::move(single)}) {}

std::vector<double> MultiModeFunction::knots() const {
  std::vector<double> k;
  for (const ModeFunction& t : terms_) k.insert(k.end(), t.F.knots().begin(), t.F.knots().end());
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

namespace {

struct Extended {
  ModeIntegrals m;
  double LW0 = 0.0;  // int r^{g+n-5} W F^2
  double LW1 = 0.0;  // int r^{g+n-3} W F'^2
};

Extended integrals_with_weight(const ModeFunction& mf, const Params& p, const QuadratureConfig& cfg,
                               const std::optional<LogWeightParams>& w) {
  check_params(p);
  const double n = p.n;
  const double g = p.gamma;
  const double lam = eigenvalue(p.n, mf.j);
  const std::size_t ncomp = w ? 8 : 6;
  const RadialProfile& F = mf.F;
  auto body = [&](double r, double* out) {
    const Jet J = F.jet(r);
    const double base = std::pow(r, g + n - 5.0);  // r^{g+n-5}
    const double r2 = r * r;
    const double f2 = J.f * J.f;
    const double d12 = J.d1 * J.d1;
    const double lap = -J.d2 - (n - 1.0) * J.d1 / r + lam * J.f / r2;
    out[0] = base * f2;
    out[1] = base * r2 * d12;
    out[2] = base * r2 * r2 * d12;
    out[3] = base * r2 * r2 * J.d2 * J.d2;
    out[4] = base * r2 * r2 * lap * lap;
    out[5] = base * r2 * f2;
    if (w) {
      const double W = (f2 == 0.0 && d12 == 0.0) ? 0.0 : log_refinement_weight(*w, r);
      out[6] = W * out[0];
      out[7] = W * out[1];
    }
  };
  const std::vector<double>& br = F.knots();
  const std::vector<double> v = integrate_many(body, ncomp, br, cfg);
  Extended e;
  e.m = {v[0], v[1], v[2], v[3], v[4], v[5]};
  if (w) {
    e.LW0 = v[6];
    e.LW1 = v[7];
  }
  return e;
}

}  // namespace

ModeIntegrals mode_integrals(const ModeFunction& mf, const Params& p, const QuadratureConfig& cfg) {
  return integrals_with_weight(mf, p, cfg, std::nullopt).m;
}

double identity_363a_residual(const ModeFunction& mf, const Params& p, const QuadratureConfig& cfg) {
  const ModeIntegrals m = mode_integrals(mf, p, cfg);
  const double n = p.n;
  const double g = p.gamma;
  const double lam = eigenvalue(p.n, mf.j);
  const double rhs = m.M2 + (2.0 * lam + (n - 1.0) * (1.0 - g)) * m.M1 +
                     (lam * lam + lam * (g + n - 4.0) * (2.0 - g)) * m.M0;
  if (m.L == 0.0 && rhs == 0.0) return 0.0;
  return std::abs(m.L - rhs) / std::max(m.L, 1e-300);
}

double spherical_identity_residual(SphericalLemma lemma, const ModeFunction& mf, const Params& p,
                                   const QuadratureConfig& cfg) {
  check_params(p);
  const double n = p.n;
  const double g = p.gamma;
  const double h = g / 2.0;
  auto lhs_integrand = [&](double r, const Jet& J) {
    const double F = J.f, F1 = J.d1, F2 = J.d2;
    switch (lemma) {
      case SphericalLemma::L3_5: {
        const double G1 = (h - 2.0) * std::pow(r, h - 3.0) * F + std::pow(r, h - 2.0) * F1;
        const double G2 = (h - 2.0) * (h - 3.0) * std::pow(r, h - 4.0) * F +
                          2.0 * (h - 2.0) * std::pow(r, h - 3.0) * F1 + std::pow(r, h - 2.0) * F2;
        const double H1 = (n - 1.0) * std::pow(r, n - 2.0) * G1 + std::pow(r, n - 1.0) * G2;
        return -std::pow(r, h) * H1 * F;
      }
      case SphericalLemma::L3_6: {
        const double G1 = (h - 2.0) * std::pow(r, h - 3.0) * F + std::pow(r, h - 2.0) * F1;
        return std::pow(r, h - 1.0) * G1 * F * std::pow(r, n - 1.0);
      }
      case SphericalLemma::L3_7: {
        const double H1 = (n - 1.0) * std::pow(r, n - 2.0) * F1 + std::pow(r, n - 1.0) * F2;
        return -std::pow(r, g - 2.0) * H1 * F;
      }
      case SphericalLemma::L3_8:
        return std::pow(r, g + n - 4.0) * F1 * F;
    }
    return 0.0;
  };
  auto body = [&](double r, double* out) {
    const Jet J = mf.F.jet(r);
    const double v = lhs_integrand(r, J);
    const double base = std::pow(r, g + n - 5.0);
    out[0] = v;
    out[1] = std::abs(v);
    out[2] = base * J.f * J.f;
    out[3] = base * r * r * J.d1 * J.d1;
  };
  const std::vector<double> v = integrate_many(body, 4, mf.F.knots(), cfg);
  const double lhs = v[0], M0 = v[2], M1 = v[3];
  double c0 = 0.0, c1 = 0.0;
  switch (lemma) {
    case SphericalLemma::L3_5: c0 = 2.0 * g - g * g / 4.0 - n * g / 2.0 + n - 4.0; c1 = 1.0; break;
    case SphericalLemma::L3_6: c0 = -n / 2.0; break;
    case SphericalLemma::L3_7: c0 = -(g - 2.0) * (g + n - 4.0) / 2.0; c1 = 1.0; break;
    case SphericalLemma::L3_8: c0 = -(g + n - 4.0) / 2.0; break;
  }
  const double rhs = c0 * M0 + c1 * M1;
  const double scale = std::max({v[1], std::abs(c0) * M0 + c1 * M1});
  if (scale == 0.0) return 0.0;
  return std::abs(lhs - rhs) / scale;
}

Assembled assemble(const MultiModeFunction& f, const Params& p, const QuadratureConfig& cfg,
                   const std::optional<LogWeightParams>& log_weight) {
  check_params(p);
  if (log_weight)
    for (const ModeFunction& t : f.terms())
      if (t.F.b() > log_weight->R()) throw DomainError("profile support must lie inside the ball (0, R)");
  Assembled A;
  if (log_weight) A.logref_pot = A.logref_grad = A.logref_sph = 0.0;
  for (const ModeFunction& t : f.terms()) {
    const Extended e = integrals_with_weight(t, p, cfg, log_weight);
    const ModeIntegrals& m = e.m;
    const double lam = eigenvalue(p.n, t.j);
    A.lap2 += m.L;
    A.grad2_gm2 += m.M1 + lam * m.M0;
    A.grad2_g += m.M1hi + lam * m.P2;
    A.pot_gm4 += m.M0;
    A.pot_gm2 += m.P2;
    A.radial_dir += m.M1;
    A.radial_g += m.M1hi;
    A.sph_half += lam * m.M0;
    A.sph_half_dr += lam * m.M1;
    A.sph_full += lam * lam * m.M0;
    if (log_weight) {
      *A.logref_pot += e.LW0;
      *A.logref_grad += e.LW1 + lam * e.LW0;
      *A.logref_sph += lam * e.LW0;
    }
  }
  return A;
}

OneDimIntegrals one_dim_integrals(const RadialProfile& F, double gamma, const QuadratureConfig& cfg) {
  auto body = [&](double r, double* out) {
    const Jet J = F.jet(r);
    const double w = std::pow(r, gamma);
    const double r2 = r * r;
    out[0] = w * J.d2 * J.d2;
    out[1] = w * J.f * J.f / (r2 * r2);
    out[2] = w * J.d1 * J.d1;
    out[3] = w * J.f * J.f / r2;
  };
  const std::vector<double> v = integrate_many(body, 4, F.knots(), cfg);
  return {v[0], v[1], v[2], v[3]};
}

const std::vector<std::string>& inequality_ids() {
  static const std::vector<std::string> ids = {
      "2.1",  "2.2",  "2.11", "2.16", "2.17",  "2.18", "2.19", "2.24",  "2.26",  "2.35",
      "2.43", "3.1",  "3.2",  "3.38", "3.44",  "3.48a", "3.49", "3.51", "3.59a", "3.69a",
      "3.89", "3.100", "3.115", "3.49a", "3.50a", "4.31"};
  return ids;
}

namespace {

struct Verdict {
  double lhs, rhs, constant;
  bool pre;
};

bool needs_log_weight(const std::string& id) { return id == "3.48a" || id == "4.31"; }

Verdict one_dim_verdict(const std::string& id, const Params& p, const MultiModeFunction& f,
                        const QuadratureConfig& cfg) {
  const double g = p.gamma;
  double lhs = 0.0, den = 0.0;
  for (const ModeFunction& t : f.terms()) {
    const OneDimIntegrals o = one_dim_integrals(t.F, g, cfg);
    lhs += id == "3.49a" ? o.d2 : o.d1;
    den += id == "3.49a" ? o.p4 : o.p2;
  }
  const double k = id == "3.49a" ? (1 - g) * (1 - g) * (3 - g) * (3 - g) / 16.0 : (1 - g) * (1 - g) / 4.0;
  return {lhs, k * den, k, true};
}

}  // namespace

InequalityReport verify(const std::string& id, const Params& p, const InequalityParams& ip,
                        const MultiModeFunction& f, const QuadratureConfig& cfg) {
  check_params(p);
  const auto& ids = inequality_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw DomainError("unknown inequality id: " + id);

  const double n = p.n;
  const double g = p.gamma;
  Verdict v{};

  if (id == "3.49a" || id == "3.50a") {
    v = one_dim_verdict(id, p, f, cfg);
  } else {
    std::optional<LogWeightParams> lw;
    if (needs_log_weight(id)) lw = LogWeightParams(ip.N, ip.eta.value_or(iterated_exp(ip.N) * ip.R), ip.R);
    const Assembled A = assemble(f, p, cfg, lw);
    const Thm31Coefficients c = thm31_coefficients(ip.alpha, ip.beta, ip.tau, p);
    const double lhs = A.lap2;
    const double tau = ip.tau;
    const double s = ip.s;
    const double hr_sph_only = c.c_grad * A.grad2_gm2 + c.c_radial * A.radial_dir + c.c_pot * A.pot_gm4;

    if (id == "2.1") {
      v = {lhs, hr_sph_only, c.c_pot, true};
    } else if (id == "2.2") {
      v = {lhs, (c.c_grad + c.c_radial) * A.grad2_gm2 + c.c_pot * A.pot_gm4, c.c_pot, c.cauchy_valid};
    } else if (id == "2.11") {
      const double k = cor23_constant(p);
      v = {lhs, k * A.pot_gm4, k, (n >= g && g >= 2) || (n >= 4 - g && g <= 2)};
    } else if (id == "2.16") {
      const double k = (n - g) * (n - g) / 4.0;
      v = {lhs, k * A.grad2_gm2, k, (n >= g && g >= 2) || (n >= 8 - 3 * g && g <= 2)};
    } else if (id == "2.17") {
      const double ag = ip.abs_gamma_variant ? std::abs(g) : g;
      const double k = 4.0 * (n - 4.0 - ag);
      const bool pre = ip.abs_gamma_variant ? n >= 4 + std::abs(g) : (n >= 4 + g && g >= 0);
      v = {lhs, k * A.grad2_gm2, k, pre};
    } else if (id == "2.18") {
      const double k = (4.0 - 2.0 * g) * (g + n - 4.0);
      v = {lhs, k * A.grad2_gm2, k, n >= 4 - g && g <= 2};
    } else if (id == "2.19") {
      const double k = (n - g) * (n - g) / 4.0;
      v = {lhs, k * A.radial_dir, k, (n >= g && g >= 2) || (n >= 4 - g && g <= 2)};
    } else if (id == "2.24" || id == "3.89") {
      const double k = schmincke_rhs_constant(p, s);
      const auto range = schmincke_range(p, id == "2.24" ? SchminckeVariant::sec2 : SchminckeVariant::sec3);
      v = {lhs, -s * A.grad2_gm2 + k * A.pot_gm4, k, s >= range.s_min};
    } else if (id == "2.26") {
      const double k = 0.5 * ((n - 2) * (n - 2) - (g - 2) * (g - 2));
      v = {lhs, k * A.grad2_gm2, k, (g >= n && g >= 2) || (8 - 3 * g >= n && g <= 2)};
    } else if (id == "2.35") {
      const double k = hardy_constant(p);
      v = {A.grad2_g, k * A.pot_gm2, k, g != 2 - n};
    } else if (id == "2.43") {
      const double k = hardy_constant(p);
      v = {A.radial_g, k * A.pot_gm2, k, g != 2 - n};
    } else if (id == "3.1" || id == "3.2") {
      const double sph = c.c_sph_half * A.sph_half + c.c_sph_half_dr * A.sph_half_dr + c.c_sph_full * A.sph_full;
      if (id == "3.1")
        v = {lhs, hr_sph_only + sph, c.c_pot, true};
      else
        v = {lhs, (c.c_grad + c.c_radial) * A.grad2_gm2 + c.c_pot * A.pot_gm4 + sph, c.c_pot, c.cauchy_valid};
    } else if (id == "3.38") {
      const double k = cor23_constant(p);
      const double ch = 0.5 * (tau * (g + n - 4) * (g + n - 4) + (n - 2) * (n - 2) - (g - 2) * (g - 2));
      v = {lhs, k * A.pot_gm4 + ch * A.sph_half - 2.0 * tau * A.sph_half_dr - tau * (tau + 2.0) * A.sph_full, k, true};
    } else if (id == "3.44") {
      const double k = rellich_constant(p).value;
      v = {lhs, k * A.pot_gm4, k, true};
    } else if (id == "3.48a") {
      const double k = rellich_constant(p).value;
      const double w = ((n - g) * (n - g) + (n + g - 4) * (n + g - 4)) / 16.0;
      v = {lhs, k * A.pot_gm4 + w * *A.logref_pot, k, true};
    } else if (id == "3.49") {
      const double k = -tau * (2.0 * ip.beta + (g + n - 4.0) * (n / 2.0 - g / 2.0 - ip.alpha));
      v = {lhs, hr_sph_only + k * A.sph_half + c.c_sph_full * A.sph_full, c.c_pot, tau < 0.0};
    } else if (id == "3.51") {
      const double k =
          -tau * (2.0 * ip.beta + (g + n - 4.0) * (n / 2.0 - g / 2.0 - ip.alpha) + (tau + 2.0) * (n - 1.0));
      v = {lhs, hr_sph_only + k * A.sph_half, k, tau > -2.0 && tau < 0.0};
    } else if (id == "3.59a") {
      double rhs = 0.0, kmin = INFINITY;
      for (const ModeFunction& t : f.terms()) {
        const ModeIntegrals m = mode_integrals(t, p, cfg);
        const double a = hardy_rellich_alpha(p, t.j);
        rhs += a * (m.M1 + eigenvalue(p.n, t.j) * m.M0);
        kmin = std::min(kmin, a);
      }
      v = {lhs, rhs, kmin, true};
    } else if (id == "3.69a") {
      const double k = hardy_rellich_constant(p).value;
      v = {lhs, k * A.grad2_gm2, k, true};
    } else if (id == "3.100" || id == "3.115") {
      const bool n3 = p.n == 3 && g == 0.0;
      const bool in_range = s >= -25.0 / 36.0;
      double k = (4.0 * s + 25.0 / 9.0) / 16.0;
      if (id == "3.115" && in_range) k = k3(s);
      v = {lhs, -s * A.grad2_gm2 + k * A.pot_gm4, k, n3 && in_range};
    } else if (id == "4.31") {
      const double k = hardy_rellich_constant(p).value;
      v = {lhs, k * A.grad2_gm2 + 0.25 * *A.logref_grad + 0.25 * *A.logref_sph, k, true};
    }
  }

  InequalityReport r;
  r.ineq_id = id;
  r.lhs = v.lhs;
  r.rhs = v.rhs;
  r.margin = v.lhs - v.rhs;
  if (v.rhs > 0.0) r.ratio = v.lhs / v.rhs;
  r.constant_used = v.constant;
  r.preconditions_met = v.pre;
  r.quadrature_tol = cfg.rel_tol;
  return r;
}

ModeQuotients per_mode_quotients(const ModeFunction& mf, const Params& p, const QuadratureConfig& cfg) {
  const ModeIntegrals m = mode_integrals(mf, p, cfg);
  const double lam = eigenvalue(p.n, mf.j);
  const double den_hr = m.M1 + lam * m.M0;
  if (!(m.M0 > 0.0) || !(den_hr > 0.0)) throw DegenerateInput("Rayleigh quotient of a zero profile");
  return {m.L / m.M0, m.L / den_hr};
}

std::vector<SweepRow> sharpness_sweep(const Params& p, int j0, double R, const std::vector<double>& schedule,
                                      const QuadratureConfig& cfg, bool certify_A) {
  check_params(p);
  if (certify_A && ((p.n == 2 && p.gamma == 2.0) || (p.n == 3 && p.gamma == 1.0)))
    throw UnsupportedCase("sharpness of A is not covered for (n, gamma) = (2, 2) or (3, 1): "
                          "the sharpness theorem for the Hardy-Rellich constant excludes these pairs");
  if (!(R > 0.0)) throw DomainError("R must be > 0");
  std::vector<SweepRow> rows(schedule.size());
  parallel_for(schedule.size(), [&](std::size_t i) {
    const double eps = schedule[i];
    const RadialProfile F = trial_radial({p, j0, eps, R});
    const ModeQuotients q = per_mode_quotients({j0, F}, p, cfg);
    rows[i] = {eps, q.hardy_rellich_q, q.rellich_q};
  });
  return rows;
}

}  // namespace rellich
