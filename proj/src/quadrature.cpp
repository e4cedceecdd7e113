#include "rellich/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rellich/errors.hpp"
#include "rellich/kernels.hpp"

namespace rellich {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Cancellation in a sign-changing integrand cannot be resolved below this fraction of int |g|.
constexpr double kRoundoff = 50.0 * 2.220446049250313e-16;

// Nodes in ascending order; Gauss nodes sit at the odd positions.
struct Rule {
  double x[15];
  double wk[15];
  double wg[7];
  Rule() {
    for (int i = 0; i < 7; ++i) {
      x[i] = -kXgk[i];
      x[14 - i] = kXgk[i];
      wk[i] = wk[14 - i] = kWgk[i];
    }
    x[7] = 0.0;
    wk[7] = kWgk[7];
    const double g[7] = {kWg[0], kWg[1], kWg[2], kWg[3], kWg[2], kWg[1], kWg[0]};
    std::copy(g, g + 7, wg);
  }
};

const Rule& rule() {
  static const Rule r;
  return r;
}

struct Panel {
  double a, b;
  std::vector<double> est, err, mag;  // mag: integral of |g|, for the roundoff floor
};

void apply_rule(const VectorIntegrand& g, std::size_t ncomp, Panel& p, std::vector<double>& vals,
                std::vector<double>& gauss) {
  const Rule& R = rule();
  const double c = 0.5 * (p.a + p.b);
  const double h = 0.5 * (p.b - p.a);
  vals.assign(15 * ncomp, 0.0);
  for (int i = 0; i < 15; ++i) g(c + h * R.x[i], vals.data() + i * ncomp);
  p.est.resize(ncomp);
  p.err.resize(ncomp);
  gauss.resize(ncomp);
  kernels::weighted_column_sums(vals.data(), ncomp, 15, ncomp, R.wk, p.est.data());
  kernels::weighted_column_sums(vals.data() + ncomp, 2 * ncomp, 7, ncomp, R.wg, gauss.data());
  for (double& v : vals) v = std::abs(v);
  p.mag.resize(ncomp);
  kernels::weighted_column_sums(vals.data(), ncomp, 15, ncomp, R.wk, p.mag.data());
  for (std::size_t k = 0; k < ncomp; ++k) {
    p.mag[k] *= h;
    p.est[k] *= h;
    p.err[k] = std::abs(p.est[k] - h * gauss[k]);
    if (!std::isfinite(p.est[k])) throw NumericalError("non-finite integrand value in quadrature");
  }
}

}  // namespace

void check_config(const QuadratureConfig& cfg) {
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) throw DomainError("quadrature tolerances must be > 0");
  if (cfg.max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
}

std::vector<double> integrate_many(const VectorIntegrand& g, std::size_t ncomp,
                                   std::span<const double> breaks, const QuadratureConfig& cfg) {
  check_config(cfg);
  if (breaks.size() < 2) throw DomainError("integration needs at least two breakpoints");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1])) throw DomainError("breakpoints must be strictly increasing");

  std::vector<double> vals, gauss;
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    panels.push_back({breaks[i], breaks[i + 1], {}, {}, {}});
    apply_rule(g, ncomp, panels.back(), vals, gauss);
  }

  std::vector<double> total(ncomp), error(ncomp), mag(ncomp), tol(ncomp);
  for (;;) {
    std::fill(total.begin(), total.end(), 0.0);
    std::fill(error.begin(), error.end(), 0.0);
    std::fill(mag.begin(), mag.end(), 0.0);
    for (const Panel& p : panels)
      for (std::size_t k = 0; k < ncomp; ++k) {
        total[k] += p.est[k];
        error[k] += p.err[k];
        mag[k] += p.mag[k];
      }
    bool done = true;
    for (std::size_t k = 0; k < ncomp; ++k) {
      tol[k] = std::max({cfg.abs_tol, cfg.rel_tol * std::abs(total[k]), kRoundoff * mag[k]});
      if (error[k] > tol[k]) done = false;
    }
    if (done) return total;

    if (static_cast<int>(panels.size()) >= cfg.max_subdivisions) {
      std::size_t worst = 0;
      for (std::size_t k = 1; k < ncomp; ++k)
        if (error[k] / tol[k] > error[worst] / tol[worst]) worst = k;
      throw ConvergenceError("quadrature: subdivision budget of " +
                                 std::to_string(cfg.max_subdivisions) + " exhausted",
                             total[worst]);
    }

    std::size_t pick = 0;
    double pick_score = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double score = 0.0;
      for (std::size_t k = 0; k < ncomp; ++k) score = std::max(score, panels[i].err[k] / tol[k]);
      if (score > pick_score) {
        pick_score = score;
        pick = i;
      }
    }
    const double mid = 0.5 * (panels[pick].a + panels[pick].b);
    Panel right{mid, panels[pick].b, {}, {}, {}};
    panels[pick].b = mid;
    apply_rule(g, ncomp, panels[pick], vals, gauss);
    apply_rule(g, ncomp, right, vals, gauss);
    panels.push_back(std::move(right));
  }
}

double integrate(const std::function<double(double)>& g, std::span<const double> breaks,
                 const QuadratureConfig& cfg) {
  const VectorIntegrand v = [&g](double r, double* out) { out[0] = g(r); };
  return integrate_many(v, 1, breaks, cfg)[0];
}

double integrate(const std::function<double(double)>& g, double a, double b,
                 const QuadratureConfig& cfg) {
  const double br[2] = {a, b};
  return integrate(g, std::span<const double>(br, 2), cfg);
}

}  // namespace rellich
