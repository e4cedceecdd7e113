#include "rellich/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rellich/errors.hpp"
#include "rellich/kernels.hpp"
#include "rellich/parallel.hpp"
#include "rellich/spectra.hpp"

namespace rellich {

std::vector<double> RadialGrid::nodes() const {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw DomainError("grid needs 0 < r_min < r_max");
  if (points < 50) throw DomainError("grid needs at least 50 points");
  const double t0 = std::log(r_min);
  const double t1 = std::log(r_max);
  std::vector<double> x(points);
  for (int i = 0; i < points; ++i) x[i] = std::exp(t0 + (t1 - t0) * i / (points - 1));
  x.front() = r_min;
  x.back() = r_max;
  return x;
}

std::vector<double> SymPenta::apply(const std::vector<double>& x) const {
  std::vector<double> y(size());
  kernels::sym_penta_matvec(d.data(), e1.data(), e2.data(), x.data(), y.data(), size());
  return y;
}

namespace {

SymPenta zeros(std::size_t m) {
  return {std::vector<double>(m, 0.0), std::vector<double>(m - 1, 0.0), std::vector<double>(m - 2, 0.0)};
}

// Adds w * row^T row, where row has entries c[0..width) on unknowns k0, k0+1, ... (out-of-range dropped).
void add_outer(SymPenta& S, long k0, const double* c, int width, double w) {
  const long m = static_cast<long>(S.size());
  for (int a = 0; a < width; ++a) {
    const long ka = k0 + a;
    if (ka < 0 || ka >= m) continue;
    for (int b = a; b < width; ++b) {
      const long kb = k0 + b;
      if (kb < 0 || kb >= m) continue;
      const double v = w * c[a] * c[b];
      switch (b - a) {
        case 0: S.d[ka] += v; break;
        case 1: S.e1[ka] += v; break;
        case 2: S.e2[ka] += v; break;
      }
    }
  }
}

struct Factor {
  std::vector<double> D, l1, l2;
  int negative = 0;
};

// Banded LDL^T of A - sigma B without pivoting. The count of negative pivots is the number of
// generalized eigenvalues below sigma.
Factor ldlt(const SymPenta& A, const SymPenta& B, double sigma) {
  const std::size_t m = A.size();
  Factor f{std::vector<double>(m), std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  const double tiny = 1e-300;
  for (std::size_t i = 0; i < m; ++i) {
    double di = A.d[i] - sigma * B.d[i];
    if (i >= 2) {
      f.l2[i] = (A.e2[i - 2] - sigma * B.e2[i - 2]) / f.D[i - 2];
      di -= f.l2[i] * f.l2[i] * f.D[i - 2];
    }
    if (i >= 1) {
      double a = A.e1[i - 1] - sigma * B.e1[i - 1];
      if (i >= 2) a -= f.l2[i] * f.D[i - 2] * f.l1[i - 1];
      f.l1[i] = a / f.D[i - 1];
      di -= f.l1[i] * f.l1[i] * f.D[i - 1];
    }
    if (!std::isfinite(di)) throw NumericalError("banded LDL^T breakdown at row " + std::to_string(i));
    if (di == 0.0) di = tiny;
    if (di < 0.0) ++f.negative;
    f.D[i] = di;
  }
  return f;
}

void solve(const Factor& f, std::vector<double>& x) {
  const std::size_t m = x.size();
  for (std::size_t i = 1; i < m; ++i) {
    x[i] -= f.l1[i] * x[i - 1];
    if (i >= 2) x[i] -= f.l2[i] * x[i - 2];
  }
  for (std::size_t i = 0; i < m; ++i) x[i] /= f.D[i];
  for (std::size_t i = m; i-- > 0;) {
    if (i + 1 < m) x[i] -= f.l1[i + 1] * x[i + 1];
    if (i + 2 < m) x[i] -= f.l2[i + 2] * x[i + 2];
  }
}

double norm(const std::vector<double>& x) { return std::sqrt(kernels::dot(x.data(), x.data(), x.size())); }

double inf_norm(const SymPenta& S) {
  const std::size_t m = S.size();
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = std::abs(S.d[i]);
    if (i >= 1) s += std::abs(S.e1[i - 1]);
    if (i + 1 < m) s += std::abs(S.e1[i]);
    if (i >= 2) s += std::abs(S.e2[i - 2]);
    if (i + 2 < m) s += std::abs(S.e2[i]);
    best = std::max(best, s);
  }
  return best;
}

struct InverseIteration {
  double mu;
  std::vector<double> v;
  double residual;
  int iterations;
};

InverseIteration smallest_pair(const SymPenta& A, const SymPenta& B, const EigenOptions& opt) {
  const std::size_t m = A.size();
  std::vector<double> v(m);
  for (std::size_t k = 0; k < m; ++k) v[k] = std::sin(M_PI * (k + 1.0) / (m + 1.0));

  // Bisection on the Sturm count, bracketed by 0 (A is positive definite) and a Rayleigh quotient.
  double lo = 0.0;
  double hi = kernels::dot(v.data(), A.apply(v).data(), m) / kernels::dot(v.data(), B.apply(v).data(), m);
  if (ldlt(A, B, 0.0).negative != 0) throw NumericalError("numerator form is not positive definite");
  while (ldlt(A, B, hi).negative == 0) hi *= 2.0;
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (ldlt(A, B, mid).negative == 0 ? lo : hi) = mid;
  }

  // Shifted inverse iteration just below the bracket.
  const Factor f = ldlt(A, B, lo - 1e-10 * hi);
  const double scale_A = inf_norm(A);
  const double scale_B = inf_norm(B);
  double best_res = INFINITY;
  InverseIteration best{};
  for (int it = 1; it <= opt.max_iterations; ++it) {
    std::vector<double> x = B.apply(v);
    solve(f, x);
    const std::vector<double> Bx = B.apply(x);
    const double s = std::sqrt(kernels::dot(x.data(), Bx.data(), m));
    if (!(s > 0.0) || !std::isfinite(s)) throw NumericalError("inverse iteration lost its vector");
    for (double& e : x) e /= s;
    v = std::move(x);
    const std::vector<double> Av = A.apply(v);
    const std::vector<double> Bv = B.apply(v);
    const double mu = kernels::dot(v.data(), Av.data(), m);
    std::vector<double> r(m);
    for (std::size_t k = 0; k < m; ++k) r[k] = Av[k] - mu * Bv[k];
    const double res = norm(r) / ((scale_A + std::abs(mu) * scale_B) * norm(v));
    if (res < best_res) {
      best_res = res;
      best = {mu, v, res, it};
    }
    if (res <= opt.residual_tol) return best;
  }
  throw ConvergenceError("inverse iteration did not reach the residual tolerance", best.mu);
}

}  // namespace

DiscretizedForms discretize(const Params& p, int j, const RadialGrid& grid, Quotient quotient) {
  check_params(p);
  const std::vector<double> x = grid.nodes();
  const int N = grid.points;
  const std::size_t m = N - 2;
  const double h = (std::log(grid.r_max) - std::log(grid.r_min)) / (N - 1);
  const double n = p.n;
  const double g = p.gamma;
  const double a = (g + n - 4.0) / 2.0;
  const double lam = eigenvalue(p.n, j);
  const double b = g - 2.0;
  const double c = lam + (g + n - 4.0) * (n - g) / 4.0;

  DiscretizedForms F{p, j, quotient, h, {}, {}, zeros(m), zeros(m), zeros(m)};
  for (std::size_t k = 0; k < m; ++k) {
    F.r.push_back(x[k + 1]);
    F.scaling.push_back(std::pow(x[k + 1], a));
  }
  // Node i carries unknown i-1. Operator rows at every grid node, including the two ends.
  const double row[3] = {-1.0 / (h * h) - b / (2.0 * h), 2.0 / (h * h) + c, -1.0 / (h * h) + b / (2.0 * h)};
  for (int i = 0; i < N; ++i) add_outer(F.numerator, i - 2, row, 3, h);
  // M0: rectangle rule on the nodes.
  for (std::size_t k = 0; k < m; ++k) F.denominator_rellich.d[k] = h;
  // M1: one row per cell [i, i+1], forward difference with midpoint average.
  const double cell[2] = {-1.0 / h - a / 2.0, 1.0 / h - a / 2.0};
  for (int i = 0; i + 1 < N; ++i) add_outer(F.denominator_hr, i - 1, cell, 2, h);
  for (std::size_t k = 0; k < m; ++k) F.denominator_hr.d[k] += lam * h;
  return F;
}

EigenResult min_quotient(const DiscretizedForms& forms, const EigenOptions& opt) {
  InverseIteration r = smallest_pair(forms.numerator, forms.denominator(), opt);
  for (std::size_t k = 0; k < r.v.size(); ++k) r.v[k] /= forms.scaling[k];
  return {r.mu, std::move(r.v), r.residual, r.iterations};
}

double numerator_min_eigenvalue(const DiscretizedForms& forms) {
  const std::size_t m = forms.numerator.size();
  SymPenta I = zeros(m);
  for (double& d : I.d) d = 1.0;
  return smallest_pair(forms.numerator, I, {}).mu;
}

std::vector<ConvergeEntry> converge_study(const Params& p, int j, Quotient quotient,
                                          const std::vector<std::pair<double, double>>& domains,
                                          const std::vector<int>& points_list) {
  std::vector<ConvergeEntry> out;
  for (const auto& [lo, hi] : domains)
    for (int pts : points_list) out.push_back({lo, hi, pts, 0.0});
  parallel_for(out.size(), [&](std::size_t i) {
    ConvergeEntry& e = out[i];
    e.mu_min = min_quotient(discretize(p, j, {e.r_min, e.r_max, e.points}, quotient)).mu_min;
  });
  return out;
}

}  // namespace rellich
