#pragma once

#include <utility>
#include <vector>

#include "rellich/constants.hpp"

namespace rellich {

struct RadialGrid {
  double r_min;
  double r_max;
  int points;
  std::vector<double> nodes() const;  // log-uniform, nodes[0] = r_min, nodes.back() = r_max
};

// Symmetric pentadiagonal matrix: d[m], e1[m-1], e2[m-2].
struct SymPenta {
  std::vector<double> d, e1, e2;
  std::size_t size() const { return d.size(); }
  std::vector<double> apply(const std::vector<double>& x) const;
};

enum class Quotient { rellich, hardy_rellich };

// Unknowns are v_k = r^a F(r) at the interior nodes, a = (g+n-4)/2, with t = ln r.
// In these variables
//   L  = int (-v'' + (g-2) v' + (lambda+q) v)^2 dt,  M0 = int v^2 dt,  M1 = int (v' - a v)^2 dt,
// and F (hence v) vanishes outside the grid, so the end rows of the second-difference
// operator see zero neighbours; this clamps both F and F'.
struct DiscretizedForms {
  Params p;
  int j;
  Quotient quotient;
  double h;                     // step in ln r
  std::vector<double> r;        // interior nodes
  std::vector<double> scaling;  // r^a at interior nodes: v = scaling * F
  SymPenta numerator;
  SymPenta denominator_rellich;
  SymPenta denominator_hr;
  const SymPenta& denominator() const {
    return quotient == Quotient::rellich ? denominator_rellich : denominator_hr;
  }
};

DiscretizedForms discretize(const Params& p, int j, const RadialGrid& grid, Quotient quotient);

struct EigenResult {
  double mu_min;
  std::vector<double> vector;  // F at the interior nodes, unit denominator norm
  double residual_norm;        // ||A v - mu B v|| / ((||A|| + |mu| ||B||) ||v||), infinity norms on the matrices
  int iterations;
};

struct EigenOptions {
  double residual_tol = 1e-10;
  int max_iterations = 100;
};

// Smallest generalized eigenvalue: bisection on the Sturm count of A - mu B (banded LDL^T inertia),
// then shifted inverse iteration for the vector.
EigenResult min_quotient(const DiscretizedForms& forms, const EigenOptions& opt = {});

// Smallest eigenvalue of the numerator alone (identity denominator).
double numerator_min_eigenvalue(const DiscretizedForms& forms);

struct ConvergeEntry {
  double r_min, r_max;
  int points;
  double mu_min;
};

std::vector<ConvergeEntry> converge_study(const Params& p, int j, Quotient quotient,
                                          const std::vector<std::pair<double, double>>& domains,
                                          const std::vector<int>& points_list);

}  // namespace rellich
