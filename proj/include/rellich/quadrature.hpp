#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rellich {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 200;
};

void check_config(const QuadratureConfig& cfg);

// Globally adaptive 15/7 Gauss-Kronrod over [breaks.front(), breaks.back()], with the
// interior breakpoints as initial panel boundaries. Throws ConvergenceError when the
// subdivision budget runs out.
double integrate(const std::function<double(double)>& g, std::span<const double> breaks,
                 const QuadratureConfig& cfg = {});
double integrate(const std::function<double(double)>& g, double a, double b,
                 const QuadratureConfig& cfg = {});

// Vector-valued integrand: g(r, out) writes ncomp values. Every component must meet the
// tolerance max(abs_tol, rel_tol * |I_k|, 50 eps * int |g_k|).
using VectorIntegrand = std::function<void(double, double*)>;
std::vector<double> integrate_many(const VectorIntegrand& g, std::size_t ncomp,
                                   std::span<const double> breaks, const QuadratureConfig& cfg = {});

}  // namespace rellich
