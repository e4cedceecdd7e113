#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rellich/constants.hpp"

namespace rellich {

// Value and first two r-derivatives at one point.
struct Jet {
  double f = 0.0, d1 = 0.0, d2 = 0.0;
};

class ProfileImpl {
 public:
  virtual ~ProfileImpl() = default;
  // Only called for r strictly inside the support.
  virtual Jet jet_inside(double r) const = 0;
};

// Compactly supported radial function on [a, b] with 0 < a < b.
// Knots are the support endpoints plus interior points where the profile is only piecewise analytic.
class RadialProfile {
 public:
  RadialProfile(std::shared_ptr<const ProfileImpl> impl, std::vector<double> knots);

  double a() const { return knots_.front(); }
  double b() const { return knots_.back(); }
  const std::vector<double>& knots() const { return knots_; }

  Jet jet(double r) const;
  double eval(double r) const { return jet(r).f; }
  double eval_d1(double r) const { return jet(r).d1; }
  double eval_d2(double r) const { return jet(r).d2; }

  RadialProfile scaled(double c) const;

 private:
  std::shared_ptr<const ProfileImpl> impl_;
  std::vector<double> knots_;
};

// C^infinity step on [0,1]: sigma(x)/(sigma(x)+sigma(1-x)), sigma(x) = exp(-1/x).
Jet smooth_step(double x);

RadialProfile smooth_bump(double a, double b);
RadialProfile random_profile(std::uint64_t seed, double a, double b, int degree);
RadialProfile zero_profile(double a, double b);

struct CutoffSpec {
  double R;
  double epsilon;
};

// Plateau psi_eps on (0, R): 0 up to eps R/10, 1 on [eps R/5, 4R/5], 0 from 9R/10.
RadialProfile cutoff(const CutoffSpec& spec);

struct TrialFunction {
  Params p;
  int j0;
  double epsilon;
  double R;
  double exponent_p() const { return (4.0 - p.n - p.gamma + epsilon) / 2.0; }
};

// r^p psi_eps(r)
RadialProfile trial_radial(const TrialFunction& t);

// r^p times a plateau in log r: 1 for |ln(r/center)| <= L, 0 for |ln(r/center)| >= L + w.
RadialProfile log_plateau_power(double p, double center, double L, double w);

std::vector<double> nested_epsilon_schedule(double eps0, int steps);

}  // namespace rellich
