#include "rellich/profiles.hpp"

#include <cmath>
#include <random>
#include <utility>

#include "rellich/errors.hpp"

namespace rellich {

namespace {

// exp(-700) is below every quantity the quadrature can resolve; past it the jets are exact zeros.
constexpr double kFlat = 700.0;

Jet product(const Jet& u, const Jet& v) {
  return {u.f * v.f, u.d1 * v.f + u.f * v.d1, u.d2 * v.f + 2.0 * u.d1 * v.d1 + u.f * v.d2};
}

Jet power_jet(double p, double r) {
  const double f = std::pow(r, p);
  return {f, p * f / r, p * (p - 1.0) * f / (r * r)};
}

// exp(-1/(1-t^2)) and its t-derivatives.
Jet bump_t(double t) {
  const double u = 1.0 - t * t;
  if (u <= 0.0 || 1.0 / u > kFlat) return {};
  const double phi = std::exp(-1.0 / u);
  const double g1 = -2.0 * t / (u * u);
  const double g2 = -2.0 / (u * u) - 8.0 * t * t / (u * u * u);
  return {phi, phi * g1, phi * (g1 * g1 + g2)};
}

class BumpImpl final : public ProfileImpl {
 public:
  BumpImpl(double a, double b) : a_(a), b_(b), k_(2.0 / (b - a)) {}
  Jet jet_inside(double r) const override {
    const Jet j = bump_t((2.0 * r - a_ - b_) / (b_ - a_));
    return {j.f, j.d1 * k_, j.d2 * k_ * k_};
  }

 private:
  double a_, b_, k_;
};

class PolyBumpImpl final : public ProfileImpl {
 public:
  PolyBumpImpl(std::vector<double> coeffs, double a, double b)
      : c_(std::move(coeffs)), a_(a), b_(b), k_(2.0 / (b - a)) {}
  Jet jet_inside(double r) const override {
    const double t = (2.0 * r - a_ - b_) / (b_ - a_);
    // Horner for P, P', P''
    Jet poly;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      poly.d2 = poly.d2 * t + 2.0 * poly.d1;
      poly.d1 = poly.d1 * t + poly.f;
      poly.f = poly.f * t + *it;
    }
    const Jet j = product(poly, bump_t(t));
    return {j.f, j.d1 * k_, j.d2 * k_ * k_};
  }

 private:
  std::vector<double> c_;
  double a_, b_, k_;
};

class ZeroImpl final : public ProfileImpl {
 public:
  Jet jet_inside(double) const override { return {}; }
};

class ScaledImpl final : public ProfileImpl {
 public:
  ScaledImpl(double c, RadialProfile inner) : c_(c), inner_(std::move(inner)) {}
  Jet jet_inside(double r) const override {
    const Jet j = inner_.jet(r);
    return {c_ * j.f, c_ * j.d1, c_ * j.d2};
  }

 private:
  double c_;
  RadialProfile inner_;
};

class PowerTimesImpl final : public ProfileImpl {
 public:
  PowerTimesImpl(double p, RadialProfile inner) : p_(p), inner_(std::move(inner)) {}
  Jet jet_inside(double r) const override {
    const Jet c = inner_.jet(r);
    if (c.f == 0.0 && c.d1 == 0.0 && c.d2 == 0.0) return {};
    return product(power_jet(p_, r), c);
  }

 private:
  double p_;
  RadialProfile inner_;
};

class CutoffImpl final : public ProfileImpl {
 public:
  CutoffImpl(double R, double eps) : R_(R), inner_w_(eps * R / 10.0) {}
  Jet jet_inside(double r) const override {
    if (r < 2.0 * inner_w_) {
      const Jet s = smooth_step((r - inner_w_) / inner_w_);
      return {s.f, s.d1 / inner_w_, s.d2 / (inner_w_ * inner_w_)};
    }
    if (r <= 0.8 * R_) return {1.0, 0.0, 0.0};
    const double w = R_ / 10.0;
    const Jet s = smooth_step((0.9 * R_ - r) / w);
    return {s.f, -s.d1 / w, s.d2 / (w * w)};
  }

 private:
  double R_, inner_w_;
};

class LogPlateauImpl final : public ProfileImpl {
 public:
  LogPlateauImpl(double center, double L, double w) : c_(center), L_(L), w_(w) {}
  Jet jet_inside(double r) const override {
    const double ell = std::log(r / c_);
    Jet s;  // derivatives in ell
    if (ell < -L_) {
      const Jet t = smooth_step((ell + L_ + w_) / w_);
      s = {t.f, t.d1 / w_, t.d2 / (w_ * w_)};
    } else if (ell <= L_) {
      s = {1.0, 0.0, 0.0};
    } else {
      const Jet t = smooth_step((L_ + w_ - ell) / w_);
      s = {t.f, -t.d1 / w_, t.d2 / (w_ * w_)};
    }
    return {s.f, s.d1 / r, (s.d2 - s.d1) / (r * r)};
  }

 private:
  double c_, L_, w_;
};

}  // namespace

RadialProfile::RadialProfile(std::shared_ptr<const ProfileImpl> impl, std::vector<double> knots)
    : impl_(std::move(impl)), knots_(std::move(knots)) {
  if (knots_.size() < 2 || !(knots_.front() > 0.0)) throw DomainError("profile support must be [a,b] with a > 0");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i] > knots_[i - 1])) throw DomainError("profile knots must be strictly increasing");
  if (!std::isfinite(knots_.back())) throw DomainError("profile support must be bounded");
}

Jet RadialProfile::jet(double r) const {
  if (!(r > a() && r < b())) return {};
  return impl_->jet_inside(r);
}

RadialProfile RadialProfile::scaled(double c) const {
  return RadialProfile(std::make_shared<ScaledImpl>(c, *this), knots_);
}

Jet smooth_step(double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  const double y = 1.0 - x;
  const double h = 1.0 / x - 1.0 / y;
  if (h > kFlat) return {0.0, 0.0, 0.0};
  if (h < -kFlat) return {1.0, 0.0, 0.0};
  const double h1 = -1.0 / (x * x) - 1.0 / (y * y);
  const double h2 = 2.0 / (x * x * x) - 2.0 / (y * y * y);
  const double e = std::exp(-std::abs(h));
  const double s = h > 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
  const double ss = e / ((1.0 + e) * (1.0 + e));  // s(1-s)
  const double s1 = -h1 * ss;
  const double s2 = -h2 * ss - h1 * (1.0 - 2.0 * s) * s1;
  return {s, s1, s2};
}

RadialProfile smooth_bump(double a, double b) {
  if (!(a > 0.0) || !(b > a)) throw DomainError("smooth_bump needs 0 < a < b");
  return RadialProfile(std::make_shared<BumpImpl>(a, b), {a, b});
}

RadialProfile random_profile(std::uint64_t seed, double a, double b, int degree) {
  if (!(a > 0.0) || !(b > a)) throw DomainError("random_profile needs 0 < a < b");
  if (degree < 0 || degree > 8) throw DomainError("random_profile degree must be in [0, 8]");
  std::mt19937_64 gen(seed);
  std::vector<double> coeffs(degree + 1);
  // uniform in [-1, 1) from the top 53 bits
  for (double& c : coeffs) c = -1.0 + 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return RadialProfile(std::make_shared<PolyBumpImpl>(std::move(coeffs), a, b), {a, b});
}

RadialProfile zero_profile(double a, double b) {
  return RadialProfile(std::make_shared<ZeroImpl>(), {a, b});
}

RadialProfile cutoff(const CutoffSpec& spec) {
  if (!(spec.R > 0.0)) throw DomainError("cutoff needs R > 0");
  if (!(spec.epsilon > 0.0 && spec.epsilon <= 1.0)) throw DomainError("cutoff needs 0 < eps <= 1");
  const double R = spec.R;
  const double e = spec.epsilon;
  return RadialProfile(std::make_shared<CutoffImpl>(R, e),
                       {e * R / 10.0, e * R / 5.0, 0.8 * R, 0.9 * R});
}

RadialProfile trial_radial(const TrialFunction& t) {
  check_params(t.p);
  const RadialProfile psi = cutoff({t.R, t.epsilon});
  return RadialProfile(std::make_shared<PowerTimesImpl>(t.exponent_p(), psi), psi.knots());
}

RadialProfile log_plateau_power(double p, double center, double L, double w) {
  if (!(center > 0.0) || !(L > 0.0) || !(w > 0.0)) throw DomainError("log plateau needs center, L, w > 0");
  const RadialProfile psi(std::make_shared<LogPlateauImpl>(center, L, w),
                          {center * std::exp(-L - w), center * std::exp(-L), center * std::exp(L),
                           center * std::exp(L + w)});
  return RadialProfile(std::make_shared<PowerTimesImpl>(p, psi), psi.knots());
}

std::vector<double> nested_epsilon_schedule(double eps0, int steps) {
  if (!(eps0 > 0.0 && eps0 <= 1.0)) throw DomainError("epsilon schedule needs 0 < eps0 <= 1");
  std::vector<double> out;
  for (int k = 0; k < steps; ++k) out.push_back(std::ldexp(eps0, -k));
  return out;
}

}  // namespace rellich
