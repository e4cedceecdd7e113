#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "rellich/errors.hpp"
#include "rellich/profiles.hpp"

using namespace rellich;

namespace {

// Richardson-extrapolated central differences of eval against the analytic derivatives.
void check_derivatives(const RadialProfile& F, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double a = F.a(), b = F.b();
  const double h = 1e-5 * (b - a);
  double scale0 = 0, scale1 = 0, scale2 = 0;
  for (int k = 0; k <= 2000; ++k) {
    const Jet J = F.jet(a + (b - a) * k / 2000.0);
    scale0 = std::max(scale0, std::abs(J.f));
    scale1 = std::max(scale1, std::abs(J.d1));
    scale2 = std::max(scale2, std::abs(J.d2));
  }
  const auto diff = [h](const std::function<double(double)>& g, double r) {
    const double d1 = (g(r + h) - g(r - h)) / (2 * h);
    const double d2 = (g(r + h / 2) - g(r - h / 2)) / h;
    return (4 * d2 - d1) / 3;
  };
  const double eps = 2.2e-16;
  for (int k = 0; k < 100; ++k) {
    const double r = std::uniform_real_distribution<double>(a + 2 * h, b - 2 * h)(rng);
    const double fd1 = diff([&](double x) { return F.eval(x); }, r);
    const double fd2 = diff([&](double x) { return F.eval_d1(x); }, r);
    CAPTURE(r);
    CHECK(std::abs(fd1 - F.eval_d1(r)) <= 1e-6 * std::max(std::abs(F.eval_d1(r)), 1e-3 * scale1) + 100 * eps * scale0 / h);
    CHECK(std::abs(fd2 - F.eval_d2(r)) <= 1e-6 * std::max(std::abs(F.eval_d2(r)), 1e-3 * scale2) + 100 * eps * scale1 / h);
  }
}

}  // namespace

TEST_SUITE("profiles") {
  TEST_CASE("smooth bump") {
    const RadialProfile B = smooth_bump(1.0, 3.0);
    CHECK(B.eval(2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(B.eval_d1(2.0) == doctest::Approx(0.0));
    for (double r : {1.0, 3.0, 0.5, 4.0}) {
      CHECK(B.eval(r) == 0.0);
      CHECK(B.eval_d1(r) == 0.0);
      CHECK(B.eval_d2(r) == 0.0);
    }
    CHECK_THROWS_AS(smooth_bump(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(smooth_bump(2.0, 1.0), DomainError);
    check_derivatives(B, 1);
    check_derivatives(smooth_bump(0.01, 0.02), 2);
  }

  TEST_CASE("smooth step") {
    CHECK(smooth_step(0.0).f == 0.0);
    CHECK(smooth_step(1.0).f == 1.0);
    CHECK(smooth_step(0.5).f == doctest::Approx(0.5));
    for (int k = 1; k < 100; ++k) CHECK(smooth_step(k / 100.0).f >= smooth_step((k - 1) / 100.0).f);
  }

  TEST_CASE("cutoff plateau") {
    const double R = 2.0;
    for (double eps : {1.0, 0.5, 1e-3}) {
      const RadialProfile c = cutoff({R, eps});
      CHECK(c.eval(eps * R / 10.0) == 0.0);
      CHECK(c.eval(19.0 * R / 20.0) == 0.0);
      CHECK(c.eval(9.0 * R / 10.0) == 0.0);
      for (int k = 0; k <= 100; ++k) {
        const double r = eps * R / 5.0 + (0.8 * R - eps * R / 5.0) * k / 100.0;
        CHECK(c.eval(r) == 1.0);
        CHECK(c.eval_d1(r) == 0.0);
      }
      check_derivatives(c, 3);
    }
    CHECK(cutoff({1.0, 1.0}).eval(0.5) == 1.0);
    CHECK_THROWS_AS(cutoff({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(cutoff({1.0, 1.5}), DomainError);
  }

  TEST_CASE("trial functions") {
    for (double eps : {0.5, 0.01, 1e-4}) {
      const TrialFunction t{{5, 0}, 0, eps, 1.0};
      const RadialProfile F = trial_radial(t);
      CHECK(F.a() > 0.0);
      CHECK(F.a() == doctest::Approx(eps / 10.0));
      CHECK(t.exponent_p() == doctest::Approx((-1.0 + eps) / 2.0));
      CHECK(F.eval(0.5) == doctest::Approx(std::pow(0.5, t.exponent_p())).epsilon(1e-14));
      check_derivatives(F, 4);
    }
  }

  TEST_CASE("log plateau power") {
    const RadialProfile F = log_plateau_power(1.5, 1.0, 3.0, 3.0);
    CHECK(F.eval(1.0) == 1.0);
    CHECK(F.eval(std::exp(2.9)) == doctest::Approx(std::pow(std::exp(2.9), 1.5)).epsilon(1e-14));
    CHECK(F.eval(std::exp(6.1)) == 0.0);
    CHECK(F.eval(std::exp(-6.1)) == 0.0);
    check_derivatives(F, 5);
    CHECK_THROWS_AS(log_plateau_power(1.0, 1.0, 0.0, 1.0), DomainError);
  }

  TEST_CASE("random profiles") {
    const RadialProfile a = random_profile(42, 0.5, 2.0, 5);
    const RadialProfile b = random_profile(42, 0.5, 2.0, 5);
    const RadialProfile c = random_profile(43, 0.5, 2.0, 5);
    bool differs = false;
    for (int k = 0; k <= 50; ++k) {
      const double r = 0.5 + 1.5 * k / 50.0;
      CHECK(a.eval(r) == b.eval(r));
      CHECK(a.eval_d2(r) == b.eval_d2(r));
      differs = differs || a.eval(r) != c.eval(r);
    }
    CHECK(differs);
    for (std::uint64_t s = 0; s < 20; ++s) check_derivatives(random_profile(s, 0.3, 4.0, static_cast<int>(s % 9)), s);
    CHECK_THROWS_AS(random_profile(1, 1.0, 2.0, 9), DomainError);
  }

  TEST_CASE("scaling and zero profile") {
    const RadialProfile B = smooth_bump(1.0, 2.0);
    const RadialProfile S = B.scaled(3.0);
    CHECK(S.eval(1.4) == 3.0 * B.eval(1.4));
    CHECK(S.eval_d2(1.4) == 3.0 * B.eval_d2(1.4));
    const RadialProfile Z = zero_profile(1.0, 2.0);
    CHECK(Z.eval(1.5) == 0.0);
  }

  TEST_CASE("epsilon schedule") {
    const std::vector<double> s = nested_epsilon_schedule(0.5, 3);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == 0.5);
    CHECK(s[1] == 0.25);
    CHECK(s[2] == 0.125);
    CHECK(nested_epsilon_schedule(0.5, 10).back() == std::ldexp(1.0, -10));
  }
}
