#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rellich/errors.hpp"
#include "rellich/spectra.hpp"

using namespace rellich;

namespace {

// Pascal's triangle up to row 80, independent of the multiplicative formula in the library.
long double binom(int n, int k) {
  static std::vector<std::vector<long double>> rows = [] {
    std::vector<std::vector<long double>> t(81);
    for (int i = 0; i <= 80; ++i) {
      t[i].assign(i + 1, 1.0L);
      for (int k = 1; k < i; ++k) t[i][k] = t[i - 1][k - 1] + t[i - 1][k];
    }
    return t;
  }();
  if (k < 0 || k > n) return 0.0L;
  return rows[n][k];
}

// Harmonic polynomials of degree j: homogeneous degree j minus |x|^2 times degree j-2.
long double harmonic_dim(int n, int j) { return binom(j + n - 1, n - 1) - binom(j + n - 3, n - 1); }

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("eigenvalues") {
    CHECK(eigenvalue(3, 0) == 0.0);
    CHECK(eigenvalue(3, 1) == 2.0);
    CHECK(eigenvalue(5, 2) == 10.0);
    CHECK_THROWS_AS(eigenvalue(1, 0), DomainError);
    for (int n = 2; n <= 12; ++n)
      for (int j = 0; j < 50; ++j) CHECK(eigenvalue(n, j + 1) > eigenvalue(n, j));
  }

  TEST_CASE("multiplicities") {
    CHECK(multiplicity(3, 0) == 1);
    CHECK(multiplicity(3, 1) == 3);
    CHECK(multiplicity(2, 4) == 2);
    CHECK_THROWS_AS(multiplicity(1, 2), DomainError);
    for (int j = 1; j < 40; ++j) CHECK(multiplicity(2, j) == 2);
    for (int n = 2; n < 30; ++n) CHECK(multiplicity(n, 0) == 1);
    for (int n = 2; n <= 20; ++n)
      for (int j = 0; j + n - 2 <= 60; ++j)
        CHECK(static_cast<long double>(multiplicity(n, j)) == doctest::Approx(static_cast<double>(harmonic_dim(n, j))).epsilon(1e-15));
    CHECK_THROWS_AS(multiplicity(10, 60), std::overflow_error);
  }

  TEST_CASE("dimension count") {
    for (int n = 2; n <= 6; ++n)
      for (int J = 0; J <= 8; ++J) {
        long long sum = 0;
        for (int j = 0; j <= J; ++j) sum += multiplicity(n, j);
        CHECK(sum == static_cast<long long>(binom(J + n - 1, n - 1) + binom(J + n - 2, n - 1)));
      }
  }

  TEST_CASE("iterated exponentials") {
    CHECK(iterated_exp(0) == 0.0);
    CHECK(iterated_exp(1) == 1.0);
    CHECK(iterated_exp(2) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(iterated_exp(3) == doctest::Approx(std::exp(std::exp(1.0))).epsilon(1e-15));
    CHECK(std::isfinite(iterated_exp(4)));
    CHECK_THROWS_AS(iterated_exp(5), std::overflow_error);
  }

  TEST_CASE("log refinement weight values") {
    const double e = std::exp(1.0);
    const LogWeightParams w1(1, 5.0, 2.0);
    CHECK(log_refinement_weight(w1, 5.0 / e) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(log_refinement_weight(w1, 5.0 / (e * e)) == doctest::Approx(0.25).epsilon(1e-14));
    // ln(eta/r) = e and ln ln(eta/r) = 1: e^-2 + (e * 1)^-2
    const LogWeightParams w2(2, 9.0, 1.0);
    CHECK(log_refinement_weight(w2, 9.0 / std::pow(e, e)) == doctest::Approx(2.0 / (e * e)).epsilon(1e-13));
  }

  TEST_CASE("log refinement weight grows toward the boundary") {
    for (int N = 1; N <= 3; ++N) {
      const double R = 1.7;
      const LogWeightParams w = LogWeightParams::at_threshold(N, R);
      double prev = 0.0;
      for (int k = 1; k < 400; ++k) {
        const double r = R * k / 400.0;
        const double v = log_refinement_weight(w, r);
        CHECK(v > prev);
        prev = v;
      }
    }
  }

  TEST_CASE("log weight parameters are validated eagerly") {
    CHECK_THROWS_AS(LogWeightParams(0, 3.0, 1.0), DomainError);
    CHECK_THROWS_AS(LogWeightParams(1, 3.0, 0.0), DomainError);
    CHECK_THROWS_AS(LogWeightParams(2, 2.0, 1.0), DomainError);
    CHECK_NOTHROW(LogWeightParams(2, std::exp(1.0), 1.0));
    CHECK(LogWeightParams::at_threshold(2, 1.0).eta() == doctest::Approx(std::exp(1.0)));
    const LogWeightParams w(1, 1.0, 1.0);
    CHECK_THROWS_AS(log_refinement_weight(w, 1.5), DomainError);
  }
}
