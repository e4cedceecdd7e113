#include "rellich/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rellich/errors.hpp"

namespace rellich {

namespace {

void check_dimension(int n, int j) {
  if (n < 2) throw DomainError("dimension n must be >= 2, got " + std::to_string(n));
  if (j < 0) throw DomainError("mode index j must be >= 0");
}

}  // namespace

double eigenvalue(int n, int j) {
  check_dimension(n, j);
  return static_cast<double>(static_cast<std::int64_t>(j) * (j + n - 2));
}

std::int64_t multiplicity(int n, int j) {
  check_dimension(n, j);
  if (j == 0) return 1;
  const int top = j + n - 2;
  if (top > 62) throw std::overflow_error("multiplicity: j+n-2 exceeds 62");
  // binomial(top, n-2) by the multiplicative formula; each partial product is exact
  const int k = std::min(n - 2, j);
  __int128 b = 1;
  for (int i = 1; i <= k; ++i) b = b * (top - k + i) / i;
  const __int128 m = b * (2 * j + n - 2) / top;
  if (m > INT64_MAX) throw std::overflow_error("multiplicity overflows int64");
  return static_cast<std::int64_t>(m);
}

double iterated_exp(int j) {
  if (j < 0) throw DomainError("iterated_exp: negative index");
  if (j > 4) throw std::overflow_error("iterated_exp: e_j overflows double for j > 4");
  double e = 0.0;
  for (int i = 0; i < j; ++i) e = std::exp(e);
  return e;
}

LogWeightParams::LogWeightParams(int N, double eta, double R) : N_(N), eta_(eta), R_(R) {
  if (N < 1) throw DomainError("refinement depth N must be >= 1");
  if (!(R > 0.0)) throw DomainError("ball radius R must be > 0");
  if (!(eta > 0.0)) throw DomainError("eta must be > 0");
  if (eta < iterated_exp(N) * R) throw DomainError("eta must be >= e_N * R");
}

LogWeightParams LogWeightParams::at_threshold(int N, double R) {
  return LogWeightParams(N, iterated_exp(N) * R, R);
}

double log_refinement_weight(const LogWeightParams& w, double r) {
  if (!(r > 0.0)) throw DomainError("log weight needs r > 0");
  double ell = w.eta() / r;
  double prod = 1.0;
  double sum = 0.0;
  for (int k = 1; k <= w.N(); ++k) {
    ell = std::log(ell);
    if (!(ell > 0.0)) throw DomainError("iterated logarithm of eta/r is not positive");
    prod /= ell * ell;
    sum += prod;
  }
  return sum;
}

}  // namespace rellich
