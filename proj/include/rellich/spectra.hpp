#pragma once

#include <cstdint>

namespace rellich {

// Laplace-Beltrami data on S^{n-1}.
double eigenvalue(int n, int j);
std::int64_t multiplicity(int n, int j);

// e_0 = 0, e_{j+1} = exp(e_j). j <= 4.
double iterated_exp(int j);

class LogWeightParams {
 public:
  LogWeightParams(int N, double eta, double R);
  static LogWeightParams at_threshold(int N, double R);

  int N() const { return N_; }
  double eta() const { return eta_; }
  double R() const { return R_; }

 private:
  int N_;
  double eta_;
  double R_;
};

// sum_{k=1}^{N} prod_{p=1}^{k} [ln_p(eta/r)]^{-2}
double log_refinement_weight(const LogWeightParams& w, double r);

}  // namespace rellich
