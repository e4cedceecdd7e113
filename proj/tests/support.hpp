#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rellich/functionals.hpp"
#include "rellich/profiles.hpp"

namespace testing {

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Random polynomial-times-bump profile with support inside [lo, hi].
inline rellich::RadialProfile random_support_profile(std::mt19937_64& g, double lo, double hi) {
  const double a = uniform(g, lo, lo + 0.4 * (hi - lo));
  const double b = uniform(g, a + 0.3 * (hi - lo), hi);
  return rellich::random_profile(g(), a, b, static_cast<int>(g() % 6));
}

// Up to `max_modes` distinct modes drawn from [0, max_j].
inline rellich::MultiModeFunction random_function(std::mt19937_64& g, int max_modes, int max_j, double lo,
                                                  double hi) {
  const int count = 1 + static_cast<int>(g() % max_modes);
  std::vector<rellich::ModeFunction> terms;
  std::vector<int> used;
  while (static_cast<int>(terms.size()) < count) {
    const int j = static_cast<int>(g() % (max_j + 1));
    bool dup = false;
    for (int u : used) dup = dup || u == j;
    if (dup) continue;
    used.push_back(j);
    terms.push_back({j, random_support_profile(g, lo, hi)});
  }
  return rellich::MultiModeFunction(std::move(terms));
}

}  // namespace testing
