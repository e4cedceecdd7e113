#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "rellich/functionals.hpp"
#include "rellich/kernels.hpp"
#include "rellich/oracle.hpp"
#include "rellich/profiles.hpp"

using namespace rellich;
namespace K = rellich::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& g, std::size_t m) {
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<double> v(m);
  for (double& x : v) x = u(g);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct IsaGuard {
  ~IsaGuard() { K::force_isa(std::nullopt); }
};

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar and avx2 variants are bitwise identical") {
    std::mt19937_64 g(1);
    for (std::size_t m : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 100u, 1001u}) {
      const auto x = random_vector(g, m), y = random_vector(g, m);
      const double ds = K::scalar::dot(x.data(), y.data(), m);
      const double dv = K::avx2::dot(x.data(), y.data(), m);
      CHECK(std::memcmp(&ds, &dv, sizeof ds) == 0);

      if (m >= 3) {
        const auto d = random_vector(g, m), e1 = random_vector(g, m - 1), e2 = random_vector(g, m - 2);
        std::vector<double> ys(m), yv(m);
        K::scalar::sym_penta_matvec(d.data(), e1.data(), e2.data(), x.data(), ys.data(), m);
        K::avx2::sym_penta_matvec(d.data(), e1.data(), e2.data(), x.data(), yv.data(), m);
        CHECK(same_bits(ys, yv));
      }

      for (std::size_t ncomp : {1u, 3u, 4u, 6u, 8u, 9u}) {
        const auto rows = random_vector(g, m * (ncomp + 2));
        std::vector<double> os(ncomp), ov(ncomp);
        K::scalar::weighted_column_sums(rows.data(), ncomp + 2, m, ncomp, y.data(), os.data());
        K::avx2::weighted_column_sums(rows.data(), ncomp + 2, m, ncomp, y.data(), ov.data());
        CHECK(same_bits(os, ov));
      }
    }
  }

  TEST_CASE("dispatch reports the active variant") {
    IsaGuard guard;
    K::force_isa(K::Isa::scalar);
    CHECK(K::active_isa() == K::Isa::scalar);
    if (K::avx2_available()) {
      K::force_isa(K::Isa::avx2);
      CHECK(K::active_isa() == K::Isa::avx2);
    }
    CHECK(std::string(K::isa_name(K::Isa::scalar)) == "scalar");
  }

  TEST_CASE("library results do not depend on the variant") {
    IsaGuard guard;
    const auto run = [] {
      const ModeIntegrals m = mode_integrals({2, random_profile(5, 0.4, 3.0, 6)}, {5, 0.5});
      const EigenResult e = min_quotient(discretize({5, 0}, 1, {1e-2, 1e2, 700}, Quotient::hardy_rellich));
      std::vector<double> out = {m.M0, m.M1, m.M2, m.L, e.mu_min};
      out.insert(out.end(), e.vector.begin(), e.vector.end());
      return out;
    };
    K::force_isa(K::Isa::scalar);
    const auto a = run();
    K::force_isa(K::avx2_available() ? K::Isa::avx2 : K::Isa::scalar);
    const auto b = run();
    CHECK(same_bits(a, b));
  }
}
