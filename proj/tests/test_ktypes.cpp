#include <algorithm>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "hwmlab/ktypes.hpp"

using hwmlab::Signature;

namespace {

// Weyl dimension formula for gl(n); independent of the tableau machinery.
long double gl_dim(const Signature& mu) {
  const std::size_t n = mu.size();
  long double num = 1, den = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      num *= static_cast<long double>(mu[i] - mu[j] + static_cast<std::int64_t>(j - i));
      den *= static_cast<long double>(j - i);
    }
  }
  return num / den;
}

}  // namespace

TEST_CASE("signature validation", "[ktypes]") {
  CHECK_NOTHROW(hwmlab::require_signature({4, 3}, "sigma"));
  CHECK_NOTHROW(hwmlab::require_signature({2, 0, -3}, "sigma"));
  CHECK_THROWS_AS(hwmlab::require_signature({3, 4}, "sigma"), std::invalid_argument);
}

TEST_CASE("tensor decompositions", "[ktypes]") {
  const auto std2 = hwmlab::lr_coefficients({1, 0}, {1, 0});
  REQUIRE(std2.size() == 2);
  CHECK(std2.at({2, 0}) == 1);
  CHECK(std2.at({1, 1}) == 1);

  const auto trivial = hwmlab::lr_coefficients({4, 2}, {0, 0});
  REQUIRE(trivial.size() == 1);
  CHECK(trivial.at({4, 2}) == 1);

  const auto pieri = hwmlab::lr_coefficients({4, 2}, {2, 0});
  CHECK(pieri.at({4, 4}) == 1);
  CHECK(pieri.at({5, 3}) == 1);
  CHECK(pieri.at({6, 2}) == 1);
  CHECK(pieri.size() == 3);
}

TEST_CASE("tensor decompositions with det twists", "[ktypes]") {
  const auto shifted = hwmlab::lr_coefficients({1, -1}, {1, -1});
  const auto plain = hwmlab::lr_coefficients({2, 0}, {2, 0});
  REQUIRE(shifted.size() == plain.size());
  for (const auto& [sig, c] : plain) {
    Signature twisted = sig;
    for (auto& v : twisted) v -= 2;
    CHECK(shifted.at(twisted) == c);
  }
}

TEST_CASE("tensor symmetry and dimension bookkeeping", "[ktypes]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> entry(0, 4);
  for (int trial = 0; trial < 12; ++trial) {
    for (int n = 2; n <= 3; ++n) {
      Signature mu(n), nu(n);
      for (auto& v : mu) v = entry(rng);
      for (auto& v : nu) v = entry(rng);
      std::sort(mu.rbegin(), mu.rend());
      std::sort(nu.rbegin(), nu.rend());
      const auto ab = hwmlab::lr_coefficients(mu, nu);
      CHECK(ab == hwmlab::lr_coefficients(nu, mu));
      long double total = 0;
      for (const auto& [sig, c] : ab) total += static_cast<long double>(c) * gl_dim(sig);
      CHECK(total == gl_dim(mu) * gl_dim(nu));
    }
  }
}

TEST_CASE("symmetric algebra of the raising block", "[ktypes]") {
  const auto deg2 = hwmlab::upplus_decomposition(2, 2);
  REQUIRE(deg2.size() == 4);
  CHECK(deg2.at({0, 0}) == 1);
  CHECK(deg2.at({2, 0}) == 1);
  CHECK(deg2.at({4, 0}) == 1);
  CHECK(deg2.at({2, 2}) == 1);

  const auto line = hwmlab::upplus_decomposition(1, 3);
  REQUIRE(line.size() == 4);
  for (std::int64_t k = 0; k <= 3; ++k) CHECK(line.at({2 * k}) == 1);

  for (const auto& [sig, c] : hwmlab::upplus_decomposition(3, 3)) {
    CHECK(c == 1);
    for (auto v : sig) CHECK(v % 2 == 0);
  }
}

TEST_CASE("highest weight module branching multiplicities", "[ktypes]") {
  CHECK(hwmlab::verma_ktype_multiplicity({4, 3}, {4, 3}, 0) == 1);
  CHECK(hwmlab::verma_ktype_multiplicity({4, 2}, {4, 4}, 1) == 1);
  CHECK(hwmlab::verma_ktype_multiplicity({3, 2}, {4, 3}, 1) == 1);
  CHECK(hwmlab::verma_ktype_multiplicity({4, 3}, {5, 3}, 2) == 0);  // odd gap
  CHECK(hwmlab::verma_ktype_multiplicity({4, 3}, {4, 1}, 2) == 0);  // negative gap
  CHECK(hwmlab::verma_ktype_multiplicity({2}, {8}, 3) == 1);
  CHECK_THROWS_AS(hwmlab::verma_ktype_multiplicity({4, 3}, {8, 7}, 1), std::invalid_argument);
}

TEST_CASE("parity count", "[ktypes]") {
  CHECK(hwmlab::j_invariant({4, 3}) == 1);
  CHECK(hwmlab::j_invariant({4, 3, 2}) == 2);
  CHECK(hwmlab::j_invariant({5, 3, 1}) == 3);
}

TEST_CASE("two step promotion map", "[ktypes]") {
  CHECK(hwmlab::g_map({4, 3}) == Signature{4, 3});
  CHECK(hwmlab::g_map({5, 3}) == Signature{5, 5});
  CHECK(hwmlab::g_map({6, 3, 2}) == Signature{6, 6, 3});
  CHECK(hwmlab::g_iterate({6, 3, 2}, 2) == Signature{6, 6, 5});
  CHECK(hwmlab::j_invariant(hwmlab::g_map({6, 3, 2})) == hwmlab::j_invariant({6, 3, 2}));
}

TEST_CASE("distinguished k types", "[ktypes]") {
  CHECK(hwmlab::distinguished_ktype({4, 3}) == Signature{4, 3});
  CHECK(hwmlab::distinguished_ktype({4, 2}) == Signature{4, 4});
  CHECK(hwmlab::distinguished_ktype({5, 3, 1}) == Signature{5, 5, 5});
}

TEST_CASE("distinguished k types occur", "[ktypes]") {
  for (const Signature& lam :
       {Signature{4, 3}, Signature{4, 2}, Signature{5, 3, 1}, Signature{6, 3, 2}}) {
    const Signature sigma = hwmlab::distinguished_ktype(lam);
    const std::int64_t gap = hwmlab::signature_sum(sigma) - hwmlab::signature_sum(lam);
    REQUIRE(gap >= 0);
    REQUIRE(gap % 2 == 0);
    CHECK(hwmlab::verma_ktype_multiplicity(lam, sigma, static_cast<int>(gap / 2)) >= 1);
  }
}

TEST_CASE("principal series wedge multiplicities", "[ktypes]") {
  CHECK(hwmlab::principal_series_multiplicity({1, 0, 1}, 2) == 1);
  CHECK(hwmlab::principal_series_multiplicity({1, 0, 1}, 1) == 0);
  CHECK(hwmlab::principal_series_multiplicity({0, 0}, 0) == 1);
  for (int j = 0; j <= 2; ++j) {
    CHECK(hwmlab::principal_series_multiplicity({1, 1}, j) <= 1);
  }
}
