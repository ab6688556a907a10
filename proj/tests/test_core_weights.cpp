#include <algorithm>
#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "hwmlab/core_weights.hpp"

using hwmlab::Weight;
using hwmlab::weight_of_ints;

namespace {

std::set<std::vector<std::int64_t>> orbit_rows(const std::vector<Weight>& orbit) {
  std::set<std::vector<std::int64_t>> rows;
  for (const auto& w : orbit) rows.insert(w.row(0));
  return rows;
}

}  // namespace

TEST_CASE("weight validation", "[core_weights]") {
  CHECK_NOTHROW(weight_of_ints({4, 3}));
  CHECK_NOTHROW(Weight(2, 1, {{7, 5}}));               // (7/2, 5/2)
  CHECK_THROWS_AS(Weight(2, 1, {{8, 5}}), std::invalid_argument);  // mixed parity
  CHECK_THROWS_AS(Weight(2, 1, {{8, 6, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(Weight(2, 2, {{8, 6}}), std::invalid_argument);
}

TEST_CASE("rho and lambda plus rho", "[core_weights]") {
  const Weight rho3 = hwmlab::rho_weight(3);
  CHECK(rho3.row(0) == std::vector<std::int64_t>{-2, -4, -6});
  const Weight w = weight_of_ints({4, 3});
  CHECK(hwmlab::lambda_plus_rho(w, 0) == std::vector<std::int64_t>{6, 2});
}

TEST_CASE("dot action moves within the abs multiset class", "[core_weights]") {
  const Weight w = weight_of_ints({4, 3});
  hwmlab::WeylElement flip = hwmlab::WeylElement::identity(2);
  flip.sign[1] = -1;
  const Weight moved = hwmlab::dot_act(flip, w, 0);
  CHECK(moved.row(0) == std::vector<std::int64_t>{8, 2});  // (4, 1)
  CHECK(hwmlab::abs_multiset(moved) == hwmlab::abs_multiset(w));
  CHECK(hwmlab::dot_act(hwmlab::WeylElement::identity(2), w, 0) == w);
}

TEST_CASE("group sizes", "[core_weights]") {
  CHECK(hwmlab::weyl_group(1).size() == 2);
  CHECK(hwmlab::weyl_group(2).size() == 8);
  CHECK(hwmlab::weyl_group(3).size() == 48);
}

TEST_CASE("compose, inverse, and dot compatibility", "[core_weights]") {
  std::mt19937 rng(2024);
  const auto group = hwmlab::weyl_group(3);
  std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
  std::uniform_int_distribution<std::int64_t> entry(-4, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto& a = group[pick(rng)];
    const auto& b = group[pick(rng)];
    const Weight w = weight_of_ints({entry(rng), entry(rng), entry(rng)});
    CHECK(hwmlab::dot_act(a, hwmlab::dot_act(b, w, 0), 0) ==
          hwmlab::dot_act(hwmlab::compose(a, b), w, 0));
    CHECK(hwmlab::compose(a, hwmlab::inverse(a)) == hwmlab::WeylElement::identity(3));
  }
}

TEST_CASE("regular orbit size and membership", "[core_weights]") {
  const auto orbit = hwmlab::dot_orbit(weight_of_ints({4, 3}), 0);
  CHECK(orbit.size() == 8);
  const auto rows = orbit_rows(orbit);
  CHECK(rows.count({8, 6}) == 1);   // (4, 3)
  CHECK(rows.count({8, 2}) == 1);   // (4, 1)
  CHECK(rows.count({0, -2}) == 1);  // (0, -1)
  CHECK(rows.count({4, 10}) == 1);  // (2, 5)
}

TEST_CASE("singular orbit collapses", "[core_weights]") {
  const auto orbit = hwmlab::dot_orbit(weight_of_ints({2, 2}), 0);
  CHECK(orbit.size() == 4);
  const auto rows = orbit_rows(orbit);
  CHECK(rows.count({4, 4}) == 1);
  CHECK(rows.count({0, 4}) == 1);
  CHECK(rows.count({2, 6}) == 1);
  CHECK(rows.count({2, 2}) == 1);
}

TEST_CASE("place flags", "[core_weights]") {
  const auto good = hwmlab::place_flags(weight_of_ints({4, 3}), 0);
  CHECK(good.integral);
  CHECK(good.k_dominant);
  CHECK(good.regular);
  CHECK(good.antidominant);

  const auto shallow = hwmlab::place_flags(weight_of_ints({4, 0}), 0);
  CHECK(shallow.k_dominant);
  CHECK(shallow.regular);
  CHECK_FALSE(shallow.antidominant);

  const auto half = hwmlab::place_flags(Weight(2, 1, {{7, 5}}), 0);
  CHECK_FALSE(half.integral);

  const auto singular = hwmlab::place_flags(weight_of_ints({2, 2}), 0);
  CHECK_FALSE(singular.regular);
}

TEST_CASE("antidominant representative", "[core_weights]") {
  const Weight base = weight_of_ints({4, 3});
  for (const auto& member : hwmlab::dot_orbit(base, 0)) {
    CHECK(hwmlab::antidominant_rep(member) == base);
  }
  CHECK_THROWS_AS(hwmlab::antidominant_rep(weight_of_ints({2, 2})), std::invalid_argument);
}

TEST_CASE("abs multiset is constant on orbits", "[core_weights]") {
  for (std::int64_t a = -2; a <= 4; ++a) {
    for (std::int64_t b = -2; b <= 4; ++b) {
      const Weight w = weight_of_ints({a, b});
      const auto mult = hwmlab::abs_multiset(w);
      for (const auto& member : hwmlab::dot_orbit(w, 0)) {
        CHECK(hwmlab::abs_multiset(member) == mult);
      }
    }
  }
}

TEST_CASE("multi place weights act per place", "[core_weights]") {
  const Weight w(2, 2, {{8, 6}, {10, 8}});
  const auto orbit0 = hwmlab::dot_orbit(w, 0);
  CHECK(orbit0.size() == 8);
  for (const auto& member : orbit0) {
    CHECK(member.row(1) == w.row(1));
  }
  CHECK(hwmlab::antidominant_rep(w) == w);
}

TEST_CASE("orbit guard", "[core_weights]") {
  const Weight big = weight_of_ints({18, 16, 14, 12, 10, 8, 6, 4, 2});
  CHECK_THROWS_AS(hwmlab::dot_orbit(big, 0), hwmlab::guard_error);
  CHECK_THROWS_AS(hwmlab::weyl_group(7), hwmlab::guard_error);
}

TEST_CASE("weight row formatting", "[core_weights]") {
  CHECK(hwmlab::format_weight_row(weight_of_ints({4, 3}), 0) == "4,3");
  CHECK(hwmlab::format_weight_row(Weight(2, 1, {{7, 5}}), 0) == "7/2,5/2");
  CHECK(hwmlab::format_weight_row(weight_of_ints({-1, -2}), 0) == "-1,-2");
}
