#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hwmlab/core_weights.hpp"
#include "hwmlab/guards.hpp"
#include "hwmlab/rational.hpp"

namespace hwmlab {

/// Multiplicities of the two lowest entry values of a k-dominant weight:
/// p counts entries equal to lambda_n, q counts entries equal to lambda_n + 1.
struct PQCounts {
  int p = 0;
  int q = 0;
};

inline PQCounts pq_counts(const Weight& lambda, int place) {
  require_arg(place_flags(lambda, place).k_dominant, "pq counts require a k-dominant weight");
  const auto& row = lambda.row(place);
  const std::int64_t last = row[lambda.n - 1];
  PQCounts c;
  for (std::int64_t v : row) {
    if (v == last) ++c.p;
    if (v == last + 2) ++c.q;  // doubled storage, so +1 means +2
  }
  return c;
}

/// First reduction point (p + q + 1)/2 in the normalization lambda_n = n.
inline Rational first_reduction_point(const Weight& lambda, int place) {
  require_arg(lambda.row(place)[lambda.n - 1] == 2 * lambda.n,
              "first reduction point is normalized at lambda_n = n");
  const PQCounts c = pq_counts(lambda, place);
  return Rational(c.p + c.q + 1, 2);
}

/// The two unitarizability bounds, exposed separately so callers can see
/// which branch admitted a weight. The shift convention is r = n - lambda_n.
/// The half-integral branch applies to every representable weight, since
/// storage is doubled integers; it then dominates the generic branch because
/// p >= 1 always. Both are still reported.
struct EhwBranches {
  bool half_integral = false;  // lambda in (1/2)Z^n
  bool generic_bound = false;  // r <= (p + q + 1)/2
  bool half_integral_bound = false;  // r <= p + q/2
};

inline EhwBranches ehw_branches(const Weight& lambda, int place) {
  const PQCounts c = pq_counts(lambda, place);
  EhwBranches b;
  b.half_integral = true;
  // Doubled throughout: 2r = 2n - twice(lambda_n).
  const std::int64_t r2 = 2 * lambda.n - lambda.row(place)[lambda.n - 1];
  b.generic_bound = r2 <= c.p + c.q + 1;
  b.half_integral_bound = r2 <= 2 * c.p + c.q;
  return b;
}

/// Whether the irreducible highest weight module with this k-dominant
/// highest weight is unitarizable.
inline bool is_unitarizable(const Weight& lambda, int place) {
  const EhwBranches b = ehw_branches(lambda, place);
  return b.generic_bound || (b.half_integral && b.half_integral_bound);
}

/// The unitarizable part of a regular dot orbit, listed from its
/// anti-dominant base. Members carry the index j of the closed form
/// lambda^(j) = (lambda_1, ..., lambda_{n-j}, n-j, ..., n-j).
struct UnitaryOrbit {
  Weight base;
  std::vector<std::pair<int, Weight>> members;  // (j, weight), j ascending
};

inline UnitaryOrbit unitary_orbit(const Weight& lambda, int place) {
  const PlaceFlags f = place_flags(lambda, place);
  require_arg(f.integral && f.regular && f.antidominant,
              "unitary orbit requires a regular anti-dominant integral weight");
  UnitaryOrbit out;
  out.base = lambda;
  const std::int64_t last2 = lambda.row(place)[lambda.n - 1];
  out.members.emplace_back(0, lambda);
  if (last2 == 2 * (lambda.n + 1)) {
    const int p = pq_counts(lambda, place).p;
    for (int j = 1; j <= p; ++j) {
      Weight w = lambda;
      for (int i = lambda.n - j; i < lambda.n; ++i) w.twice[place][i] = 2 * (lambda.n - j);
      out.members.emplace_back(j, std::move(w));
    }
  }
  return out;
}

}  // namespace hwmlab
