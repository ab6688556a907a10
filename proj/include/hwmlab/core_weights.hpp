#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hwmlab/guards.hpp"
#include "hwmlab/rational.hpp"

namespace hwmlab {

/// Weights of the rank-n type C root system, carried at d places at once.
///
/// Entries live in (1/2)Z and are stored doubled, so lambda_i = twice[v][i]/2.
/// The type invariant is that consecutive differences are integers, which in
/// doubled storage means every entry of one place shares a parity. The
/// positive system is fixed once and for all as
///   { -(e_i + e_j) : i <= j }  union  { e_k - e_l : k < l },
/// so the half sum of positive roots is rho = (-1, -2, ..., -n) and
/// (lambda + rho)_i = lambda_i - i.
struct Weight {
  int n = 0;
  int d = 0;
  std::vector<std::vector<std::int64_t>> twice;  // twice[place][i] = 2 * lambda_i

  Weight() = default;
  Weight(int n_, int d_, std::vector<std::vector<std::int64_t>> entries)
      : n(n_), d(d_), twice(std::move(entries)) {
    validate();
  }

  void validate() const {
    require_arg(n >= 1, "weight rank must be at least 1");
    require_arg(d >= 1, "weight must have at least one place");
    require_arg(static_cast<int>(twice.size()) == d, "weight has wrong number of places");
    for (const auto& row : twice) {
      require_arg(static_cast<int>(row.size()) == n, "weight row has wrong length");
      for (std::size_t i = 1; i < row.size(); ++i) {
        require_arg(((row[i] - row[0]) & 1) == 0,
                    "weight entries at one place must share a half-integrality class");
      }
    }
  }

  const std::vector<std::int64_t>& row(int place) const {
    require_arg(place >= 0 && place < d, "place out of range");
    return twice[place];
  }

  bool integral(int place) const {
    for (std::int64_t v : row(place)) {
      if (v & 1) return false;
    }
    return true;
  }

  friend bool operator==(const Weight& a, const Weight& b) {
    return a.n == b.n && a.d == b.d && a.twice == b.twice;
  }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }
  friend bool operator<(const Weight& a, const Weight& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.d != b.d) return a.d < b.d;
    return a.twice < b.twice;
  }
};

/// Convenience constructor for one place of integer entries.
inline Weight weight_of_ints(std::vector<std::int64_t> entries) {
  std::vector<std::int64_t> doubled(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) doubled[i] = 2 * entries[i];
  return Weight(static_cast<int>(entries.size()), 1, {std::move(doubled)});
}

/// rho for rank n, doubled: (-2, -4, ..., -2n).
inline std::vector<std::int64_t> rho_doubled(int n) {
  require_arg(n >= 1, "rank must be at least 1");
  std::vector<std::int64_t> r(n);
  for (int i = 0; i < n; ++i) r[i] = -2 * (i + 1);
  return r;
}

inline Weight rho_weight(int n, int d = 1) {
  std::vector<std::vector<std::int64_t>> rows(d, rho_doubled(n));
  return Weight(n, d, std::move(rows));
}

/// The parabolic rho scalar: rho_{i,n} = n - (i - 1)/2.
inline Rational rho_scalar(int i, int n) {
  require_arg(i >= 1 && i <= n, "rho scalar index out of range");
  return Rational(2 * n - (i - 1), 2);
}

/// (lambda + rho) at one place, doubled.
inline std::vector<std::int64_t> lambda_plus_rho(const Weight& w, int place) {
  const auto& row = w.row(place);
  std::vector<std::int64_t> x(w.n);
  for (int i = 0; i < w.n; ++i) x[i] = row[i] - 2 * (i + 1);
  return x;
}

/// Signed permutation, an element of the Weyl group W(C_n).
/// Acts on coordinate vectors by (w x)_i = sign[i] * x[from[i]].
struct WeylElement {
  int n = 0;
  std::vector<int> from;       // source index feeding each target slot
  std::vector<std::int8_t> sign;  // +1 or -1 applied at the target slot

  static WeylElement identity(int n) {
    WeylElement w;
    w.n = n;
    w.from.resize(n);
    w.sign.assign(n, 1);
    for (int i = 0; i < n; ++i) w.from[i] = i;
    return w;
  }

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& x) const {
    require_arg(static_cast<int>(x.size()) == n, "vector length mismatch");
    std::vector<std::int64_t> y(n);
    for (int i = 0; i < n; ++i) y[i] = sign[i] * x[from[i]];
    return y;
  }

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.n == b.n && a.from == b.from && a.sign == b.sign;
  }
};

/// Composition a * b means "apply b, then a".
inline WeylElement compose(const WeylElement& a, const WeylElement& b) {
  require_arg(a.n == b.n, "Weyl element rank mismatch");
  WeylElement c;
  c.n = a.n;
  c.from.resize(a.n);
  c.sign.resize(a.n);
  for (int i = 0; i < a.n; ++i) {
    c.from[i] = b.from[a.from[i]];
    c.sign[i] = static_cast<std::int8_t>(a.sign[i] * b.sign[a.from[i]]);
  }
  return c;
}

inline WeylElement inverse(const WeylElement& w) {
  WeylElement inv;
  inv.n = w.n;
  inv.from.resize(w.n);
  inv.sign.resize(w.n);
  for (int i = 0; i < w.n; ++i) {
    inv.from[w.from[i]] = i;
    inv.sign[w.from[i]] = w.sign[i];
  }
  return inv;
}

/// Full enumeration of W(C_n), order 2^n * n!. Guarded since the order grows
/// fast; everything downstream only needs small ranks.
inline std::vector<WeylElement> weyl_group(int n, const Limits& limits = {}) {
  require_arg(n >= 1, "rank must be at least 1");
  require_guard(limits.unlimited || n <= 6, "Weyl group enumeration is guarded at rank 6");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<WeylElement> out;
  do {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      WeylElement w;
      w.n = n;
      w.from.assign(perm.begin(), perm.end());
      w.sign.resize(n);
      for (int i = 0; i < n; ++i) w.sign[i] = (mask >> i) & 1 ? -1 : 1;
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Dot action w . lambda = w(lambda + rho) - rho at one place; the other
/// places ride along unchanged.
inline Weight dot_act(const WeylElement& w, const Weight& lambda, int place) {
  require_arg(w.n == lambda.n, "Weyl element rank mismatch");
  std::vector<std::int64_t> x = lambda_plus_rho(lambda, place);
  std::vector<std::int64_t> y = w.apply(x);
  Weight out = lambda;
  for (int i = 0; i < lambda.n; ++i) out.twice[place][i] = y[i] + 2 * (i + 1);
  return out;
}

/// The dot-orbit invariant: per place, the multiset {|lambda_i - i|},
/// stored doubled and sorted descending. Two weights lie in the same
/// dot orbit at a place exactly when these multisets agree there.
struct AbsMultiset {
  int n = 0;
  int d = 0;
  std::vector<std::vector<std::int64_t>> twice_abs;  // sorted descending per place

  friend bool operator==(const AbsMultiset& a, const AbsMultiset& b) {
    return a.n == b.n && a.d == b.d && a.twice_abs == b.twice_abs;
  }
  friend bool operator!=(const AbsMultiset& a, const AbsMultiset& b) { return !(a == b); }
};

inline AbsMultiset abs_multiset(const Weight& w) {
  AbsMultiset m;
  m.n = w.n;
  m.d = w.d;
  m.twice_abs.resize(w.d);
  for (int v = 0; v < w.d; ++v) {
    std::vector<std::int64_t> x = lambda_plus_rho(w, v);
    for (auto& e : x) e = e < 0 ? -e : e;
    std::sort(x.begin(), x.end(), std::greater<>());
    m.twice_abs[v] = std::move(x);
  }
  return m;
}

struct PlaceFlags {
  bool integral = false;
  bool k_dominant = false;
  bool regular = false;
  bool antidominant = false;
};

struct WeightFlags {
  std::vector<PlaceFlags> place;

  bool all(bool PlaceFlags::*f) const {
    for (const auto& p : place) {
      if (!(p.*f)) return false;
    }
    return true;
  }
};

inline PlaceFlags place_flags(const Weight& w, int place) {
  PlaceFlags f;
  const auto& row = w.row(place);
  f.integral = w.integral(place);
  f.k_dominant = true;
  for (int i = 0; i + 1 < w.n; ++i) {
    if (row[i] < row[i + 1]) f.k_dominant = false;
  }
  std::vector<std::int64_t> x = lambda_plus_rho(w, place);
  for (auto& e : x) e = e < 0 ? -e : e;
  std::sort(x.begin(), x.end());
  f.regular = x[0] != 0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (x[i] == x[i + 1]) f.regular = false;
  }
  // Anti-dominance asks for k-dominance together with lambda_n >= n.
  f.antidominant = f.k_dominant && row[w.n - 1] >= 2 * w.n;
  return f;
}

inline WeightFlags weight_flags(const Weight& w) {
  WeightFlags out;
  out.place.reserve(w.d);
  for (int v = 0; v < w.d; ++v) out.place.push_back(place_flags(w, v));
  return out;
}

/// Full dot orbit at one place, sorted lexicographically by doubled entries.
///
/// The orbit of x = lambda + rho under signed permutations is exactly the set
/// of vectors whose absolute-value multiset matches x, so the enumeration
/// walks distinct arrangements of |x| and flips signs on nonzero slots only.
/// That produces each orbit member exactly once, with no dedup pass.
inline std::vector<Weight> dot_orbit(const Weight& lambda, int place, const Limits& limits = {}) {
  require_guard(limits.unlimited || lambda.n <= 8, "dot orbit enumeration is guarded at rank 8");
  std::vector<std::int64_t> vals = lambda_plus_rho(lambda, place);
  for (auto& e : vals) e = e < 0 ? -e : e;
  std::sort(vals.begin(), vals.end());

  std::vector<Weight> orbit;
  std::vector<std::int64_t> y(lambda.n);
  do {
    std::vector<int> nonzero;
    for (int i = 0; i < lambda.n; ++i) {
      if (vals[i] != 0) nonzero.push_back(i);
    }
    const std::uint32_t patterns = 1u << nonzero.size();
    for (std::uint32_t mask = 0; mask < patterns; ++mask) {
      y.assign(vals.begin(), vals.end());
      for (std::size_t b = 0; b < nonzero.size(); ++b) {
        if ((mask >> b) & 1) y[nonzero[b]] = -y[nonzero[b]];
      }
      Weight w = lambda;
      for (int i = 0; i < lambda.n; ++i) w.twice[place][i] = y[i] + 2 * (i + 1);
      orbit.push_back(std::move(w));
    }
  } while (std::next_permutation(vals.begin(), vals.end()));
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

/// The unique regular anti-dominant member of the dot orbit, computed at
/// every place: sort |lambda + rho| descending and subtract rho again.
/// Requires the weight to be regular and integral at each place.
inline Weight antidominant_rep(const Weight& lambda) {
  Weight out = lambda;
  for (int v = 0; v < lambda.d; ++v) {
    require_arg(lambda.integral(v), "anti-dominant representative requires an integral weight");
    std::vector<std::int64_t> x = lambda_plus_rho(lambda, v);
    for (auto& e : x) e = e < 0 ? -e : e;
    std::sort(x.begin(), x.end(), std::greater<>());
    require_arg(x.back() != 0, "anti-dominant representative requires a regular weight");
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      require_arg(x[i] != x[i + 1], "anti-dominant representative requires a regular weight");
    }
    for (int i = 0; i < lambda.n; ++i) out.twice[v][i] = x[i] + 2 * (i + 1);
  }
  return out;
}

/// Renders one place as "a,b,c" with exact rational entries (used by module
/// descriptors and error messages).
inline std::string format_weight_row(const Weight& w, int place) {
  std::string s;
  const auto& row = w.row(place);
  for (int i = 0; i < w.n; ++i) {
    if (i) s += ',';
    s += format_rational(rational_from_doubled(row[i]));
  }
  return s;
}

}  // namespace hwmlab
