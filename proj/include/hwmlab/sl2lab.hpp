#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hwmlab/guards.hpp"
#include "hwmlab/rational.hpp"

namespace hwmlab {

/// Exact q-expansion of a nearly holomorphic object at level 1: a finite sum
/// of monomials q^m (pi y)^{-r} pi^e with Gaussian rational coefficients,
/// truncated q-adically at the stored precision. Terms are keyed by (m, r)
/// with a nested map over the pi exponent e, since the lowering operator
/// mixes pi powers into otherwise rational expansions.
class QSeries {
 public:
  using PiSlice = std::map<int, GaussianRational>;
  using TermMap = std::map<std::pair<std::int64_t, int>, PiSlice>;

  explicit QSeries(int precision) : precision_(precision) {
    require_arg(precision >= 0, "QSeries precision must be nonnegative");
  }

  int precision() const { return precision_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Accumulates one monomial. Powers of q beyond the precision are dropped,
  /// which is the truncation semantics everywhere in this lab. The grade r
  /// may be negative (the raw holomorphic-direction operator produces such
  /// terms); consumers that need genuine near-holomorphy check for it.
  void add_term(std::int64_t m, int r, int pi_exp, const GaussianRational& c) {
    require_arg(m >= 0, "QSeries: negative q-power");
    if (m > precision_ || c.is_zero()) return;
    PiSlice& slice = terms_[{m, r}];
    auto it = slice.find(pi_exp);
    if (it == slice.end()) {
      slice.emplace(pi_exp, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) slice.erase(it);
    }
    if (slice.empty()) terms_.erase({m, r});
  }

  int max_r() const {
    int r = 0;
    for (const auto& [key, slice] : terms_) r = std::max(r, key.second);
    return r;
  }

  bool has_negative_r() const {
    for (const auto& [key, slice] : terms_) {
      if (key.second < 0) return true;
    }
    return false;
  }

  QSeries scaled(const GaussianRational& c, int pi_shift = 0) const {
    QSeries out(precision_);
    if (c.is_zero()) return out;
    for (const auto& [key, slice] : terms_) {
      for (const auto& [e, v] : slice) out.add_term(key.first, key.second, e + pi_shift, v * c);
    }
    return out;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.precision_, b.precision_));
    for (const auto& [key, slice] : a.terms_) {
      for (const auto& [e, v] : slice) out.add_term(key.first, key.second, e, v);
    }
    for (const auto& [key, slice] : b.terms_) {
      for (const auto& [e, v] : slice) out.add_term(key.first, key.second, e, v);
    }
    return out;
  }

  friend QSeries operator-(const QSeries& a, const QSeries& b) {
    return a + b.scaled(GaussianRational(Rational(-1), Rational(0)));
  }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.precision_, b.precision_));
    for (const auto& [ka, sa] : a.terms_) {
      if (ka.first > out.precision_) continue;
      for (const auto& [kb, sb] : b.terms_) {
        const std::int64_t m = ka.first + kb.first;
        if (m > out.precision_) continue;
        const int r = ka.second + kb.second;
        for (const auto& [ea, va] : sa)
          for (const auto& [eb, vb] : sb) out.add_term(m, r, ea + eb, va * vb);
      }
    }
    return out;
  }

  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.precision_ == b.precision_ && a.terms_ == b.terms_;
  }

  /// Copy truncated to a smaller q-precision.
  QSeries truncated(int precision) const {
    QSeries out(std::min(precision, precision_));
    for (const auto& [key, slice] : terms_) {
      for (const auto& [e, v] : slice) out.add_term(key.first, key.second, e, v);
    }
    return out;
  }

 private:
  int precision_;
  TermMap terms_;
};

/// Divisor sum sigma_1(m) by factoring out divisor pairs.
inline std::int64_t sigma1(std::int64_t m) {
  require_arg(m >= 1, "sigma1: argument must be positive");
  std::int64_t total = 0;
  for (std::int64_t d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    total += d;
    if (d != m / d) total += m / d;
  }
  return total;
}

/// The weight-2 Eisenstein series in its nearly holomorphic normalization:
/// 3 (pi y)^{-1} - 1 + 24 sum sigma_1(m) q^m.
inline QSeries eisenstein_e2(int precision) {
  require_arg(precision >= 1, "eisenstein_e2: precision must be at least 1");
  QSeries f(precision);
  f.add_term(0, 1, 0, GaussianRational(Rational(3), Rational(0)));
  f.add_term(0, 0, 0, GaussianRational(Rational(-1), Rational(0)));
  for (std::int64_t m = 1; m <= precision; ++m) {
    f.add_term(m, 0, 0, GaussianRational(Rational(24 * sigma1(m)), Rational(0)));
  }
  return f;
}

/// The lowering operator 4 y^2 d/dz-bar in the monomial basis:
/// q^m (pi y)^{-r} maps to (-2 i r) pi^{-1} q^m (pi y)^{-(r-1)}.
/// Holomorphic series die; each application lowers the grade by one.
inline QSeries lower_E(const QSeries& f) {
  QSeries out(f.precision());
  for (const auto& [key, slice] : f.terms()) {
    const int r = key.second;
    if (r == 0) continue;
    const GaussianRational factor(Rational(0), Rational(-2 * static_cast<std::int64_t>(r)));
    for (const auto& [e, v] : slice) out.add_term(key.first, r - 1, e - 1, v * factor);
  }
  return out;
}

/// The weight-corrected raising operator at weight k:
/// q^m (pi y)^{-r} maps to m q^m (pi y)^{-r} + ((r - k)/4) q^m (pi y)^{-(r+1)}.
/// Rational in this basis; the output sits at weight k + 2 and the grade
/// climbs by at most one.
inline QSeries raise_maass_shimura(const QSeries& f, int k) {
  QSeries out(f.precision());
  for (const auto& [key, slice] : f.terms()) {
    const std::int64_t m = key.first;
    const int r = key.second;
    const GaussianRational mul_m(Rational(m), Rational(0));
    const GaussianRational mul_r(Rational(static_cast<std::int64_t>(r) - k, 4), Rational(0));
    for (const auto& [e, v] : slice) {
      out.add_term(m, r, e, v * mul_m);
      out.add_term(m, r + 1, e, v * mul_r);
    }
  }
  return out;
}

/// The uncorrected holomorphic-direction operator 4 y (d/dz) y in the same
/// basis: q^m (pi y)^{-r} maps to 8 i m pi^{-1} q^m (pi y)^{-(r-2)}
/// + 2 i r pi^{-1} q^m (pi y)^{-(r-1)}. It does not preserve automorphy and
/// happily produces negative grades; exposed for operator-identity checks.
inline QSeries raw_C(const QSeries& f) {
  QSeries out(f.precision());
  for (const auto& [key, slice] : f.terms()) {
    const std::int64_t m = key.first;
    const int r = key.second;
    const GaussianRational first(Rational(0), Rational(8 * m));
    const GaussianRational second(Rational(0), Rational(2 * static_cast<std::int64_t>(r)));
    for (const auto& [e, v] : slice) {
      out.add_term(m, r - 2, e - 1, v * first);
      out.add_term(m, r - 1, e - 1, v * second);
    }
  }
  return out;
}

/// The grade-0 slice: the holomorphic shadow of a nearly holomorphic series.
inline QSeries holomorphic_part(const QSeries& f) {
  QSeries out(f.precision());
  for (const auto& [key, slice] : f.terms()) {
    if (key.second != 0) continue;
    for (const auto& [e, v] : slice) out.add_term(key.first, 0, e, v);
  }
  return out;
}

/// Minimal e with lower_E^e f = 0: one more than the top grade, zero for the
/// zero series. Series carrying negative grades are not nearly holomorphic
/// (no power of the lowering operator kills them) and are rejected.
inline int nearly_holomorphic_degree(const QSeries& f) {
  if (f.is_zero()) return 0;
  require_arg(!f.has_negative_r(),
              "nearly_holomorphic_degree: series has negative grades and is not nearly holomorphic");
  return 1 + f.max_r();
}

namespace detail {

/// Dense polynomial in one variable over the Gaussian rationals, used for
/// exact ranks where the variable stands for pi^{-1}. Trailing zeros are
/// trimmed; the zero polynomial is the empty vector.
using Poly = std::vector<GaussianRational>;

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline bool poly_zero(const Poly& p) { return p.empty(); }

inline Poly poly_sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    GaussianRational v;
    if (i < a.size()) v = v + a[i];
    if (i < b.size()) v = v - b[i];
    out[i] = v;
  }
  poly_trim(out);
  return out;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  }
  poly_trim(out);
  return out;
}

inline Poly poly_scale(const Poly& a, const GaussianRational& c) {
  if (c.is_zero()) return {};
  Poly out = a;
  for (auto& v : out) v = v * c;
  return out;
}

inline Poly poly_rem(Poly a, const Poly& b) {
  // The leading term cancels exactly each pass, so the degree strictly drops.
  while (!a.empty() && a.size() >= b.size()) {
    const GaussianRational q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = a[shift + i] - q * b[i];
    }
    poly_trim(a);
  }
  return a;
}

inline Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const GaussianRational lead = a.back();
    for (auto& v : a) v = v / lead;
  }
  return a;
}

inline Poly poly_divexact(const Poly& a, const Poly& b) {
  if (a.empty()) return {};
  if (b.empty() || a.size() < b.size()) throw std::logic_error("poly_divexact: inexact division");
  Poly rem = a;
  Poly quot(a.size() - b.size() + 1);
  while (!rem.empty() && rem.size() >= b.size()) {
    const GaussianRational q = rem.back() / b.back();
    const std::size_t shift = rem.size() - b.size();
    quot[shift] = q;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] = rem[shift + i] - q * b[i];
    poly_trim(rem);
  }
  if (!rem.empty()) throw std::logic_error("poly_divexact: inexact division");
  poly_trim(quot);
  return quot;
}

/// Exact rank of a matrix of polynomials over the rational function field:
/// cross-multiplication elimination with rows renormalized by the gcd of
/// their entries to keep degrees flat.
inline std::int64_t poly_matrix_rank(std::vector<std::vector<Poly>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::int64_t rank = 0;
  std::size_t start = 0;
  for (std::size_t col = 0; col < cols && start < rows.size(); ++col) {
    std::size_t sel = start;
    while (sel < rows.size() && poly_zero(rows[sel][col])) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[start]);
    const std::vector<Poly>& pivot = rows[start];
    for (std::size_t r = start + 1; r < rows.size(); ++r) {
      if (poly_zero(rows[r][col])) continue;
      const Poly factor = rows[r][col];
      Poly g;
      std::vector<Poly> next(cols);
      for (std::size_t c = 0; c < cols; ++c) {
        next[c] = poly_sub(poly_mul(rows[r][c], pivot[col]), poly_mul(pivot[c], factor));
        if (!poly_zero(next[c])) g = poly_zero(g) ? next[c] : poly_gcd(g, next[c]);
      }
      if (!poly_zero(g) && g.size() > 1) {
        for (auto& c : next) {
          if (!poly_zero(c)) c = poly_divexact(c, g);
        }
      }
      rows[r] = std::move(next);
    }
    ++rank;
    ++start;
  }
  return rank;
}

/// Rank of the span of a family of series, with coefficients read in the
/// field generated by pi^{-1} over the Gaussian rationals: matrix columns
/// are the (m, r) cells, entries are polynomials in pi^{-1} (each row is
/// shifted by its own pi power first, which changes nothing about rank).
inline std::int64_t series_family_rank(const std::vector<QSeries>& family) {
  std::vector<std::pair<std::int64_t, int>> cells;
  for (const QSeries& f : family) {
    for (const auto& [key, slice] : f.terms()) cells.push_back(key);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  if (cells.empty()) return 0;

  std::vector<std::vector<Poly>> rows;
  for (const QSeries& f : family) {
    if (f.is_zero()) continue;
    int top = std::numeric_limits<int>::min();
    for (const auto& [key, slice] : f.terms()) {
      for (const auto& [e, v] : slice) top = std::max(top, e);
    }
    std::vector<Poly> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      auto it = f.terms().find(cells[c]);
      if (it == f.terms().end()) continue;
      Poly p;
      for (const auto& [e, v] : it->second) {
        const std::size_t deg = static_cast<std::size_t>(top - e);
        if (p.size() <= deg) p.resize(deg + 1);
        p[deg] = v;
      }
      poly_trim(p);
      row[c] = std::move(p);
    }
    rows.push_back(std::move(row));
  }
  return poly_matrix_rank(std::move(rows));
}

}  // namespace detail

/// Applies all operator words in {lower, raise} of length up to the depth to
/// the given series of the given weight, buckets the results by weight, and
/// reports the exact dimension each bucket spans. Dimensions are ranks over
/// the coefficient field with pi^{-1} adjoined, so pi-rescaled copies of one
/// function count once. The rank at full q-precision must match the rank at
/// half precision, otherwise the precision cannot certify independence and
/// the probe refuses to answer.
inline std::map<int, std::int64_t> module_probe(const QSeries& f, int weight, int depth,
                                                const Limits& limits = {}) {
  require_arg(depth >= 0, "module_probe: negative depth");
  require_guard(limits.unlimited || depth <= 8, "module_probe: depth capped at 8 (override to lift)");

  std::map<int, std::vector<QSeries>> buckets;
  std::vector<std::pair<QSeries, int>> frontier;
  frontier.emplace_back(f, weight);
  buckets[weight].push_back(f);
  for (int len = 1; len <= depth; ++len) {
    std::vector<std::pair<QSeries, int>> next;
    next.reserve(frontier.size() * 2);
    for (const auto& [g, k] : frontier) {
      QSeries lowered = lower_E(g);
      QSeries raised = raise_maass_shimura(g, k);
      buckets[k - 2].push_back(lowered);
      buckets[k + 2].push_back(raised);
      next.emplace_back(std::move(lowered), k - 2);
      next.emplace_back(std::move(raised), k + 2);
    }
    frontier = std::move(next);
  }

  std::map<int, std::int64_t> dims;
  for (const auto& [k, family] : buckets) {
    const std::int64_t full = detail::series_family_rank(family);
    std::vector<QSeries> half;
    half.reserve(family.size());
    for (const QSeries& g : family) half.push_back(g.truncated(g.precision() / 2));
    const std::int64_t check = detail::series_family_rank(half);
    if (check != full)
      throw std::runtime_error("module_probe: q-precision too small to certify the rank");
    dims[k] = full;
  }
  return dims;
}

}  // namespace hwmlab
