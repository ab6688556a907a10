#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hwmlab/core_weights.hpp"
#include "hwmlab/envelope.hpp"
#include "hwmlab/guards.hpp"
#include "hwmlab/ktypes.hpp"
#include "hwmlab/rational.hpp"
#include "hwmlab/unitarity.hpp"

namespace hwmlab {

/// Extracts one place of an integral weight as a plain signature.
inline Signature signature_of_place(const Weight& w, int place) {
  require_arg(w.integral(place), "expected an integral weight");
  const auto& row = w.row(place);
  Signature s(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) s[i] = row[i] / 2;
  return s;
}

inline Weight weight_of_signature_rows(const std::vector<Signature>& rows) {
  require_arg(!rows.empty(), "weight needs at least one place");
  std::vector<std::vector<std::int64_t>> twice;
  twice.reserve(rows.size());
  for (const auto& r : rows) {
    std::vector<std::int64_t> t(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) t[i] = 2 * r[i];
    twice.push_back(std::move(t));
  }
  return Weight(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()), std::move(twice));
}

/// The infinitesimal character of a highest weight module, carried in two
/// interchangeable forms per place: the sorted multiset of |entries| of
/// lambda + rho (doubled), and the elementary symmetric polynomials of the
/// squared entries. The forms agree: equal canonical multisets give equal
/// evaluation vectors and conversely, since the evaluations are precisely
/// the coefficients of the polynomial with the squares as roots.
struct InfinitesimalCharacter {
  int n = 0;
  int d = 0;
  std::vector<std::vector<std::int64_t>> canonical;  // doubled |x|, descending per place
  std::vector<std::vector<Rational>> evaluation;     // per place, e_1..e_n of the squares

  friend bool operator==(const InfinitesimalCharacter& a, const InfinitesimalCharacter& b) {
    return a.n == b.n && a.d == b.d && a.canonical == b.canonical;
  }
  friend bool operator!=(const InfinitesimalCharacter& a, const InfinitesimalCharacter& b) {
    return !(a == b);
  }
  friend bool operator<(const InfinitesimalCharacter& a, const InfinitesimalCharacter& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.d != b.d) return a.d < b.d;
    return a.canonical < b.canonical;
  }
};

inline InfinitesimalCharacter inf_char(const Weight& w) {
  InfinitesimalCharacter c;
  c.n = w.n;
  c.d = w.d;
  const AbsMultiset m = abs_multiset(w);
  c.canonical = m.twice_abs;
  c.evaluation.resize(static_cast<std::size_t>(w.d));
  for (int v = 0; v < w.d; ++v) {
    std::vector<Rational> squares;
    squares.reserve(static_cast<std::size_t>(w.n));
    for (std::int64_t t : c.canonical[static_cast<std::size_t>(v)]) {
      squares.emplace_back(BigInt(t) * t, 4);
    }
    // Elementary symmetric polynomials by expanding prod (1 + s_i T).
    std::vector<Rational> e(static_cast<std::size_t>(w.n) + 1, Rational(0));
    e[0] = Rational(1);
    std::size_t used = 0;
    for (const Rational& s : squares) {
      ++used;
      for (std::size_t k = used; k >= 1; --k) e[k] = e[k] + s * e[k - 1];
    }
    c.evaluation[static_cast<std::size_t>(v)].assign(e.begin() + 1, e.end());
  }
  return c;
}

/// The candidate highest weights attached to a K-type signature sigma: all
/// k-dominant integral mu that are unitarizable, whose generalized Verma
/// module contains the K-type, and with sigma - mu a nonnegative integer
/// combination of the weights e_i + e_j of the raising block. The latter is
/// equivalent to componentwise sigma >= mu >= 0 with an even total gap
/// (unitarizability already forces mu_n >= 0). Multi-place weights take the
/// cartesian product over places.
inline std::vector<Weight> xset(const Weight& sigma, const Limits& limits = {}) {
  (void)limits;
  std::vector<std::vector<Signature>> per_place(static_cast<std::size_t>(sigma.d));
  for (int v = 0; v < sigma.d; ++v) {
    require_arg(sigma.integral(v), "xset requires an integral K-type signature");
    const Signature top = signature_of_place(sigma, v);
    require_signature(top, "xset");
    require_arg(top.back() >= 0, "xset requires a nonnegative K-type signature");
    const std::int64_t total = signature_sum(top);
    const std::size_t nn = top.size();
    Signature mu(nn, 0);
    auto& bucket = per_place[static_cast<std::size_t>(v)];
    auto recurse = [&](auto&& self, std::size_t row) -> void {
      if (row == nn) {
        if (((total - signature_sum(mu)) & 1) != 0) return;
        const Weight wmu = weight_of_signature_rows({mu});
        if (!is_unitarizable(wmu, 0)) return;
        const std::int64_t degree = (total - signature_sum(mu)) / 2;
        if (verma_ktype_multiplicity(mu, top, static_cast<int>(degree)) < 1) return;
        bucket.push_back(mu);
        return;
      }
      const std::int64_t hi = row == 0 ? top[0] : std::min(top[row], mu[row - 1]);
      for (std::int64_t val = hi; val >= 0; --val) {
        mu[row] = val;
        self(self, row + 1);
      }
    };
    recurse(recurse, 0);
    std::sort(bucket.begin(), bucket.end(), std::greater<>());
  }

  std::vector<Weight> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(sigma.d), 0);
  auto emit = [&](auto&& self, int v) -> void {
    if (v == sigma.d) {
      std::vector<Signature> rows;
      rows.reserve(static_cast<std::size_t>(sigma.d));
      for (int u = 0; u < sigma.d; ++u)
        rows.push_back(per_place[static_cast<std::size_t>(u)][pick[static_cast<std::size_t>(u)]]);
      out.push_back(weight_of_signature_rows(rows));
      return;
    }
    for (std::size_t k = 0; k < per_place[static_cast<std::size_t>(v)].size(); ++k) {
      pick[static_cast<std::size_t>(v)] = k;
      self(self, v + 1);
    }
  };
  emit(emit, 0);
  return out;
}

/// How the plan models the scalar by which the degree-2i central generator
/// acts: either the elementary-symmetric surrogate (any rank), or the honest
/// normal-form eigenvalue through the enveloping algebra (small rank). The
/// two give different numbers but identical separation decisions.
enum class ScalarMode { evaluation, harish_chandra };

namespace detail {

inline const UEAElement& central_generator_cached(int n, int index) {
  static std::map<std::pair<int, int>, UEAElement> cache;
  static std::mutex cache_mutex;
  std::lock_guard<std::mutex> lock(cache_mutex);
  const auto key = std::make_pair(n, index);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, build_generator(sp_algebra(n), index)).first;
  }
  return it->second;
}

inline Rational central_scalar(const InfinitesimalCharacter& chi, int place, int index,
                               ScalarMode mode) {
  require_arg(index >= 1 && index <= chi.n, "central generator index out of range");
  const auto v = static_cast<std::size_t>(place);
  if (mode == ScalarMode::evaluation) {
    return chi.evaluation[v][static_cast<std::size_t>(index - 1)];
  }
  // Reconstruct the anti-dominant representative lambda_i = x_i + i from the
  // canonical form; the eigenvalue only depends on the character.
  std::vector<Rational> rep(static_cast<std::size_t>(chi.n));
  for (int i = 0; i < chi.n; ++i) {
    rep[static_cast<std::size_t>(i)] =
        Rational(chi.canonical[v][static_cast<std::size_t>(i)] + 2 * (i + 1), 2);
  }
  const GaussianRational val = hc_eigenvalue(central_generator_cached(chi.n, index), rep);
  if (!val.is_real()) throw std::logic_error("central eigenvalue with nonzero imaginary part");
  return val.re;
}

}  // namespace detail

/// First (place, index) at which two characters act differently on the
/// degree-2i central generators, scanning places in order and indices
/// 1..n within a place.
inline std::optional<std::pair<int, int>> separating_index(const InfinitesimalCharacter& a,
                                                           const InfinitesimalCharacter& b,
                                                           ScalarMode mode = ScalarMode::evaluation) {
  require_arg(a.n == b.n && a.d == b.d, "separating_index: shape mismatch");
  for (int v = 0; v < a.d; ++v) {
    for (int i = 1; i <= a.n; ++i) {
      if (detail::central_scalar(a, v, i, mode) != detail::central_scalar(b, v, i, mode))
        return std::make_pair(v, i);
    }
  }
  return std::nullopt;
}

struct ProjectorFactor {
  int place = 0;   // 0-based
  int index = 1;   // degree 2*index central generator
  Rational scalar; // the scalar subtracted: omega's action
  InfinitesimalCharacter omega;
};

/// Symbolic recipe for the projector onto the chi eigenspace within modules
/// whose constituents carry characters from the K-type's candidate set: one
/// linear factor per distinct non-chi character, and the normalization by
/// which chi itself scales the product.
struct ProjectorPlan {
  ScalarMode mode = ScalarMode::evaluation;
  InfinitesimalCharacter chi;
  std::vector<ProjectorFactor> factors;
  Rational normalization = Rational(1);
  std::vector<InfinitesimalCharacter> characters;  // deduped candidate set
};

inline ProjectorPlan build_projector(const InfinitesimalCharacter& chi, const Weight& sigma,
                                     ScalarMode mode = ScalarMode::evaluation,
                                     const Limits& limits = {}) {
  require_arg(chi.n == sigma.n && chi.d == sigma.d, "build_projector: shape mismatch");
  ProjectorPlan plan;
  plan.mode = mode;
  plan.chi = chi;

  std::set<InfinitesimalCharacter> chars;
  for (const Weight& mu : xset(sigma, limits)) chars.insert(inf_char(mu));
  plan.characters.assign(chars.begin(), chars.end());

  for (const InfinitesimalCharacter& omega : plan.characters) {
    if (omega == chi) continue;
    const auto sep = separating_index(chi, omega, mode);
    if (!sep) throw std::logic_error("distinct characters admit no separating index");
    ProjectorFactor f;
    f.place = sep->first;
    f.index = sep->second;
    f.scalar = detail::central_scalar(omega, f.place, f.index, mode);
    f.omega = omega;
    plan.factors.push_back(std::move(f));
    const Rational chi_val = detail::central_scalar(chi, plan.factors.back().place,
                                                    plan.factors.back().index, mode);
    plan.normalization = plan.normalization * (chi_val - plan.factors.back().scalar);
  }
  return plan;
}

/// Scalar by which the plan acts on a constituent of character psi: one for
/// chi, zero for each listed omega. Callers must keep psi inside the plan's
/// candidate set.
inline Rational projector_scalar(const ProjectorPlan& plan, const InfinitesimalCharacter& psi) {
  bool known = psi == plan.chi;
  for (const auto& c : plan.characters) known = known || c == psi;
  require_arg(known, "projector applied to a constituent outside the separated character set");
  Rational value(1);
  for (const auto& f : plan.factors) {
    value = value * (detail::central_scalar(psi, f.place, f.index, plan.mode) - f.scalar);
  }
  return value / plan.normalization;
}

enum class SummandKind { Verma, Irreducible, DualVerma };

inline std::string summand_kind_label(SummandKind k) {
  switch (k) {
    case SummandKind::Verma: return "N";
    case SummandKind::Irreducible: return "L";
    case SummandKind::DualVerma: return "NDual";
  }
  return "?";
}

/// A finite stand-in for a direct sum of highest weight constituents: each
/// summand keeps its label, weight, and a weight-graded basis truncated at
/// the given degree. Degree g contributes the number of degree-g monomials
/// in the d * n(n+1)/2 lowering directions. Central generators act on a
/// summand by the scalar its character dictates, which makes their matrices
/// diagonal in this basis.
struct ModuleSummand {
  SummandKind kind = SummandKind::Verma;
  Weight mu;
  int truncation = 6;
};

struct ModuleModel {
  std::vector<ModuleSummand> summands;
};

namespace detail {

inline std::int64_t binomial_i64(std::int64_t top, std::int64_t k) {
  if (k < 0 || k > top) return 0;
  BigInt acc = 1;
  for (std::int64_t t = 0; t < k; ++t) {
    acc *= (top - t);
    acc /= (t + 1);
  }
  return static_cast<std::int64_t>(acc);
}

}  // namespace detail

inline std::int64_t summand_level_dim(const ModuleSummand& s, int level) {
  const std::int64_t vars =
      static_cast<std::int64_t>(s.mu.d) * s.mu.n * (s.mu.n + 1) / 2;
  return detail::binomial_i64(level + vars - 1, level);
}

inline std::int64_t summand_dim(const ModuleSummand& s) {
  std::int64_t total = 0;
  for (int g = 0; g <= s.truncation; ++g) total += summand_level_dim(s, g);
  return total;
}

inline std::int64_t model_dim(const ModuleModel& m) {
  std::int64_t total = 0;
  for (const auto& s : m.summands) total += summand_dim(s);
  return total;
}

/// The degree-2*index central generator of one place, as the model matrix:
/// diagonal, constant on each summand block.
inline std::vector<Rational> central_diagonal(const ModuleModel& m, int place, int index,
                                              ScalarMode mode = ScalarMode::evaluation) {
  std::vector<Rational> diag;
  diag.reserve(static_cast<std::size_t>(model_dim(m)));
  for (const auto& s : m.summands) {
    const Rational c = detail::central_scalar(inf_char(s.mu), place, index, mode);
    const std::int64_t dim = summand_dim(s);
    for (std::int64_t k = 0; k < dim; ++k) diag.push_back(c);
  }
  return diag;
}

inline std::vector<Rational> apply_central(const ModuleModel& m, int place, int index,
                                           const std::vector<Rational>& vec,
                                           ScalarMode mode = ScalarMode::evaluation) {
  const auto diag = central_diagonal(m, place, index, mode);
  require_arg(vec.size() == diag.size(), "apply_central: vector length mismatch");
  std::vector<Rational> out(vec.size());
  for (std::size_t k = 0; k < vec.size(); ++k) out[k] = diag[k] * vec[k];
  return out;
}

inline std::vector<Rational> apply_projector(const ProjectorPlan& plan, const ModuleModel& m,
                                             const std::vector<Rational>& vec) {
  require_arg(static_cast<std::int64_t>(vec.size()) == model_dim(m),
              "apply_projector: vector length mismatch");
  std::vector<Rational> out(vec.size());
  std::size_t offset = 0;
  for (const auto& s : m.summands) {
    const Rational factor = projector_scalar(plan, inf_char(s.mu));
    const auto dim = static_cast<std::size_t>(summand_dim(s));
    for (std::size_t k = 0; k < dim; ++k) out[offset + k] = factor * vec[offset + k];
    offset += dim;
  }
  return out;
}

/// Module descriptor string: "L(4,3)", "NDual(4,1)"; places joined by ";".
inline std::string module_descriptor(SummandKind kind, const Weight& w) {
  std::string s = summand_kind_label(kind) + "(";
  for (int v = 0; v < w.d; ++v) {
    if (v) s += ";";
    s += format_weight_row(w, v);
  }
  s += ")";
  return s;
}

struct ClassificationResult {
  std::string branch;
  std::vector<std::string> possibilities;
};

/// The decision table for the module generated by a nearly holomorphic form
/// with regular anti-dominant integral weight lambda. More than one place
/// forces irreducibility; at one place the boundary value lambda_n = n + 1
/// opens the unitary orbit, and pinning the generating K-type to the
/// distinguished one cuts the list to the two extremes.
inline ClassificationResult classify_module(const Weight& lambda,
                                            const std::optional<Signature>& sigma = std::nullopt) {
  for (int v = 0; v < lambda.d; ++v) {
    const PlaceFlags f = place_flags(lambda, v);
    require_arg(f.integral && f.regular && f.antidominant,
                "classification requires a regular anti-dominant integral weight");
  }
  if (sigma) {
    require_signature(*sigma, "classify_module sigma");
    require_arg(static_cast<int>(sigma->size()) == lambda.n, "classify_module: sigma rank mismatch");
  }

  ClassificationResult res;
  if (lambda.d > 1) {
    res.branch = "d>1";
    res.possibilities.push_back(module_descriptor(SummandKind::Irreducible, lambda));
    return res;
  }

  const std::int64_t last2 = lambda.row(0)[lambda.n - 1];
  if (last2 != 2 * (lambda.n + 1)) {
    res.branch = "λ_n≠n+1";
    res.possibilities.push_back(module_descriptor(SummandKind::Irreducible, lambda));
    return res;
  }

  res.branch = "λ_n=n+1";
  const UnitaryOrbit orbit = unitary_orbit(lambda, 0);
  if (sigma) {
    const Signature dist = distinguished_ktype(signature_of_place(lambda, 0));
    require_arg(*sigma == dist,
                "classification with a K-type is only available for the distinguished K-type");
    res.possibilities.push_back(module_descriptor(SummandKind::Irreducible, orbit.members[0].second));
    res.possibilities.push_back(module_descriptor(SummandKind::DualVerma, orbit.members[1].second));
    return res;
  }
  for (const auto& [j, w] : orbit.members) {
    (void)j;
    res.possibilities.push_back(module_descriptor(SummandKind::Irreducible, w));
  }
  res.possibilities.push_back(module_descriptor(SummandKind::DualVerma, orbit.members[1].second));
  return res;
}

struct ExtStructure {
  Signature lambda;
  Signature lambda_prime;
  int ext_dim = 1;
  std::string exact_sequence;
};

/// The extension datum between the neighbor weights built from an odd block
/// size i: lambda fills the last i slots with n - (i-3)/2 and lambda' with
/// n - (i+1)/2, sharing the head. The two weights always lie in one dot
/// orbit, and the extension space is one dimensional, realized by the
/// non-split sequence through the Verma module of lambda'.
inline ExtStructure ext_structure(int n, int i, const Signature& head) {
  require_arg(n >= 1, "ext_structure: rank must be at least 1");
  require_arg(i >= 1 && (i % 2) == 1, "ext_structure: block size must be odd");
  require_arg(i < n, "ext_structure: block size must leave a nonempty head");
  require_arg(static_cast<int>(head.size()) == n - i, "ext_structure: head length must be n - i");
  require_signature(head, "ext_structure head");
  const std::int64_t fill = n - (i - 3) / 2;
  const std::int64_t fill_prime = n - (i + 1) / 2;
  require_arg(head.back() >= fill, "ext_structure: head must dominate the filled block");

  ExtStructure out;
  out.lambda = head;
  out.lambda_prime = head;
  for (int k = 0; k < i; ++k) {
    out.lambda.push_back(fill);
    out.lambda_prime.push_back(fill_prime);
  }
  const Weight wl = weight_of_signature_rows({out.lambda});
  const Weight wp = weight_of_signature_rows({out.lambda_prime});
  if (!(abs_multiset(wl) == abs_multiset(wp)))
    throw std::logic_error("ext_structure: weights left the common dot orbit");
  out.ext_dim = 1;
  out.exact_sequence = "0 -> " + module_descriptor(SummandKind::Irreducible, wl) + " -> " +
                       module_descriptor(SummandKind::Verma, wp) + " -> " +
                       module_descriptor(SummandKind::Irreducible, wp) + " -> 0";
  return out;
}

}  // namespace hwmlab
