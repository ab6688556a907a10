// Acceptance gate: one self-contained check per shipped guarantee, one
// PASS/FAIL line each. Exit status is nonzero when any line fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hwmlab/core_weights.hpp"
#include "hwmlab/envelope.hpp"
#include "hwmlab/ktypes.hpp"
#include "hwmlab/projection.hpp"
#include "hwmlab/sl2lab.hpp"
#include "hwmlab/unitarity.hpp"

namespace {

using hwmlab::GaussianRational;
using hwmlab::Rational;
using hwmlab::Signature;
using hwmlab::Weight;
using hwmlab::weight_of_ints;

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::int64_t factorial(int n) {
  std::int64_t r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

void decreasing_tuples(int len, std::int64_t lo, std::int64_t hi,
                       const std::function<void(const std::vector<std::int64_t>&)>& sink) {
  std::vector<std::int64_t> cur;
  std::function<void(std::int64_t)> rec = [&](std::int64_t cap) {
    if (static_cast<int>(cur.size()) == len) {
      sink(cur);
      return;
    }
    for (std::int64_t v = cap; v >= lo; --v) {
      cur.push_back(v);
      rec(v);
      cur.pop_back();
    }
  };
  rec(hi);
}

void all_tuples(int len, std::int64_t lo, std::int64_t hi,
                const std::function<void(const std::vector<std::int64_t>&)>& sink) {
  std::vector<std::int64_t> cur(static_cast<std::size_t>(len), lo);
  while (true) {
    sink(cur);
    int k = len - 1;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == hi) {
      cur[static_cast<std::size_t>(k)] = lo;
      --k;
    }
    if (k < 0) return;
    ++cur[static_cast<std::size_t>(k)];
  }
}

// ---------------------------------------------------------------- criterion 1

bool criterion_group_and_orbits(std::string& note) {
  for (int n = 1; n <= 5; ++n) {
    const auto group = hwmlab::weyl_group(n);
    if (static_cast<std::int64_t>(group.size()) != ipow(2, n) * factorial(n)) {
      note = "group size mismatch at rank " + std::to_string(n);
      return false;
    }
  }

  std::vector<std::vector<hwmlab::WeylElement>> groups;
  for (int n = 1; n <= 4; ++n) groups.push_back(hwmlab::weyl_group(n));
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> rank(1, 4);
  std::uniform_int_distribution<std::int64_t> entry(-5, 7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = rank(rng);
    const auto& group = groups[static_cast<std::size_t>(n - 1)];
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    const auto& a = group[pick(rng)];
    const auto& b = group[pick(rng)];
    const auto& c = group[pick(rng)];
    if (!(hwmlab::compose(hwmlab::compose(a, b), c) ==
          hwmlab::compose(a, hwmlab::compose(b, c)))) {
      note = "associativity failure";
      return false;
    }
    if (!(hwmlab::compose(a, hwmlab::inverse(a)) == hwmlab::WeylElement::identity(n))) {
      note = "inverse failure";
      return false;
    }
    std::vector<std::int64_t> ints(static_cast<std::size_t>(n));
    for (auto& v : ints) v = entry(rng);
    const Weight w = weight_of_ints(ints);
    if (!(hwmlab::dot_act(a, hwmlab::dot_act(b, w, 0), 0) ==
          hwmlab::dot_act(hwmlab::compose(a, b), w, 0))) {
      note = "dot action does not respect composition";
      return false;
    }
    if (!(hwmlab::dot_act(hwmlab::WeylElement::identity(n), w, 0) == w)) {
      note = "dot action identity failure";
      return false;
    }
  }

  bool ok = true;
  for (int n = 1; n <= 3 && ok; ++n) {
    all_tuples(n, -2, 6, [&](const std::vector<std::int64_t>& entries) {
      if (!ok) return;
      const Weight w = weight_of_ints(entries);
      const auto mult = hwmlab::abs_multiset(w);
      for (const auto& member : hwmlab::dot_orbit(w, 0)) {
        if (!(hwmlab::abs_multiset(member) == mult)) ok = false;
      }
    });
  }
  if (!ok) note = "orbit invariant drifted";
  return ok;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_unitary_orbits(std::string& note) {
  bool ok = true;
  std::int64_t bases = 0;
  for (int n = 1; n <= 6 && ok; ++n) {
    decreasing_tuples(n, n + 1, n + 6, [&](const std::vector<std::int64_t>& entries) {
      if (!ok) return;
      ++bases;
      const Weight base = weight_of_ints(entries);
      std::set<std::vector<std::int64_t>> closed;
      for (const auto& [j, member] : hwmlab::unitary_orbit(base, 0).members)
        closed.insert(member.row(0));

      std::set<std::vector<std::int64_t>> brute;
      if (n <= 4) {
        for (const auto& member : hwmlab::dot_orbit(base, 0)) {
          const auto flags = hwmlab::place_flags(member, 0);
          if (flags.k_dominant && hwmlab::is_unitarizable(member, 0)) brute.insert(member.row(0));
        }
      } else {
        const auto dx = hwmlab::lambda_plus_rho(base, 0);
        for (std::int64_t mask = 0; mask < (std::int64_t(1) << n); ++mask) {
          std::vector<std::int64_t> y(dx);
          for (int i = 0; i < n; ++i) {
            if (mask & (std::int64_t(1) << i)) y[static_cast<std::size_t>(i)] = -y[static_cast<std::size_t>(i)];
          }
          std::sort(y.rbegin(), y.rend());
          std::vector<std::int64_t> row(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)] + 2 * (i + 1);
          const Weight member(n, 1, {row});
          if (hwmlab::place_flags(member, 0).k_dominant && hwmlab::is_unitarizable(member, 0))
            brute.insert(row);
        }
      }
      if (closed != brute) {
        ok = false;
        note = "mismatch at base " + hwmlab::format_weight_row(base, 0);
      }
    });
  }
  if (ok && bases != 923) {
    ok = false;
    note = "unexpected base count " + std::to_string(bases);
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_ktype_families(std::string& note) {
  bool ok = true;
  for (int n = 1; n <= 4 && ok; ++n) {
    decreasing_tuples(n, 0, 8, [&](const std::vector<std::int64_t>& lam) {
      if (!ok) return;
      const Signature sigma = hwmlab::distinguished_ktype(lam);
      const std::int64_t gap = hwmlab::signature_sum(sigma) - hwmlab::signature_sum(lam);
      if (gap < 0 || gap % 2 != 0 ||
          hwmlab::verma_ktype_multiplicity(lam, sigma, static_cast<int>(gap / 2)) < 1) {
        ok = false;
        note = "distinguished k-type missing";
      }
    });
  }
  if (!ok) return false;

  for (int n = 1; n <= 6 && ok; ++n) {
    decreasing_tuples(n, 0, 10, [&](const std::vector<std::int64_t>& lam) {
      if (!ok) return;
      const int j = hwmlab::j_invariant(lam);
      Signature cur = lam;
      for (int step = 0; step + 1 < n; ++step) {
        cur = hwmlab::g_map(cur);
        if (hwmlab::j_invariant(cur) != j) {
          ok = false;
          note = "parity count not preserved";
          return;
        }
      }
      Signature closed(static_cast<std::size_t>(n), lam[0] - 1);
      for (int k = 0; k < j; ++k) closed[static_cast<std::size_t>(k)] = lam[0];
      if (cur != closed) {
        ok = false;
        note = "promotion closed form mismatch";
      }
    });
  }
  return ok;
}

// ---------------------------------------------------------------- criterion 4

using Sparse = std::map<int, GaussianRational>;

Sparse bracket_of(const hwmlab::SpAlgebra& alg, int a, int b) {
  Sparse out;
  for (const auto& [id, c] : alg.bracket(a, b)) out[id] = out[id] + c;
  return out;
}

Sparse bracket_lin(const hwmlab::SpAlgebra& alg, const Sparse& x, int c) {
  Sparse out;
  for (const auto& [id, coeff] : x) {
    for (const auto& [target, sc] : alg.bracket(id, c)) out[target] = out[target] + coeff * sc;
  }
  return out;
}

bool sparse_zero(const Sparse& x) {
  for (const auto& [id, c] : x) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool criterion_envelope(std::string& note) {
  for (int n = 1; n <= 2; ++n) {
    const auto& alg = hwmlab::sp_algebra(n);
    const int dim = alg.dimension();
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        for (int c = 0; c < dim; ++c) {
          Sparse total = bracket_lin(alg, bracket_of(alg, a, b), c);
          for (const auto& [id, coeff] : bracket_lin(alg, bracket_of(alg, b, c), a))
            total[id] = total[id] + coeff;
          for (const auto& [id, coeff] : bracket_lin(alg, bracket_of(alg, c, a), b))
            total[id] = total[id] + coeff;
          if (!sparse_zero(total)) {
            note = "jacobi failure at rank " + std::to_string(n);
            return false;
          }
        }
      }
    }
  }

  const auto& a1 = hwmlab::sp_algebra(1);
  const auto lower_raise =
      bracket_of(a1, a1.id_of({'+', 1, 1}), a1.id_of({'-', 1, 1}));
  Sparse expected;
  expected[a1.id_of({'B', 1, 1})] = GaussianRational(4);
  if (!(lower_raise == expected)) {
    note = "defining commutator mismatch";
    return false;
  }

  using L = hwmlab::Letter;
  using W = std::vector<hwmlab::Letter>;
  if (hwmlab::l_number(W{L::Eminus, L::B, L::Eplus}) != 0 ||
      hwmlab::l_number(W{L::Eminus, L::B, L::Eplus, L::Bstar}) != 1 ||
      hwmlab::l_number(W{L::Eplus, L::Eminus, L::B, L::B}) != 2 ||
      hwmlab::l_number(W{L::Eminus, L::B, L::B, L::Eplus}) != 2) {
    note = "word statistic mismatch";
    return false;
  }

  for (const auto& [n, r] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
    const auto d = hwmlab::build_generator(hwmlab::sp_algebra(n), r);
    if (!hwmlab::is_central(d)) {
      note = "generator (" + std::to_string(n) + "," + std::to_string(r) + ") not central";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 5

std::string canon_key(const hwmlab::InfinitesimalCharacter& c) {
  std::ostringstream os;
  for (const auto& row : c.canonical) {
    for (auto v : row) os << v << ',';
    os << ';';
  }
  return os.str();
}

std::string eval_key(const hwmlab::InfinitesimalCharacter& c) {
  std::ostringstream os;
  for (const auto& row : c.evaluation) {
    for (const auto& v : row) os << hwmlab::format_rational(v) << ',';
    os << ';';
  }
  return os.str();
}

bool criterion_characters(std::string& note) {
  for (int n = 1; n <= 3; ++n) {
    std::vector<Weight> weights;
    all_tuples(n, -2, 8, [&](const std::vector<std::int64_t>& entries) {
      weights.push_back(weight_of_ints(entries));
    });
    std::map<std::string, std::vector<std::size_t>> by_canon;
    std::map<std::string, std::string> canon_to_eval;
    std::vector<std::string> evals(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const auto chi = hwmlab::inf_char(weights[k]);
      const std::string ck = canon_key(chi);
      evals[k] = eval_key(chi);
      by_canon[ck].push_back(k);
      const auto it = canon_to_eval.find(ck);
      if (it == canon_to_eval.end()) {
        canon_to_eval.emplace(ck, evals[k]);
      } else if (it->second != evals[k]) {
        note = "evaluation differs inside a canonical class";
        return false;
      }
    }
    std::set<std::string> eval_seen;
    for (const auto& [ck, members] : by_canon) {
      if (!eval_seen.insert(canon_to_eval[ck]).second) {
        note = "two canonical classes share an evaluation vector";
        return false;
      }
      std::set<std::vector<std::int64_t>> orbit_rows;
      for (const auto& w : hwmlab::dot_orbit(weights[members[0]], 0)) orbit_rows.insert(w.row(0));
      for (std::size_t idx : members) {
        if (orbit_rows.count(weights[idx].row(0)) == 0) {
          note = "canonical class exceeds a dot orbit";
          return false;
        }
      }
    }
  }

  for (std::int64_t a = -6; a <= 6; ++a) {
    for (std::int64_t b = -6; b <= 6; ++b) {
      const auto ca = hwmlab::inf_char(weight_of_ints({a}));
      const auto cb = hwmlab::inf_char(weight_of_ints({b}));
      const auto fast = hwmlab::separating_index(ca, cb, hwmlab::ScalarMode::evaluation);
      const auto slow = hwmlab::separating_index(ca, cb, hwmlab::ScalarMode::harish_chandra);
      if (fast.has_value() != slow.has_value() ||
          (fast.has_value() && *fast != *slow)) {
        note = "scalar modes disagree at rank one";
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 6

bool criterion_projectors(std::string& note) {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> rank(1, 2);
  std::uniform_int_distribution<std::int64_t> entry(0, 6);
  std::uniform_int_distribution<int> kind_pick(0, 2);
  std::uniform_int_distribution<std::int64_t> comp(-9, 9);
  const hwmlab::SummandKind kinds[] = {hwmlab::SummandKind::Verma,
                                       hwmlab::SummandKind::Irreducible,
                                       hwmlab::SummandKind::DualVerma};
  int accepted = 0;
  while (accepted < 20) {
    const int n = rank(rng);
    std::vector<std::int64_t> entries(static_cast<std::size_t>(n));
    for (auto& v : entries) v = entry(rng);
    std::sort(entries.rbegin(), entries.rend());
    const Weight sigma = weight_of_ints(entries);
    const auto xs = hwmlab::xset(sigma);
    if (xs.empty()) continue;
    ++accepted;

    hwmlab::ModuleModel model;
    for (const auto& mu : xs)
      model.summands.push_back(hwmlab::ModuleSummand{kinds[kind_pick(rng)], mu, 6});

    std::set<hwmlab::InfinitesimalCharacter> chars;
    for (const auto& mu : xs) chars.insert(hwmlab::inf_char(mu));

    std::vector<Rational> v;
    const std::int64_t dim = hwmlab::model_dim(model);
    v.reserve(static_cast<std::size_t>(dim));
    for (std::int64_t k = 0; k < dim; ++k) v.emplace_back(comp(rng));

    std::vector<std::vector<Rational>> images;
    std::vector<hwmlab::ProjectorPlan> plans;
    std::vector<Rational> total(v.size(), Rational(0));
    for (const auto& chi : chars) {
      plans.push_back(hwmlab::build_projector(chi, sigma));
      images.push_back(hwmlab::apply_projector(plans.back(), model, v));
      const auto& image = images.back();
      if (hwmlab::apply_projector(plans.back(), model, image) != image) {
        note = "projector not idempotent";
        return false;
      }
      for (std::size_t k = 0; k < v.size(); ++k) total[k] = total[k] + image[k];
    }
    if (total != v) {
      note = "projector family does not resolve the identity";
      return false;
    }
    for (std::size_t i = 0; i < plans.size(); ++i) {
      for (std::size_t j = 0; j < images.size(); ++j) {
        if (i == j) continue;
        for (const auto& c : hwmlab::apply_projector(plans[i], model, images[j])) {
          if (c != Rational(0)) {
            note = "projectors not mutually orthogonal";
            return false;
          }
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------- criterion 7

bool criterion_classification(std::string& note) {
  const auto with_ktype = hwmlab::classify_module(weight_of_ints({4, 3}), Signature{4, 3});
  if (with_ktype.branch != "λ_n=n+1" ||
      with_ktype.possibilities != std::vector<std::string>{"L(4,3)", "NDual(4,1)"}) {
    note = "boundary case with the distinguished k-type";
    return false;
  }
  const auto open = hwmlab::classify_module(weight_of_ints({4, 3}), std::nullopt);
  if (open.branch != "λ_n=n+1" ||
      open.possibilities != std::vector<std::string>{"L(4,3)", "L(4,1)", "NDual(4,1)"}) {
    note = "boundary case without a k-type";
    return false;
  }
  const auto away = hwmlab::classify_module(weight_of_ints({5, 4}), std::nullopt);
  if (away.branch != "λ_n≠n+1" || away.possibilities != std::vector<std::string>{"L(5,4)"}) {
    note = "interior case";
    return false;
  }
  const auto wide = hwmlab::classify_module(Weight(2, 2, {{10, 8}, {10, 8}}), std::nullopt);
  if (wide.branch != "d>1" || wide.possibilities != std::vector<std::string>{"L(5,4;5,4)"}) {
    note = "several places case";
    return false;
  }
  const auto ext = hwmlab::ext_structure(2, 1, {4});
  if (ext.lambda != Signature{4, 3} || ext.lambda_prime != Signature{4, 1} ||
      ext.ext_dim != 1 ||
      ext.exact_sequence != "0 -> L(4,3) -> N(4,1) -> L(4,1) -> 0") {
    note = "extension picture";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------- criterion 8

GaussianRational q_coeff(const hwmlab::QSeries& f, std::int64_t m, int r, int e) {
  const auto it = f.terms().find({m, r});
  if (it == f.terms().end()) return GaussianRational();
  const auto jt = it->second.find(e);
  return jt == it->second.end() ? GaussianRational() : jt->second;
}

bool criterion_sl2(std::string& note) {
  const hwmlab::QSeries e2 = hwmlab::eisenstein_e2(50);

  std::vector<std::int64_t> sieve(51, 0);
  for (std::int64_t d = 1; d <= 50; ++d) {
    for (std::int64_t m = d; m <= 50; m += d) sieve[static_cast<std::size_t>(m)] += d;
  }
  for (std::int64_t m = 1; m <= 50; ++m) {
    if (q_coeff(e2, m, 0, 0) != GaussianRational(Rational(24 * sieve[static_cast<std::size_t>(m)]))) {
      note = "q-coefficient mismatch at m=" + std::to_string(m);
      return false;
    }
  }
  if (q_coeff(e2, 0, 0, 0) != GaussianRational(Rational(-1)) ||
      q_coeff(e2, 0, 1, 0) != GaussianRational(Rational(3))) {
    note = "constant terms";
    return false;
  }

  hwmlab::QSeries expected(50);
  expected.add_term(0, 0, -1, GaussianRational::imaginary(Rational(-6)));
  if (!(hwmlab::lower_E(e2) == expected)) {
    note = "lowering scalar";
    return false;
  }
  if (!hwmlab::lower_E(hwmlab::lower_E(e2)).is_zero()) {
    note = "second lowering";
    return false;
  }

  const auto dims = hwmlab::module_probe(e2, 2, 4);
  for (const auto& [weight, dim] : dims) {
    const std::int64_t want = weight >= 0 ? 1 : 0;
    if (dim != want) {
      note = "slice dimension at weight " + std::to_string(weight);
      return false;
    }
  }
  if (dims.count(0) == 0 || dims.count(10) == 0 || dims.count(-6) == 0) {
    note = "probe did not reach the expected weights";
    return false;
  }

  // weight-zero layer: rebuild the reachable functions and confirm each is a
  // constant (possibly zero) multiple of powers of 1/pi
  std::vector<std::pair<hwmlab::QSeries, int>> frontier{{e2, 2}};
  bool constants_only = true;
  for (int depth = 0; depth < 4; ++depth) {
    std::vector<std::pair<hwmlab::QSeries, int>> next;
    for (const auto& [f, w] : frontier) {
      next.emplace_back(hwmlab::lower_E(f), w - 2);
      next.emplace_back(hwmlab::raise_maass_shimura(f, w), w + 2);
    }
    for (const auto& [f, w] : next) {
      if (w != 0) continue;
      for (const auto& [key, slice] : f.terms()) {
        if (key.first != 0 || key.second != 0) constants_only = false;
      }
    }
    frontier = std::move(next);
  }
  if (!constants_only) {
    note = "weight-zero layer is not made of constants";
    return false;
  }
  return true;
}

struct Criterion {
  int id;
  const char* label;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "signed permutation group laws and orbit invariants", 30,
       criterion_group_and_orbits},
      {2, "closed-form unitary orbits equal the brute-force filter", 120,
       criterion_unitary_orbits},
      {3, "distinguished k-types occur and the promotion map closes", 120,
       criterion_ktype_families},
      {4, "structure constants, word statistic, central generators", 300, criterion_envelope},
      {5, "character invariants align with orbit equality across modes", 60,
       criterion_characters},
      {6, "projector families resolve the identity on candidate models", 60,
       criterion_projectors},
      {7, "classification table and extension goldens", 0, criterion_classification},
      {8, "eisenstein expansion, lowering scalars, span probe", 30, criterion_sl2},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string notes;
    bool ok = false;
    try {
      ok = c.run(notes);
    } catch (const std::exception& e) {
      notes = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.budget_seconds > 0 && elapsed > c.budget_seconds) {
      ok = false;
      notes = "time budget exceeded";
    }
    std::printf("%s  %d  %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.label, elapsed,
                notes.empty() ? "" : ": ", notes.c_str());
    failures += ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
