#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hwmlab/guards.hpp"
#include "hwmlab/rational.hpp"

namespace hwmlab {

/// Generators of the complexified symplectic Lie algebra in the basis
/// adapted to the maximal compact subgroup: B(i,j) span a copy of gl(n),
/// E+(i,j) = E+(j,i) span the abelian raising block and E-(i,j) the
/// lowering block.
struct GenRef {
  char kind;  // 'B', '+', or '-'
  int i;      // 1-based
  int j;      // 1-based; for '+'/'-' the pair is unordered and stored with i <= j

  friend bool operator==(const GenRef& a, const GenRef& b) {
    return a.kind == b.kind && a.i == b.i && a.j == b.j;
  }
};

/// Monomial in the enveloping algebra: generator ids in product order
/// (leftmost factor first). Normal-form monomials are nondecreasing in id.
using Monomial = std::vector<int>;

using GMat = std::vector<std::vector<GaussianRational>>;

namespace detail {

inline GMat gmat_zero(std::size_t rows, std::size_t cols) {
  return GMat(rows, std::vector<GaussianRational>(cols));
}

inline GMat gmat_mul(const GMat& a, const GMat& b) {
  const std::size_t r = a.size(), k = b.size(), c = b[0].size();
  GMat out = gmat_zero(r, c);
  for (std::size_t x = 0; x < r; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      if (a[x][y].is_zero()) continue;
      for (std::size_t z = 0; z < c; ++z) out[x][z] = out[x][z] + a[x][y] * b[y][z];
    }
  }
  return out;
}

inline GMat gmat_sub(const GMat& a, const GMat& b) {
  GMat out = a;
  for (std::size_t x = 0; x < out.size(); ++x) {
    for (std::size_t y = 0; y < out[x].size(); ++y) out[x][y] = out[x][y] - b[x][y];
  }
  return out;
}

}  // namespace detail

/// The structure data for sp(2n, C): generator matrices, structure
/// constants, and the total order used for normal forms. Instances are
/// cached per rank; use sp_algebra(n).
class SpAlgebra {
 public:
  explicit SpAlgebra(int n) : n_(n) {
    require_arg(n >= 1, "SpAlgebra: rank must be at least 1");
    build_generator_table();
    build_matrices();
    build_brackets();
  }

  int rank() const { return n_; }
  int dimension() const { return static_cast<int>(gens_.size()); }

  int id_of(const GenRef& ref) const {
    GenRef c = ref;
    if (c.kind != 'B' && c.i > c.j) std::swap(c.i, c.j);
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      if (gens_[k] == c) return static_cast<int>(k);
    }
    throw std::invalid_argument("SpAlgebra: generator index out of range");
  }

  const GenRef& ref_of(int id) const { return gens_.at(static_cast<std::size_t>(id)); }

  const GMat& matrix_of(int id) const { return mats_.at(static_cast<std::size_t>(id)); }

  /// [ id_a, id_b ] expanded over the generator basis, sparse.
  const std::vector<std::pair<int, GaussianRational>>& bracket(int a, int b) const {
    return brackets_.at(static_cast<std::size_t>(a) * gens_.size() + static_cast<std::size_t>(b));
  }

  bool is_diagonal_b(int id) const {
    const GenRef& g = gens_[static_cast<std::size_t>(id)];
    return g.kind == 'B' && g.i == g.j;
  }

  /// For a diagonal B(i,i), the 1-based index i; -1 otherwise.
  int diagonal_index(int id) const {
    const GenRef& g = gens_[static_cast<std::size_t>(id)];
    return (g.kind == 'B' && g.i == g.j) ? g.i : -1;
  }

  std::string name_of(int id) const {
    const GenRef& g = gens_[static_cast<std::size_t>(id)];
    std::string head = (g.kind == 'B') ? "B" : (g.kind == '+') ? "E+" : "E-";
    return head + "(" + std::to_string(g.i) + "," + std::to_string(g.j) + ")";
  }

 private:
  // Ids are assigned so that the id order is the normal-form order:
  // raising block, then gl(n) below-diagonal, diagonal, above-diagonal,
  // then lowering block. Lex on (i,j) inside each band.
  void build_generator_table() {
    for (int i = 1; i <= n_; ++i)
      for (int j = i; j <= n_; ++j) gens_.push_back({'+', i, j});
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j < i; ++j) gens_.push_back({'B', i, j});
    for (int i = 1; i <= n_; ++i) gens_.push_back({'B', i, i});
    for (int i = 1; i <= n_; ++i)
      for (int j = i + 1; j <= n_; ++j) gens_.push_back({'B', i, j});
    for (int i = 1; i <= n_; ++i)
      for (int j = i; j <= n_; ++j) gens_.push_back({'-', i, j});
  }

  void build_matrices() {
    const std::size_t m = 2 * static_cast<std::size_t>(n_);
    const Rational half(1, 2);
    const GaussianRational h(half, Rational(0));        // 1/2
    const GaussianRational ih(Rational(0), half);       // i/2
    const GaussianRational mih(Rational(0), -half);     // -i/2
    const GaussianRational mh(-half, Rational(0));      // -1/2
    for (const GenRef& g : gens_) {
      GMat mat = detail::gmat_zero(m, m);
      const std::size_t a = static_cast<std::size_t>(g.i - 1);
      const std::size_t b = static_cast<std::size_t>(g.j - 1);
      const std::size_t n = static_cast<std::size_t>(n_);
      auto add = [&mat](std::size_t r, std::size_t c, const GaussianRational& v) {
        mat[r][c] = mat[r][c] + v;
      };
      if (g.kind == 'B') {
        add(a, b, h);
        add(b, a, mh);
        add(a, n + b, mih);
        add(b, n + a, mih);
        add(n + a, b, ih);
        add(n + b, a, ih);
        add(n + a, n + b, h);
        add(n + b, n + a, mh);
      } else {
        const GaussianRational off = (g.kind == '+') ? ih : mih;
        add(a, b, h);
        add(b, a, h);
        add(a, n + b, off);
        add(b, n + a, off);
        add(n + a, b, off);
        add(n + b, a, off);
        add(n + a, n + b, mh);
        add(n + b, n + a, mh);
      }
      mats_.push_back(std::move(mat));
    }
  }

  // Structure constants by solving vec([m_a, m_b]) against the basis matrix.
  // One reduced row echelon pass over the augmented basis matrix yields a
  // solve transform reused for every pair.
  void build_brackets() {
    const std::size_t dim = gens_.size();
    const std::size_t vlen = 4 * static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    GMat aug = detail::gmat_zero(vlen, dim + vlen);
    for (std::size_t c = 0; c < dim; ++c) {
      const GMat& mm = mats_[c];
      std::size_t r = 0;
      for (const auto& row : mm)
        for (const auto& v : row) aug[r++][c] = v;
    }
    for (std::size_t r = 0; r < vlen; ++r) aug[r][dim + r] = GaussianRational(Rational(1), Rational(0));

    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t prow = 0;
    for (std::size_t col = 0; col < dim && prow < vlen; ++col) {
      std::size_t sel = prow;
      while (sel < vlen && aug[sel][col].is_zero()) ++sel;
      if (sel == vlen) continue;
      std::swap(aug[sel], aug[prow]);
      const GaussianRational inv = GaussianRational(Rational(1), Rational(0)) / aug[prow][col];
      for (auto& v : aug[prow]) v = v * inv;
      for (std::size_t r = 0; r < vlen; ++r) {
        if (r == prow || aug[r][col].is_zero()) continue;
        const GaussianRational f = aug[r][col];
        for (std::size_t c = 0; c < aug[r].size(); ++c) aug[r][c] = aug[r][c] - f * aug[prow][c];
      }
      pivots.emplace_back(prow, col);
      ++prow;
    }
    if (pivots.size() != dim) throw std::logic_error("SpAlgebra: generator matrices are dependent");

    auto solve = [&](const GMat& target) {
      std::vector<GaussianRational> v;
      v.reserve(vlen);
      for (const auto& row : target)
        for (const auto& x : row) v.push_back(x);
      std::vector<GaussianRational> coords(dim);
      for (const auto& [r, c] : pivots) {
        GaussianRational acc;
        for (std::size_t k = 0; k < vlen; ++k) {
          if (!aug[r][dim + k].is_zero() && !v[k].is_zero()) acc = acc + aug[r][dim + k] * v[k];
        }
        coords[c] = acc;
      }
      // Residual check: the commutator must land in the span exactly.
      std::vector<GaussianRational> recon(vlen);
      for (std::size_t c = 0; c < dim; ++c) {
        if (coords[c].is_zero()) continue;
        const GMat& mm = mats_[c];
        std::size_t k = 0;
        for (const auto& row : mm)
          for (const auto& x : row) {
            if (!x.is_zero()) recon[k] = recon[k] + coords[c] * x;
            ++k;
          }
      }
      for (std::size_t k = 0; k < vlen; ++k) {
        if (!((recon[k] - v[k]).is_zero()))
          throw std::logic_error("SpAlgebra: commutator escapes the generator span");
      }
      return coords;
    };

    brackets_.resize(dim * dim);
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < dim; ++b) {
        if (a == b) continue;
        const GMat comm = detail::gmat_sub(detail::gmat_mul(mats_[a], mats_[b]),
                                           detail::gmat_mul(mats_[b], mats_[a]));
        const auto coords = solve(comm);
        auto& slot = brackets_[a * dim + b];
        for (std::size_t c = 0; c < dim; ++c) {
          if (!coords[c].is_zero()) slot.emplace_back(static_cast<int>(c), coords[c]);
        }
      }
    }
  }

  int n_;
  std::vector<GenRef> gens_;
  std::vector<GMat> mats_;
  std::vector<std::vector<std::pair<int, GaussianRational>>> brackets_;
};

/// Cached per-rank algebra instances.
inline const SpAlgebra& sp_algebra(int n) {
  static std::map<int, SpAlgebra> cache;
  static std::mutex cache_mutex;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, SpAlgebra(n)).first;
  return it->second;
}

/// Element of the universal enveloping algebra, always stored in normal
/// form: each monomial nondecreasing in generator id, so raising operators
/// sit leftmost and lowering operators rightmost.
class UEAElement {
 public:
  explicit UEAElement(const SpAlgebra& alg) : alg_(&alg) {}

  static UEAElement constant(const SpAlgebra& alg, const GaussianRational& c) {
    UEAElement e(alg);
    if (!c.is_zero()) e.terms_[Monomial{}] = c;
    return e;
  }

  static UEAElement generator(const SpAlgebra& alg, int id) {
    UEAElement e(alg);
    e.terms_[Monomial{id}] = GaussianRational(Rational(1), Rational(0));
    return e;
  }

  static UEAElement generator(const SpAlgebra& alg, const GenRef& ref) {
    return generator(alg, alg.id_of(ref));
  }

  /// Product of generators in the given order, normalized.
  static UEAElement from_word(const SpAlgebra& alg, const Monomial& word,
                              const GaussianRational& coeff) {
    UEAElement e(alg);
    if (coeff.is_zero()) return e;
    std::vector<std::pair<Monomial, GaussianRational>> stack;
    stack.emplace_back(word, coeff);
    e.absorb(stack);
    return e;
  }

  const SpAlgebra& algebra() const { return *alg_; }
  const std::map<Monomial, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return static_cast<int>(d);
  }

  friend UEAElement operator+(const UEAElement& a, const UEAElement& b) {
    a.check_same(b);
    UEAElement out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend UEAElement operator-(const UEAElement& a, const UEAElement& b) {
    a.check_same(b);
    UEAElement out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, GaussianRational() - c);
    return out;
  }

  UEAElement scaled(const GaussianRational& s) const {
    UEAElement out(*alg_);
    if (s.is_zero()) return out;
    for (const auto& [m, c] : terms_) out.terms_[m] = c * s;
    return out;
  }

  friend UEAElement operator*(const UEAElement& a, const UEAElement& b) {
    a.check_same(b);
    UEAElement out(*a.alg_);
    std::vector<std::pair<Monomial, GaussianRational>> stack;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        stack.emplace_back(std::move(m), ca * cb);
      }
    }
    out.absorb(stack);
    return out;
  }

  UEAElement& operator+=(const UEAElement& b) {
    check_same(b);
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
  }

  friend bool operator==(const UEAElement& a, const UEAElement& b) {
    a.check_same(b);
    return a.terms_ == b.terms_;
  }

 private:
  void check_same(const UEAElement& other) const {
    if (alg_ != other.alg_) throw std::invalid_argument("UEAElement: mixed algebra ranks");
  }

  void add_term(const Monomial& m, const GaussianRational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(m, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  // Straightening worklist: swap the first adjacent inversion and queue the
  // bracket correction. Each step lowers (degree, inversion count)
  // lexicographically, so this terminates.
  void absorb(std::vector<std::pair<Monomial, GaussianRational>>& stack) {
    while (!stack.empty()) {
      auto [m, c] = std::move(stack.back());
      stack.pop_back();
      if (c.is_zero()) continue;
      std::size_t k = m.size();
      for (std::size_t t = 0; t + 1 < m.size(); ++t) {
        if (m[t] > m[t + 1]) {
          k = t;
          break;
        }
      }
      if (k == m.size()) {
        add_term(m, c);
        continue;
      }
      const auto& br = alg_->bracket(m[k], m[k + 1]);
      Monomial swapped = m;
      std::swap(swapped[k], swapped[k + 1]);
      for (const auto& [id, s] : br) {
        Monomial reduced;
        reduced.reserve(m.size() - 1);
        reduced.insert(reduced.end(), m.begin(), m.begin() + static_cast<std::ptrdiff_t>(k));
        reduced.push_back(id);
        reduced.insert(reduced.end(), m.begin() + static_cast<std::ptrdiff_t>(k) + 2, m.end());
        stack.emplace_back(std::move(reduced), c * s);
      }
      stack.emplace_back(std::move(swapped), std::move(c));
    }
  }

  const SpAlgebra* alg_;
  std::map<Monomial, GaussianRational> terms_;
};

/// Normalizes a linear combination of generator words. Words list their
/// factors left to right; the result is in normal form.
inline UEAElement pbw_normal_form(const SpAlgebra& alg,
                                  const std::vector<std::pair<Monomial, GaussianRational>>& words,
                                  const Limits& limits = {}) {
  require_guard(limits.unlimited || alg.rank() <= 3,
                "pbw_normal_form: rank capped at 3 (override to lift)");
  UEAElement out(alg);
  for (const auto& [w, c] : words) out += UEAElement::from_word(alg, w, c);
  return out;
}

inline UEAElement commutator(const UEAElement& a, const UEAElement& b) { return a * b - b * a; }

/// Checks [g, x] = 0 against every generator g.
inline bool is_central(const UEAElement& x, const Limits& limits = {}) {
  const SpAlgebra& alg = x.algebra();
  require_guard(limits.unlimited || x.degree() < 4 || alg.rank() <= 2,
                "is_central: rank capped at 2 for degree 4 and above (override to lift)");
  for (int g = 0; g < alg.dimension(); ++g) {
    if (!commutator(UEAElement::generator(alg, g), x).is_zero()) return false;
  }
  return true;
}

/// Scalar by which a normal-form element acts on a highest weight vector of
/// weight lambda: only the pure gl(n)-diagonal monomials contribute, with
/// B(i,i) evaluated at lambda_i.
inline GaussianRational hc_eigenvalue(const UEAElement& x, const std::vector<Rational>& lambda) {
  const SpAlgebra& alg = x.algebra();
  require_arg(static_cast<int>(lambda.size()) == alg.rank(), "hc_eigenvalue: weight rank mismatch");
  GaussianRational total;
  for (const auto& [m, c] : x.terms()) {
    bool pure = true;
    GaussianRational value = c;
    for (int id : m) {
      const int di = alg.diagonal_index(id);
      if (di < 0) {
        pure = false;
        break;
      }
      value = value * GaussianRational(lambda[static_cast<std::size_t>(di - 1)], Rational(0));
    }
    if (pure) total = total + value;
  }
  return total;
}

/// Word alphabet for the trace construction of central elements.
enum class Letter : int { B = 0, Bstar = 1, Eplus = 2, Eminus = 3 };

enum class WordConvention { cyclic, linear };

inline bool letter_adjacent(Letter a, Letter b) {
  switch (a) {
    case Letter::Eplus: return b == Letter::Eminus || b == Letter::Bstar;
    case Letter::Eminus: return b == Letter::Eplus || b == Letter::B;
    case Letter::B: return b == Letter::Eplus || b == Letter::B;
    case Letter::Bstar: return b == Letter::Eminus || b == Letter::Bstar;
  }
  return false;
}

/// All words of the given length over {B, B*, E+, E-} satisfying the
/// neighbor conditions and using E+ and E- equally often. Under the cyclic
/// convention the neighbor condition also binds the last letter to the
/// first; the two conventions produce the same set.
inline std::vector<std::vector<Letter>> enumerate_words(int length, WordConvention convention,
                                                        const Limits& limits = {}) {
  require_arg(length >= 1, "enumerate_words: length must be positive");
  require_guard(limits.unlimited || length <= 12,
                "enumerate_words: length capped at 12 (override to lift)");
  std::vector<std::vector<Letter>> out;
  std::vector<Letter> word(static_cast<std::size_t>(length), Letter::B);
  auto recurse = [&](auto&& self, int pos, int balance) -> void {
    if (pos == length) {
      if (balance != 0) return;
      if (convention == WordConvention::cyclic && !letter_adjacent(word.back(), word.front()))
        return;
      out.push_back(word);
      return;
    }
    for (int l = 0; l < 4; ++l) {
      const Letter cand = static_cast<Letter>(l);
      if (pos > 0 && !letter_adjacent(word[static_cast<std::size_t>(pos - 1)], cand)) continue;
      int nb = balance;
      if (cand == Letter::Eplus) ++nb;
      if (cand == Letter::Eminus) --nb;
      if (std::abs(nb) > length - pos - 1) continue;
      word[static_cast<std::size_t>(pos)] = cand;
      self(self, pos + 1, nb);
    }
  };
  recurse(recurse, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// The sign exponent attached to a word: the number of E-B adjacencies whose
/// B is not in turn followed by E+, plus the number of BE+ adjacencies whose
/// B is not preceded by E-, plus the number of B* letters. Under the linear
/// convention pairs never wrap around the end of the word.
inline int l_number(const std::vector<Letter>& word,
                    WordConvention convention = WordConvention::cyclic) {
  require_arg(!word.empty(), "l_number: empty word");
  const int len = static_cast<int>(word.size());
  const bool cyc = convention == WordConvention::cyclic;
  auto at = [&](int t) { return word[static_cast<std::size_t>(((t % len) + len) % len)]; };
  int L = 0;
  for (const Letter l : word) {
    if (l == Letter::Bstar) ++L;
  }
  const int pairs = cyc ? len : len - 1;
  for (int t = 0; t < pairs; ++t) {
    if (at(t) == Letter::Eminus && at(t + 1) == Letter::B) {
      const bool followed = (cyc || t + 2 < len) && at(t + 2) == Letter::Eplus;
      if (!followed) ++L;
    }
    if (at(t) == Letter::B && at(t + 1) == Letter::Eplus) {
      const bool preceded = (cyc || t - 1 >= 0) && at(t - 1) == Letter::Eminus;
      if (!preceded) ++L;
    }
  }
  return L;
}

/// The degree-2r central element: the signed sum over admissible cyclic
/// words of the trace of the corresponding product of n x n generator
/// matrices, the letters B, B*, E+, E- contributing entries B(p,q), B(q,p),
/// E+(p,q), E-(p,q) respectively.
inline UEAElement build_generator(const SpAlgebra& alg, int r, const Limits& limits = {}) {
  require_arg(r >= 1, "build_generator: order must be at least 1");
  require_guard(limits.unlimited || (alg.rank() <= 2 && r <= 2),
                "build_generator: capped at rank 2, order 2 (override to lift)");
  const int n = alg.rank();
  const int len = 2 * r;
  Limits inner = limits;
  inner.unlimited = true;
  const auto words = enumerate_words(len, WordConvention::cyclic, inner);

  auto entry_id = [&](Letter l, int p, int q) {
    switch (l) {
      case Letter::B: return alg.id_of({'B', p, q});
      case Letter::Bstar: return alg.id_of({'B', q, p});
      case Letter::Eplus: return alg.id_of({'+', p, q});
      case Letter::Eminus: return alg.id_of({'-', p, q});
    }
    throw std::logic_error("unreachable letter");
  };

  UEAElement total(alg);
  for (const auto& word : words) {
    const int L = l_number(word, WordConvention::cyclic);
    const GaussianRational sign(Rational((L % 2 == 0) ? 1 : -1), Rational(0));
    // Trace over index tuples: indices[t] feeds the row of letter t and the
    // column of letter t-1, wrapping at the ends.
    std::vector<int> idx(static_cast<std::size_t>(len), 1);
    auto tuples = [&](auto&& self, int pos) -> void {
      if (pos == len) {
        Monomial m;
        m.reserve(static_cast<std::size_t>(len));
        for (int t = 0; t < len; ++t) {
          const int p = idx[static_cast<std::size_t>(t)];
          const int q = idx[static_cast<std::size_t>((t + 1) % len)];
          m.push_back(entry_id(word[static_cast<std::size_t>(t)], p, q));
        }
        total += UEAElement::from_word(alg, m, sign);
        return;
      }
      for (int v = 1; v <= n; ++v) {
        idx[static_cast<std::size_t>(pos)] = v;
        self(self, pos + 1);
      }
    };
    tuples(tuples, 0);
  }
  return total;
}

/// Normal-form monomial rendered as a product string, "1" for the constant.
inline std::string format_monomial(const SpAlgebra& alg, const Monomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (std::size_t t = 0; t < m.size(); ++t) {
    if (t) out += "*";
    out += alg.name_of(m[t]);
  }
  return out;
}

}  // namespace hwmlab
