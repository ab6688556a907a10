#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "hwmlab/guards.hpp"

namespace hwmlab {

/// A K-type signature for U(n): a weakly decreasing integer tuple. Entries
/// may be negative; determinant shifts reduce every computation here to
/// honest partitions.
using Signature = std::vector<std::int64_t>;

inline void require_signature(const Signature& s, const char* what) {
  require_arg(!s.empty(), std::string(what) + ": empty signature");
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    require_arg(s[i] >= s[i + 1], std::string(what) + ": signature must be weakly decreasing");
  }
}

inline std::int64_t signature_sum(const Signature& s) {
  return std::accumulate(s.begin(), s.end(), std::int64_t{0});
}

namespace detail {

/// Counts Littlewood-Richardson skew tableaux of shape sigma/mu with content
/// nu. All three are partitions padded to a common length. Semistandard row
/// and column conditions are enforced cell by cell in reverse reading order
/// (rows top to bottom, right to left within a row), which is exactly the
/// order in which the lattice-word condition can be checked incrementally.
class LrCounter {
 public:
  LrCounter(const Signature& sigma, const Signature& mu, const Signature& nu)
      : sigma_(sigma), mu_(mu), nu_(nu), rows_(sigma.size()) {
    grid_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) grid_[r].assign(static_cast<std::size_t>(sigma_[r]), 0);
    counts_.assign(nu_.size() + 1, 0);
  }

  std::int64_t count() {
    // Fast paths: a single-row or single-column content makes the count a
    // strip test (Pieri rules).
    std::size_t nonzero = 0;
    for (std::int64_t part : nu_) {
      if (part > 0) ++nonzero;
    }
    if (nonzero == 0) return 1;  // empty content, shape must match exactly
    if (nonzero == 1) return horizontal_strip() ? 1 : 0;
    bool all_ones = true;
    for (std::int64_t part : nu_) {
      if (part > 1) all_ones = false;
    }
    if (all_ones) return vertical_strip() ? 1 : 0;
    total_ = 0;
    fill_cell(0, first_col(0));
    return total_;
  }

 private:
  bool horizontal_strip() const {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r + 1 < rows_ && sigma_[r + 1] > mu_[r]) return false;
    }
    return true;
  }
  bool vertical_strip() const {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (sigma_[r] - mu_[r] > 1) return false;
    }
    return true;
  }

  // Rightmost fillable column of row r, or -1 when the row is empty.
  std::int64_t first_col(std::size_t r) const { return sigma_[r] - 1; }

  void fill_cell(std::size_t r, std::int64_t c) {
    while (r < rows_ && c < mu_[r]) {
      ++r;
      if (r < rows_) c = first_col(r);
    }
    if (r == rows_) {
      ++total_;
      return;
    }
    const int max_v = static_cast<int>(nu_.size());
    for (int v = 1; v <= max_v; ++v) {
      if (counts_[v] >= nu_[v - 1]) continue;                    // content bound
      if (v > 1 && counts_[v - 1] <= counts_[v]) continue;       // lattice word
      if (c + 1 < sigma_[r] && v > grid_[r][c + 1]) continue;    // weak rows
      if (r > 0 && c >= mu_[r - 1] && c < sigma_[r - 1] && v <= grid_[r - 1][c]) continue;  // strict cols
      grid_[r][c] = v;
      ++counts_[v];
      fill_cell(r, c - 1);
      --counts_[v];
      grid_[r][c] = 0;
    }
  }

  const Signature& sigma_;
  const Signature& mu_;
  const Signature& nu_;
  std::size_t rows_;
  std::vector<std::vector<int>> grid_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

inline std::int64_t count_lr_raw(const Signature& sigma, const Signature& mu, const Signature& nu) {
  return LrCounter(sigma, mu, nu).count();
}

/// Memoized front end. The key packs all three partitions; the table is
/// shared across calls and guarded by a mutex.
inline std::int64_t count_lr(const Signature& sigma, const Signature& mu, const Signature& nu) {
  static std::map<std::vector<std::int64_t>, std::int64_t> memo;
  static std::mutex memo_mutex;
  std::vector<std::int64_t> key;
  key.reserve(sigma.size() + mu.size() + nu.size() + 2);
  key.insert(key.end(), sigma.begin(), sigma.end());
  key.push_back(-1);
  key.insert(key.end(), mu.begin(), mu.end());
  key.push_back(-1);
  key.insert(key.end(), nu.begin(), nu.end());
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const std::int64_t value = count_lr_raw(sigma, mu, nu);
  {
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(std::move(key), value);
  }
  return value;
}

}  // namespace detail

/// Tensor product decomposition for U(n): rho_mu (x) rho_nu = sum of
/// c^sigma_{mu,nu} rho_sigma. Signatures may be negative; both factors are
/// shifted to partitions by a determinant twist and the twist is added back
/// to every output signature.
inline std::map<Signature, std::int64_t> lr_coefficients(const Signature& mu, const Signature& nu) {
  require_signature(mu, "lr_coefficients mu");
  require_signature(nu, "lr_coefficients nu");
  require_arg(mu.size() == nu.size(), "lr_coefficients: signatures must share a rank");
  const std::size_t n = mu.size();

  const std::int64_t shift_mu = mu.back();
  const std::int64_t shift_nu = nu.back();
  Signature pmu(n), pnu(n);
  for (std::size_t i = 0; i < n; ++i) {
    pmu[i] = mu[i] - shift_mu;
    pnu[i] = nu[i] - shift_nu;
  }
  const std::int64_t total = signature_sum(pmu) + signature_sum(pnu);

  std::map<Signature, std::int64_t> out;
  Signature sigma(n, 0);
  const std::int64_t cap = pmu[0] + pnu[0];
  // Enumerate weakly decreasing candidates containing pmu with the right size.
  auto recurse = [&](auto&& self, std::size_t row, std::int64_t remaining) -> void {
    if (row == n) {
      if (remaining != 0) return;
      const std::int64_t c = detail::count_lr(sigma, pmu, pnu);
      if (c > 0) {
        Signature shifted(n);
        for (std::size_t i = 0; i < n; ++i) shifted[i] = sigma[i] + shift_mu + shift_nu;
        out[shifted] = c;
      }
      return;
    }
    const std::int64_t hi = std::min<std::int64_t>(row == 0 ? cap : sigma[row - 1], pmu[row] + remaining);
    for (std::int64_t v = pmu[row]; v <= hi; ++v) {
      if (remaining - (v - pmu[row]) < 0) break;
      sigma[row] = v;
      self(self, row + 1, remaining - (v - pmu[row]));
    }
    sigma[row] = pmu[row];
  };
  recurse(recurse, 0, total - signature_sum(pmu));
  return out;
}

/// The multiplicity-free branching of the symmetric algebra on the span of
/// the raising operators: one copy of rho_b for every partition b with all
/// parts even, at most n parts, and size at most 2 * max_degree. The empty
/// partition (degree zero) is included.
inline std::map<Signature, std::int64_t> upplus_decomposition(int n, int max_degree) {
  require_arg(n >= 1, "upplus_decomposition: rank must be at least 1");
  require_arg(max_degree >= 0, "upplus_decomposition: degree must be nonnegative");
  std::map<Signature, std::int64_t> out;
  Signature b(static_cast<std::size_t>(n), 0);
  auto recurse = [&](auto&& self, int row, std::int64_t budget, std::int64_t prev) -> void {
    out[b] = 1;
    if (row == n) return;
    for (std::int64_t v = 2; v <= std::min<std::int64_t>(prev, budget); v += 2) {
      b[static_cast<std::size_t>(row)] = v;
      self(self, row + 1, budget - v, v);
      b[static_cast<std::size_t>(row)] = 0;
    }
  };
  recurse(recurse, 0, 2 * static_cast<std::int64_t>(max_degree),
          2 * static_cast<std::int64_t>(max_degree));
  return out;
}

/// Multiplicity of the K-type sigma in the generalized Verma module with
/// k-dominant integral highest weight lambda: the sum over even partitions b
/// of size |sigma| - |lambda| of c^sigma_{lambda, b}. The degree is forced by
/// the size difference; max_degree must be at least that forced degree.
inline std::int64_t verma_ktype_multiplicity(const Signature& lambda, const Signature& sigma,
                                             int max_degree) {
  require_signature(lambda, "verma_ktype_multiplicity lambda");
  require_signature(sigma, "verma_ktype_multiplicity sigma");
  require_arg(lambda.size() == sigma.size(), "verma_ktype_multiplicity: rank mismatch");
  const std::int64_t diff = signature_sum(sigma) - signature_sum(lambda);
  if (diff < 0 || (diff & 1)) return 0;
  const std::int64_t degree = diff / 2;
  require_arg(degree <= max_degree,
              "verma_ktype_multiplicity: max_degree below the degree forced by the weights");

  const std::size_t n = lambda.size();
  const std::int64_t shift = std::min<std::int64_t>(lambda.back(), sigma.back());
  Signature plambda(n), psigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    plambda[i] = lambda[i] - shift;
    psigma[i] = sigma[i] - shift;
  }

  std::int64_t mult = 0;
  Signature b(n, 0);
  auto recurse = [&](auto&& self, std::size_t row, std::int64_t remaining, std::int64_t prev) -> void {
    if (remaining == 0) {
      mult += detail::count_lr(psigma, plambda, b);
      return;
    }
    if (row == n) return;
    for (std::int64_t v = 2; v <= std::min(prev, std::min(remaining, psigma[0])); v += 2) {
      b[row] = v;
      self(self, row + 1, remaining - v, v);
      b[row] = 0;
    }
  };
  recurse(recurse, 0, diff, diff);
  return mult;
}

/// j(lambda): the number of entries with the same parity as lambda_1.
/// Stable under the g map, and the exponent of the wedge factor in the
/// distinguished K-type.
inline int j_invariant(const Signature& lambda) {
  require_signature(lambda, "j_invariant");
  int j = 0;
  for (std::int64_t v : lambda) {
    if (((v - lambda[0]) & 1) == 0) ++j;
  }
  return j;
}

/// One application of the g map.
///
/// Step 1 pulls each entry up to the previous original entry when the gap is
/// even and to one below it when the gap is odd. Step 2 collects the indices
/// where step 1 moved strictly below the previous original entry, drops the
/// largest such index if there is an odd number of them, and adds one on the
/// rest. Iterating n-1 times reaches the fixed shape
/// (lambda_1^{j(lambda)}, (lambda_1 - 1)^{n - j(lambda)}).
inline Signature g_map(const Signature& lambda) {
  require_signature(lambda, "g_map");
  const std::size_t n = lambda.size();
  Signature omega = lambda;
  for (std::size_t i = 1; i < n; ++i) {
    const std::int64_t gap = lambda[i - 1] - lambda[i];
    omega[i] = ((gap & 1) == 0) ? lambda[i - 1] : lambda[i - 1] - 1;
  }
  std::vector<std::size_t> moved;
  for (std::size_t i = 1; i < n; ++i) {
    if (omega[i] != lambda[i - 1]) moved.push_back(i);
  }
  if (moved.size() % 2 == 1) moved.pop_back();
  for (std::size_t i : moved) ++omega[i];
  return omega;
}

inline Signature g_iterate(const Signature& lambda, int times) {
  require_arg(times >= 0, "g_iterate: negative iteration count");
  Signature s = lambda;
  for (int k = 0; k < times; ++k) s = g_map(s);
  return s;
}

/// The distinguished K-type det^{lambda_1 - 1} (x) wedge^{j(lambda)}:
/// as a signature, lambda_1 repeated j times then lambda_1 - 1.
inline Signature distinguished_ktype(const Signature& lambda) {
  const int j = j_invariant(lambda);
  Signature s(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    s[i] = (static_cast<int>(i) < j) ? lambda[0] : lambda[0] - 1;
  }
  return s;
}

/// Multiplicity of the wedge-power K-type tau_{(1^j)} in the degenerate
/// principal series slice indexed by the sign tuple eps: one when the number
/// of nontrivial signs equals j, zero otherwise.
inline int principal_series_multiplicity(const std::vector<int>& eps, int j) {
  for (int e : eps) require_arg(e == 0 || e == 1, "principal series signs must be 0 or 1");
  require_arg(j >= 0 && j <= static_cast<int>(eps.size()),
              "principal series wedge exponent out of range");
  const int total = std::accumulate(eps.begin(), eps.end(), 0);
  return total == j ? 1 : 0;
}

}  // namespace hwmlab
