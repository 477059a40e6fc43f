#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "exactmath.hpp"
#include "partitions.hpp"

namespace circdet {

// A multiset of bricks; count(i) is the number of bricks of length i.
// Stored as counts()[i-1] with trailing zeros trimmed, so the representation
// is unique and defaulted comparison is structural.
class BrickMultiset {
 public:
  BrickMultiset() = default;

  explicit BrickMultiset(std::vector<int> counts) : counts_(std::move(counts)) {
    for (int c : counts_)
      if (c < 0) throw std::invalid_argument("brick counts must be non-negative");
    while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
  }

  static BrickMultiset from_partition(const Partition& mu) { return BrickMultiset(mu.multiplicities()); }

  int count(int length) const noexcept {
    return (length >= 1 && length <= max_length()) ? counts_[static_cast<std::size_t>(length - 1)] : 0;
  }
  int max_length() const noexcept { return static_cast<int>(counts_.size()); }
  const std::vector<int>& counts() const noexcept { return counts_; }

  int mass() const noexcept {
    int m = 0;
    for (int i = 1; i <= max_length(); ++i) m += i * count(i);
    return m;
  }
  int size() const noexcept {
    int s = 0;
    for (int c : counts_) s += c;
    return s;
  }
  bool empty() const noexcept { return counts_.empty(); }

  Partition to_partition() const { return Partition::from_multiplicities(counts_); }

  bool operator==(const BrickMultiset&) const = default;
  std::strong_ordering operator<=>(const BrickMultiset& o) const { return counts_ <=> o.counts_; }

 private:
  std::vector<int> counts_;
};

/// Sum over all distinct left-to-right arrangements of `bricks` in a row of
/// the length of the rightmost brick. Closed form: multinomial(r; counts) *
/// row_length / r, with r the number of bricks; the division is exact.
inline ExactInt row_weight_sum(int row_length, const BrickMultiset& bricks) {
  if (row_length < 1) throw std::invalid_argument("row length must be positive");
  if (bricks.mass() != row_length) throw std::invalid_argument("bricks do not fill row");
  const int r = bricks.size();
  ExactInt w = multinomial(r, bricks.counts()) * row_length;
  mpz_divexact_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(r));
  return w;
}

namespace detail {

// Sub-multisets of a fixed brick multiset, encoded in mixed radix: digit t is
// the count of the t-th distinct brick length (lengths descending), radix
// max_count + 1. Subtraction of codes is multiset difference when the
// subtrahend is contained in the minuend.
class SubmultisetSpace {
 public:
  explicit SubmultisetSpace(const BrickMultiset& full) {
    std::uint64_t stride = 1;
    for (int len = full.max_length(); len >= 1; --len) {
      const int c = full.count(len);
      if (c == 0) continue;
      lengths_.push_back(len);
      radix_.push_back(static_cast<std::uint64_t>(c) + 1);
      stride_.push_back(stride);
      if (stride > UINT64_MAX / (static_cast<std::uint64_t>(c) + 1))
        throw std::overflow_error("brick multiset too large to encode");
      stride *= static_cast<std::uint64_t>(c) + 1;
    }
    full_code_ = stride - 1;
  }

  std::uint64_t full_code() const noexcept { return full_code_; }

  int digit(std::uint64_t code, std::size_t t) const noexcept {
    return static_cast<int>((code / stride_[t]) % radix_[t]);
  }

  BrickMultiset decode(std::uint64_t code) const {
    std::vector<int> counts(lengths_.empty() ? 0 : static_cast<std::size_t>(lengths_.front()), 0);
    for (std::size_t t = 0; t < lengths_.size(); ++t) counts[static_cast<std::size_t>(lengths_[t] - 1)] = digit(code, t);
    return BrickMultiset(std::move(counts));
  }

  /// Calls f(code) for every sub-multiset of `within` whose mass is `mass`.
  template <class F>
  void for_each_with_mass(std::uint64_t within, int mass, F&& f) const {
    std::vector<int> avail(lengths_.size());
    std::vector<int> tail_mass(lengths_.size() + 1, 0);
    for (std::size_t t = lengths_.size(); t-- > 0;) {
      avail[t] = digit(within, t);
      tail_mass[t] = tail_mass[t + 1] + avail[t] * lengths_[t];
    }
    visit(0, mass, 0, avail, tail_mass, f);
  }

 private:
  template <class F>
  void visit(std::size_t t, int mass, std::uint64_t code, const std::vector<int>& avail,
             const std::vector<int>& tail_mass, F& f) const {
    if (mass == 0) {
      f(code);
      return;
    }
    if (t == lengths_.size() || tail_mass[t] < mass) return;
    const int len = lengths_[t];
    const int hi = std::min(avail[t], mass / len);
    for (int c = hi; c >= 0; --c) {
      const int rest = mass - c * len;
      if (tail_mass[t + 1] < rest) break;
      visit(t + 1, rest, code + static_cast<std::uint64_t>(c) * stride_[t], avail, tail_mass, f);
    }
  }

  std::vector<int> lengths_;
  std::vector<std::uint64_t> radix_;
  std::vector<std::uint64_t> stride_;
  std::uint64_t full_code_ = 0;
};

}  // namespace detail

// w(lambda, mu) for a fixed mu, memoized across every lambda queried. Rows of
// lambda are positionally distinct (equal-length rows are not identified).
// The recursion places row after row; the memo key is (remaining rows,
// remaining bricks), so lambdas sharing a tail of rows share work.
class FillingWeights {
 public:
  explicit FillingWeights(const Partition& mu) : mu_(mu), space_(BrickMultiset::from_partition(mu)) {}

  const Partition& mu() const noexcept { return mu_; }

  ExactInt operator()(const Partition& lambda) {
    if (lambda.size() != mu_.size()) throw std::invalid_argument("sizes differ");
    if (lambda.empty()) return 1;
    // Intern every suffix of lambda's rows.
    const auto& rows = lambda.parts();
    std::vector<int> ids(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
      std::vector<int> suffix(rows.begin() + static_cast<std::ptrdiff_t>(j), rows.end());
      auto [it, inserted] = suffix_ids_.try_emplace(std::move(suffix), static_cast<int>(suffix_ids_.size()));
      ids[j] = it->second;
    }
    return weight(rows, ids, 0, space_.full_code());
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<int, std::uint64_t>& k) const noexcept {
      return std::hash<std::uint64_t>{}(k.second * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(k.first));
    }
  };

  const ExactInt& row_weight(std::uint64_t code, int length) {
    auto it = row_cache_.find(code);
    if (it == row_cache_.end()) it = row_cache_.emplace(code, row_weight_sum(length, space_.decode(code))).first;
    return it->second;
  }

  ExactInt weight(const std::vector<int>& rows, const std::vector<int>& ids, std::size_t j, std::uint64_t remaining) {
    if (j + 1 == rows.size()) return row_weight(remaining, rows[j]);
    const auto key = std::make_pair(ids[j], remaining);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ExactInt total = 0;
    space_.for_each_with_mass(remaining, rows[j], [&](std::uint64_t sub) {
      ExactInt tail = weight(rows, ids, j + 1, remaining - sub);
      if (tail != 0) total += row_weight(sub, rows[j]) * tail;
    });
    memo_.emplace(key, total);
    return total;
  }

  Partition mu_;
  detail::SubmultisetSpace space_;
  std::map<std::vector<int>, int> suffix_ids_;
  std::unordered_map<std::pair<int, std::uint64_t>, ExactInt, KeyHash> memo_;
  std::unordered_map<std::uint64_t, ExactInt> row_cache_;
};

/// w(lambda, mu): total weight of all distinct fillings of lambda by mu.
inline ExactInt filling_weight(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw std::invalid_argument("sizes differ");
  return FillingWeights(mu)(lambda);
}

// An equivalence class of fillings of lambda by mu under rearranging bricks
// within a row and swapping the brick sets of equal-length rows. rows[j] is
// the brick multiset in row j; within every run of equal-length rows the
// multisets are non-increasing, which makes the representation canonical.
struct FillingClass {
  Partition lambda;
  Partition mu;
  std::vector<BrickMultiset> rows;

  /// Number of bricks of the given length in row j (0-based row).
  int alpha(int length, std::size_t row) const { return rows.at(row).count(length); }
  int bricks_in_row(std::size_t row) const { return rows.at(row).size(); }

  /// Partition of beta_length recording how the rows of that length group
  /// into sets with identical brick multisets. Empty if no row has it.
  Partition gamma(int length) const {
    std::vector<int> groups;
    for (std::size_t j = 0; j < rows.size();) {
      std::size_t e = j;
      while (e < rows.size() && lambda[e] == lambda[j] && rows[e] == rows[j]) ++e;
      if (lambda[j] == length) groups.push_back(static_cast<int>(e - j));
      j = e;
    }
    return Partition(std::move(groups));
  }

  /// Union of all gamma(i); a partition of k(lambda).
  Partition delta() const {
    std::vector<int> all;
    for (int len = 1; len <= lambda.size(); ++len) {
      if (lambda.multiplicity(len) == 0) continue;
      const Partition g_part = gamma(len);
      const auto& g = g_part.parts();
      all.insert(all.end(), g.begin(), g.end());
    }
    return Partition(std::move(all));
  }

  bool operator==(const FillingClass&) const = default;
};

/// All equivalence classes of fillings of lambda by mu, each exactly once.
inline std::vector<FillingClass> enumerate_filling_classes(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw std::invalid_argument("sizes differ");
  std::vector<FillingClass> out;
  const detail::SubmultisetSpace space(BrickMultiset::from_partition(mu));
  const auto& rows = lambda.parts();
  std::vector<std::uint64_t> chosen(rows.size());

  auto rec = [&](auto& self, std::size_t j, std::uint64_t remaining) -> void {
    if (j == rows.size()) {
      FillingClass cls{lambda, mu, {}};
      cls.rows.reserve(rows.size());
      for (auto c : chosen) cls.rows.push_back(space.decode(c));
      // Canonical order within runs of equal-length rows.
      for (std::size_t s = 0; s < rows.size();) {
        std::size_t e = s;
        while (e < rows.size() && rows[e] == rows[s]) ++e;
        std::sort(cls.rows.begin() + static_cast<std::ptrdiff_t>(s), cls.rows.begin() + static_cast<std::ptrdiff_t>(e),
                  std::greater<>());
        s = e;
      }
      out.push_back(std::move(cls));
      return;
    }
    const bool same_as_prev = j > 0 && rows[j] == rows[j - 1];
    space.for_each_with_mass(remaining, rows[j], [&](std::uint64_t sub) {
      if (same_as_prev && sub > chosen[j - 1]) return;
      chosen[j] = sub;
      self(self, j + 1, remaining - sub);
    });
  };
  if (rows.empty()) {
    if (mu.empty()) out.push_back(FillingClass{lambda, mu, {}});
    return out;
  }
  rec(rec, 0, space.full_code());
  return out;
}

/// Total weight of the fillings in a class:
/// prod_i beta_i!/gamma(i)! * prod_j row_weight_sum(lambda_j, row j).
inline ExactInt class_weight_sum(const FillingClass& cls) {
  ExactInt total = 1;
  for (int len = 1; len <= cls.lambda.size(); ++len) {
    const int beta = cls.lambda.multiplicity(len);
    if (beta == 0) continue;
    total *= multinomial(beta, cls.gamma(len).parts());
  }
  for (std::size_t j = 0; j < cls.rows.size(); ++j) total *= row_weight_sum(cls.lambda[j], cls.rows[j]);
  return total;
}

/// Coefficients of m_mu in the power-sum basis:
/// m_mu = sum_lambda (-1)^(k(mu)-k(lambda)) w(lambda,mu)/z_lambda p_lambda.
/// Zero coefficients are omitted.
inline std::map<Partition, ExactRat> m_to_p_expansion(const Partition& mu) {
  std::map<Partition, ExactRat> out;
  FillingWeights weights(mu);
  for (const auto& lambda : partitions_of(mu.size())) {
    ExactInt w = weights(lambda);
    if (w == 0) continue;
    if ((mu.length() - lambda.length()) % 2 != 0) w = -w;
    out.emplace(lambda, make_rat(w, z_of(lambda)));
  }
  return out;
}

/// m_mu evaluated at (z_1, ..., z_N, 0, 0, ...): sum over distinct
/// assignments of mu's parts to distinct variables.
inline ExactInt evaluate_monomial_symmetric(const Partition& mu, std::span<const ExactInt> point) {
  if (static_cast<std::size_t>(mu.length()) > point.size()) return 0;
  std::vector<int> exps(point.size(), 0);
  std::copy(mu.parts().begin(), mu.parts().end(), exps.begin());
  std::sort(exps.begin(), exps.end());
  ExactInt total = 0;
  do {
    ExactInt term = 1;
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i]) term *= pow(point[i], static_cast<unsigned long>(exps[i]));
    total += term;
  } while (std::next_permutation(exps.begin(), exps.end()));
  return total;
}

inline ExactInt evaluate_power_sum(const Partition& lambda, std::span<const ExactInt> point) {
  ExactInt prod = 1;
  for (int part : lambda.parts()) {
    ExactInt s = 0;
    for (const auto& z : point) s += pow(z, static_cast<unsigned long>(part));
    prod *= s;
  }
  return prod;
}

inline ExactRat evaluate_m_via_power_sums(const Partition& mu, std::span<const ExactInt> point) {
  ExactRat total = 0;
  for (const auto& [lambda, c] : m_to_p_expansion(mu)) total += c * ExactRat(evaluate_power_sum(lambda, point));
  return total;
}

struct M2pCounterexample {
  Partition mu;
  std::vector<ExactInt> point;
  ExactInt direct;
  ExactRat expanded;
};

struct M2pReport {
  int q = 0;
  int checks = 0;
  std::optional<M2pCounterexample> counterexample;
  bool agreed() const noexcept { return !counterexample.has_value(); }
};

/// Checks the m->p expansion against direct evaluation for every mu of q at
/// `trials` random integer points in [-4, 4]^q.
inline M2pReport verify_m2p(int q, int trials, std::uint64_t seed) {
  if (q < 1 || q > 8) throw std::invalid_argument("verify_m2p requires 1 <= q <= 8");
  M2pReport report{q, 0, std::nullopt};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-4, 4);
  for (const auto& mu : partitions_of(q)) {
    const auto expansion = m_to_p_expansion(mu);
    for (int t = 0; t < trials; ++t) {
      std::vector<ExactInt> point(static_cast<std::size_t>(q));
      for (auto& z : point) z = coord(rng);
      const ExactInt direct = evaluate_monomial_symmetric(mu, point);
      ExactRat expanded = 0;
      for (const auto& [lambda, c] : expansion) expanded += c * ExactRat(evaluate_power_sum(lambda, point));
      ++report.checks;
      if (expanded != ExactRat(direct)) {
        report.counterexample = M2pCounterexample{mu, point, direct, expanded};
        return report;
      }
    }
  }
  return report;
}

}  // namespace circdet
