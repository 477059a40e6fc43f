#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bricks.hpp"
#include "exactmath.hpp"
#include "parallel.hpp"
#include "partitions.hpp"

namespace circdet {

// The generic n x n circulant has entries a_ij = x_{i+j}, the subscript
// reduced into {1, ..., n}. Monomials of degree n are ExponentVectors.

/// Largest n accepted by the permutation-sweep oracles and the brute-force
/// counting methods.
inline constexpr int kBruteForceMaxN = 12;

// Exponents (b_1, ..., b_n) of a monomial x_1^b_1 ... x_n^b_n with sum n.
class ExponentVector {
 public:
  explicit ExponentVector(std::vector<int> b) : b_(std::move(b)) {
    if (b_.empty()) throw std::invalid_argument("exponent vector must be non-empty");
    int total = 0;
    for (int e : b_) {
      if (e < 0) throw std::invalid_argument("exponents must be non-negative");
      total += e;
    }
    if (total != n()) throw std::invalid_argument("exponents must sum to n");
  }

  int n() const noexcept { return static_cast<int>(b_.size()); }
  const std::vector<int>& exponents() const noexcept { return b_; }
  /// Exponent of x_i, 1-based.
  int operator[](int i) const { return b_.at(static_cast<std::size_t>(i - 1)); }

  /// q = sum i * b_i.
  int weighted_sum() const noexcept {
    int q = 0;
    for (int i = 1; i <= n(); ++i) q += i * b_[static_cast<std::size_t>(i - 1)];
    return q;
  }

  /// mu = <1^b_1 2^b_2 ... n^b_n>, a partition of weighted_sum().
  Partition brick_partition() const { return Partition::from_multiplicities(b_); }

  bool operator==(const ExponentVector&) const = default;
  std::strong_ordering operator<=>(const ExponentVector& o) const { return b_ <=> o.b_; }

 private:
  std::vector<int> b_;
};

inline std::string to_string(const ExponentVector& b) {
  std::string s;
  for (int i = 1; i <= b.n(); ++i) {
    if (i > 1) s += ',';
    s += std::to_string(b[i]);
  }
  return s;
}

inline bool hall_admissible(const ExponentVector& b) { return b.weighted_sum() % b.n() == 0; }

/// All weak compositions of n into n parts, lexicographically ascending.
template <class F>
void for_each_exponent_vector(int n, F&& f) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::vector<int> b(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto& self, std::size_t i, int left) -> void {
    if (i + 1 == b.size()) {
      b[i] = left;
      f(std::as_const(b));
      return;
    }
    for (int e = 0; e <= left; ++e) {
      b[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, n);
}

/// Monomials of per(A): exactly the Hall-admissible exponent vectors.
inline std::vector<ExponentVector> permanent_terms(int n) {
  std::vector<ExponentVector> out;
  for_each_exponent_vector(n, [&](const std::vector<int>& b) {
    int q = 0;
    for (std::size_t i = 0; i < b.size(); ++i) q += static_cast<int>(i + 1) * b[i];
    if (q % n == 0) out.emplace_back(b);
  });
  return out;
}

enum class PMethod { formula, congruence, necklaces, lattice };

inline const char* to_string(PMethod m) {
  switch (m) {
    case PMethod::formula: return "formula";
    case PMethod::congruence: return "congruence";
    case PMethod::necklaces: return "necklaces";
    case PMethod::lattice: return "lattice";
  }
  return "?";
}

namespace detail {

inline void require_brute_range(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > kBruteForceMaxN) throw std::out_of_range("method limited to small n");
}

// (1/n) sum_{d|n} phi(n/d) C(2d-1, d)
inline ExactInt p_by_formula(int n) {
  ExactInt total = 0;
  for (const auto& d : divisors(n)) {
    const long dl = d.get_si();
    total += euler_phi(n / dl) * binomial(2 * dl - 1, dl);
  }
  ExactInt out;
  mpz_divexact_ui(out.get_mpz_t(), total.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

// Non-negative y with y_1 + ... + y_n = n and sum i*y_i = 0 mod n.
inline ExactInt p_by_congruence(int n) {
  require_brute_range(n);
  long count = 0;
  auto rec = [&](auto& self, int i, int left, int residue) -> void {
    if (i == n) {
      if ((residue + n * left) % n == 0) ++count;
      return;
    }
    for (int y = 0; y <= left; ++y) self(self, i + 1, left - y, (residue + i * y) % n);
  };
  rec(rec, 1, n, 0);
  return count;
}

// Orbits of binary strings of length 2n with n ones under rotation, counted
// by keeping the lexicographically least rotation of each orbit.
inline ExactInt p_by_necklaces(int n) {
  require_brute_range(n);
  const unsigned len = 2u * static_cast<unsigned>(n);
  const std::uint32_t mask = (len == 32) ? ~0u : ((1u << len) - 1u);
  long count = 0;
  std::uint32_t s = (1u << n) - 1u;
  while (s <= mask) {
    bool least = true;
    for (unsigned r = 1; r < len && least; ++r) {
      const std::uint32_t rot = ((s << r) | (s >> (len - r))) & mask;
      if (rot < s) least = false;
    }
    if (least) ++count;
    // Gosper's hack: next integer with the same popcount.
    const std::uint32_t c = s & (~s + 1u);
    const std::uint32_t r = s + c;
    if (r == 0 || r > mask) break;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return count;
}

// Tuples n >= w_1 >= ... >= w_{n-1} >= 0 with sum divisible by n.
inline ExactInt p_by_lattice(int n) {
  require_brute_range(n);
  long count = 0;
  auto rec = [&](auto& self, int i, int bound, int residue) -> void {
    if (i == n) {
      if (residue == 0) ++count;
      return;
    }
    for (int w = 0; w <= bound; ++w) self(self, i + 1, w, (residue + w) % n);
  };
  rec(rec, 1, n, 0);
  return count;
}

}  // namespace detail

/// p(n), the number of terms of the permanent, by the chosen method. The
/// brute-force methods accept n <= kBruteForceMaxN.
inline ExactInt p_count(int n, PMethod method = PMethod::formula) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  switch (method) {
    case PMethod::formula: return detail::p_by_formula(n);
    case PMethod::congruence: return detail::p_by_congruence(n);
    case PMethod::necklaces: return detail::p_by_necklaces(n);
    case PMethod::lattice: return detail::p_by_lattice(n);
  }
  throw std::invalid_argument("unknown method");
}

/// Subscript of x in entry (row, col) of the circulant, both 1-based.
inline int circulant_index(int row, int col, int n) noexcept { return (row + col - 1) % n + 1; }

/// Coefficient of x^b in det(A) by direct expansion: signed count of the
/// permutations sigma with prod_i x_{i+sigma(i)} = x^b. Backtracking prunes
/// partial permutations that already exceed some exponent.
inline ExactInt det_coeff_oracle(const ExponentVector& b) {
  const int n = b.n();
  if (n > kBruteForceMaxN) throw std::out_of_range("oracle bound exceeded");
  std::vector<int> need(b.exponents());
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  long total = 0;
  auto rec = [&](auto& self, int row, int parity) -> void {
    if (row > n) {
      total += parity ? -1 : 1;
      return;
    }
    int larger_used = 0;
    for (int v = n; v >= 1; --v) {
      if (used[static_cast<std::size_t>(v)]) {
        ++larger_used;
        continue;
      }
      auto& slot = need[static_cast<std::size_t>(circulant_index(row, v, n) - 1)];
      if (slot == 0) continue;
      --slot;
      used[static_cast<std::size_t>(v)] = true;
      // Inversions added by placing v: earlier (used) values larger than v.
      self(self, row + 1, parity ^ (larger_used & 1));
      used[static_cast<std::size_t>(v)] = false;
      ++slot;
    }
  };
  rec(rec, 1, 0);
  return total;
}

/// The fully expanded determinant: monomial -> nonzero coefficient.
struct TermTable {
  int n = 0;
  std::map<ExponentVector, ExactInt> entries;
};

namespace detail {

// Open-addressing accumulator keyed by a packed exponent vector.
class CoefficientAccumulator {
 public:
  explicit CoefficientAccumulator(std::size_t capacity_log2)
      : mask_((std::size_t{1} << capacity_log2) - 1), keys_(mask_ + 1, kEmpty), values_(mask_ + 1, 0) {}

  void add(std::uint64_t key, std::int64_t delta) {
    std::size_t slot = static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> 20) & mask_;
    while (keys_[slot] != key) {
      if (keys_[slot] == kEmpty) {
        keys_[slot] = key;
        if (++used_ * 2 > mask_) throw std::length_error("coefficient table full");
        break;
      }
      slot = (slot + 1) & mask_;
    }
    values_[slot] += delta;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i <= mask_; ++i)
      if (keys_[i] != kEmpty) f(keys_[i], values_[i]);
  }

 private:
  static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
  std::size_t mask_;
  std::size_t used_ = 0;
  std::vector<std::uint64_t> keys_;
  std::vector<std::int64_t> values_;
};

// Sweeps all permutations with sigma(1) = first via Heap's algorithm. Each
// step is one transposition, so the sign flips and the packed monomial
// changes in two digits.
inline void sweep_with_first(int n, int first, const std::vector<std::uint64_t>& stride, CoefficientAccumulator& acc) {
  std::vector<int> perm;  // values for rows 2..n
  for (int v = 1; v <= n; ++v)
    if (v != first) perm.push_back(v);
  const std::size_t m = perm.size();
  auto digit = [&](std::size_t pos) { return stride[static_cast<std::size_t>(circulant_index(static_cast<int>(pos) + 2, perm[pos], n))]; };

  std::uint64_t key = stride[static_cast<std::size_t>(circulant_index(1, first, n))];
  for (std::size_t p = 0; p < m; ++p) key += digit(p);
  std::int64_t sign = ((first - 1) % 2 == 0) ? 1 : -1;
  acc.add(key, sign);

  std::vector<std::size_t> c(m, 0);
  std::size_t i = 1;
  while (i < m) {
    if (c[i] < i) {
      const std::size_t a = (i % 2 == 0) ? 0 : c[i];
      key -= digit(a) + digit(i);
      std::swap(perm[a], perm[i]);
      key += digit(a) + digit(i);
      sign = -sign;
      acc.add(key, sign);
      ++c[i];
      i = 1;
    } else {
      c[i] = 0;
      ++i;
    }
  }
}

}  // namespace detail

/// Expands det(A) over all n! permutations, combining like terms. The sweep
/// is split by sigma(1) across `jobs` threads; integer accumulation makes the
/// result independent of the split.
inline TermTable expand_det(int n, int jobs = 1) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > kBruteForceMaxN) throw std::out_of_range("oracle bound exceeded");
  // Packed key: x_1's exponent is the most significant base-(n+1) digit, so
  // key order equals lexicographic order of exponent vectors.
  std::vector<std::uint64_t> stride(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t s = 1;
  for (int t = n; t >= 1; --t) {
    stride[static_cast<std::size_t>(t)] = s;
    s *= static_cast<std::uint64_t>(n) + 1;
  }
  const std::size_t capacity_log2 = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(p_count(n).get_si()))) + 2;

  const int workers = std::clamp(jobs, 1, n);
  std::vector<std::map<std::uint64_t, std::int64_t>> partial(static_cast<std::size_t>(workers));
  parallel_for(static_cast<std::size_t>(workers), workers, [&](std::size_t w) {
    detail::CoefficientAccumulator acc(capacity_log2);
    for (int first = static_cast<int>(w) + 1; first <= n; first += workers) detail::sweep_with_first(n, first, stride, acc);
    acc.for_each([&](std::uint64_t key, std::int64_t v) { partial[w][key] += v; });
  });

  std::map<std::uint64_t, std::int64_t> merged;
  for (const auto& part : partial)
    for (const auto& [key, v] : part) merged[key] += v;

  TermTable table{n, {}};
  for (const auto& [key, v] : merged) {
    if (v == 0) continue;
    std::vector<int> b(static_cast<std::size_t>(n));
    std::uint64_t rest = key;
    for (int t = n; t >= 1; --t) {
      b[static_cast<std::size_t>(t - 1)] = static_cast<int>(rest % (static_cast<std::uint64_t>(n) + 1));
      rest /= static_cast<std::uint64_t>(n) + 1;
    }
    table.entries.emplace_hint(table.entries.end(), ExponentVector(std::move(b)), ExactInt(static_cast<long>(v)));
  }
  return table;
}

/// The determinant coefficient as the exact rational sum
/// sum over lambda |- q with every part divisible by n of
/// (-1)^(k(mu)-k(lambda)) w(lambda,mu) n^k(lambda) / z_lambda,
/// where p_lambda at the n-th roots of unity is n^k(lambda) or 0.
inline ExactRat det_coeff_er_sum(const ExponentVector& b) {
  const int n = b.n();
  const int q = b.weighted_sum();
  if (q % n != 0) return 0;
  const Partition mu = b.brick_partition();
  FillingWeights weights(mu);
  ExactRat total = 0;
  for (const auto& lambda : partitions_of(q, n)) {
    ExactInt w = weights(lambda);
    if (w == 0) continue;
    w *= pow(ExactInt(n), static_cast<unsigned long>(lambda.length()));
    if ((mu.length() - lambda.length()) % 2 != 0) w = -w;
    total += make_rat(w, z_of(lambda));
  }
  return total;
}

/// Coefficient of x^b via the power-sum expansion of m_mu. Agrees with
/// det_coeff_oracle up to the global sign epsilon(n).
inline ExactInt det_coeff_er(const ExponentVector& b) {
  const ExactRat s = det_coeff_er_sum(b);
  if (!is_integer(s)) throw std::logic_error("non-integral determinant coefficient for b = " + to_string(b));
  return ExactInt(s.get_num());
}

/// epsilon(n) with det_coeff_er = epsilon(n) * det_coeff_oracle, fixed by
/// comparing the coefficient of x_1^n, which is nonzero for every n.
inline int epsilon(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::vector<int> b(static_cast<std::size_t>(n), 0);
  b[0] = n;
  const ExponentVector probe(std::move(b));
  const ExactInt er = det_coeff_er(probe);
  const ExactInt oracle = det_coeff_oracle(probe);
  if (er == oracle) return 1;
  if (er == -oracle) return -1;
  throw std::logic_error("er and oracle disagree beyond sign at x_1^n");
}

enum class DMethod { er, oracle };

inline const char* to_string(DMethod m) { return m == DMethod::er ? "er" : "oracle"; }

/// d(n), the number of terms of det(A).
inline ExactInt d_count(int n, DMethod method = DMethod::er, int jobs = 1) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (method == DMethod::oracle) return static_cast<unsigned long>(expand_det(n, jobs).entries.size());
  const auto terms = permanent_terms(n);
  std::vector<char> nonzero(terms.size(), 0);
  parallel_for(terms.size(), jobs, [&](std::size_t i) { nonzero[i] = det_coeff_er(terms[i]) != 0; });
  return static_cast<unsigned long>(std::count(nonzero.begin(), nonzero.end(), 1));
}

}  // namespace circdet
