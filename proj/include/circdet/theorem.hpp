#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bricks.hpp"
#include "circulant.hpp"
#include "exactmath.hpp"
#include "partitions.hpp"

namespace circdet {

// Numerical certification of the non-cancellation argument for prime-power
// n. For an admissible b, the determinant coefficient splits into one
// contribution per filling class of every lambda |- q whose parts are all
// multiples of n. The single class of lambda = <q> is the base class; its
// contribution must have strictly smaller p-adic valuation than every other
// class for the total to be nonzero.

/// Contribution of lambda = <q>: (-1)^(k(mu)-1) n! / (b_1! ... b_n!).
inline ExactRat q_class_contribution(const ExponentVector& b) {
  const int n = b.n();
  if (b.weighted_sum() % n != 0) throw std::invalid_argument("no contribution");
  ExactInt value = multinomial(n, b.exponents());
  const int k_mu = b.brick_partition().length();
  if ((k_mu - 1) % 2 != 0) value = -value;
  return value;
}

/// Contribution of one filling class:
/// (-1)^(k(mu)-k) n^k / delta! * prod_j (r_j - 1)! / (alpha_1j! ... alpha_nj!).
inline ExactRat class_contribution(const FillingClass& cls, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!cls.lambda.all_parts_divisible_by(n)) throw std::invalid_argument("lambda has a part not divisible by n");
  const int k = cls.lambda.length();
  ExactInt num = pow(ExactInt(n), static_cast<unsigned long>(k));
  ExactInt den = factorial_of_partition(cls.delta());
  for (std::size_t j = 0; j < cls.rows.size(); ++j) {
    const auto& row = cls.rows[j];
    num *= factorial(row.size() - 1);
    for (int c : row.counts()) den *= factorial(c);
  }
  if ((cls.mu.length() - k) % 2 != 0) num = -num;
  return make_rat(num, den);
}

struct RatioFactors {
  ExactRat first;   // (1/delta!) prod_i multinomial(b_i; alpha_i1, ..., alpha_ik)
  ExactRat second;  // n^(k-1) / ((n-1)...(n-k+1) multinomial(n-k; r_1-1, ..., r_k-1))
};

/// Splits |class_contribution / q_class_contribution| into the two factors
/// the valuation argument bounds separately.
inline RatioFactors ratio_factors(const FillingClass& cls, const ExponentVector& b) {
  const int n = b.n();
  const int k = cls.lambda.length();
  if (k == 1) throw std::invalid_argument("ratio undefined for the base class");
  if (!cls.lambda.all_parts_divisible_by(n)) throw std::invalid_argument("lambda has a part not divisible by n");

  ExactInt first_num = 1;
  std::vector<int> column(cls.rows.size());
  for (int len = 1; len <= n; ++len) {
    for (std::size_t j = 0; j < cls.rows.size(); ++j) column[j] = cls.alpha(len, j);
    first_num *= multinomial(b[len], column);
  }
  const ExactRat first = make_rat(first_num, factorial_of_partition(cls.delta()));

  std::vector<int> r_minus_one(cls.rows.size());
  for (std::size_t j = 0; j < cls.rows.size(); ++j) r_minus_one[j] = cls.bricks_in_row(j) - 1;
  ExactInt falling = 1;
  for (int t = 1; t < k; ++t) falling *= n - t;
  const ExactRat second = make_rat(pow(ExactInt(n), static_cast<unsigned long>(k - 1)),
                                   falling * multinomial(n - k, r_minus_one));
  return {first, second};
}

struct ClassRecord {
  Partition lambda;
  std::size_t class_index = 0;  // position in enumerate_filling_classes(lambda, mu)
  FillingClass cls;
  ExactRat contribution;
  int valuation = 0;
  bool base = false;  // lambda = <q>
};

struct DominanceReport {
  int n = 0;
  long prime = 0;
  ExponentVector b;
  int q_class_valuation = 0;
  std::vector<ClassRecord> class_records;
  bool passed = false;

  ExactRat total() const {
    ExactRat s = 0;
    for (const auto& r : class_records) s += r.contribution;
    return s;
  }

  /// Smallest valuation among the non-base classes, if any exist.
  std::optional<int> min_other_valuation() const {
    std::optional<int> best;
    for (const auto& r : class_records)
      if (!r.base && (!best || r.valuation < *best)) best = r.valuation;
    return best;
  }
};

/// Enumerates every eligible lambda and filling class for b and checks that
/// the base class has strictly minimal p-adic valuation. n = 1 passes
/// trivially with no records.
inline DominanceReport dominance_check(const ExponentVector& b) {
  const int n = b.n();
  if (!hall_admissible(b)) throw std::invalid_argument("b is not Hall-admissible");
  if (n == 1) return DominanceReport{1, 1, b, 0, {}, true};
  const auto pp = prime_power(n);
  if (!pp) throw std::invalid_argument("dominance argument applies to prime powers only");

  DominanceReport report{n, pp->prime, b, 0, {}, true};
  const ExactInt p = pp->prime;
  const ExactRat base = q_class_contribution(b);
  report.q_class_valuation = valuation(base, p);

  const Partition mu = b.brick_partition();
  const int q = b.weighted_sum();
  for (const auto& lambda : partitions_of(q, n)) {
    const auto classes = enumerate_filling_classes(lambda, mu);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      ClassRecord rec{lambda, c, classes[c], class_contribution(classes[c], n), 0, lambda.length() == 1};
      rec.valuation = valuation(rec.contribution, p);
      if (!rec.base && rec.valuation <= report.q_class_valuation) report.passed = false;
      report.class_records.push_back(std::move(rec));
    }
  }
  return report;
}

/// Bound on the p-adic valuation of a multinomial: if m < p^s then
/// v(multinomial(m; d_1..d_k)) < (k-1)s. Returns whether the bound holds for
/// this instance; with two parts this is the binomial case v(C(m,d)) < s.
inline bool lemma_check(long m, long p, int s, std::span<const long> parts) {
  if (p < 2) throw std::invalid_argument("invalid prime");
  if (s < 0) throw std::invalid_argument("s must be non-negative");
  if (parts.size() < 2) throw std::invalid_argument("at least two parts required");
  const ExactInt bound = pow(ExactInt(p), static_cast<unsigned long>(s));
  if (m >= bound) throw std::invalid_argument("hypothesis violated");
  const ExactInt value = multinomial(m, parts);
  const long k = static_cast<long>(parts.size());
  return valuation(value, ExactInt(p)) < (k - 1) * s;
}

inline bool lemma_check(long m, long p, int s, std::initializer_list<long> parts) {
  return lemma_check(m, p, s, std::span<const long>(parts.begin(), parts.size()));
}

}  // namespace circdet
