#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "exactmath.hpp"

namespace circdet {

// An integer partition, held in both the parts view (non-increasing) and the
// dense multiplicity view: multiplicity(i) is the number of parts equal to i
// for 1 <= i <= size().
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 1) throw std::invalid_argument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
    beta_.assign(static_cast<std::size_t>(size_), 0);
    for (int p : parts_) ++beta_[p - 1];
  }

  // beta[i-1] = number of parts equal to i.
  static Partition from_multiplicities(std::span<const int> beta) {
    std::vector<int> parts;
    for (std::size_t i = beta.size(); i-- > 0;) {
      if (beta[i] < 0) throw std::invalid_argument("multiplicities must be non-negative");
      parts.insert(parts.end(), static_cast<std::size_t>(beta[i]), static_cast<int>(i + 1));
    }
    return Partition(std::move(parts));
  }

  const std::vector<int>& parts() const noexcept { return parts_; }
  int size() const noexcept { return size_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }
  int operator[](std::size_t j) const { return parts_.at(j); }

  int multiplicity(int i) const noexcept {
    return (i >= 1 && i <= size_) ? beta_[static_cast<std::size_t>(i - 1)] : 0;
  }
  const std::vector<int>& multiplicities() const noexcept { return beta_; }

  bool all_parts_divisible_by(int n) const {
    return std::all_of(parts_.begin(), parts_.end(), [n](int p) { return p % n == 0; });
  }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  // Lexicographic on the parts view.
  std::strong_ordering operator<=>(const Partition& o) const { return parts_ <=> o.parts_; }

 private:
  std::vector<int> parts_;
  std::vector<int> beta_;
  int size_ = 0;
};

// "(4,2,1)"; the empty partition is "()".
inline std::string to_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t j = 0; j < p.parts().size(); ++j) {
    if (j) s += ',';
    s += std::to_string(p.parts()[j]);
  }
  return s + ")";
}

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                           std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// All partitions of q in reverse-lexicographic order of parts, e.g. for 4:
/// (4), (3,1), (2,2), (2,1,1), (1,1,1,1). With a divisor constraint n only
/// partitions whose parts are all multiples of n are produced (the partitions
/// of q/n scaled by n, in the same order); empty when n does not divide q.
inline std::vector<Partition> partitions_of(int q, std::optional<int> divisor = std::nullopt) {
  if (q < 0) throw std::invalid_argument("partitions_of requires q >= 0");
  const int scale = divisor.value_or(1);
  if (scale < 1) throw std::invalid_argument("divisor constraint must be positive");
  std::vector<Partition> out;
  if (q % scale != 0) return out;
  std::vector<int> cur;
  detail::partitions_rec(q / scale, q / scale, cur, out);
  if (scale == 1) return out;
  for (auto& p : out) {
    std::vector<int> parts = p.parts();
    for (int& x : parts) x *= scale;
    p = Partition(std::move(parts));
  }
  return out;
}

/// z_lambda = prod_i beta_i! * i^beta_i, the centralizer order of cycle type lambda.
inline ExactInt z_of(const Partition& lambda) {
  ExactInt z = 1;
  for (int i = 1; i <= lambda.size(); ++i) {
    const int b = lambda.multiplicity(i);
    if (b == 0) continue;
    z *= factorial(b) * pow(ExactInt(i), static_cast<unsigned long>(b));
  }
  return z;
}

/// lambda! = prod_i (i!)^beta_i.
inline ExactInt factorial_of_partition(const Partition& lambda) {
  ExactInt f = 1;
  for (int part : lambda.parts()) f *= factorial(part);
  return f;
}

}  // namespace circdet
