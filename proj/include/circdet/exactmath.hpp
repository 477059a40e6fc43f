#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ranges>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circdet {

// Exact integers and rationals are GMP values. mpq_class results of
// arithmetic are always canonical (lowest terms, positive denominator);
// construct from a numerator/denominator pair only through make_rat.
using ExactInt = mpz_class;
using ExactRat = mpq_class;

inline ExactRat make_rat(const ExactInt& num, const ExactInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  ExactRat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const ExactRat& x) { return x.get_den() == 1; }

inline std::string to_string(const ExactInt& x) { return x.get_str(); }

// "p/q", or just "p" when the denominator is one.
inline std::string to_string(const ExactRat& x) { return x.get_str(); }

namespace detail {

inline void require_prime_arg(const ExactInt& p) {
  if (p < 2) throw std::invalid_argument("invalid prime");
}

inline unsigned long to_ulong(long v, const char* what) {
  if (v < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
  return static_cast<unsigned long>(v);
}

}  // namespace detail

/// p-adic valuation of a nonzero integer.
inline int valuation(const ExactInt& x, const ExactInt& p) {
  detail::require_prime_arg(p);
  if (x == 0) throw std::domain_error("valuation of zero undefined");
  ExactInt rest;
  return static_cast<int>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

/// p-adic valuation of a nonzero rational: v(num) - v(den).
inline int valuation(const ExactRat& x, const ExactInt& p) {
  detail::require_prime_arg(p);
  if (x == 0) throw std::domain_error("valuation of zero undefined");
  return valuation(ExactInt(x.get_num()), p) - valuation(ExactInt(x.get_den()), p);
}

inline ExactInt factorial(long m) {
  ExactInt r;
  mpz_fac_ui(r.get_mpz_t(), detail::to_ulong(m, "factorial argument"));
  return r;
}

inline ExactInt binomial(long m, long d) {
  if (m < 0 || d < 0 || d > m) return 0;
  ExactInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(d));
  return r;
}

/// m! / prod(parts_i!). Computed as a product of binomials, so no division
/// ever happens and the result is an integer by construction.
template <std::ranges::input_range R>
ExactInt multinomial(long m, const R& parts) {
  ExactInt result = 1;
  long running = 0;
  for (const auto& part : parts) {
    const long d = static_cast<long>(part);
    if (d < 0) throw std::invalid_argument("parts must be non-negative");
    running += d;
    if (running > m) throw std::invalid_argument("parts must sum to m");
    result *= binomial(running, d);
  }
  if (running != m) throw std::invalid_argument("parts must sum to m");
  return result;
}

inline ExactInt multinomial(long m, std::initializer_list<long> parts) {
  return multinomial<std::initializer_list<long>>(m, parts);
}

/// Prime factorization by trial division, primes ascending.
inline std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

struct PrimePower {
  long prime;
  int exponent;
};

/// (p, r) with n = p^r and r >= 1, or nullopt when n is not a prime power
/// (including n = 1).
inline std::optional<PrimePower> prime_power(long n) {
  const auto f = factorize(n);
  if (f.size() != 1) return std::nullopt;
  return PrimePower{f.front().first, f.front().second};
}

inline ExactInt euler_phi(const ExactInt& n) {
  if (n < 1) throw std::invalid_argument("euler_phi requires n >= 1");
  if (!n.fits_slong_p()) throw std::out_of_range("euler_phi argument too large");
  long m = n.get_si();
  long phi = m;
  for (const auto& [p, e] : factorize(m)) phi = phi / p * (p - 1);
  return phi;
}

inline std::vector<ExactInt> divisors(const ExactInt& n) {
  if (n < 1) throw std::invalid_argument("divisors requires n >= 1");
  if (!n.fits_slong_p()) throw std::out_of_range("divisors argument too large");
  const long m = n.get_si();
  std::vector<ExactInt> low, high;
  for (long d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    low.emplace_back(d);
    if (d != m / d) high.emplace_back(m / d);
  }
  low.insert(low.end(), high.rbegin(), high.rend());
  return low;
}

inline ExactInt pow(const ExactInt& base, unsigned long e) {
  ExactInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace circdet
