#pragma once

// Exact integer and rational helpers shared by every other module.

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace codsum::arith {

using BigInt = mpz_class;

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer stored as its prime factorization.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// empty factor list is the integer 1.
class FactoredInteger {
 public:
  FactoredInteger() = default;
  /// Validates the invariants; throws std::invalid_argument on violation.
  explicit FactoredInteger(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::size_t prime_count() const { return factors_.size(); }

  BigInt value() const;
  /// Exact value when it fits in 64 bits; throws std::overflow_error otherwise.
  std::uint64_t value_u64() const;

  FactoredInteger operator*(const FactoredInteger& other) const;

  std::string to_string() const;

  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

 private:
  std::vector<PrimePower> factors_;
};

/// Rational number with arbitrary-precision numerator and denominator.
///
/// Always reduced with a positive denominator; reduction happens on every
/// construction and arithmetic result.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  explicit BigRational(const BigInt& n) : value_(n) {}
  BigRational(const BigInt& num, const BigInt& den);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  double to_double() const { return value_.get_d(); }
  long double to_long_double() const;
  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;

  BigRational operator+(const BigRational& o) const { return from_mpq(value_ + o.value_); }
  BigRational operator-(const BigRational& o) const { return from_mpq(value_ - o.value_); }
  BigRational operator*(const BigRational& o) const { return from_mpq(value_ * o.value_); }
  BigRational operator/(const BigRational& o) const;
  BigRational& operator*=(const BigRational& o) { return *this = *this * o; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.value_ == b.value_; }
  friend auto operator<=>(const BigRational& a, const BigRational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  static BigRational from_mpq(mpq_class v) {
    BigRational r;
    r.value_ = std::move(v);
    r.value_.canonicalize();
    return r;
  }
  mpq_class value_{0};
};

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Throws std::invalid_argument for n == 0 or n > 2^63.
FactoredInteger factorize(std::uint64_t n);

std::uint64_t euler_totient(const FactoredInteger& n);

/// All divisors, ascending.
std::vector<std::uint64_t> divisors(const FactoredInteger& n);

/// Multiplicative order of a modulo n, or 0 when gcd(a, n) != 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

/// The first `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

BigInt pow(const BigInt& base, unsigned long exponent);

}  // namespace codsum::arith
