#include "codsum/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace codsum::arith {

namespace {

constexpr std::uint64_t kTrialLimit = 1'000'000;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho. n is odd, composite and has no factor
// below the trial-division limit.
std::uint64_t pollard_brent(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    const std::uint64_t block = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += block) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

FactoredInteger::FactoredInteger(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].exponent == 0) throw std::invalid_argument("FactoredInteger: zero exponent");
    if (!is_prime(factors_[i].prime)) throw std::invalid_argument("FactoredInteger: non-prime base");
    if (i > 0 && factors_[i - 1].prime >= factors_[i].prime)
      throw std::invalid_argument("FactoredInteger: primes must be strictly increasing");
  }
}

BigInt FactoredInteger::value() const {
  BigInt v = 1;
  for (const auto& f : factors_) v *= pow(BigInt(static_cast<unsigned long>(f.prime)), f.exponent);
  return v;
}

std::uint64_t FactoredInteger::value_u64() const {
  BigInt v = value();
  if (v > BigInt(std::numeric_limits<unsigned long>::max())) throw std::overflow_error("value exceeds 64 bits");
  return v.get_ui();
}

FactoredInteger FactoredInteger::operator*(const FactoredInteger& other) const {
  std::map<std::uint64_t, unsigned> merged;
  for (const auto& f : factors_) merged[f.prime] += f.exponent;
  for (const auto& f : other.factors_) merged[f.prime] += f.exponent;
  FactoredInteger out;
  for (const auto& [p, e] : merged) out.factors_.push_back({p, e});
  return out;
}

std::string FactoredInteger::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    os << factors_[i].prime;
    if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
  }
  return os.str();
}

BigRational::BigRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("BigRational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

BigRational BigRational::operator/(const BigRational& o) const {
  if (o.value_ == 0) throw std::domain_error("BigRational: division by zero");
  return from_mpq(value_ / o.value_);
}

long double BigRational::to_long_double() const {
  // Keep the leading 64 bits of each part; long double holds them exactly.
  auto top = [](const BigInt& z, long& shift) {
    BigInt a = abs(z);
    long bits = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
    shift = std::max<long>(0, bits - 64);
    BigInt t = a >> shift;
    std::uint64_t hi = 0;
    mpz_export(&hi, nullptr, -1, sizeof hi, 0, 0, t.get_mpz_t());
    return static_cast<long double>(hi);
  };
  long sn = 0, sd = 0;
  long double n = top(value_.get_num(), sn);
  long double d = top(value_.get_den(), sd);
  long double q = std::ldexp(n / d, static_cast<int>(sn - sd));
  return value_ < 0 ? -q : q;
}

std::string BigRational::to_string() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus == 0) throw std::invalid_argument("mod_pow: modulus must be >= 1");
  std::uint64_t result = 1 % modulus;
  base %= modulus;
  while (exponent) {
    if (exponent & 1) result = mul_mod(result, base, modulus);
    base = mul_mod(base, base, modulus);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FactoredInteger factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  if (n > (std::uint64_t{1} << 63)) throw std::invalid_argument("factorize: n exceeds 2^63");
  std::map<std::uint64_t, unsigned> found;
  for (std::uint32_t p : trial_primes()) {
    if (std::uint64_t{p} * p > n) break;
    while (n % p == 0) {
      ++found[p];
      n /= p;
    }
  }
  if (n > 1) {
    if (n <= kTrialLimit * kTrialLimit || is_prime(n))
      ++found[n];
    else
      factor_rec(n, found);
  }
  std::vector<PrimePower> factors;
  for (const auto& [p, e] : found) factors.push_back({p, e});
  return FactoredInteger(std::move(factors));
}

std::uint64_t euler_totient(const FactoredInteger& n) {
  std::uint64_t t = 1;
  for (const auto& f : n.factors()) {
    for (unsigned i = 1; i < f.exponent; ++i) t *= f.prime;
    t *= f.prime - 1;
  }
  return t;
}

std::vector<std::uint64_t> divisors(const FactoredInteger& n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& f : n.factors()) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned e = 1; e <= f.exponent; ++e) {
      pk *= f.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 1;
  a %= n;
  if (std::gcd(a, n) != 1) return 0;
  std::uint64_t order = euler_totient(factorize(n));
  const FactoredInteger fo = factorize(order);
  for (const auto& f : fo.factors()) {
    for (unsigned e = 0; e < f.exponent && order % f.prime == 0; ++e) {
      if (mod_pow(a, order / f.prime, n) != 1) break;
      order /= f.prime;
    }
  }
  return order;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 2; out.size() < count; ++c)
    if (is_prime(c)) out.push_back(c);
  return out;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

}  // namespace codsum::arith
