#pragma once

// Linear algebra and polynomial arithmetic over a prime field F_p with p < 2^31.
// Internal to the character-table oracle.

#include <cstdint>
#include <utility>
#include <vector>

namespace codsum::modular {

using Vec = std::vector<std::uint64_t>;
using Matrix = std::vector<Vec>;  // row-major
using Poly = std::vector<std::uint64_t>;  // coefficient i multiplies x^i; no trailing zeros

class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(p) {}

  std::uint64_t modulus() const { return p_; }
  std::uint64_t reduce(std::uint64_t a) const { return a % p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;

 private:
  std::uint64_t p_;
};

/// Basis of {u : A u = 0}; one vector per free column of the reduced row echelon form.
std::vector<Vec> nullspace(Matrix a, const PrimeField& f);

/// Characteristic polynomial det(xI - A), monic, via Hessenberg reduction.
Poly charpoly(Matrix a, const PrimeField& f);

/// Distinct roots of a polynomial that splits into linear factors over F_p, ascending.
std::vector<std::uint64_t> split_roots(const Poly& poly, const PrimeField& f);

/// Multiplicity of `root` in `poly`.
unsigned root_multiplicity(Poly poly, std::uint64_t root, const PrimeField& f);

}  // namespace codsum::modular
