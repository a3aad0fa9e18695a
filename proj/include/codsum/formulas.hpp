#pragma once

// Closed-form codegree sums and the exact numeric criteria built on them.
// Everything here is exact integer/rational arithmetic.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "codsum/arith.hpp"
#include "codsum/chartab.hpp"
#include "codsum/groups.hpp"

namespace codsum::formulas {

using arith::BigInt;
using arith::BigRational;
using arith::FactoredInteger;

/// S_c(C_{p^n}) = (p^{2n+1} + 1) / (p + 1). Throws std::invalid_argument for non-prime p.
BigInt sc_cyclic_primepower(std::uint64_t p, unsigned n);

/// S_c(C_n) as the product of the prime-power factors; S_c(C_1) = 1.
BigInt sc_cyclic(const FactoredInteger& n);

struct LowerBound {
  BigInt sc;                 // S_c(C_n)
  BigRational product_bound; // prod p/(p+1) * n^2
  BigRational weak_bound;    // p_1/(p_t+1) * n^2
  bool holds = false;        // sc > product_bound >= weak_bound
};

LowerBound sc_cyclic_lower_bound_holds(const FactoredInteger& n);

/// Sum of element orders of an abelian group, counted per prime from the
/// invariant factors rather than by enumeration.
BigInt sc_abelian(const groups::AbelianGroupSpec& spec);

/// S_c of the Frobenius family: 20/3 + (1/3) prod (p^6+1)/(p^2+1).
/// Throws std::logic_error if the value is not an integer.
BigInt sc_counterexample(const groups::CounterexampleSpec& spec);

/// sc_counterexample(spec) / S_c(C_{3 prod p^2}).
BigRational counterexample_ratio(const groups::CounterexampleSpec& spec);

struct Submultiplicativity {
  BigInt lhs;      // S_c(C_{p^a}) S_c(C_{p^b})
  BigInt rhs;      // S_c(C_{p^{a+b}})
  BigInt alt_lhs;  // p^{2a} + p^{2b}
  BigInt alt_rhs;  // p^{2a} p^{2b} + 1
  bool holds = false;
};

Submultiplicativity submultiplicativity_holds(std::uint64_t p, unsigned a, unsigned b);

/// prod p/(p+1) over the given distinct primes.
BigRational product_criterion(const std::vector<std::uint64_t>& primes);

/// Largest t such that the product over the first t primes is >= threshold.
std::size_t max_t_for_criterion(const BigRational& threshold = BigRational(7, 48));

enum class Family { generic, nilpotent, metacyclic_frobenius, counterexample };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct Verdict {
  std::string group;
  Family family = Family::generic;
  std::string lhs;
  std::string rhs;
  std::string relation;
  bool pass = false;
  nlohmann::json witnesses;
};

/// generic/nilpotent: S_c(G) <= S_c(C_|G|), nilpotent also requires equality
/// exactly when G is cyclic. metacyclic_frobenius: S_c(G) < (8/21) S_c(C_|G|).
/// counterexample: records the ratio S_c(G)/S_c(C_|G|).
Verdict theorem_bound_check(const chartab::CodegreeReport& report, Family family);

void to_json(nlohmann::json& j, const Verdict& v);

}  // namespace codsum::formulas
