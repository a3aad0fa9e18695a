#include "codsum/formulas.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace codsum::formulas {

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

}  // namespace

BigInt sc_cyclic_primepower(std::uint64_t p, unsigned n) {
  if (!arith::is_prime(p)) throw std::invalid_argument("sc_cyclic_primepower: " + std::to_string(p) + " is not prime");
  const BigInt num = arith::pow(big(p), 2 * n + 1) + 1;
  const BigInt den = big(p) + 1;
  if (num % den != 0) throw std::logic_error("sc_cyclic_primepower: inexact division");
  return num / den;
}

BigInt sc_cyclic(const FactoredInteger& n) {
  BigInt s = 1;
  for (const auto& f : n.factors()) s *= sc_cyclic_primepower(f.prime, f.exponent);
  return s;
}

LowerBound sc_cyclic_lower_bound_holds(const FactoredInteger& n) {
  if (n.is_one()) throw std::invalid_argument("sc_cyclic_lower_bound_holds: n must be >= 2");
  LowerBound lb;
  lb.sc = sc_cyclic(n);
  const BigInt n2 = n.value() * n.value();
  std::vector<std::uint64_t> primes;
  for (const auto& f : n.factors()) primes.push_back(f.prime);
  lb.product_bound = product_criterion(primes) * BigRational(n2);
  lb.weak_bound = BigRational(big(primes.front()), big(primes.back()) + 1) * BigRational(n2);
  lb.holds = BigRational(lb.sc) > lb.product_bound && lb.product_bound >= lb.weak_bound;
  return lb;
}

BigInt sc_abelian(const groups::AbelianGroupSpec& spec) {
  spec.validate();
  std::map<std::uint64_t, std::vector<unsigned>> by_prime;
  for (std::uint64_t f : spec.factors) {
    const auto pp = arith::factorize(f).factors().front();
    by_prime[pp.prime].push_back(pp.exponent);
  }
  BigInt total = 1;
  for (const auto& [p, exps] : by_prime) {
    const unsigned top = *std::max_element(exps.begin(), exps.end());
    // count(k) = #{x : x^{p^k} = 1} = p^{sum min(a_i, k)}
    auto count = [&](unsigned k) {
      unsigned s = 0;
      for (unsigned a : exps) s += std::min(a, k);
      return arith::pow(big(p), s);
    };
    BigInt sum = 1;
    for (unsigned k = 1; k <= top; ++k) sum += arith::pow(big(p), k) * (count(k) - count(k - 1));
    total *= sum;
  }
  return total;
}

BigInt sc_counterexample(const groups::CounterexampleSpec& spec) {
  spec.validate();
  BigInt prod = 1;
  for (std::uint64_t p : spec.primes) {
    const BigInt num = arith::pow(big(p), 6) + 1, den = arith::pow(big(p), 2) + 1;
    if (num % den != 0) throw std::logic_error("sc_counterexample: (p^6+1)/(p^2+1) is not integral");
    prod *= num / den;
  }
  const BigInt total = 20 + prod;
  if (total % 3 != 0) throw std::logic_error("sc_counterexample: codegree sum is not an integer");
  return total / 3;
}

BigRational counterexample_ratio(const groups::CounterexampleSpec& spec) {
  const BigInt sc = sc_counterexample(spec);
  spec.validate();
  // built from the prime list so the order never has to fit in 64 bits
  std::vector<arith::PrimePower> pp{{3, 1}};
  for (std::uint64_t p : spec.primes) pp.push_back({p, 2});
  std::sort(pp.begin(), pp.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
  const BigInt cyc = sc_cyclic(FactoredInteger(pp));
  BigInt closed = 7;
  for (std::uint64_t p : spec.primes) closed *= (arith::pow(big(p), 5) + 1) / (big(p) + 1);
  if (closed != cyc) throw std::logic_error("counterexample_ratio: cyclic codegree sum mismatch");
  return BigRational(sc, cyc);
}

Submultiplicativity submultiplicativity_holds(std::uint64_t p, unsigned a, unsigned b) {
  Submultiplicativity s;
  s.lhs = sc_cyclic_primepower(p, a) * sc_cyclic_primepower(p, b);
  s.rhs = sc_cyclic_primepower(p, a + b);
  const BigInt pa = arith::pow(big(p), 2 * a), pb = arith::pow(big(p), 2 * b);
  s.alt_lhs = pa + pb;
  s.alt_rhs = pa * pb + 1;
  s.holds = s.lhs <= s.rhs && s.alt_lhs <= s.alt_rhs;
  return s;
}

BigRational product_criterion(const std::vector<std::uint64_t>& primes) {
  BigRational r(1);
  for (std::uint64_t p : primes) r *= BigRational(big(p), big(p) + 1);
  return r;
}

std::size_t max_t_for_criterion(const BigRational& threshold) {
  if (threshold <= BigRational(0) || threshold >= BigRational(1))
    throw std::invalid_argument("max_t_for_criterion: threshold must lie in (0, 1)");
  BigRational prod(1);
  std::size_t t = 0;
  for (std::uint64_t p = 2;; ++p) {
    if (!arith::is_prime(p)) continue;
    BigRational next = prod * BigRational(big(p), big(p) + 1);
    if (next < threshold) return t;
    prod = next;
    ++t;
  }
}

std::string to_string(Family f) {
  switch (f) {
    case Family::generic: return "generic";
    case Family::nilpotent: return "nilpotent";
    case Family::metacyclic_frobenius: return "metacyclic_frobenius";
    case Family::counterexample: return "counterexample";
  }
  return "generic";
}

Family family_from_string(const std::string& s) {
  for (Family f : {Family::generic, Family::nilpotent, Family::metacyclic_frobenius, Family::counterexample})
    if (to_string(f) == s) return f;
  throw std::invalid_argument("unknown family: " + s);
}

Verdict theorem_bound_check(const chartab::CodegreeReport& report, Family family) {
  Verdict v;
  v.group = report.name;
  v.family = family;
  const BigInt sc = big(report.sc);
  const BigInt cyc = sc_cyclic(arith::factorize(report.order));
  bool cyclic = false;
  for (std::size_t i = 0; i < report.degrees.size(); ++i)
    if (report.degrees[i] == 1 && report.kernel_sizes[i] == 1) cyclic = true;
  const BigRational ratio(sc, cyc);
  v.witnesses = {{"Sc", sc.get_str()}, {"Sc_cyclic", cyc.get_str()}, {"ratio", ratio.to_string()},
                 {"cyclic", cyclic}};

  switch (family) {
    case Family::generic:
    case Family::nilpotent: {
      v.lhs = sc.get_str();
      v.rhs = cyc.get_str();
      const bool equal = sc == cyc;
      v.relation = equal ? "==" : (sc < cyc ? "<" : ">");
      v.witnesses["equality"] = equal;
      v.pass = sc <= cyc;
      if (family == Family::nilpotent) v.pass = v.pass && (equal == cyclic);
      break;
    }
    case Family::metacyclic_frobenius: {
      const BigRational bound = BigRational(8, 21) * BigRational(cyc);
      v.lhs = sc.get_str();
      v.rhs = bound.to_string();
      v.relation = BigRational(sc) < bound ? "<" : ">=";
      v.pass = BigRational(sc) < bound;
      break;
    }
    case Family::counterexample:
      v.lhs = sc.get_str();
      v.rhs = cyc.get_str();
      v.relation = sc == cyc ? "==" : (sc < cyc ? "<" : ">");
      v.pass = true;
      break;
  }
  return v;
}

void to_json(nlohmann::json& j, const Verdict& v) {
  j = nlohmann::json{{"group", v.group}, {"family", to_string(v.family)}, {"lhs", v.lhs},          {"rhs", v.rhs},
                     {"relation", v.relation}, {"pass", v.pass},          {"witnesses", v.witnesses}};
}

}  // namespace codsum::formulas
