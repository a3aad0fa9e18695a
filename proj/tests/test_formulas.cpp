#include <doctest.h>

#include "codsum/arith.hpp"
#include "codsum/chartab.hpp"
#include "codsum/formulas.hpp"
#include "codsum/verify.hpp"
#include "oracles.hpp"

using namespace codsum;
using arith::BigInt;
using arith::BigRational;
using formulas::Family;

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

// Product of p/(p+1) over primes taken from a plain sieve.
BigRational product_first(std::size_t t) {
  const auto ps = oracle::eratosthenes(10000);
  BigRational r(1);
  for (std::size_t i = 0; i < t; ++i) r *= BigRational(big(ps[i]), big(ps[i] + 1));
  return r;
}

chartab::CodegreeReport report(const groups::PermutationGroupSpec& s) { return verify::oracle_report(s); }

}  // namespace

TEST_CASE("sc_cyclic_primepower") {
  CHECK(formulas::sc_cyclic_primepower(2, 1) == 3);
  CHECK(formulas::sc_cyclic_primepower(2, 2) == 11);
  CHECK(formulas::sc_cyclic_primepower(3, 1) == 7);
  CHECK_THROWS_AS(formulas::sc_cyclic_primepower(4, 1), std::invalid_argument);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13})
    for (unsigned n = 1; std::pow(p, n) <= 3000; ++n) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < n; ++i) q *= p;
      CHECK(formulas::sc_cyclic_primepower(p, n) == big(oracle::cyclic_order_sum(q)));
    }
}

TEST_CASE("sc_cyclic") {
  CHECK(formulas::sc_cyclic(arith::factorize(6)) == 21);
  CHECK(formulas::sc_cyclic(arith::factorize(1)) == 1);
  CHECK(formulas::sc_cyclic(arith::factorize(12)) == 77);
  for (std::uint64_t n = 1; n <= 2000; ++n)
    REQUIRE(formulas::sc_cyclic(arith::factorize(n)) == big(oracle::cyclic_order_sum(n)));
}

TEST_CASE("sc_cyclic is multiplicative over coprime pairs") {
  for (std::uint64_t a = 1; a <= 10000; ++a)
    for (std::uint64_t b = a; a * b <= 10000; ++b) {
      if (arith::gcd(a, b) != 1) continue;
      REQUIRE(formulas::sc_cyclic(arith::factorize(a * b)) ==
              formulas::sc_cyclic(arith::factorize(a)) * formulas::sc_cyclic(arith::factorize(b)));
    }
}

TEST_CASE("sc_cyclic_lower_bound_holds") {
  const auto six = formulas::sc_cyclic_lower_bound_holds(arith::factorize(6));
  CHECK(six.sc == 21);
  CHECK(six.product_bound == BigRational(18));
  CHECK(six.holds);
  const auto four = formulas::sc_cyclic_lower_bound_holds(arith::factorize(4));
  CHECK(four.product_bound == BigRational(32, 3));
  CHECK(four.holds);
  CHECK_THROWS_AS(formulas::sc_cyclic_lower_bound_holds(arith::factorize(1)), std::invalid_argument);
  for (std::uint64_t n = 2; n <= 5000; ++n) REQUIRE(formulas::sc_cyclic_lower_bound_holds(arith::factorize(n)).holds);
}

TEST_CASE("sc_abelian") {
  CHECK(formulas::sc_abelian({{2, 2}}) == 7);
  CHECK(formulas::sc_abelian({{2, 4}}) == 23);
  CHECK(formulas::sc_abelian({{4}}) == formulas::sc_cyclic_primepower(2, 2));
  for (std::uint64_t n = 2; n <= 512; ++n)
    for (const auto& a : groups::abelian_groups_of_order(n))
      REQUIRE(formulas::sc_abelian(a) == big(oracle::abelian_order_sum(a.factors)));
}

TEST_CASE("sc_abelian is below the cyclic value, with equality only when cyclic") {
  for (std::uint64_t n = 2; n <= 256; ++n) {
    const BigInt cyc = formulas::sc_cyclic(arith::factorize(n));
    for (const auto& a : groups::abelian_groups_of_order(n)) {
      const BigInt s = formulas::sc_abelian(a);
      CAPTURE(a.name());
      CHECK(s <= cyc);
      CHECK((s == cyc) == a.is_cyclic());
    }
  }
}

TEST_CASE("sc_abelian agrees with the oracle on corpus abelian groups") {
  for (const auto& s : groups::pgroup_library()) {
    const auto r = report(s);
    if (r.k != r.order) continue;
    CAPTURE(s.name);
    // recover the factors from the enumerated group's element orders
    const auto g = chartab::enumerate(s);
    CHECK(chartab::sum_of_element_orders(g) == r.sc);
  }
  for (std::uint64_t n : {8, 16, 36, 64, 72, 128, 200, 256, 288, 400, 512})
    for (const auto& a : groups::abelian_groups_of_order(n)) CHECK(formulas::sc_abelian(a) == big(report(groups::build_abelian(a)).sc));
}

TEST_CASE("sc_counterexample") {
  CHECK(formulas::sc_counterexample({{}}) == 7);
  CHECK(formulas::sc_counterexample({{2}}) == 11);
  CHECK(formulas::sc_counterexample({{2, 5}}) == 2611);
  for (const std::vector<std::uint64_t>& ps : {std::vector<std::uint64_t>{}, {2}, {5}, {11}, {2, 5}})
    CHECK(formulas::sc_counterexample({ps}) == big(report(groups::build_counterexample({ps})).sc));
  CHECK_THROWS_AS(formulas::sc_counterexample({{7}}), std::invalid_argument);
}

TEST_CASE("counterexample_ratio") {
  CHECK(formulas::counterexample_ratio({{2}}) == BigRational(1, 7));
  CHECK(formulas::counterexample_ratio({{2, 5}}) == BigRational(2611, 40117));
  CHECK(formulas::counterexample_ratio({{}}) == BigRational(1));
}

TEST_CASE("counterexample_ratio rises once two primes are present") {
  // 1 -> 1/7 -> 2611/40117 falls first: the constant 20/3 dominates small lists
  std::vector<std::uint64_t> ps;
  std::vector<BigRational> ratios;
  for (std::uint64_t p = 2; ps.size() < 25; ++p) {
    if (p % 3 != 2 || !oracle::is_prime_slow(p)) continue;
    ps.push_back(p);
    ratios.push_back(formulas::counterexample_ratio({ps}));
  }
  CHECK(ratios[1] < ratios[0]);
  for (std::size_t i = 2; i < ratios.size(); ++i) CHECK(ratios[i] > ratios[i - 1]);
}

TEST_CASE("submultiplicativity_holds") {
  const auto s = formulas::submultiplicativity_holds(2, 1, 1);
  CHECK(s.lhs == 9);
  CHECK(s.rhs == 11);
  CHECK(s.holds);
  const auto t = formulas::submultiplicativity_holds(3, 2, 1);
  CHECK(t.lhs == 61 * 7);
  CHECK(t.rhs == 547);
  CHECK(t.holds);
  for (std::uint64_t p : {2, 3, 5, 7})
    for (unsigned a = 1; a <= 6; ++a)
      for (unsigned b = 1; b <= 6; ++b) {
        const auto x = formulas::submultiplicativity_holds(p, a, b);
        CHECK(x.holds);
        CHECK((x.lhs <= x.rhs) == (x.alt_lhs <= x.alt_rhs));
      }
}

TEST_CASE("product_criterion") {
  CHECK(formulas::product_criterion({2, 3}) == BigRational(1, 2));
  CHECK(formulas::product_criterion({}) == BigRational(1));
  CHECK(formulas::product_criterion({2, 3, 5, 7}) == BigRational(35, 96));  // 210/576
  const auto ps = oracle::eratosthenes(2000);
  BigRational prev(1);
  for (std::size_t t = 1; t <= 150; ++t) {
    const auto cur = formulas::product_criterion({ps.begin(), ps.begin() + t});
    CHECK(cur < prev);
    CHECK(cur == product_first(t));
    prev = cur;
  }
}

TEST_CASE("max_t_for_criterion") {
  CHECK(formulas::max_t_for_criterion(BigRational(1, 2)) == 2);
  CHECK(formulas::max_t_for_criterion(BigRational(2, 3)) == 1);
  CHECK_THROWS_AS(formulas::max_t_for_criterion(BigRational(0)), std::invalid_argument);
  CHECK_THROWS_AS(formulas::max_t_for_criterion(BigRational(1)), std::invalid_argument);

  // the bound 7/48 holds through t = 99 as the paper says, and in fact through t = 100
  const BigRational seven48(7, 48);
  CHECK(product_first(99) >= seven48);
  CHECK(product_first(100) >= seven48);
  CHECK(product_first(101) < seven48);
  CHECK(formulas::max_t_for_criterion(seven48) == 100);
}

TEST_CASE("theorem_bound_check examples") {
  const auto s3 = formulas::theorem_bound_check(report(groups::build_metacyclic({3, 2, 2})), Family::metacyclic_frobenius);
  CHECK(s3.pass);
  CHECK(s3.lhs == "6");
  CHECK(s3.rhs == "8");
  CHECK(s3.relation == "<");

  const auto d8 = formulas::theorem_bound_check(report(*groups::pgroup_by_name("D8")), Family::nilpotent);
  CHECK(d8.pass);
  CHECK(d8.lhs == "11");
  CHECK(d8.rhs == "43");
  CHECK(d8.relation == "<");

  const auto c12 = formulas::theorem_bound_check(report(groups::build_cyclic(12)), Family::nilpotent);
  CHECK(c12.pass);
  CHECK(c12.relation == "==");
  CHECK(c12.witnesses["cyclic"] == true);

  const auto a4 = formulas::theorem_bound_check(report(groups::build_counterexample({{2}})), Family::counterexample);
  CHECK(a4.pass);
  CHECK(a4.witnesses["ratio"] == "1/7");

  const nlohmann::json j = d8;
  for (const char* key : {"group", "family", "lhs", "rhs", "relation", "pass", "witnesses"}) CHECK(j.contains(key));
  CHECK(j["family"] == "nilpotent");
}

TEST_CASE("theorem_bound_check flags a forged violation") {
  auto r = report(*groups::pgroup_by_name("D8"));
  r.sc = 50;
  CHECK_FALSE(formulas::theorem_bound_check(r, Family::nilpotent).pass);
  auto c = report(groups::build_cyclic(8));
  r = c;
  r.sc = 43;
  r.kernel_sizes.assign(r.kernel_sizes.size(), 2);  // pretend there is no faithful linear character
  CHECK_FALSE(formulas::theorem_bound_check(r, Family::nilpotent).pass);
}

TEST_CASE("family names round trip") {
  for (Family f : {Family::generic, Family::nilpotent, Family::metacyclic_frobenius, Family::counterexample})
    CHECK(formulas::family_from_string(formulas::to_string(f)) == f);
  CHECK_THROWS_AS(formulas::family_from_string("solvable"), std::invalid_argument);
}
