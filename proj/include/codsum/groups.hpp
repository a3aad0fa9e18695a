#pragma once

// Explicit permutation realizations of the group families used by the
// codegree-sum checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace codsum::groups {

/// Permutation of {0, ..., degree-1} stored as a dense image array.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator[](std::size_t point) const { return images_[point]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  /// Product "apply *this, then other": (a * b)[x] = b[a[x]].
  Permutation operator*(const Permutation& other) const;
  Permutation inverse() const;
  bool is_identity() const;
  /// lcm of the cycle lengths.
  std::uint64_t order() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

struct PermutationGroupSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::optional<std::uint64_t> expected_order;

  /// Checks that generators are nonempty and all have `degree` points.
  void validate() const;
};

/// Abelian group as a multiset of cyclic prime-power factors.
struct AbelianGroupSpec {
  std::vector<std::uint64_t> factors;

  void validate() const;
  std::uint64_t order() const;
  /// At most one factor per prime.
  bool is_cyclic() const;
  std::string name() const;
};

/// C_n x| C_m where the generator of C_m acts as a -> r*a on C_n.
struct MetacyclicSpec {
  std::uint64_t n = 1;
  std::uint64_t m = 1;
  std::uint64_t r = 0;

  /// Throws std::invalid_argument on gcd(n,m) != 1, gcd(r,n) != 1 or r^m != 1 mod n.
  void validate() const;
  bool nontrivial_action() const;
  /// Nontrivial, ord(r) = m, and gcd(r^j - 1, n) = 1 for 1 <= j < m.
  bool frobenius() const;
  std::string name() const;
};

/// (C_{p1}^2 x ... x C_{pt}^2) x| C_3 with a fixed-point-free order-3 action.
struct CounterexampleSpec {
  std::vector<std::uint64_t> primes;

  /// Every prime must be 2 mod 3; no duplicates.
  void validate() const;
  std::uint64_t order() const;
  std::string name() const;
};

/// Group-order ceiling for every constructor. Defaults to 20000 and may be
/// overridden with the CODSUM_SIZE_GUARD environment variable.
std::uint64_t size_guard();

PermutationGroupSpec build_cyclic(std::uint64_t n);
PermutationGroupSpec build_abelian(const AbelianGroupSpec& spec);
PermutationGroupSpec build_metacyclic(const MetacyclicSpec& spec);
PermutationGroupSpec build_counterexample(const CounterexampleSpec& spec);
PermutationGroupSpec build_direct_product(const PermutationGroupSpec& g1, const PermutationGroupSpec& g2);

/// Whether C_p^n x| C_q with a nontrivial action exists, i.e. q | p^m - 1 for some 1 <= m <= n.
bool semidirect_exists(std::uint64_t p, std::uint64_t q, std::uint64_t n);

/// Fixed corpus of small p-groups, cyclic and noncyclic, abelian and not.
std::vector<PermutationGroupSpec> pgroup_library();
/// Look up a corpus entry by name; std::nullopt when absent.
std::optional<PermutationGroupSpec> pgroup_by_name(const std::string& name);

/// Every abelian group of the given order, one spec per isomorphism class.
std::vector<AbelianGroupSpec> abelian_groups_of_order(std::uint64_t order);

/// Every valid metacyclic spec with n*m <= max_order and a nontrivial action,
/// ordered by (n*m, n, r).
std::vector<MetacyclicSpec> metacyclic_specs(std::uint64_t max_order);

void to_json(nlohmann::json& j, const PermutationGroupSpec& spec);
void from_json(const nlohmann::json& j, PermutationGroupSpec& spec);

}  // namespace codsum::groups
