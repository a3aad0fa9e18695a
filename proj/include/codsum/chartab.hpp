#pragma once

// Brute-force character-table oracle: element enumeration, conjugacy classes,
// and exact character tables by the Burnside-Dixon method over F_l.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "codsum/groups.hpp"

namespace codsum::chartab {

using groups::Permutation;

struct ConjugacyClass {
  std::uint32_t representative = 0;
  std::vector<std::uint32_t> members;  // ascending element indices
  std::uint64_t element_order = 1;

  std::uint64_t size() const { return members.size(); }
};

/// A fully enumerated permutation group.
///
/// Element 0 is the identity and class 0 is {identity}. Classes are ordered by
/// their smallest member, which is also the representative.
class GroupData {
 public:
  std::string name;

  std::uint64_t order() const { return elements_.size(); }
  std::size_t class_count() const { return classes_.size(); }
  std::uint64_t exponent() const { return exponent_; }

  const Permutation& element(std::uint32_t i) const { return elements_[i]; }
  const std::vector<Permutation>& elements() const { return elements_; }
  /// Index of a permutation, or std::nullopt if it is not in the group.
  std::optional<std::uint32_t> index_of(const Permutation& p) const;
  /// Index of element(a) * element(b).
  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
  std::uint64_t element_order(std::uint32_t a) const { return orders_[a]; }

  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  std::uint32_t class_of(std::uint32_t element) const { return class_of_[element]; }
  /// Class containing the inverses of the given class.
  std::uint32_t inverse_class(std::uint32_t c) const { return class_of_[inverse_[classes_[c].representative]]; }
  /// Class of rep(c)^j for any j >= 0.
  std::uint32_t power_class(std::uint32_t c, std::uint64_t j) const;

  bool is_abelian() const { return classes_.size() == elements_.size(); }
  bool is_cyclic() const;

  friend GroupData enumerate(const groups::PermutationGroupSpec& spec);

 private:
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::uint32_t, groups::PermutationHash> index_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint64_t> orders_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::uint32_t> class_of_;
  // power_classes_[c][j] = class of rep(c)^j for 0 <= j < element order.
  std::vector<std::vector<std::uint32_t>> power_classes_;
  std::uint64_t exponent_ = 1;
};

/// Closure of the generators. Throws std::length_error past the size guard and
/// std::runtime_error if the order disagrees with spec.expected_order.
GroupData enumerate(const groups::PermutationGroupSpec& spec);

/// Exact irreducible characters as eigenvalue multiplicities.
///
/// mults[chi][c][j] is the multiplicity of exp(2 pi i j / o) as an eigenvalue
/// of the representation at class c, where o is the order of the class
/// representative. Rows are sorted by degree, then by multiplicity vectors.
struct CharacterTable {
  std::size_t k = 0;
  std::uint64_t prime = 0;  // the field F_l used for the computation
  std::vector<std::uint64_t> degrees;
  std::vector<std::vector<std::vector<std::uint32_t>>> mults;

  /// chi(c) reconstructed in double precision.
  std::complex<double> value(std::size_t chi, std::size_t c) const;
};

CharacterTable dixon_table(const GroupData& g);

struct CodegreeReport {
  std::string name;
  std::uint64_t order = 0;
  std::uint64_t k = 0;
  std::uint64_t exponent = 0;
  std::vector<std::uint64_t> degrees;
  std::vector<std::uint64_t> kernel_sizes;
  std::vector<std::uint64_t> codegrees;
  std::uint64_t sc = 0;
  std::uint64_t t = 0;
};

/// Kernels are the classes where every eigenvalue is 1. Throws
/// std::logic_error if a codegree is not an integer.
CodegreeReport codegree_report(const GroupData& g, const CharacterTable& t);

void to_json(nlohmann::json& j, const CodegreeReport& r);

/// Maximum |<chi, psi> - delta| over all pairs of rows.
double row_orthogonality_defect(const GroupData& g, const CharacterTable& t);

struct Check {
  std::string name;
  bool applicable = false;
  bool pass = true;
  std::string detail;
};

/// Class-count inequalities: k < ((p+1)/p^2)|G| for nonabelian p-groups, and
/// k/|G| <= 1/p for every prime whose Sylow subgroup is not normal. Each
/// optional subgroup adds the check k(G)/|G| <= k(H)/|H|.
std::vector<Check> class_count_checks(const GroupData& g,
                                      const std::vector<groups::PermutationGroupSpec>& subgroups = {});

/// Whether the Sylow p-subgroup is normal, decided by counting p-elements.
bool sylow_is_normal(const GroupData& g, std::uint64_t p);

/// Centralizer of element x as a spec (generated by all of its elements).
groups::PermutationGroupSpec centralizer(const GroupData& g, std::uint32_t x);

/// Sum of element orders computed straight from the enumeration.
std::uint64_t sum_of_element_orders(const GroupData& g);

}  // namespace codsum::chartab
