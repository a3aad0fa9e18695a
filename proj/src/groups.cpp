#include "codsum/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "codsum/arith.hpp"

namespace codsum::groups {

namespace {

constexpr std::uint64_t kDefaultSizeGuard = 20000;

void check_guard(std::uint64_t order, const std::string& name) {
  if (order > size_guard())
    throw std::length_error("group " + name + " of order " + std::to_string(order) + " exceeds size guard " +
                            std::to_string(size_guard()));
}

// Permutation of `total` points that acts by `local` on [offset, offset+local.size())
// and fixes everything else.
Permutation embed(const std::vector<std::uint32_t>& local, std::size_t offset, std::size_t total) {
  std::vector<std::uint32_t> img(total);
  std::iota(img.begin(), img.end(), 0U);
  for (std::size_t i = 0; i < local.size(); ++i) img[offset + i] = static_cast<std::uint32_t>(offset + local[i]);
  return Permutation(std::move(img));
}

std::vector<std::uint32_t> rotation(std::size_t n) {
  std::vector<std::uint32_t> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<std::uint32_t>((i + 1) % n);
  return img;
}

// Right regular representation of a group given by its multiplication on indices.
PermutationGroupSpec regular(std::string name, std::size_t order,
                             const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                             const std::vector<std::size_t>& gens) {
  PermutationGroupSpec spec{std::move(name), order, {}, order};
  for (std::size_t g : gens) {
    std::vector<std::uint32_t> img(order);
    for (std::size_t x = 0; x < order; ++x) img[x] = static_cast<std::uint32_t>(mul(x, g));
    spec.generators.emplace_back(std::move(img));
  }
  return spec;
}

// Dicyclic group <a, b | a^{2n}, b^2 = a^n, b a b^-1 = a^-1>; element a^k b^e has index 2k + e.
PermutationGroupSpec dicyclic(std::string name, std::size_t n) {
  const std::size_t two_n = 2 * n;
  auto mul = [=](std::size_t x, std::size_t y) {
    std::size_t k = x / 2, e = x % 2, l = y / 2, f = y % 2;
    std::size_t s = e ? (two_n - l) % two_n : l;
    std::size_t kk = (k + s + ((e & f) ? n : 0)) % two_n;
    return 2 * kk + (e ^ f);
  };
  return regular(std::move(name), 2 * two_n, mul, {2, 1});
}

// Dihedral group of order 2n acting on the n-gon.
PermutationGroupSpec dihedral(std::string name, std::size_t n) {
  std::vector<std::uint32_t> refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<std::uint32_t>((n - i) % n);
  return {std::move(name), n, {Permutation(rotation(n)), Permutation(refl)}, 2 * n};
}

// Affine maps a -> mult^j a + b on Z/n.
PermutationGroupSpec affine(std::string name, std::size_t n, std::size_t mult, std::uint64_t order) {
  std::vector<std::uint32_t> scale(n);
  for (std::size_t i = 0; i < n; ++i) scale[i] = static_cast<std::uint32_t>(i * mult % n);
  return {std::move(name), n, {Permutation(rotation(n)), Permutation(scale)}, order};
}

// Upper unitriangular 3x3 matrices over F_p acting on column vectors.
PermutationGroupSpec heisenberg(std::string name, std::size_t p) {
  const std::size_t deg = p * p * p;
  auto idx = [=](std::size_t x, std::size_t y, std::size_t z) { return (x * p + y) * p + z; };
  std::vector<std::uint32_t> g1(deg), g2(deg);
  for (std::size_t x = 0; x < p; ++x)
    for (std::size_t y = 0; y < p; ++y)
      for (std::size_t z = 0; z < p; ++z) {
        g1[idx(x, y, z)] = static_cast<std::uint32_t>(idx((x + y) % p, y, z));
        g2[idx(x, y, z)] = static_cast<std::uint32_t>(idx(x, (y + z) % p, z));
      }
  return {std::move(name), deg, {Permutation(g1), Permutation(g2)}, deg};
}

PermutationGroupSpec renamed(PermutationGroupSpec s, std::string name) {
  s.name = std::move(name);
  return s;
}

}  // namespace

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t v : images_) {
    if (v >= images_.size() || seen[v]) throw std::invalid_argument("Permutation: images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  Permutation p;
  p.images_.resize(degree);
  std::iota(p.images_.begin(), p.images_.end(), 0U);
  return p;
}

Permutation Permutation::operator*(const Permutation& other) const {
  if (other.degree() != degree()) throw std::invalid_argument("Permutation: degree mismatch");
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = other.images_[images_[i]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = arith::lcm(ord, len);
  }
  return ord;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image words.
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint32_t v : p.images()) {
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

void PermutationGroupSpec::validate() const {
  if (degree == 0) throw std::invalid_argument(name + ": degree must be positive");
  if (generators.empty()) throw std::invalid_argument(name + ": no generators");
  for (const auto& g : generators)
    if (g.degree() != degree) throw std::invalid_argument(name + ": generator degree mismatch");
}

void AbelianGroupSpec::validate() const {
  for (std::uint64_t f : factors) {
    if (f < 2) throw std::invalid_argument("abelian factor must be a prime power >= 2");
    if (arith::factorize(f).prime_count() != 1)
      throw std::invalid_argument("abelian factor " + std::to_string(f) + " is not a prime power");
  }
}

std::uint64_t AbelianGroupSpec::order() const {
  std::uint64_t o = 1;
  for (std::uint64_t f : factors) o *= f;
  return o;
}

bool AbelianGroupSpec::is_cyclic() const {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t f : factors) ps.push_back(arith::factorize(f).factors().front().prime);
  std::sort(ps.begin(), ps.end());
  return std::adjacent_find(ps.begin(), ps.end()) == ps.end();
}

std::string AbelianGroupSpec::name() const {
  if (factors.empty()) return "C1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "xC" : "C") + std::to_string(factors[i]);
  return s;
}

void MetacyclicSpec::validate() const {
  if (n == 0 || m == 0) throw std::invalid_argument("metacyclic: n and m must be positive");
  if (r >= n) throw std::invalid_argument("metacyclic: r must lie in [0, n)");
  if (arith::gcd(n, m) != 1) throw std::invalid_argument("metacyclic: gcd(n, m) != 1");
  if (arith::gcd(r, n) != 1) throw std::invalid_argument("metacyclic: gcd(r, n) != 1");
  if (arith::mod_pow(r, m, n) != 1 % n) throw std::invalid_argument("metacyclic: r^m != 1 (mod n)");
}

bool MetacyclicSpec::nontrivial_action() const { return r % n != 1 % n; }

bool MetacyclicSpec::frobenius() const {
  if (!nontrivial_action()) return false;
  if (arith::multiplicative_order(r, n) != m) return false;
  std::uint64_t rj = 1;
  for (std::uint64_t j = 1; j < m; ++j) {
    rj = rj * r % n;
    if (arith::gcd((rj + n - 1) % n, n) != 1) return false;
  }
  return true;
}

std::string MetacyclicSpec::name() const {
  return "C" + std::to_string(n) + ":C" + std::to_string(m) + "[r=" + std::to_string(r) + "]";
}

void CounterexampleSpec::validate() const {
  std::vector<std::uint64_t> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("counterexample: duplicate prime");
  for (std::uint64_t p : primes) {
    if (!arith::is_prime(p)) throw std::invalid_argument("counterexample: " + std::to_string(p) + " is not prime");
    if (p % 3 != 2) throw std::invalid_argument("counterexample: prime " + std::to_string(p) + " is not 2 mod 3");
  }
}

std::uint64_t CounterexampleSpec::order() const {
  std::uint64_t o = 3;
  for (std::uint64_t p : primes) o *= p * p;
  return o;
}

std::string CounterexampleSpec::name() const {
  std::string s = "F[";
  for (std::size_t i = 0; i < primes.size(); ++i) s += (i ? "," : "") + std::to_string(primes[i]);
  return s + "]";
}

std::uint64_t size_guard() {
  if (const char* env = std::getenv("CODSUM_SIZE_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultSizeGuard;
}

PermutationGroupSpec build_cyclic(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("build_cyclic: n must be positive");
  std::string name = "C" + std::to_string(n);
  check_guard(n, name);
  return {name, n, {Permutation(rotation(n))}, n};
}

PermutationGroupSpec build_abelian(const AbelianGroupSpec& spec) {
  spec.validate();
  std::string name = spec.name();
  check_guard(spec.order(), name);
  if (spec.factors.empty()) return renamed(build_cyclic(1), name);
  std::size_t degree = 0;
  for (std::uint64_t f : spec.factors) degree += f;
  PermutationGroupSpec out{name, degree, {}, spec.order()};
  std::size_t offset = 0;
  for (std::uint64_t f : spec.factors) {
    out.generators.push_back(embed(rotation(f), offset, degree));
    offset += f;
  }
  return out;
}

PermutationGroupSpec build_metacyclic(const MetacyclicSpec& spec) {
  spec.validate();
  const std::uint64_t n = spec.n, m = spec.m;
  check_guard(n * m, spec.name());
  const std::size_t degree = n + m;
  std::vector<std::uint32_t> x(degree), y(degree);
  std::iota(x.begin(), x.end(), 0U);
  for (std::uint64_t a = 0; a < n; ++a) {
    x[a] = static_cast<std::uint32_t>((a + 1) % n);
    y[a] = static_cast<std::uint32_t>(a * spec.r % n);
  }
  for (std::uint64_t b = 0; b < m; ++b) y[n + b] = static_cast<std::uint32_t>(n + (b + 1) % m);
  return {spec.name(), degree, {Permutation(x), Permutation(y)}, n * m};
}

PermutationGroupSpec build_counterexample(const CounterexampleSpec& spec) {
  spec.validate();
  check_guard(spec.order(), spec.name());
  std::size_t degree = 3;
  for (std::uint64_t p : spec.primes) degree += p * p;
  PermutationGroupSpec out{spec.name(), degree, {}, spec.order()};

  std::vector<std::uint32_t> rot(degree);
  std::iota(rot.begin(), rot.end(), 0U);
  std::size_t offset = 0;
  for (std::uint64_t p : spec.primes) {
    // Point u*p + v of the block is the vector (u, v) in F_p^2.
    std::vector<std::uint32_t> tu(p * p), tv(p * p);
    for (std::uint64_t u = 0; u < p; ++u)
      for (std::uint64_t v = 0; v < p; ++v) {
        tu[u * p + v] = static_cast<std::uint32_t>(((u + 1) % p) * p + v);
        tv[u * p + v] = static_cast<std::uint32_t>(u * p + (v + 1) % p);
        // Companion matrix of x^2 + x + 1: (u, v) -> (-v, u - v).
        std::uint64_t nu = (p - v) % p, nv = (u + p - v) % p;
        rot[offset + u * p + v] = static_cast<std::uint32_t>(offset + nu * p + nv);
      }
    out.generators.push_back(embed(tu, offset, degree));
    out.generators.push_back(embed(tv, offset, degree));
    offset += p * p;
  }
  for (std::size_t i = 0; i < 3; ++i) rot[offset + i] = static_cast<std::uint32_t>(offset + (i + 1) % 3);
  out.generators.emplace_back(std::move(rot));
  return out;
}

PermutationGroupSpec build_direct_product(const PermutationGroupSpec& g1, const PermutationGroupSpec& g2) {
  g1.validate();
  g2.validate();
  std::optional<std::uint64_t> order;
  std::string name = g1.name + "x" + g2.name;
  if (g1.expected_order && g2.expected_order) {
    order = *g1.expected_order * *g2.expected_order;
    check_guard(*order, name);
  }
  const std::size_t degree = g1.degree + g2.degree;
  PermutationGroupSpec out{name, degree, {}, order};
  for (const auto& g : g1.generators) out.generators.push_back(embed(g.images(), 0, degree));
  for (const auto& g : g2.generators) out.generators.push_back(embed(g.images(), g1.degree, degree));
  return out;
}

bool semidirect_exists(std::uint64_t p, std::uint64_t q, std::uint64_t n) {
  if (p == q) throw std::invalid_argument("semidirect_exists: p and q must differ");
  std::uint64_t pm = 1 % q;
  for (std::uint64_t m = 1; m <= n; ++m) {
    pm = arith::mul_mod(pm, p, q);
    if (pm == 1 % q) return true;
  }
  return false;
}

std::vector<PermutationGroupSpec> pgroup_library() {
  auto ab = [](std::vector<std::uint64_t> f) { return build_abelian(AbelianGroupSpec{std::move(f)}); };
  std::vector<PermutationGroupSpec> lib;
  lib.push_back(ab({4}));
  lib.push_back(ab({8}));
  lib.push_back(ab({16}));
  lib.push_back(ab({2, 2}));
  lib.push_back(ab({2, 4}));
  lib.push_back(ab({2, 2, 2}));
  lib.push_back(ab({4, 4}));
  lib.push_back(dihedral("D8", 4));
  lib.push_back(dicyclic("Q8", 2));
  lib.push_back(dihedral("D16", 8));
  lib.push_back(dicyclic("Q16", 4));
  lib.push_back(affine("M16", 8, 5, 16));
  lib.push_back(renamed(build_direct_product(dihedral("D8", 4), build_cyclic(2)), "D8xC2"));
  lib.push_back(renamed(build_direct_product(dicyclic("Q8", 2), build_cyclic(2)), "Q8xC2"));
  lib.push_back(ab({9}));
  lib.push_back(ab({3, 3}));
  lib.push_back(ab({27}));
  lib.push_back(ab({3, 9}));
  lib.push_back(heisenberg("Heisenberg3", 3));
  lib.push_back(affine("M27", 9, 4, 27));
  lib.push_back(ab({25}));
  lib.push_back(ab({5, 5}));
  lib.push_back(heisenberg("Heisenberg5", 5));
  lib.push_back(ab({7, 7}));
  return lib;
}

std::optional<PermutationGroupSpec> pgroup_by_name(const std::string& name) {
  for (auto& g : pgroup_library())
    if (g.name == name) return g;
  return std::nullopt;
}

std::vector<AbelianGroupSpec> abelian_groups_of_order(std::uint64_t order) {
  if (order == 0) throw std::invalid_argument("abelian_groups_of_order: order must be positive");
  // Partitions of each exponent, largest part first.
  std::function<void(unsigned, unsigned, std::vector<unsigned>&, std::vector<std::vector<unsigned>>&)> parts =
      [&](unsigned rest, unsigned max_part, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
        if (rest == 0) {
          out.push_back(cur);
          return;
        }
        for (unsigned k = std::min(rest, max_part); k >= 1; --k) {
          cur.push_back(k);
          parts(rest - k, k, cur, out);
          cur.pop_back();
        }
      };
  std::vector<AbelianGroupSpec> result{AbelianGroupSpec{}};
  const auto fo = arith::factorize(order);
  for (const auto& f : fo.factors()) {
    std::vector<std::vector<unsigned>> ps;
    std::vector<unsigned> cur;
    parts(f.exponent, f.exponent, cur, ps);
    std::vector<AbelianGroupSpec> next;
    for (const auto& base : result)
      for (const auto& part : ps) {
        AbelianGroupSpec s = base;
        for (unsigned k : part) {
          std::uint64_t pk = 1;
          for (unsigned i = 0; i < k; ++i) pk *= f.prime;
          s.factors.push_back(pk);
        }
        next.push_back(std::move(s));
      }
    result = std::move(next);
  }
  return result;
}

std::vector<MetacyclicSpec> metacyclic_specs(std::uint64_t max_order) {
  std::vector<MetacyclicSpec> out;
  for (std::uint64_t order = 1; order <= max_order; ++order)
    for (std::uint64_t n = 2; n <= order; ++n) {
      if (order % n) continue;
      std::uint64_t m = order / n;
      if (m < 2 || arith::gcd(n, m) != 1) continue;
      for (std::uint64_t r = 2; r < n; ++r) {
        if (arith::gcd(r, n) != 1 || arith::mod_pow(r, m, n) != 1) continue;
        out.push_back({n, m, r});
      }
    }
  return out;
}

void to_json(nlohmann::json& j, const PermutationGroupSpec& spec) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : spec.generators) gens.push_back(g.images());
  j = nlohmann::json{{"name", spec.name}, {"degree", spec.degree}, {"generators", gens}};
  if (spec.expected_order)
    j["expected_order"] = *spec.expected_order;
  else
    j["expected_order"] = nullptr;
}

void from_json(const nlohmann::json& j, PermutationGroupSpec& spec) {
  spec.name = j.value("name", std::string("group"));
  spec.degree = j.at("degree").get<std::size_t>();
  spec.generators.clear();
  for (const auto& g : j.at("generators")) spec.generators.emplace_back(g.get<std::vector<std::uint32_t>>());
  spec.expected_order.reset();
  if (j.contains("expected_order") && !j.at("expected_order").is_null())
    spec.expected_order = j.at("expected_order").get<std::uint64_t>();
  spec.validate();
  if (spec.expected_order) check_guard(*spec.expected_order, spec.name);
}

}  // namespace codsum::groups
