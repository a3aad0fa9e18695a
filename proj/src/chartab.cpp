#include "codsum/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <tuple>

#include "codsum/arith.hpp"
#include "modular.hpp"

namespace codsum::chartab {

using modular::Matrix;
using modular::PrimeField;
using modular::Vec;

std::optional<std::uint32_t> GroupData::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t GroupData::multiply(std::uint32_t a, std::uint32_t b) const {
  return index_.at(elements_[a] * elements_[b]);
}

std::uint32_t GroupData::power_class(std::uint32_t c, std::uint64_t j) const {
  const auto& seq = power_classes_[c];
  return seq[j % seq.size()];
}

bool GroupData::is_cyclic() const {
  return std::any_of(orders_.begin(), orders_.end(), [&](std::uint64_t o) { return o == order(); });
}

GroupData enumerate(const groups::PermutationGroupSpec& spec) {
  spec.validate();
  const std::uint64_t guard = groups::size_guard();
  if (spec.expected_order && *spec.expected_order > guard)
    throw std::length_error(spec.name + ": expected order exceeds size guard");

  GroupData g;
  g.name = spec.name;
  g.elements_.push_back(Permutation::identity(spec.degree));
  g.index_.emplace(g.elements_.front(), 0);
  for (std::size_t i = 0; i < g.elements_.size(); ++i) {
    for (const auto& gen : spec.generators) {
      Permutation q = g.elements_[i] * gen;
      if (g.index_.count(q)) continue;
      if (g.elements_.size() >= guard) throw std::length_error(spec.name + ": closure exceeds size guard");
      g.index_.emplace(q, static_cast<std::uint32_t>(g.elements_.size()));
      g.elements_.push_back(std::move(q));
    }
  }
  const auto n = static_cast<std::uint32_t>(g.elements_.size());
  if (spec.expected_order && *spec.expected_order != n)
    throw std::runtime_error(spec.name + ": enumerated order " + std::to_string(n) + " != expected " +
                             std::to_string(*spec.expected_order));

  g.inverse_.resize(n);
  g.orders_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    g.inverse_[i] = g.index_.at(g.elements_[i].inverse());
    g.orders_[i] = g.elements_[i].order();
    g.exponent_ = arith::lcm(g.exponent_, g.orders_[i]);
  }

  std::vector<std::uint32_t> gens;
  for (const auto& gen : spec.generators) gens.push_back(g.index_.at(gen));

  constexpr std::uint32_t kUnset = ~0U;
  g.class_of_.assign(n, kUnset);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (g.class_of_[i] != kUnset) continue;
    const auto cid = static_cast<std::uint32_t>(g.classes_.size());
    ConjugacyClass cls;
    cls.representative = i;
    cls.element_order = g.orders_[i];
    cls.members.push_back(i);
    g.class_of_[i] = cid;
    for (std::size_t pos = 0; pos < cls.members.size(); ++pos) {
      const std::uint32_t x = cls.members[pos];
      for (std::uint32_t s : gens) {
        std::uint32_t y = g.multiply(g.multiply(g.inverse_[s], x), s);
        if (g.class_of_[y] != kUnset) continue;
        g.class_of_[y] = cid;
        cls.members.push_back(y);
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    g.classes_.push_back(std::move(cls));
  }

  g.power_classes_.resize(g.classes_.size());
  for (std::size_t c = 0; c < g.classes_.size(); ++c) {
    const std::uint32_t rep = g.classes_[c].representative;
    auto& seq = g.power_classes_[c];
    std::uint32_t cur = 0;
    for (std::uint64_t j = 0; j < g.classes_[c].element_order; ++j) {
      seq.push_back(g.class_of_[cur]);
      cur = g.multiply(cur, rep);
    }
  }
  return g;
}

namespace {

struct Subspace {
  std::vector<Vec> basis;            // column vectors of length k, reduced
  std::vector<std::size_t> pivots;   // basis[j][pivots[i]] == (i == j)
  std::vector<std::pair<std::size_t, std::uint64_t>> constraints;  // (class, eigenvalue)
};

Subspace echelonize(std::vector<Vec> vecs, const PrimeField& f) {
  Subspace s;
  const std::size_t len = vecs.empty() ? 0 : vecs[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < len && r < vecs.size(); ++col) {
    std::size_t piv = r;
    while (piv < vecs.size() && vecs[piv][col] == 0) ++piv;
    if (piv == vecs.size()) continue;
    std::swap(vecs[piv], vecs[r]);
    const std::uint64_t inv = f.inv(vecs[r][col]);
    for (auto& x : vecs[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if (i == r || vecs[i][col] == 0) continue;
      const std::uint64_t factor = vecs[i][col];
      for (std::size_t j = 0; j < len; ++j)
        if (vecs[r][j]) vecs[i][j] = f.sub(vecs[i][j], f.mul(factor, vecs[r][j]));
    }
    s.pivots.push_back(col);
    ++r;
  }
  vecs.resize(r);
  s.basis = std::move(vecs);
  return s;
}

// Sparse rows of the class matrix M_c with (M_c)[p][q] = #{x in C_c : x^-1 z_q in C_p},
// so that M_c w = w[c] w for every central character w.
std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> class_matrix_rows(const GroupData& g,
                                                                                    std::size_t c) {
  const std::size_t k = g.class_count();
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> rows(k);
  std::vector<std::uint32_t> counts(k, 0);
  std::vector<std::uint32_t> touched;
  for (std::size_t q = 0; q < k; ++q) {
    const std::uint32_t z = g.classes()[q].representative;
    for (std::uint32_t x : g.classes()[c].members) {
      std::uint32_t p = g.class_of(g.multiply(g.inverse(x), z));
      if (counts[p]++ == 0) touched.push_back(p);
    }
    for (std::uint32_t p : touched) {
      rows[p].emplace_back(static_cast<std::uint32_t>(q), counts[p]);
      counts[p] = 0;
    }
    touched.clear();
  }
  return rows;
}

std::uint64_t choose_prime(std::uint64_t order, std::uint64_t exponent) {
  const long double bound = 2.0L * std::sqrt(static_cast<long double>(order)) * exponent;
  for (std::uint64_t t = 1;; ++t) {
    const std::uint64_t ell = exponent * t + 1;
    if (ell >= (std::uint64_t{1} << 31)) throw std::runtime_error("dixon_table: no suitable prime below 2^31");
    if (static_cast<long double>(ell) <= bound) continue;
    if (arith::is_prime(ell)) return ell;
  }
}

std::uint64_t primitive_root_of_unity(std::uint64_t e, const PrimeField& f) {
  const auto prime_divisors = arith::factorize(e).factors();
  for (std::uint64_t a = 2; a < f.modulus(); ++a) {
    const std::uint64_t z = f.pow(a, (f.modulus() - 1) / e);
    bool primitive = true;
    for (const auto& pd : prime_divisors)
      if (f.pow(z, e / pd.prime) == 1) primitive = false;
    if (primitive) return z;
  }
  throw std::runtime_error("dixon_table: no primitive root of unity");
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

CharacterTable dixon_table(const GroupData& g) {
  const std::size_t k = g.class_count();
  const auto& classes = g.classes();
  const std::uint64_t n = g.order();
  const std::uint64_t e = g.exponent();
  const PrimeField f(choose_prime(n, e));

  std::vector<std::size_t> inv_class(k);
  std::vector<std::uint64_t> size_inv(k);
  for (std::size_t c = 0; c < k; ++c) {
    inv_class[c] = g.inverse_class(static_cast<std::uint32_t>(c));
    size_inv[c] = f.inv(classes[c].size());
  }

  // Galois conjugation permutes the central characters through the power maps.
  std::vector<Vec> known;
  std::set<Vec> known_set;
  auto add_orbit = [&](const Vec& w) {
    for (std::uint64_t r = 1; r <= std::max<std::uint64_t>(e, 1); ++r) {
      if (arith::gcd(r, e) != 1) continue;
      Vec conj(k);
      for (std::size_t c = 0; c < k; ++c) conj[c] = w[g.power_class(static_cast<std::uint32_t>(c), r)];
      if (known_set.insert(conj).second) known.push_back(std::move(conj));
    }
  };
  auto matches = [](const Vec& w, const std::vector<std::pair<std::size_t, std::uint64_t>>& cons) {
    return std::all_of(cons.begin(), cons.end(), [&](const auto& ce) { return w[ce.first] == ce.second; });
  };

  {
    Vec trivial(k);
    for (std::size_t c = 0; c < k; ++c) trivial[c] = f.reduce(classes[c].size());
    add_orbit(trivial);
  }

  std::vector<Subspace> pending;
  if (k > 1) {
    Subspace full;
    for (std::size_t j = 0; j < k; ++j) {
      Vec v(k, 0);
      v[j] = 1;
      full.basis.push_back(std::move(v));
      full.pivots.push_back(j);
    }
    pending.push_back(std::move(full));
  }

  std::vector<std::size_t> stage_order;
  for (std::size_t c = 1; c < k; ++c) stage_order.push_back(c);
  std::stable_sort(stage_order.begin(), stage_order.end(),
                   [&](std::size_t a, std::size_t b) { return classes[a].size() < classes[b].size(); });

  for (std::size_t c : stage_order) {
    if (pending.empty()) break;
    const auto rows = class_matrix_rows(g, c);
    std::vector<Subspace> next;
    for (auto& space : pending) {
      const std::size_t d = space.basis.size();
      Matrix a(d, Vec(d, 0));
      for (std::size_t i = 0; i < d; ++i)
        for (const auto& [col, cnt] : rows[space.pivots[i]])
          for (std::size_t j = 0; j < d; ++j)
            if (space.basis[j][col]) a[i][j] = f.add(a[i][j], f.mul(cnt, space.basis[j][col]));

      const auto poly = modular::charpoly(a, f);
      const auto roots = modular::split_roots(poly, f);
      if (roots.size() == 1) {
        next.push_back(std::move(space));
        continue;
      }
      for (std::uint64_t lambda : roots) {
        const unsigned mult = modular::root_multiplicity(poly, lambda, f);
        auto cons = space.constraints;
        cons.emplace_back(c, lambda);
        const auto resolved = static_cast<std::size_t>(
            std::count_if(known.begin(), known.end(), [&](const Vec& w) { return matches(w, cons); }));
        if (resolved == mult) continue;
        if (resolved > mult) throw std::logic_error("dixon_table: eigenspace smaller than known characters");

        Matrix shifted = a;
        for (std::size_t i = 0; i < d; ++i) shifted[i][i] = f.sub(shifted[i][i], lambda);
        const auto kernel = modular::nullspace(std::move(shifted), f);
        if (kernel.size() != mult) throw std::logic_error("dixon_table: class matrix is not diagonalizable");

        std::vector<Vec> vecs;
        for (const auto& u : kernel) {
          Vec w(k, 0);
          for (std::size_t j = 0; j < d; ++j) {
            if (u[j] == 0) continue;
            for (std::size_t q = 0; q < k; ++q)
              if (space.basis[j][q]) w[q] = f.add(w[q], f.mul(u[j], space.basis[j][q]));
          }
          vecs.push_back(std::move(w));
        }
        if (mult == 1) {
          Vec w = std::move(vecs.front());
          const std::uint64_t scale = f.inv(w[0]);
          for (auto& x : w) x = f.mul(x, scale);
          add_orbit(w);
        } else {
          Subspace child = echelonize(std::move(vecs), f);
          child.constraints = std::move(cons);
          next.push_back(std::move(child));
        }
      }
    }
    pending = std::move(next);
  }
  if (!pending.empty() || known.size() != k)
    throw std::runtime_error("dixon_table: eigenspace splitting did not separate all characters of " + g.name);

  const std::uint64_t z = primitive_root_of_unity(e, f);
  const std::uint64_t root_bound = isqrt(n);

  // Classes sharing a cyclic subgroup up to conjugacy have permuted multiplicities.
  std::vector<std::size_t> rat_rep(k, k);
  std::vector<std::uint64_t> rat_power(k, 1);
  for (std::size_t c = 0; c < k; ++c) {
    if (rat_rep[c] != k) continue;
    const std::uint64_t o = classes[c].element_order;
    for (std::uint64_t r = 1; r <= o; ++r) {
      if (arith::gcd(r, o) != 1) continue;
      const std::uint32_t c2 = g.power_class(static_cast<std::uint32_t>(c), r);
      if (rat_rep[c2] == k) {
        rat_rep[c2] = c;
        rat_power[c2] = r % o;
      }
    }
  }

  struct Row {
    std::uint64_t degree;
    std::vector<std::vector<std::uint32_t>> mults;
  };
  std::vector<Row> rows;
  for (const Vec& w : known) {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < k; ++c) s = f.add(s, f.mul(f.mul(w[c], w[inv_class[c]]), size_inv[c]));
    const std::uint64_t deg2 = f.mul(f.reduce(n), f.inv(s));
    std::uint64_t degree = 0;
    for (std::uint64_t cand = 1; cand <= root_bound; ++cand)
      if (f.mul(cand, cand) == deg2) {
        degree = cand;
        break;
      }
    if (degree == 0) throw std::runtime_error("dixon_table: degree does not lift for " + g.name);

    Vec values(k);
    for (std::size_t c = 0; c < k; ++c) values[c] = f.mul(f.mul(w[c], degree), size_inv[c]);

    Row row{degree, std::vector<std::vector<std::uint32_t>>(k)};
    for (std::size_t c = 0; c < k; ++c) {
      if (rat_rep[c] != c) continue;
      const std::uint64_t o = classes[c].element_order;
      const std::uint64_t zeta = f.pow(z, e / o);
      Vec zpow(o);
      zpow[0] = 1;
      for (std::uint64_t q = 1; q < o; ++q) zpow[q] = f.mul(zpow[q - 1], zeta);
      Vec chi_t(o);
      for (std::uint64_t t = 0; t < o; ++t) chi_t[t] = values[g.power_class(static_cast<std::uint32_t>(c), t)];
      const std::uint64_t o_inv = f.inv(o);
      std::vector<std::uint32_t> a(o);
      std::uint64_t total = 0;
      for (std::uint64_t m = 0; m < o; ++m) {
        std::uint64_t acc = 0;
        for (std::uint64_t t = 0; t < o; ++t) acc = f.add(acc, f.mul(chi_t[t], zpow[(o - (m * t) % o) % o]));
        acc = f.mul(acc, o_inv);
        if (acc > degree) throw std::runtime_error("dixon_table: multiplicity does not lift for " + g.name);
        a[m] = static_cast<std::uint32_t>(acc);
        total += acc;
      }
      if (total != degree) throw std::runtime_error("dixon_table: multiplicities do not sum to the degree");
      row.mults[c] = std::move(a);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (rat_rep[c] == c) continue;
      const auto& base = row.mults[rat_rep[c]];
      const std::uint64_t o = base.size(), r = rat_power[c];
      std::vector<std::uint32_t> a(o);
      for (std::uint64_t m = 0; m < o; ++m) a[(m * r) % o] = base[m];
      row.mults[c] = std::move(a);
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.degree, x.mults) < std::tie(y.degree, y.mults);
  });

  CharacterTable table;
  table.k = k;
  table.prime = f.modulus();
  for (auto& r : rows) {
    table.degrees.push_back(r.degree);
    table.mults.push_back(std::move(r.mults));
  }
  return table;
}

std::complex<double> CharacterTable::value(std::size_t chi, std::size_t c) const {
  const auto& a = mults[chi][c];
  std::complex<double> v = 0;
  for (std::size_t m = 0; m < a.size(); ++m)
    if (a[m]) v += static_cast<double>(a[m]) * std::polar(1.0, 2.0 * std::numbers::pi * m / a.size());
  return v;
}

CodegreeReport codegree_report(const GroupData& g, const CharacterTable& t) {
  if (t.k != g.class_count()) throw std::invalid_argument("codegree_report: table does not belong to group");
  CodegreeReport rep;
  rep.name = g.name;
  rep.order = g.order();
  rep.k = t.k;
  rep.exponent = g.exponent();
  for (std::size_t chi = 0; chi < t.k; ++chi) {
    const std::uint64_t d = t.degrees[chi];
    std::uint64_t kernel = 0;
    for (std::size_t c = 0; c < t.k; ++c)
      if (t.mults[chi][c][0] == d) kernel += g.classes()[c].size();
    if (kernel == 0 || g.order() % kernel != 0) throw std::logic_error("codegree_report: kernel size does not divide |G|");
    const std::uint64_t index = g.order() / kernel;
    if (index % d != 0)
      throw std::logic_error("codegree_report: non-integral codegree " + std::to_string(index) + "/" +
                             std::to_string(d) + " in " + g.name);
    rep.degrees.push_back(d);
    rep.kernel_sizes.push_back(kernel);
    rep.codegrees.push_back(index / d);
    rep.sc += index / d;
    rep.t += d;
  }
  return rep;
}

void to_json(nlohmann::json& j, const CodegreeReport& r) {
  j = nlohmann::json{{"name", r.name},         {"order", r.order},     {"k", r.k},
                     {"exponent", r.exponent}, {"degrees", r.degrees}, {"codegrees", r.codegrees},
                     {"kernel_sizes", r.kernel_sizes}, {"Sc", r.sc},   {"T", r.t}};
}

double row_orthogonality_defect(const GroupData& g, const CharacterTable& t) {
  std::vector<std::vector<std::complex<double>>> vals(t.k, std::vector<std::complex<double>>(t.k));
  for (std::size_t chi = 0; chi < t.k; ++chi)
    for (std::size_t c = 0; c < t.k; ++c) vals[chi][c] = t.value(chi, c);
  double worst = 0;
  for (std::size_t a = 0; a < t.k; ++a)
    for (std::size_t b = a; b < t.k; ++b) {
      std::complex<double> s = 0;
      for (std::size_t c = 0; c < t.k; ++c)
        s += static_cast<double>(g.classes()[c].size()) * vals[a][c] * std::conj(vals[b][c]);
      s /= static_cast<double>(g.order());
      worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}

bool sylow_is_normal(const GroupData& g, std::uint64_t p) {
  std::uint64_t part = 1;
  for (std::uint64_t n = g.order(); n % p == 0; n /= p) part *= p;
  std::uint64_t p_elements = 0;
  for (std::uint32_t i = 0; i < g.order(); ++i) {
    std::uint64_t o = g.element_order(i);
    while (o % p == 0) o /= p;
    if (o == 1) ++p_elements;
  }
  return p_elements == part;
}

groups::PermutationGroupSpec centralizer(const GroupData& g, std::uint32_t x) {
  groups::PermutationGroupSpec spec;
  spec.name = g.name + ".C(" + std::to_string(x) + ")";
  spec.degree = g.element(0).degree();
  for (std::uint32_t y = 0; y < g.order(); ++y)
    if (g.multiply(x, y) == g.multiply(y, x)) spec.generators.push_back(g.element(y));
  spec.expected_order = spec.generators.size();
  return spec;
}

std::uint64_t sum_of_element_orders(const GroupData& g) {
  std::uint64_t s = 0;
  for (std::uint32_t i = 0; i < g.order(); ++i) s += g.element_order(i);
  return s;
}

std::vector<Check> class_count_checks(const GroupData& g, const std::vector<groups::PermutationGroupSpec>& subgroups) {
  std::vector<Check> out;
  const std::uint64_t n = g.order(), k = g.class_count();
  const auto fac = arith::factorize(n);

  Check pgroup{"pgroup_class_bound", false, true, ""};
  if (fac.prime_count() != 1) {
    pgroup.detail = "skipped: not a nontrivial p-group";
  } else if (g.is_abelian()) {
    pgroup.detail = "skipped: abelian";
  } else {
    const std::uint64_t p = fac.factors().front().prime;
    pgroup.applicable = true;
    pgroup.pass = k * p * p < (p + 1) * n;
    pgroup.detail = "p=" + std::to_string(p) + " k=" + std::to_string(k) + " bound=" + std::to_string((p + 1) * n) +
                    "/" + std::to_string(p * p);
  }
  out.push_back(std::move(pgroup));

  for (const auto& pp : fac.factors()) {
    Check sylow{"sylow_nonnormal p=" + std::to_string(pp.prime), false, true, ""};
    if (sylow_is_normal(g, pp.prime)) {
      sylow.detail = "skipped: Sylow subgroup is normal";
    } else {
      sylow.applicable = true;
      sylow.pass = k * pp.prime <= n;
      sylow.detail = "k/|G|=" + std::to_string(k) + "/" + std::to_string(n);
    }
    out.push_back(std::move(sylow));
  }

  for (const auto& spec : subgroups) {
    Check sub{"subgroup_ratio H=" + spec.name, false, true, ""};
    const GroupData h = enumerate(spec);
    bool inside = std::all_of(h.elements().begin(), h.elements().end(),
                              [&](const Permutation& p) { return g.index_of(p).has_value(); });
    if (!inside || h.order() >= n) {
      sub.detail = "skipped: not a proper subgroup";
    } else {
      sub.applicable = true;
      sub.pass = k * h.order() <= h.class_count() * n;
      sub.detail = "k(G)=" + std::to_string(k) + " |G|=" + std::to_string(n) + " k(H)=" +
                   std::to_string(h.class_count()) + " |H|=" + std::to_string(h.order());
    }
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace codsum::chartab
