#include "modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace codsum::modular {

namespace {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::size_t degree(const Poly& a) { return a.empty() ? 0 : a.size() - 1; }

Poly make_monic(Poly a, const PrimeField& f) {
  trim(a);
  if (a.empty()) return a;
  std::uint64_t inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv);
  return a;
}

// Remainder of a modulo b (b nonzero).
Poly poly_mod(Poly a, const Poly& b, const PrimeField& f) {
  trim(a);
  const std::size_t db = degree(b);
  const std::uint64_t lead_inv = f.inv(b.back());
  while (!a.empty() && a.size() >= b.size()) {
    std::uint64_t q = f.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(q, b[i]));
    trim(a);
  }
  return a;
}

// Quotient of an exact division a / b.
Poly poly_div(Poly a, const Poly& b, const PrimeField& f) {
  trim(a);
  if (a.size() < b.size()) return {};
  const std::uint64_t lead_inv = f.inv(b.back());
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t c = f.mul(a[k + b.size() - 1], lead_inv);
    q[k] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] = f.sub(a[k + i], f.mul(c, b[i]));
  }
  trim(q);
  return q;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, const PrimeField& f) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = f.add(prod[i + j], f.mul(a[i], b[j]));
  }
  return poly_mod(std::move(prod), m, f);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, const PrimeField& f) {
  Poly result = poly_mod(Poly{1}, m, f);
  base = poly_mod(std::move(base), m, f);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, m, f);
    base = poly_mulmod(base, base, m, f);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, const PrimeField& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), f);
}

void split_rec(const Poly& g, const PrimeField& f, std::vector<std::uint64_t>& out) {
  if (degree(g) == 0) return;
  if (degree(g) == 1) {
    // g = x + c (monic)
    out.push_back(f.neg(g[0]));
    return;
  }
  const std::uint64_t half = (f.modulus() - 1) / 2;
  for (std::uint64_t a = 0; a < f.modulus(); ++a) {
    Poly h = poly_powmod(Poly{a, 1}, half, g, f);
    if (h.empty()) h = {0};
    h[0] = f.sub(h[0], 1);
    Poly d = poly_gcd(g, h, f);
    if (degree(d) > 0 && degree(d) < degree(g)) {
      split_rec(d, f, out);
      split_rec(make_monic(poly_div(g, d, f), f), f, out);
      return;
    }
  }
  throw std::runtime_error("split_roots: polynomial does not split over the field");
}

}  // namespace

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("PrimeField: inverse of zero");
  return pow(a, p_ - 2);
}

std::vector<Vec> nullspace(Matrix a, const PrimeField& f) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const std::uint64_t inv = f.inv(a[r][c]);
    for (std::size_t j = c; j < cols; ++j) a[r][j] = f.mul(a[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const std::uint64_t factor = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j]) a[i][j] = f.sub(a[i][j], f.mul(factor, a[r][j]));
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = f.neg(a[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

Poly charpoly(Matrix h, const PrimeField& f) {
  const std::size_t n = h.size();
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    const std::uint64_t inv = f.inv(h[m][m - 1]);
    for (std::size_t j = m + 1; j < n; ++j) {
      if (h[j][m - 1] == 0) continue;
      const std::uint64_t u = f.mul(h[j][m - 1], inv);
      for (std::size_t c = 0; c < n; ++c) h[j][c] = f.sub(h[j][c], f.mul(u, h[m][c]));
      for (std::size_t r = 0; r < n; ++r) h[r][m] = f.add(h[r][m], f.mul(u, h[r][j]));
    }
  }
  std::vector<Poly> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Poly cur(m + 1, 0);
    // (x - h[m-1][m-1]) * p[m-1]
    for (std::size_t i = 0; i < p[m - 1].size(); ++i) {
      cur[i + 1] = f.add(cur[i + 1], p[m - 1][i]);
      cur[i] = f.sub(cur[i], f.mul(h[m - 1][m - 1], p[m - 1][i]));
    }
    std::uint64_t t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = f.mul(t, h[m - i][m - i - 1]);
      if (t == 0) break;
      const std::uint64_t c = f.mul(t, h[m - i - 1][m - 1]);
      if (c == 0) continue;
      const Poly& prev = p[m - i - 1];
      for (std::size_t k = 0; k < prev.size(); ++k) cur[k] = f.sub(cur[k], f.mul(c, prev[k]));
    }
    p[m] = std::move(cur);
  }
  return p[n];
}

std::vector<std::uint64_t> split_roots(const Poly& poly, const PrimeField& f) {
  Poly monic = make_monic(poly, f);
  if (degree(monic) == 0) return {};
  // gcd with x^p - x keeps each root exactly once.
  Poly xp = poly_powmod(Poly{0, 1}, f.modulus(), monic, f);
  xp.resize(std::max<std::size_t>(xp.size(), 2), 0);
  xp[1] = f.sub(xp[1], 1);
  Poly g = poly_gcd(monic, xp, f);
  std::vector<std::uint64_t> roots;
  split_rec(g, f, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

unsigned root_multiplicity(Poly poly, std::uint64_t root, const PrimeField& f) {
  trim(poly);
  unsigned mult = 0;
  while (poly.size() > 1) {
    // Synthetic division by (x - root).
    Poly q(poly.size() - 1);
    std::uint64_t carry = 0;
    for (std::size_t k = poly.size(); k-- > 1;) {
      carry = f.add(poly[k], f.mul(carry, root));
      q[k - 1] = carry;
    }
    std::uint64_t rem = f.add(poly[0], f.mul(carry, root));
    if (rem != 0) break;
    ++mult;
    poly = std::move(q);
  }
  return mult;
}

}  // namespace codsum::modular
