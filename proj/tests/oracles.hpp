// Brute-force reference implementations used only by the tests. Relations are
// plain bool matrices and every property is a literal quantifier loop.
#ifndef ORDBUBBLE_TESTS_ORACLES_HPP
#define ORDBUBBLE_TESTS_ORACLES_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "ordbubble/rational.hpp"
#include "ordbubble/relation.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<bool>>;

inline Matrix of(const ordbubble::Relation& r) {
  Matrix m(r.size(), std::vector<bool>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) m[i][j] = r.test(i, j);
  return m;
}

inline ordbubble::Relation to_relation(const Matrix& m, const ordbubble::Carrier& c) {
  ordbubble::Relation r(c);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j]) r.set(i, j);
  return r;
}

inline Matrix zero(std::size_t n) { return Matrix(n, std::vector<bool>(n, false)); }

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  Matrix m = zero(n);
  for (auto& row : m)
    for (std::size_t j = 0; j < n; ++j) row[j] = bit(rng);
  return m;
}

/// All n x n matrices, entry (i, j) at bit n*n-1-(i*n+j).
inline void for_each_matrix(std::size_t n, const std::function<void(const Matrix&)>& fn) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
    Matrix m = zero(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = (mask >> (n * n - 1 - (i * n + j))) & 1u;
    fn(m);
  }
}

inline bool reflexive(const Matrix& m) {
  for (std::size_t x = 0; x < m.size(); ++x)
    if (!m[x][x]) return false;
  return true;
}
inline bool irreflexive(const Matrix& m) {
  for (std::size_t x = 0; x < m.size(); ++x)
    if (m[x][x]) return false;
  return true;
}
inline bool symmetric(const Matrix& m) {
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (m[x][y] && !m[y][x]) return false;
  return true;
}
inline bool antisymmetric(const Matrix& m) {
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (x != y && m[x][y] && m[y][x]) return false;
  return true;
}
inline bool asymmetric(const Matrix& m) {
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (m[x][y] && m[y][x]) return false;
  return true;
}
inline bool complete(const Matrix& m) {
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y)
      if (!m[x][y] && !m[y][x]) return false;
  return true;
}
inline bool transitive(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (m[x][y] && m[y][z] && !m[x][z]) return false;
  return true;
}
inline bool negatively_transitive(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (m[x][z] && !m[x][y] && !m[y][z]) return false;
  return true;
}
inline bool preorder(const Matrix& m) { return reflexive(m) && transitive(m); }
inline bool partial_order(const Matrix& m) { return preorder(m) && antisymmetric(m); }
inline bool linear_order(const Matrix& m) { return partial_order(m) && complete(m); }
inline bool equivalence(const Matrix& m) { return reflexive(m) && symmetric(m) && transitive(m); }

inline Matrix inverse(const Matrix& m) {
  Matrix out = zero(m.size());
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < m.size(); ++y) out[y][x] = m[x][y];
  return out;
}
inline Matrix complement(const Matrix& m) {
  Matrix out = m;
  for (auto& row : out) row.flip();
  return out;
}
inline Matrix meet(const Matrix& a, const Matrix& b) {
  Matrix out = zero(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) out[x][y] = a[x][y] && b[x][y];
  return out;
}
inline Matrix join(const Matrix& a, const Matrix& b) {
  Matrix out = zero(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) out[x][y] = a[x][y] || b[x][y];
  return out;
}
inline Matrix minus(const Matrix& a, const Matrix& b) { return meet(a, complement(b)); }
inline Matrix diagonal(std::size_t n) {
  Matrix out = zero(n);
  for (std::size_t x = 0; x < n; ++x) out[x][x] = true;
  return out;
}

inline Matrix sym_part(const Matrix& m) { return meet(m, inverse(m)); }
inline Matrix asym_part(const Matrix& m) { return minus(m, sym_part(m)); }
inline Matrix comparable(const Matrix& m) { return join(m, inverse(m)); }
inline Matrix incomparable(const Matrix& m) { return complement(comparable(m)); }

/// xSz whenever xEy and ySz, and whenever xSy and yEz.
inline bool saturated(const Matrix& s, const Matrix& e) {
  const std::size_t n = s.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (e[x][y] && s[y][z] && !s[x][z]) return false;
        if (s[x][y] && e[y][z] && !s[x][z]) return false;
      }
  return true;
}

/// Pairs joined by a path of length 1..n.
inline Matrix closure_by_paths(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix out = zero(n);
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<std::size_t> frontier{start};
    std::vector<bool> seen(n, false);
    for (std::size_t len = 1; len <= n; ++len) {
      std::vector<std::size_t> next;
      for (auto u : frontier)
        for (std::size_t v = 0; v < n; ++v)
          if (m[u][v] && !seen[v]) {
            seen[v] = true;
            next.push_back(v);
          }
      frontier = std::move(next);
    }
    for (std::size_t v = 0; v < n; ++v) out[start][v] = seen[v];
  }
  return out;
}

/// Scans the enumeration 0, 1, 1/2, 1/3, 2/3, ... for the first term strictly
/// inside (lo, hi); terms are generated directly, not through the library.
inline ordbubble::Rational first_term_between(const ordbubble::Rational& lo,
                                              const ordbubble::Rational& hi) {
  using ordbubble::Rational;
  if (lo < Rational(0) && Rational(0) < hi) return Rational(0);
  if (lo < Rational(1) && Rational(1) < hi) return Rational(1);
  for (long long d = 2;; ++d)
    for (long long p = 1; p < d; ++p) {
      long long a = p, b = d;
      while (b) {
        const long long t = a % b;
        a = b;
        b = t;
      }
      if (a != 1) continue;
      const Rational q(p, d);
      if (lo < q && q < hi) return q;
    }
}

/// Opens of the topology generated by `subbase` on n points, found as the
/// subsets that contain the minimal neighbourhood of each of their points.
inline std::set<std::uint32_t> topology_by_neighbourhoods(std::size_t n,
                                                          const std::vector<std::uint32_t>& subbase) {
  const std::uint32_t whole = (std::uint32_t{1} << n) - 1;
  std::vector<std::uint32_t> nbhd(n, whole);
  for (std::size_t x = 0; x < n; ++x)
    for (auto s : subbase)
      if ((s >> x) & 1u) nbhd[x] &= s;
  std::set<std::uint32_t> opens;
  for (std::uint32_t u = 0; u <= whole; ++u) {
    bool open = true;
    for (std::size_t x = 0; x < n && open; ++x)
      if (((u >> x) & 1u) && (nbhd[x] & ~u)) open = false;
    if (open) opens.insert(u);
  }
  return opens;
}

}  // namespace oracle

#endif  // ORDBUBBLE_TESTS_ORACLES_HPP
