#ifndef ORDBUBBLE_ORDER_EXT_HPP
#define ORDBUBBLE_ORDER_EXT_HPP

#include <cstddef>
#include <iterator>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordbubble/error.hpp"
#include "ordbubble/factor.hpp"
#include "ordbubble/rational.hpp"
#include "ordbubble/relation.hpp"
#include "ordbubble/structure.hpp"

namespace ordbubble {

namespace detail {

inline void require_partial_order(const Relation& r) {
  for (auto check : {check_reflexive(r), check_antisymmetric(r), check_transitive(r)})
    if (!check.holds)
      throw Error(ErrorKind::NotAPartialOrder,
                  "relation is not reflexive, antisymmetric and transitive",
                  r.carrier().labels_of(check.witness));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Linear extension
// ---------------------------------------------------------------------------

/// Adjoins (a, b) to a partial order together with everything it forces:
/// R ∪ {(x, y) : x R a and b R y}.
inline Relation szpilrajn_step(const Relation& r, std::size_t a, std::size_t b) {
  detail::require_partial_order(r);
  if (r.test(a, b) || r.test(b, a))
    throw Error(ErrorKind::AlreadyComparable, "pair is already comparable",
                {r.carrier().label(a), r.carrier().label(b)});
  Relation out(r);
  const ElementSet& above_b = r.row(b);
  for (std::size_t x = 0; x < r.size(); ++x)
    if (r.test(x, a)) out.row(x) |= above_b;
  detail::ensure(is_partial_order(out), "extension step lost the partial order");
  detail::ensure(r.subset_of(out) && !(out == r) && out.test(a, b),
                 "extension step did not strictly extend the order");
  return out;
}

/// Repeatedly orders the lexicographically least incomparable pair until the
/// order is linear.
inline Loset szpilrajn_extend(const Relation& r) {
  detail::require_partial_order(r);
  Relation current(r);
  const std::size_t n = r.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!current.test(a, b) && !current.test(b, a)) current = szpilrajn_step(current, a, b);
  detail::ensure(is_linear_order(current) && r.subset_of(current),
                 "extension is not a linear order containing the input");
  return Loset::from_relation(current);
}

// ---------------------------------------------------------------------------
// Order embedding into the rationals of [0, 1]
// ---------------------------------------------------------------------------

struct CantorEmbedding {
  std::vector<std::size_t> presentation;  // a1 = least, a2 = greatest, rest
  std::vector<Rational> values;           // indexed by element
};

/// Places the least element at 0, the greatest at 1, then each remaining
/// element (in carrier order) at the enumeration term of least index lying
/// strictly between the images of its placed neighbours.
inline CantorEmbedding cantor_embed(const Loset& a,
                                    const RationalEnumeration& target = {}) {
  const std::size_t n = a.size();
  if (n == 0) throw Error(ErrorKind::EmptyCarrier, "cannot embed an empty loset");
  CantorEmbedding out;
  out.values.assign(n, Rational(0));
  out.presentation.push_back(a.least());
  if (n == 1) return out;
  out.presentation.push_back(a.greatest());
  for (std::size_t x = 0; x < n; ++x)
    if (x != a.least() && x != a.greatest()) out.presentation.push_back(x);

  std::map<std::size_t, Rational> placed;  // rank -> image
  placed.emplace(a.rank(a.least()), Rational(0));
  placed.emplace(a.rank(a.greatest()), Rational(1));
  out.values[a.greatest()] = Rational(1);
  for (std::size_t k = 2; k < n; ++k) {
    const std::size_t x = out.presentation[k];
    auto successor = placed.upper_bound(a.rank(x));
    auto predecessor = std::prev(successor);
    Rational image = target.first_between(predecessor->second, successor->second);
    placed.emplace(a.rank(x), image);
    out.values[x] = std::move(image);
  }
  for (std::size_t p = 0; p + 1 < n; ++p)
    detail::ensure(out.values[a.element_at(p)] < out.values[a.element_at(p + 1)],
                   "embedding is not strictly increasing");
  return out;
}

/// Strictly increasing map of a partial order into [0, 1] ∩ Q, through a
/// linear extension.
inline std::vector<Rational> embed_partial_order(const Relation& r) {
  return cantor_embed(szpilrajn_extend(r)).values;
}

// ---------------------------------------------------------------------------
// Generalized utility
// ---------------------------------------------------------------------------

enum class IntervalKind { closed, closed_open, open_closed, open };

inline std::string_view to_string(IntervalKind kind) {
  switch (kind) {
    case IntervalKind::closed: return "[0,1]";
    case IntervalKind::closed_open: return "[0,1)";
    case IntervalKind::open_closed: return "(0,1]";
    case IntervalKind::open: return "(0,1)";
  }
  return "[0,1]";
}

struct UtilityAssignment {
  Carrier carrier;
  std::vector<Rational> values;  // indexed by element
  IntervalKind interval = IntervalKind::closed;
};

/// Conditions of a generalized utility: u(x) < u(y) iff x F y, and
/// u(x) = u(y) iff x and y are F-incomparable.
inline std::pair<NamedCheck, NamedCheck> verify_utility(const Relation& r,
                                                        std::span<const Rational> u) {
  const Relation f = asymmetric_part(r);
  const Relation incomparable = incomparability(f);
  bool strict_ok = true, equal_ok = true;
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < r.size(); ++y) {
      if ((u[x] < u[y]) != f.test(x, y)) strict_ok = false;
      if ((u[x] == u[y]) != incomparable.test(x, y)) equal_ok = false;
    }
  return {NamedCheck{"utility strictly increases exactly along the strict part", strict_ok},
          NamedCheck{"utility is constant exactly on bubbles", equal_ok}};
}

inline UtilityAssignment generalized_utility(const Relation& r) {
  const BubbleSystem sys = bubble_decompose(r);
  const Loset index = sys.index_loset();
  const CantorEmbedding grid = cantor_embed(index);
  const auto pi = sys.projection(r.carrier());
  UtilityAssignment u{r.carrier(), {}, IntervalKind::closed};
  for (std::size_t x = 0; x < r.size(); ++x) u.values.push_back(grid.values[pi[x]]);
  auto [strict_ok, equal_ok] = verify_utility(r, u.values);
  detail::ensure(strict_ok.pass && equal_ok.pass, "utility conditions failed");
  return u;
}

// ---------------------------------------------------------------------------
// Monotone map of the line into (0, 1)
// ---------------------------------------------------------------------------

/// (q + 1 + |q|) / (q + 3 + 3|q|)
inline Rational h_map(const Rational& q) {
  const Rational a = abs(q);
  return (q + Rational(1) + a) / (q + Rational(3) + Rational(3) * a);
}

}  // namespace ordbubble

#endif  // ORDBUBBLE_ORDER_EXT_HPP
