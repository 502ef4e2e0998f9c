#ifndef ORDBUBBLE_STRUCTURE_HPP
#define ORDBUBBLE_STRUCTURE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ordbubble/error.hpp"
#include "ordbubble/factor.hpp"
#include "ordbubble/relation.hpp"

namespace ordbubble {

/// A named boolean outcome of a runtime-verified invariant.
struct NamedCheck {
  std::string name;
  bool pass = false;
};

namespace detail {

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorKind::InvariantViolation, what);
}

inline void require_preorder(const Relation& r) {
  for (auto check : {check_reflexive(r), check_transitive(r)})
    if (!check.holds)
      throw Error(ErrorKind::NotAPreorder, "relation is not reflexive and transitive",
                  r.carrier().labels_of(check.witness));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Preorder <-> (equivalence, strict part)
// ---------------------------------------------------------------------------

struct PreorderSplit {
  EquivalenceRelation equivalence;  // I_R
  Relation strict;                  // P_R
};

inline PreorderSplit split_preorder(const Relation& r) {
  detail::require_preorder(r);
  Relation sym = symmetric_part(r);
  Relation strict = asymmetric_part(r);
  detail::ensure((sym & strict).empty(), "symmetric and strict parts overlap");
  detail::ensure((sym | strict) == r, "symmetric and strict parts do not cover R");
  detail::ensure(check_asymmetric(strict).holds && check_transitive(strict).holds,
                 "strict part is not a strict order");
  detail::ensure(check_saturation(strict, sym, SaturationMode::full).holds,
                 "strict part is not saturated by the symmetric part");
  return {EquivalenceRelation(std::move(sym)), std::move(strict)};
}

/// R = E ∪ F for an admissible pair; verifies I_R = E and P_R = F.
inline Relation join_pair(const EquivalenceRelation& e, const Relation& f) {
  require_same_carrier(e.relation(), f);
  const Carrier& c = f.carrier();
  if (auto a = check_asymmetric(f); !a.holds)
    throw Error(ErrorKind::PairInvalid, "F is not asymmetric", c.labels_of(a.witness));
  if (auto t = check_transitive(f); !t.holds)
    throw Error(ErrorKind::PairInvalid, "F is not transitive", c.labels_of(t.witness));
  if (auto s = check_saturation(f, e.relation(), SaturationMode::full); !s.holds)
    throw Error(ErrorKind::PairInvalid, "F is not E-saturated", c.labels_of(s.witness));
  const Relation overlap = e.relation() & f;
  if (!overlap.empty()) {
    auto [x, y] = overlap.pairs().front();
    throw Error(ErrorKind::PairInvalid, "E and F intersect", {c.label(x), c.label(y)});
  }
  Relation r = e.relation() | f;
  detail::ensure(symmetric_part(r) == e.relation(), "joined preorder has a different I_R");
  detail::ensure(asymmetric_part(r) == f, "joined preorder has a different P_R");
  return r;
}

// ---------------------------------------------------------------------------
// Loset
// ---------------------------------------------------------------------------

class Loset {
 public:
  Loset(Carrier carrier, std::vector<std::size_t> rank)
      : carrier_(std::move(carrier)), rank_(std::move(rank)), order_(rank_.size()) {
    if (rank_.size() != carrier_.size())
      throw Error(ErrorKind::ValidationError, "rank must cover the carrier");
    std::vector<bool> used(rank_.size(), false);
    for (std::size_t x = 0; x < rank_.size(); ++x) {
      if (rank_[x] >= rank_.size() || used[rank_[x]])
        throw Error(ErrorKind::ValidationError, "rank is not a bijection");
      used[rank_[x]] = true;
      order_[rank_[x]] = x;
    }
  }

  /// Reads the rank off a linear order.
  static Loset from_relation(const Relation& r) {
    if (!is_linear_order(r))
      throw Error(ErrorKind::ValidationError, "relation is not a linear order");
    std::vector<std::size_t> rank(r.size());
    for (std::size_t x = 0; x < r.size(); ++x) {
      std::size_t below = 0;
      for (std::size_t y = 0; y < r.size(); ++y)
        if (r.test(y, x)) ++below;
      rank[x] = below - 1;
    }
    return Loset(r.carrier(), std::move(rank));
  }

  /// Elements listed from least to greatest.
  static Loset from_order(Carrier carrier, std::span<const std::size_t> order) {
    std::vector<std::size_t> rank(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) rank.at(order[k]) = k;
    return Loset(std::move(carrier), std::move(rank));
  }

  const Carrier& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return rank_.size(); }
  std::size_t rank(std::size_t x) const { return rank_.at(x); }
  std::size_t element_at(std::size_t position) const { return order_.at(position); }
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  std::size_t least() const { return order_.front(); }
  std::size_t greatest() const { return order_.back(); }

  Relation relation() const {
    Relation r(carrier_);
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = 0; y < size(); ++y)
        if (rank_[x] <= rank_[y]) r.set(x, y);
    return r;
  }

  friend bool operator==(const Loset& a, const Loset& b) {
    return a.carrier_ == b.carrier_ && a.rank_ == b.rank_;
  }

 private:
  Carrier carrier_;
  std::vector<std::size_t> rank_;
  std::vector<std::size_t> order_;
};

// ---------------------------------------------------------------------------
// Bubble systems
// ---------------------------------------------------------------------------

/// A nonempty set with an equivalence on it.
struct Bubble {
  std::vector<std::string> elements;
  EquivalenceRelation inner;
};

inline Bubble make_bubble(std::vector<std::string> elements,
                          const std::vector<std::pair<std::string, std::string>>& inner_pairs) {
  Carrier c(elements);
  return {std::move(elements), EquivalenceRelation(make_relation(c, inner_pairs))};
}

/// A linearly ordered index with one bubble per index label, listed in index
/// order. Bubbles are pairwise disjoint.
class BubbleSystem {
 public:
  BubbleSystem(std::vector<std::string> index, std::vector<Bubble> bubbles)
      : index_(std::move(index)), bubbles_(std::move(bubbles)) {
    if (index_.empty())
      throw Error(ErrorKind::InvalidSystem, "the index must be nonempty");
    if (index_.size() != bubbles_.size())
      throw Error(ErrorKind::InvalidSystem, "one bubble per index label is required");
    std::unordered_set<std::string> seen_index(index_.begin(), index_.end());
    if (seen_index.size() != index_.size())
      throw Error(ErrorKind::InvalidSystem, "index labels must be distinct");
    std::unordered_set<std::string> seen;
    for (const auto& b : bubbles_) {
      if (b.elements.empty())
        throw Error(ErrorKind::InvalidSystem, "bubbles must be nonempty");
      if (b.inner.carrier().labels() != b.elements)
        throw Error(ErrorKind::InvalidSystem,
                    "inner equivalence must live on the bubble's elements");
      for (const auto& x : b.elements)
        if (!seen.insert(x).second)
          throw Error(ErrorKind::InvalidSystem, "bubbles are not pairwise disjoint", {x});
    }
  }

  const std::vector<std::string>& index() const noexcept { return index_; }
  const std::vector<Bubble>& bubbles() const noexcept { return bubbles_; }

  std::size_t element_count() const {
    std::size_t n = 0;
    for (const auto& b : bubbles_) n += b.elements.size();
    return n;
  }

  /// Elements in bubble order, each bubble in its listed order.
  Carrier carrier() const {
    std::vector<std::string> labels;
    for (const auto& b : bubbles_)
      labels.insert(labels.end(), b.elements.begin(), b.elements.end());
    return Carrier(std::move(labels));
  }

  /// Index position of each element of `carrier` (the projection π).
  std::vector<std::size_t> projection(const Carrier& carrier) const {
    std::vector<std::size_t> pi(carrier.size(), static_cast<std::size_t>(-1));
    std::size_t placed = 0;
    for (std::size_t k = 0; k < bubbles_.size(); ++k)
      for (const auto& x : bubbles_[k].elements) {
        auto i = carrier.find(x);
        if (!i)
          throw Error(ErrorKind::InvalidSystem, "element missing from the carrier", {x});
        pi[*i] = k;
        ++placed;
      }
    if (placed != carrier.size())
      throw Error(ErrorKind::InvalidSystem, "carrier has elements outside the bubbles");
    return pi;
  }

  /// The index as a loset: label k has rank k.
  Loset index_loset() const {
    std::vector<std::size_t> rank(index_.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    return Loset(Carrier(index_), std::move(rank));
  }

 private:
  std::vector<std::string> index_;
  std::vector<Bubble> bubbles_;
};

/// Same bubbles (as element sets) in the same index order with the same
/// inner equivalences; labels of the index are not compared.
inline bool same_structure(const BubbleSystem& a, const BubbleSystem& b) {
  if (a.bubbles().size() != b.bubbles().size()) return false;
  for (std::size_t k = 0; k < a.bubbles().size(); ++k) {
    const Bubble& x = a.bubbles()[k];
    const Bubble& y = b.bubbles()[k];
    std::set<std::string> ex(x.elements.begin(), x.elements.end());
    std::set<std::string> ey(y.elements.begin(), y.elements.end());
    if (ex != ey) return false;
    std::set<std::pair<std::string, std::string>> px, py;
    for (auto [i, j] : x.inner.relation().pairs()) px.emplace(x.elements[i], x.elements[j]);
    for (auto [i, j] : y.inner.relation().pairs()) py.emplace(y.elements[i], y.elements[j]);
    if (px != py) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Coproducts
// ---------------------------------------------------------------------------

struct Coproduct {
  Relation relation;
  std::vector<std::size_t> projection;  // element index -> summand index
};

/// Coproduct of preordered summands over a partially ordered index:
/// x R y iff π(x) < π(y), or π(x) = π(y) and x R_π(x) y.
/// Summand k's carrier lists its elements; `carrier` orders the union.
inline Coproduct coproduct(const Relation& index_order, std::span<const Relation> summands,
                           const Carrier& carrier) {
  if (!is_partial_order(index_order))
    throw Error(ErrorKind::InvalidSystem, "index order must be a partial order");
  if (summands.size() != index_order.size())
    throw Error(ErrorKind::InvalidSystem, "one summand per index element is required");
  std::vector<std::size_t> pi(carrier.size(), static_cast<std::size_t>(-1));
  std::vector<std::vector<std::size_t>> local(summands.size());  // local -> global
  std::size_t placed = 0;
  for (std::size_t k = 0; k < summands.size(); ++k) {
    if (!is_preorder(summands[k]))
      throw Error(ErrorKind::InvalidSystem, "summands must be preordered");
    for (const auto& label : summands[k].carrier().labels()) {
      auto g = carrier.find(label);
      if (!g) throw Error(ErrorKind::InvalidSystem, "summand element missing", {label});
      if (pi[*g] != static_cast<std::size_t>(-1))
        throw Error(ErrorKind::InvalidSystem, "summands are not disjoint", {label});
      pi[*g] = k;
      local[k].push_back(*g);
      ++placed;
    }
  }
  if (placed != carrier.size())
    throw Error(ErrorKind::InvalidSystem, "carrier has elements outside the summands");

  const Relation strict = asymmetric_part(index_order);
  Relation r(carrier);
  for (std::size_t k = 0; k < summands.size(); ++k) {
    for (std::size_t i = 0; i < local[k].size(); ++i) {
      const std::size_t x = local[k][i];
      for (std::size_t l = 0; l < summands.size(); ++l)
        if (strict.test(k, l))
          for (auto y : local[l]) r.set(x, y);
      for (auto j : summands[k].row(i).members()) r.set(x, local[k][j]);
    }
  }
  return {std::move(r), std::move(pi)};
}

/// The equivalence whose classes are the fibres of a projection.
inline EquivalenceRelation fibre_equivalence(const Carrier& carrier,
                                             std::span<const std::size_t> pi) {
  Relation e(carrier);
  for (std::size_t x = 0; x < pi.size(); ++x)
    for (std::size_t y = 0; y < pi.size(); ++y)
      if (pi[x] == pi[y]) e.set(x, y);
  return EquivalenceRelation(std::move(e));
}

/// Preorder on the union of the bubbles: strictly lower index, or same bubble
/// and inner-equivalent. `carrier` defaults to sys.carrier().
inline Relation bubble_compose(const BubbleSystem& sys,
                               const std::optional<Carrier>& carrier = std::nullopt) {
  const Carrier c = carrier ? *carrier : sys.carrier();
  std::vector<Relation> summands;
  for (const auto& b : sys.bubbles()) summands.push_back(b.inner.relation());
  Coproduct cp = coproduct(sys.index_loset().relation(), summands, c);

  const Relation& r = cp.relation;
  const Relation f = asymmetric_part(r);
  detail::ensure(is_preorder(r), "composed relation is not a preorder");
  detail::ensure(check_negatively_transitive(f).holds,
                 "strict part of the composed preorder is not negatively transitive");
  detail::ensure(incomparability(f) == fibre_equivalence(c, cp.projection).relation(),
                 "incomparability of the strict part differs from the bubble partition");
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y)
      detail::ensure(f.test(x, y) == (cp.projection[x] < cp.projection[y]),
                     "strict part disagrees with the index order");
  return cp.relation;
}

// ---------------------------------------------------------------------------
// Decomposition of preorders with negatively transitive strict part
// ---------------------------------------------------------------------------

/// The seven consequences of negative transitivity of P_R for a preorder R,
/// each evaluated by direct computation.
inline std::vector<NamedCheck> necessary_conditions(const Relation& r) {
  detail::require_preorder(r);
  const DerivedParts parts = derived_parts(r);
  const Relation& e = parts.symmetric_part;
  const Relation& f = parts.asymmetric_part;
  if (auto nt = check_negatively_transitive(f); !nt.holds)
    throw Error(ErrorKind::NotNegativelyTransitive,
                "strict part is not negatively transitive",
                r.carrier().labels_of(nt.witness));
  const Relation bubbles = incomparability(f);
  std::vector<NamedCheck> out;
  out.push_back({"incomparability is symmetric and bubbles form an equivalence",
                 check_symmetric(parts.incomparability).holds && is_equivalence(bubbles)});
  out.push_back({"bubble equivalence equals symmetric part union incomparability",
                 bubbles == (e | parts.incomparability)});
  out.push_back({"strict part is saturated by the bubble equivalence",
                 check_saturation(f, bubbles, SaturationMode::full).holds});
  out.push_back({"symmetric part is weakly saturated by the bubble equivalence",
                 check_saturation(e, bubbles, SaturationMode::weak).holds});
  out.push_back({"preorder is weakly saturated by the bubble equivalence",
                 check_saturation(r, bubbles, SaturationMode::weak).holds});

  bool quotient_split = false;
  bool quotient_linear = false;
  if (is_equivalence(bubbles) && out[2].pass) {
    const EquivalenceRelation calE(bubbles);
    const Relation weak = weak_factor_relation(r, calE).relation;
    const Relation fbar = factor_relation(f, calE).relation;
    const Relation d = Relation::diagonal(weak.carrier());
    quotient_split = weak == (d | fbar) && (d & fbar).empty();
    quotient_linear = is_linear_order(weak) && asymmetric_part(weak) == fbar;
  }
  out.push_back({"weak quotient is the diagonal plus the quotient strict part",
                 quotient_split});
  out.push_back({"weak quotient is a linear order with the quotient strict part",
                 quotient_linear});
  return out;
}

inline BubbleSystem bubble_decompose(const Relation& r) {
  detail::require_preorder(r);
  const Carrier& c = r.carrier();
  const DerivedParts parts = derived_parts(r);
  const Relation& f = parts.asymmetric_part;
  if (auto nt = check_negatively_transitive(f); !nt.holds)
    throw Error(ErrorKind::NotNegativelyTransitive,
                "strict part is not negatively transitive", c.labels_of(nt.witness));

  const Relation bubbles = incomparability(f);
  detail::ensure(is_equivalence(bubbles), "incomparability of F is not an equivalence");
  detail::ensure(bubbles == (parts.symmetric_part | parts.incomparability),
                 "bubble equivalence differs from I_R ∪ E_R");
  detail::ensure(check_saturation(f, bubbles, SaturationMode::full).holds,
                 "F is not saturated by the bubble equivalence");
  const EquivalenceRelation calE(bubbles);

  QuotientRelation weak = weak_factor_relation(r, calE);
  const Relation fbar = factor_relation(f, calE).relation;
  const Relation d = Relation::diagonal(weak.relation.carrier());
  detail::ensure(weak.relation == (d | fbar) && (d & fbar).empty(),
                 "weak quotient is not D ∪ F̄");
  detail::ensure(is_linear_order(weak.relation), "weak quotient is not a linear order");
  const Loset index = Loset::from_relation(weak.relation);

  std::vector<std::string> index_labels;
  std::vector<Bubble> list;
  for (std::size_t pos = 0; pos < index.size(); ++pos) {
    const std::size_t block = index.element_at(pos);
    const auto& members = weak.partition.block(block);
    index_labels.push_back(Partition::block_label(block));
    list.push_back({c.labels_of(members),
                    EquivalenceRelation(restrict(parts.symmetric_part, members))});
  }
  return BubbleSystem(std::move(index_labels), std::move(list));
}

// ---------------------------------------------------------------------------
// Factorization of an arbitrary preorder by the closure of F-incomparability
// ---------------------------------------------------------------------------

struct BourbakiFactor {
  Partition partition;
  Loset order;  // over partition.block_carrier()
};

inline BourbakiFactor bourbaki_factor(const Relation& r) {
  detail::require_preorder(r);
  const Relation f = asymmetric_part(r);
  const EquivalenceRelation closure(transitive_closure(incomparability(f)));
  detail::ensure(check_saturation(r, closure.relation(), SaturationMode::weak).holds,
                 "preorder is not weakly saturated by the closed indifference");
  QuotientRelation weak = weak_factor_relation(r, closure);
  const Relation& q = weak.relation;
  detail::ensure(check_reflexive(q).holds, "weak quotient is not reflexive");
  detail::ensure(check_transitive(q).holds, "weak quotient is not transitive");
  detail::ensure(check_antisymmetric(q).holds, "weak quotient is not antisymmetric");
  detail::ensure(check_complete(q).holds, "weak quotient is not complete");
  Loset order = Loset::from_relation(q);
  return {std::move(weak.partition), std::move(order)};
}

/// Bubble decomposition when P_R is negatively transitive, otherwise the
/// factorization by the closed indifference together with the failing triple.
struct Decomposition {
  std::optional<BubbleSystem> bubbles;
  std::optional<BourbakiFactor> fallback;
  std::vector<std::string> witness;
};

inline Decomposition decompose(const Relation& r) {
  try {
    return {bubble_decompose(r), std::nullopt, {}};
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotNegativelyTransitive) throw;
    return {std::nullopt, bourbaki_factor(r), err.witness()};
  }
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Entry (i, j) is bit n*n-1-(i*n+j), so increasing masks visit relations in
/// lexicographic row-major matrix order.
inline Relation relation_from_mask(const Carrier& carrier, std::uint64_t mask) {
  const std::size_t n = carrier.size();
  Relation r(carrier);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((mask >> (n * n - 1 - (i * n + j))) & 1u) r.set(i, j);
  return r;
}

inline void for_each_relation(const Carrier& carrier,
                              const std::function<void(const Relation&)>& fn) {
  const std::size_t n = carrier.size();
  if (n * n > 20)
    throw Error(ErrorKind::TooLarge, "exhaustive relation sweep limited to n <= 4");
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t m = 0; m < total; ++m) fn(relation_from_mask(carrier, m));
}

inline void for_each_preorder(std::size_t n, const std::function<void(const Relation&)>& fn) {
  if (n < 1 || n > 4)
    throw Error(ErrorKind::TooLarge, "preorder enumeration supports 1 <= n <= 4");
  const Carrier c = Carrier::canonical(n);
  for_each_relation(c, [&](const Relation& r) {
    if (is_preorder(r)) fn(r);
  });
}

inline std::vector<Relation> enumerate_preorders(std::size_t n) {
  std::vector<Relation> out;
  for_each_preorder(n, [&](const Relation& r) { out.push_back(r); });
  return out;
}

// ---------------------------------------------------------------------------
// Random bubble systems
// ---------------------------------------------------------------------------

/// |I| uniform in [1, max_index], bubble sizes uniform in [1, max_bubble],
/// element labels shuffled across bubbles, inner equivalences from random
/// class assignments.
template <class Rng>
BubbleSystem random_bubble_system(Rng& rng, std::size_t max_index, std::size_t max_bubble) {
  std::uniform_int_distribution<std::size_t> index_size(1, max_index);
  std::uniform_int_distribution<std::size_t> bubble_size(1, max_bubble);
  const std::size_t m = index_size(rng);
  std::vector<std::size_t> sizes(m);
  std::size_t total = 0;
  for (auto& s : sizes) total += (s = bubble_size(rng));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < total; ++i) labels.push_back("x" + std::to_string(i));
  std::shuffle(labels.begin(), labels.end(), rng);

  std::vector<std::string> index;
  std::vector<Bubble> bubbles;
  std::size_t next = 0;
  for (std::size_t k = 0; k < m; ++k) {
    index.push_back("I" + std::to_string(k));
    std::vector<std::string> elems(labels.begin() + next, labels.begin() + next + sizes[k]);
    next += sizes[k];
    std::vector<std::size_t> cls(elems.size());
    for (std::size_t i = 0; i < cls.size(); ++i)
      cls[i] = std::uniform_int_distribution<std::size_t>(0, i)(rng);
    Relation inner{Carrier(elems)};
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = 0; j < cls.size(); ++j)
        if (cls[i] == cls[j]) inner.set(i, j);
    bubbles.push_back({std::move(elems), EquivalenceRelation(std::move(inner))});
  }
  return BubbleSystem(std::move(index), std::move(bubbles));
}

}  // namespace ordbubble

#endif  // ORDBUBBLE_STRUCTURE_HPP
