#ifndef ORDBUBBLE_FACTOR_HPP
#define ORDBUBBLE_FACTOR_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordbubble/error.hpp"
#include "ordbubble/relation.hpp"

namespace ordbubble {

/// A relation validated to be reflexive, symmetric and transitive.
class EquivalenceRelation {
 public:
  explicit EquivalenceRelation(Relation r) : rel_(std::move(r)) {
    for (auto check : {check_reflexive(rel_), check_symmetric(rel_),
                       check_transitive(rel_)}) {
      if (!check.holds)
        throw Error(ErrorKind::NotAnEquivalence,
                    "relation is not reflexive, symmetric and transitive",
                    rel_.carrier().labels_of(check.witness));
    }
  }

  static EquivalenceRelation diagonal(const Carrier& c) {
    return EquivalenceRelation(Relation::diagonal(c));
  }
  static EquivalenceRelation full(const Carrier& c) {
    return EquivalenceRelation(Relation::full(c));
  }

  const Relation& relation() const noexcept { return rel_; }
  const Carrier& carrier() const noexcept { return rel_.carrier(); }
  std::size_t size() const noexcept { return rel_.size(); }
  bool related(std::size_t x, std::size_t y) const noexcept { return rel_.test(x, y); }

  friend bool operator==(const EquivalenceRelation&, const EquivalenceRelation&) = default;

 private:
  Relation rel_;
};

/// Blocks are sorted internally and ordered by least member.
class Partition {
 public:
  Partition(Carrier carrier, std::vector<std::vector<std::size_t>> blocks)
      : carrier_(std::move(carrier)), block_of_(carrier_.size(), npos) {
    for (auto& b : blocks) {
      if (b.empty())
        throw Error(ErrorKind::ValidationError, "partition blocks must be nonempty");
      std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      for (auto x : blocks[k]) {
        if (x >= carrier_.size())
          throw Error(ErrorKind::ValidationError, "block member outside the carrier");
        if (block_of_[x] != npos)
          throw Error(ErrorKind::ValidationError, "blocks are not disjoint",
                      {carrier_.label(x)});
        block_of_[x] = k;
      }
    }
    for (std::size_t x = 0; x < block_of_.size(); ++x)
      if (block_of_[x] == npos)
        throw Error(ErrorKind::ValidationError, "blocks do not cover the carrier",
                    {carrier_.label(x)});
    blocks_ = std::move(blocks);
  }

  /// Partition from blocks of labels.
  static Partition from_labels(const Carrier& carrier,
                               const std::vector<std::vector<std::string>>& blocks) {
    std::vector<std::vector<std::size_t>> idx;
    for (const auto& b : blocks) {
      std::vector<std::size_t> block;
      for (const auto& l : b) block.push_back(carrier.index_of(l));
      idx.push_back(std::move(block));
    }
    return Partition(carrier, std::move(idx));
  }

  const Carrier& carrier() const noexcept { return carrier_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  const std::vector<std::size_t>& block(std::size_t k) const { return blocks_.at(k); }

  /// The canonical surjection c: element -> block index.
  std::size_t block_of(std::size_t x) const { return block_of_.at(x); }
  const std::vector<std::size_t>& canonical_map() const noexcept { return block_of_; }

  static std::string block_label(std::size_t k) { return "B" + std::to_string(k); }

  /// Carrier of block labels B0, B1, ... in block order.
  Carrier block_carrier() const {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < blocks_.size(); ++k) labels.push_back(block_label(k));
    return Carrier(std::move(labels));
  }

  ElementSet block_set(std::size_t k) const {
    ElementSet s(carrier_.size());
    for (auto x : blocks_.at(k)) s.set(x);
    return s;
  }

  /// The equivalence relation associated with the partition.
  EquivalenceRelation associated() const {
    Relation r(carrier_);
    for (const auto& b : blocks_)
      for (auto x : b)
        for (auto y : b) r.set(x, y);
    return EquivalenceRelation(std::move(r));
  }

  /// True if every block of *this lies inside a block of `coarser`.
  bool refines(const Partition& coarser) const {
    return containment_map(coarser).has_value();
  }

  /// Block-containment map (finer block -> coarser block), if *this refines
  /// `coarser`.
  std::optional<std::vector<std::size_t>> containment_map(const Partition& coarser) const {
    if (!(carrier_ == coarser.carrier_))
      throw Error(ErrorKind::CarrierMismatch, "partitions live on different carriers");
    std::vector<std::size_t> map;
    for (const auto& b : blocks_) {
      const std::size_t target = coarser.block_of(b.front());
      for (auto x : b)
        if (coarser.block_of(x) != target) return std::nullopt;
      map.push_back(target);
    }
    return map;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.carrier_ == b.carrier_ && a.blocks_ == b.blocks_;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  Carrier carrier_;
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

/// A relation on the blocks of a partition.
struct QuotientRelation {
  Partition partition;
  Relation relation;
};

inline Partition classes(const EquivalenceRelation& e) {
  const std::size_t n = e.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    auto members = e.relation().row(x).members();
    for (auto y : members) seen[y] = true;
    blocks.push_back(std::move(members));
  }
  return Partition(e.carrier(), std::move(blocks));
}

/// Whether a subset of the carrier is a union of E-classes.
inline bool is_saturated_subset(const ElementSet& subset, const EquivalenceRelation& e) {
  for (auto x : subset.members())
    if (!e.relation().row(x).subset_of(subset)) return false;
  return true;
}

/// Factor-relation R/E. Only defined for E-saturated R.
inline QuotientRelation factor_relation(const Relation& r, const EquivalenceRelation& e) {
  require_same_carrier(r, e.relation());
  if (auto sat = check_saturation(r, e.relation(), SaturationMode::full); !sat.holds)
    throw Error(ErrorKind::NotSaturated,
                "relation is not saturated with respect to the equivalence",
                r.carrier().labels_of(sat.witness));
  Partition p = classes(e);
  Relation q(p.block_carrier());
  for (std::size_t a = 0; a < p.block_count(); ++a)
    for (std::size_t b = 0; b < p.block_count(); ++b)
      if (r.test(p.block(a).front(), p.block(b).front())) q.set(a, b);
  return {std::move(p), std::move(q)};
}

/// Weak factor-relation: block A relates to block B iff every member of A
/// relates to some member of B.
inline QuotientRelation weak_factor_relation(const Relation& r,
                                             const EquivalenceRelation& e) {
  require_same_carrier(r, e.relation());
  Partition p = classes(e);
  const std::size_t k = p.block_count();
  std::vector<ElementSet> block_sets;
  for (std::size_t b = 0; b < k; ++b) block_sets.push_back(p.block_set(b));
  Relation q(p.block_carrier());
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      bool all = true;
      for (auto x : p.block(a)) {
        if (!r.row(x).intersects(block_sets[b])) {
          all = false;
          break;
        }
      }
      if (all) q.set(a, b);
    }
  }
  return {std::move(p), std::move(q)};
}

/// Connected components of an indifference (reflexive and symmetric relation).
inline Partition indifference_curves(const Relation& s) {
  for (auto check : {check_reflexive(s), check_symmetric(s)})
    if (!check.holds)
      throw Error(ErrorKind::NotAnIndifference,
                  "an indifference must be reflexive and symmetric",
                  s.carrier().labels_of(check.witness));
  return classes(EquivalenceRelation(transitive_closure(s)));
}

/// E × E′ on A × A′, carrier ordered lexicographically with labels "(x,x')".
inline EquivalenceRelation product_equivalence(const EquivalenceRelation& e,
                                               const EquivalenceRelation& e2) {
  const std::size_t n = e.size(), m = e2.size();
  std::vector<std::string> labels;
  labels.reserve(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      labels.push_back("(" + e.carrier().label(i) + "," + e2.carrier().label(j) + ")");
  Relation r{Carrier(std::move(labels))};
  for (std::size_t i = 0; i < n; ++i)
    for (auto k : e.relation().row(i).members())
      for (std::size_t j = 0; j < m; ++j)
        for (auto l : e2.relation().row(j).members()) r.set(i * m + j, k * m + l);
  return EquivalenceRelation(std::move(r));
}

/// The pairs of a relation as a subset of the product carrier A × A, indexed
/// x * n + y (matching product_equivalence's ordering).
inline ElementSet pairs_as_subset(const Relation& r) {
  const std::size_t n = r.size();
  ElementSet s(n * n);
  for (auto [x, y] : r.pairs()) s.set(x * n + y);
  return s;
}

struct FactorThroughResult {
  std::vector<std::size_t> block_image;  // block index -> index in B
  bool increasing_on_quotient = false;   // w.r.t. the weak factor-relation
  bool surjective = false;
  bool kernel_matches = false;  // E = {(x, y) : f(x) = f(y)}
  bool bijective = false;
};

/// Factors an increasing map f: A -> B, constant on E-classes, through the
/// canonical surjection A -> A/E. `f[x]` is the index in s's carrier.
inline FactorThroughResult factor_through(std::span<const std::size_t> f,
                                          const EquivalenceRelation& e,
                                          const Relation& r, const Relation& s) {
  require_same_carrier(r, e.relation());
  const std::size_t n = r.size();
  if (f.size() != n)
    throw Error(ErrorKind::ValidationError, "map must be total on the carrier");
  for (auto v : f)
    if (v >= s.size()) throw Error(ErrorKind::ValidationError, "map leaves the target");
  for (std::size_t x = 0; x < n; ++x)
    for (auto y : e.relation().row(x).members())
      if (f[x] != f[y])
        throw Error(ErrorKind::NotConstantOnClasses,
                    "map separates equivalent elements",
                    {r.carrier().label(x), r.carrier().label(y)});
  for (auto [x, y] : r.pairs())
    if (!s.test(f[x], f[y]))
      throw Error(ErrorKind::NotIncreasing, "map does not preserve the relation",
                  {r.carrier().label(x), r.carrier().label(y)});

  FactorThroughResult out;
  const Partition p = classes(e);
  for (std::size_t b = 0; b < p.block_count(); ++b) out.block_image.push_back(f[p.block(b).front()]);

  const Relation wf = weak_factor_relation(r, e).relation;
  out.increasing_on_quotient = true;
  for (auto [a, b] : wf.pairs())
    if (!s.test(out.block_image[a], out.block_image[b])) out.increasing_on_quotient = false;

  std::vector<bool> hit(s.size(), false);
  for (auto v : out.block_image) hit[v] = true;
  out.surjective = std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });

  out.kernel_matches = true;
  for (std::size_t x = 0; x < n && out.kernel_matches; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if ((f[x] == f[y]) != e.related(x, y)) {
        out.kernel_matches = false;
        break;
      }
  std::vector<std::size_t> sorted = out.block_image;
  std::sort(sorted.begin(), sorted.end());
  const bool injective = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  out.bijective = injective && out.surjective;
  return out;
}

}  // namespace ordbubble

#endif  // ORDBUBBLE_FACTOR_HPP
