#ifndef ORDBUBBLE_TOPOLOGY_HPP
#define ORDBUBBLE_TOPOLOGY_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ordbubble/error.hpp"
#include "ordbubble/order_ext.hpp"
#include "ordbubble/relation.hpp"
#include "ordbubble/structure.hpp"

namespace ordbubble {

// ---------------------------------------------------------------------------
// Open intervals of the strict part of a preorder
// ---------------------------------------------------------------------------

enum class IntervalShape { bounded, left_ray, right_ray };

struct Interval {
  IntervalShape shape = IntervalShape::bounded;
  std::optional<std::size_t> lower;  // bounded, right_ray
  std::optional<std::size_t> upper;  // bounded, left_ray
  ElementSet extent;

  bool empty() const { return extent.none(); }
};

/// Recomputes an interval's extent from its endpoints and a preorder.
inline ElementSet interval_extent(const Relation& r, const Interval& iv) {
  const Relation f = asymmetric_part(r);
  const Relation below = inverse(f);
  switch (iv.shape) {
    case IntervalShape::bounded: return f.row(*iv.lower) & below.row(*iv.upper);
    case IntervalShape::left_ray: return below.row(*iv.upper);
    case IntervalShape::right_ray: return f.row(*iv.lower);
  }
  return ElementSet(r.size());
}

/// Bounded intervals (x, y) for x F y in lexicographic order, then for each
/// element its left and right rays. Nonempty extents are listed once (first
/// occurrence); empty intervals are all kept.
inline std::vector<Interval> open_intervals(const Relation& r) {
  detail::require_preorder(r);
  const Relation f = asymmetric_part(r);
  const Relation below = inverse(f);
  std::vector<Interval> all;
  for (auto [x, y] : f.pairs())
    all.push_back({IntervalShape::bounded, x, y, f.row(x) & below.row(y)});
  for (std::size_t x = 0; x < r.size(); ++x) {
    all.push_back({IntervalShape::left_ray, std::nullopt, x, below.row(x)});
    all.push_back({IntervalShape::right_ray, x, std::nullopt, f.row(x)});
  }
  std::vector<Interval> out;
  std::vector<ElementSet> seen;
  for (auto& iv : all) {
    if (!iv.empty()) {
      if (std::find(seen.begin(), seen.end(), iv.extent) != seen.end()) continue;
      seen.push_back(iv.extent);
    }
    out.push_back(std::move(iv));
  }
  return out;
}

/// Pairs x F y whose open interval is empty.
inline std::vector<std::pair<std::size_t, std::size_t>> gaps(const Relation& r) {
  detail::require_preorder(r);
  const Relation f = asymmetric_part(r);
  const Relation below = inverse(f);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto [x, y] : f.pairs())
    if (!f.row(x).intersects(below.row(y))) out.emplace_back(x, y);
  return out;
}

// ---------------------------------------------------------------------------
// Finite topologies (carrier size <= 16, opens as bit masks)
// ---------------------------------------------------------------------------

using OpenMask = std::uint32_t;
inline constexpr std::size_t kMaxTopologySize = 16;

inline OpenMask to_mask(const ElementSet& s) {
  OpenMask m = 0;
  for (auto x : s.members()) m |= OpenMask{1} << x;
  return m;
}

inline ElementSet to_element_set(OpenMask m, std::size_t universe) {
  ElementSet s(universe);
  for (std::size_t x = 0; x < universe; ++x)
    if ((m >> x) & 1u) s.set(x);
  return s;
}

inline bool mask_less(OpenMask a, OpenMask b) {
  const int ca = std::popcount(a), cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  // Lexicographic on sorted member lists: the first differing element decides.
  const OpenMask diff = a ^ b;
  if (diff == 0) return false;
  const OpenMask lowest = diff & (~diff + 1);
  return (a & lowest) != 0;
}

class FiniteTopology {
 public:
  FiniteTopology(Carrier carrier, std::vector<OpenMask> opens, std::vector<OpenMask> subbase)
      : carrier_(std::move(carrier)),
        opens_(std::move(opens)),
        subbase_(std::move(subbase)),
        lookup_(opens_.begin(), opens_.end()) {
    std::sort(opens_.begin(), opens_.end(), mask_less);
  }

  const Carrier& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  OpenMask whole() const noexcept {
    return size() == 32 ? ~OpenMask{0} : (OpenMask{1} << size()) - 1;
  }

  /// Opens sorted by size, then lexicographically by members.
  const std::vector<OpenMask>& opens() const noexcept { return opens_; }
  const std::vector<OpenMask>& subbase() const noexcept { return subbase_; }
  bool is_open(OpenMask m) const { return lookup_.count(m) != 0; }

  /// Intersection closure, then union closure, for every open set.
  bool invariants_hold() const {
    if (!is_open(0) || !is_open(whole())) return false;
    for (auto s : subbase_)
      if (!is_open(s)) return false;
    for (auto a : opens_)
      for (auto b : opens_)
        if (!is_open(a & b) || !is_open(a | b)) return false;
    return true;
  }

 private:
  Carrier carrier_;
  std::vector<OpenMask> opens_;
  std::vector<OpenMask> subbase_;
  std::unordered_set<OpenMask> lookup_;
};

inline FiniteTopology generate_topology(const Carrier& carrier,
                                        std::span<const ElementSet> subbase) {
  if (carrier.size() > kMaxTopologySize)
    throw Error(ErrorKind::TooLarge, "topology generation limited to 16 elements");
  const OpenMask whole = carrier.size() == 32 ? ~OpenMask{0}
                                              : (OpenMask{1} << carrier.size()) - 1;
  std::vector<OpenMask> generators;
  for (const auto& s : subbase) generators.push_back(to_mask(s));

  // Finite intersections; the empty intersection is the whole carrier.
  std::unordered_set<OpenMask> base{whole};
  std::deque<OpenMask> work{whole};
  for (auto g : generators)
    if (base.insert(g).second) work.push_back(g);
  while (!work.empty()) {
    const OpenMask s = work.front();
    work.pop_front();
    for (auto g : generators)
      if (base.insert(s & g).second) work.push_back(s & g);
  }

  // Unions of base members (and the empty union).
  std::vector<OpenMask> base_list(base.begin(), base.end());
  std::sort(base_list.begin(), base_list.end());
  std::unordered_set<OpenMask> opens{0};
  work.assign({0});
  for (auto b : base_list)
    if (opens.insert(b).second) work.push_back(b);
  while (!work.empty()) {
    const OpenMask u = work.front();
    work.pop_front();
    for (auto b : base_list)
      if (opens.insert(u | b).second) work.push_back(u | b);
  }
  return FiniteTopology(carrier, std::vector<OpenMask>(opens.begin(), opens.end()),
                        std::move(generators));
}

inline FiniteTopology generate_topology(const Carrier& carrier,
                                        std::span<const Interval> subbase) {
  std::vector<ElementSet> sets;
  for (const auto& iv : subbase) sets.push_back(iv.extent);
  return generate_topology(carrier, std::span<const ElementSet>(sets));
}

/// Interval topology of a preorder.
inline FiniteTopology interval_topology(const Relation& r) {
  const auto intervals = open_intervals(r);
  return generate_topology(r.carrier(), std::span<const Interval>(intervals));
}

struct MaskCheck {
  bool holds = true;
  std::optional<OpenMask> witness;
};

/// Whether every open of t is a union of members of `family`.
inline MaskCheck is_base(std::span<const OpenMask> family, const FiniteTopology& t) {
  for (auto m : family)
    if (!t.is_open(m))
      throw Error(ErrorKind::NotOpen, "family member is not open",
                  t.carrier().labels_of(to_element_set(m, t.size()).members()));
  for (auto u : t.opens()) {
    OpenMask covered = 0;
    for (auto m : family)
      if ((m & ~u) == 0) covered |= m;
    if (covered != u) return {false, u};
  }
  return {};
}

struct ConnectivityReport {
  bool connected = true;
  std::optional<OpenMask> clopen_witness;
};

inline ConnectivityReport connectivity_report(const FiniteTopology& t) {
  for (auto u : t.opens()) {
    if (u == 0 || u == t.whole()) continue;
    if (t.is_open(t.whole() & ~u)) return {false, u};
  }
  return {};
}

/// Whether the preimage of every open of `to` is open in `from`;
/// `f[x]` indexes into to's carrier. The witness is the first failing open.
inline MaskCheck continuity_check(std::span<const std::size_t> f, const FiniteTopology& from,
                                  const FiniteTopology& to) {
  if (f.size() != from.size())
    throw Error(ErrorKind::ValidationError, "map must be total on the domain");
  for (auto v : to.opens()) {
    OpenMask preimage = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
      if ((v >> f[x]) & 1u) preimage |= OpenMask{1} << x;
    if (!from.is_open(preimage)) return {false, v};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Suprema, infima and compactness of a finite loset
// ---------------------------------------------------------------------------

struct CompletenessReport {
  bool all_sups = false;
  bool all_infs = false;
  bool compact = false;
  bool equivalence_holds = false;  // compact iff every subset has sup and inf
};

inline CompletenessReport order_completeness_report(const Loset& l) {
  const std::size_t n = l.size();
  if (n > 12) throw Error(ErrorKind::TooLarge, "completeness sweep limited to 12 elements");
  const Relation le = l.relation();
  auto has_extremum = [&](std::uint32_t subset, bool upper) {
    std::vector<std::size_t> bounds;
    for (std::size_t u = 0; u < n; ++u) {
      bool bound = true;
      for (std::size_t b = 0; b < n && bound; ++b)
        if ((subset >> b) & 1u) bound = upper ? le.test(b, u) : le.test(u, b);
      if (bound) bounds.push_back(u);
    }
    for (auto s : bounds) {
      bool extremal = true;
      for (auto u : bounds)
        if (!(upper ? le.test(s, u) : le.test(u, s))) extremal = false;
      if (extremal) return true;
    }
    return false;
  };
  CompletenessReport out;
  out.all_sups = out.all_infs = true;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
    out.all_sups = out.all_sups && has_extremum(s, true);
    out.all_infs = out.all_infs && has_extremum(s, false);
  }
  // The only open cover that matters is the family of all opens, which is
  // finite; pick one open per point and check that it covers.
  const FiniteTopology t = interval_topology(le);
  OpenMask covered = 0;
  std::size_t chosen = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (auto u : t.opens())
      if ((u >> x) & 1u) {
        covered |= u;
        ++chosen;
        break;
      }
  out.compact = covered == t.whole() && chosen <= n;
  out.equivalence_holds = out.compact == (out.all_sups && out.all_infs);
  return out;
}

// ---------------------------------------------------------------------------
// Projection of a bubble coproduct onto its index
// ---------------------------------------------------------------------------

struct ProjectionReport {
  std::vector<NamedCheck> checks;
  bool connected_total = false;
  bool connected_index = false;
  OpenMask dense_subset = 0;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; });
  }
};

inline ProjectionReport projection_check(const BubbleSystem& sys,
                                         const std::optional<Carrier>& carrier = std::nullopt) {
  const Carrier c = carrier ? *carrier : sys.carrier();
  if (c.size() > kMaxTopologySize)
    throw Error(ErrorKind::TooLarge, "projection check limited to 16 elements");
  const Relation r = bubble_compose(sys, c);
  const auto pi = sys.projection(c);
  const Relation index_order = sys.index_loset().relation();
  const FiniteTopology ta = interval_topology(r);
  const FiniteTopology ti = interval_topology(index_order);
  const std::size_t n = c.size();

  auto image = [&](OpenMask u) {
    OpenMask out = 0;
    for (std::size_t x = 0; x < n; ++x)
      if ((u >> x) & 1u) out |= OpenMask{1} << pi[x];
    return out;
  };
  auto preimage = [&](OpenMask v) {
    OpenMask out = 0;
    for (std::size_t x = 0; x < n; ++x)
      if ((v >> pi[x]) & 1u) out |= OpenMask{1} << x;
    return out;
  };
  auto nonempty_extents = [](const Relation& rel) {
    std::vector<OpenMask> out;
    for (const auto& iv : open_intervals(rel))
      if (!iv.empty()) out.push_back(to_mask(iv.extent));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  const auto oa = nonempty_extents(r);
  const auto oi = nonempty_extents(index_order);
  auto contains = [](const std::vector<OpenMask>& v, OpenMask m) {
    return std::binary_search(v.begin(), v.end(), m);
  };

  ProjectionReport out;

  bool bijection = oa.size() == oi.size();
  for (auto j : oa) bijection = bijection && contains(oi, image(j)) && preimage(image(j)) == j;
  for (auto k : oi) bijection = bijection && contains(oa, preimage(k)) && image(preimage(k)) == k;
  out.checks.push_back({"projection and preimage are inverse bijections on intervals", bijection});

  std::vector<OpenMask> family = oa;
  family.push_back(ta.whole());
  out.checks.push_back({"intervals form a base of the total topology", is_base(family, ta).holds});

  bool continuous = true, open_map = true;
  for (auto v : ti.opens()) continuous = continuous && ta.is_open(preimage(v));
  for (auto u : ta.opens()) open_map = open_map && ti.is_open(image(u));
  out.checks.push_back({"projection is continuous and open", continuous && open_map});

  std::vector<OpenMask> pulled;
  for (auto v : ti.opens()) pulled.push_back(preimage(v));
  std::sort(pulled.begin(), pulled.end());
  pulled.erase(std::unique(pulled.begin(), pulled.end()), pulled.end());
  std::vector<OpenMask> total(ta.opens().begin(), ta.opens().end());
  std::sort(total.begin(), total.end());
  out.checks.push_back({"total topology is the preimage of the index topology", pulled == total});

  out.connected_total = connectivity_report(ta).connected;
  out.connected_index = connectivity_report(ti).connected;
  out.checks.push_back({"total space connected iff index connected",
                        out.connected_total == out.connected_index});

  auto dense = [](const FiniteTopology& t, OpenMask d) {
    for (auto u : t.opens())
      if (u != 0 && (u & d) == 0) return false;
    return true;
  };
  OpenMask d = ta.whole();
  for (std::size_t x = 0; x < n; ++x) {
    const OpenMask smaller = d & ~(OpenMask{1} << x);
    if (dense(ta, smaller)) d = smaller;
  }
  out.dense_subset = d;
  out.checks.push_back({"projection of a minimal dense subset is dense in the index",
                        dense(ta, d) && dense(ti, image(d))});
  return out;
}

// ---------------------------------------------------------------------------
// Continuity of a utility against the topology of its finite image
// ---------------------------------------------------------------------------

struct ImageGrid {
  std::vector<Rational> values;  // sorted, distinct
  Loset order;
  FiniteTopology topology;
};

inline ImageGrid image_grid(std::span<const Rational> values) {
  std::vector<Rational> grid(values.begin(), values.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<std::string> labels;
  for (const auto& v : grid) labels.push_back(v.to_string());
  std::vector<std::size_t> rank(grid.size());
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  Loset order(Carrier(std::move(labels)), std::move(rank));
  FiniteTopology t = interval_topology(order.relation());
  return {std::move(grid), std::move(order), std::move(t)};
}

inline MaskCheck utility_continuity(const Relation& r, const UtilityAssignment& u) {
  const ImageGrid grid = image_grid(u.values);
  std::vector<std::size_t> f;
  for (const auto& v : u.values)
    f.push_back(static_cast<std::size_t>(
        std::lower_bound(grid.values.begin(), grid.values.end(), v) - grid.values.begin()));
  return continuity_check(f, interval_topology(r), grid.topology);
}

// ---------------------------------------------------------------------------
// Finite truncation of the chain 0 < 1/n < ... < 1/2 < 1 with three isolated
// points standing in for an incomparable remainder
// ---------------------------------------------------------------------------

inline Relation truncated_harmonic_example(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::ValidationError, "truncation needs n >= 1");
  std::vector<std::string> labels{"0"};
  for (std::size_t k = n; k >= 1; --k) labels.push_back(Rational(1, static_cast<long long>(k)).to_string());
  const std::size_t chain = labels.size();
  for (const char* r : {"r1", "r2", "r3"}) labels.emplace_back(r);
  Relation out = Relation::diagonal(Carrier(std::move(labels)));
  for (std::size_t x = 0; x < chain; ++x)
    for (std::size_t y = x; y < chain; ++y) out.set(x, y);
  return out;
}

}  // namespace ordbubble

#endif  // ORDBUBBLE_TOPOLOGY_HPP
