#ifndef ORDBUBBLE_RELATION_HPP
#define ORDBUBBLE_RELATION_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ordbubble/error.hpp"

namespace ordbubble {

// ---------------------------------------------------------------------------
// ElementSet: a subset of {0, .., n-1} packed into 64-bit words.
// ---------------------------------------------------------------------------

class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  bool any() const noexcept { return !none(); }

  /// Least member at or after `from`, if any.
  std::optional<std::size_t> next(std::size_t from = 0) const noexcept {
    if (from >= universe_) return std::nullopt;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
      if (++wi == words_.size()) return std::nullopt;
      w = words_[wi];
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (auto i = next(0); i; i = next(*i + 1)) out.push_back(*i);
    return out;
  }

  bool subset_of(const ElementSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  bool intersects(const ElementSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  ElementSet& operator|=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElementSet& operator-=(const ElementSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  ElementSet complement() const {
    ElementSet out(*this);
    for (auto& w : out.words_) w = ~w;
    out.trim();
    return out;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  /// Orders by cardinality, then by the sorted member sequence.
  friend bool size_then_lex_less(const ElementSet& a, const ElementSet& b) {
    const auto ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.members() < b.members();
  }

 private:
  void trim() noexcept {
    if (universe_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// ---------------------------------------------------------------------------
// Carrier: the finite, ordered, labelled ground set.
// ---------------------------------------------------------------------------

class Carrier {
 public:
  explicit Carrier(std::vector<std::string> labels) {
    if (labels.empty())
      throw Error(ErrorKind::EmptyCarrier, "a carrier needs at least one element");
    auto data = std::make_shared<Data>();
    data->labels = std::move(labels);
    for (std::size_t i = 0; i < data->labels.size(); ++i) {
      if (!data->index.emplace(data->labels[i], i).second)
        throw Error(ErrorKind::ValidationError,
                    "duplicate label '" + data->labels[i] + "'",
                    {data->labels[i]});
    }
    data_ = std::move(data);
  }

  /// Labels "e0", .., "e{n-1}".
  static Carrier canonical(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
    return Carrier(std::move(labels));
  }

  std::size_t size() const noexcept { return data_->labels.size(); }
  const std::string& label(std::size_t i) const { return data_->labels.at(i); }
  const std::vector<std::string>& labels() const noexcept { return data_->labels; }

  std::optional<std::size_t> find(std::string_view label) const {
    auto it = data_->index.find(std::string(label));
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw Error(ErrorKind::UnknownLabel,
                "label '" + std::string(label) + "' is not in the carrier",
                {std::string(label)});
  }

  std::vector<std::string> labels_of(std::span<const std::size_t> indices) const {
    std::vector<std::string> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(label(i));
    return out;
  }

  friend bool operator==(const Carrier& a, const Carrier& b) {
    return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
  }

 private:
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Data> data_;
};

// ---------------------------------------------------------------------------
// Relation: a subset of A x A as one packed row per element.
// ---------------------------------------------------------------------------

class Relation {
 public:
  explicit Relation(Carrier carrier)
      : carrier_(std::move(carrier)),
        rows_(carrier_.size(), ElementSet(carrier_.size())) {}

  static Relation diagonal(const Carrier& carrier) {
    Relation r(carrier);
    for (std::size_t i = 0; i < r.size(); ++i) r.set(i, i);
    return r;
  }
  static Relation full(const Carrier& carrier) {
    Relation r(carrier);
    for (auto& row : r.rows_) row = ElementSet::full(r.size());
    return r;
  }

  const Carrier& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return rows_.size(); }

  bool test(std::size_t x, std::size_t y) const noexcept { return rows_[x].test(y); }
  void set(std::size_t x, std::size_t y, bool value = true) noexcept {
    rows_[x].set(y, value);
  }

  /// The set {y : x R y}.
  const ElementSet& row(std::size_t x) const noexcept { return rows_[x]; }
  ElementSet& row(std::size_t x) noexcept { return rows_[x]; }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
  }
  bool empty() const noexcept { return count() == 0; }

  bool subset_of(const Relation& other) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (!rows_[i].subset_of(other.rows_[i])) return false;
    return true;
  }

  /// Member pairs in row-major (lexicographic) order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < size(); ++x)
      for (auto y : rows_[x].members()) out.emplace_back(x, y);
    return out;
  }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.rows_ == b.rows_ && a.carrier_ == b.carrier_;
  }

 private:
  Carrier carrier_;
  std::vector<ElementSet> rows_;
};

inline void require_same_carrier(const Relation& r, const Relation& s) {
  if (!(r.carrier() == s.carrier()))
    throw Error(ErrorKind::CarrierMismatch, "relations live on different carriers");
}

inline Relation make_relation(
    const Carrier& carrier,
    std::span<const std::pair<std::string, std::string>> pairs) {
  Relation r(carrier);
  for (const auto& [a, b] : pairs) {
    auto ia = carrier.find(a);
    auto ib = carrier.find(b);
    if (!ia || !ib)
      throw Error(ErrorKind::UnknownLabel,
                  "pair (" + a + ", " + b + ") uses a label outside the carrier",
                  {a, b});
    r.set(*ia, *ib);
  }
  return r;
}

inline Relation make_relation(
    const Carrier& carrier,
    std::initializer_list<std::pair<std::string, std::string>> pairs) {
  return make_relation(
      carrier, std::span<const std::pair<std::string, std::string>>(
                   pairs.begin(), pairs.size()));
}

// ---------------------------------------------------------------------------
// Transformations and set algebra
// ---------------------------------------------------------------------------

enum class TransformKind { inverse, complement, diagonal_of_carrier };
enum class CombineKind { union_, intersection, difference };

inline Relation inverse(const Relation& r) {
  Relation out(r.carrier());
  for (std::size_t x = 0; x < r.size(); ++x)
    for (auto y : r.row(x).members()) out.set(y, x);
  return out;
}

inline Relation complement(const Relation& r) {
  Relation out(r.carrier());
  for (std::size_t x = 0; x < r.size(); ++x) out.row(x) = r.row(x).complement();
  return out;
}

inline Relation transform(const Relation& r, TransformKind kind) {
  switch (kind) {
    case TransformKind::inverse: return inverse(r);
    case TransformKind::complement: return complement(r);
    case TransformKind::diagonal_of_carrier: return Relation::diagonal(r.carrier());
  }
  return r;
}

inline Relation combine(const Relation& r, const Relation& s, CombineKind kind) {
  require_same_carrier(r, s);
  Relation out(r);
  for (std::size_t x = 0; x < r.size(); ++x) {
    switch (kind) {
      case CombineKind::union_: out.row(x) |= s.row(x); break;
      case CombineKind::intersection: out.row(x) &= s.row(x); break;
      case CombineKind::difference: out.row(x) -= s.row(x); break;
    }
  }
  return out;
}

inline Relation operator|(const Relation& r, const Relation& s) {
  return combine(r, s, CombineKind::union_);
}
inline Relation operator&(const Relation& r, const Relation& s) {
  return combine(r, s, CombineKind::intersection);
}
inline Relation operator-(const Relation& r, const Relation& s) {
  return combine(r, s, CombineKind::difference);
}

// ---------------------------------------------------------------------------
// Derived relations
// ---------------------------------------------------------------------------

struct DerivedParts {
  Relation symmetric_part;   // R ∩ R⁻¹
  Relation asymmetric_part;  // R \ (R ∩ R⁻¹)
  Relation comparability;    // R ∪ R⁻¹
  Relation incomparability;  // complement of R ∪ R⁻¹
};

inline Relation symmetric_part(const Relation& r) { return r & inverse(r); }
inline Relation asymmetric_part(const Relation& r) { return r - inverse(r); }
inline Relation comparability(const Relation& r) { return r | inverse(r); }
inline Relation incomparability(const Relation& r) { return complement(comparability(r)); }

inline DerivedParts derived_parts(const Relation& r) {
  const Relation inv = inverse(r);
  Relation sym = r & inv;
  Relation asym = r - inv;
  Relation comp = r | inv;
  Relation incomp = complement(comp);
  return {std::move(sym), std::move(asym), std::move(comp), std::move(incomp)};
}

// ---------------------------------------------------------------------------
// Predicates. Each returns the lexicographically least violating tuple of
// element indices when the property fails.
// ---------------------------------------------------------------------------

struct PropertyCheck {
  bool holds = true;
  std::vector<std::size_t> witness;

  explicit operator bool() const noexcept { return holds; }
  static PropertyCheck pass() { return {}; }
  static PropertyCheck fail(std::vector<std::size_t> w) { return {false, std::move(w)}; }
};

inline PropertyCheck check_reflexive(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    if (!r.test(x, x)) return PropertyCheck::fail({x});
  return PropertyCheck::pass();
}

inline PropertyCheck check_irreflexive(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    if (r.test(x, x)) return PropertyCheck::fail({x});
  return PropertyCheck::pass();
}

inline PropertyCheck check_symmetric(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    for (auto y : r.row(x).members())
      if (!r.test(y, x)) return PropertyCheck::fail({x, y});
  return PropertyCheck::pass();
}

inline PropertyCheck check_antisymmetric(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    for (auto y : r.row(x).members())
      if (x != y && r.test(y, x)) return PropertyCheck::fail({x, y});
  return PropertyCheck::pass();
}

inline PropertyCheck check_asymmetric(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    for (auto y : r.row(x).members())
      if (r.test(y, x)) return PropertyCheck::fail({x, y});
  return PropertyCheck::pass();
}

inline PropertyCheck check_complete(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < r.size(); ++y)
      if (!r.test(x, y) && !r.test(y, x)) return PropertyCheck::fail({x, y});
  return PropertyCheck::pass();
}

/// xRy and yRz imply xRz; witness (x, y, z).
inline PropertyCheck check_transitive(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x)
    for (auto y : r.row(x).members())
      if (auto z = (r.row(y) - r.row(x)).next()) return PropertyCheck::fail({x, y, *z});
  return PropertyCheck::pass();
}

/// xRz implies xRy or yRz; witness (x, y, z) with xRz, not xRy, not yRz.
inline PropertyCheck check_negatively_transitive(const Relation& r) {
  for (std::size_t x = 0; x < r.size(); ++x) {
    const ElementSet& above_x = r.row(x);
    for (std::size_t y = 0; y < r.size(); ++y) {
      if (above_x.test(y)) continue;
      if (auto z = (above_x - r.row(y)).next()) return PropertyCheck::fail({x, y, *z});
    }
  }
  return PropertyCheck::pass();
}

struct PropertyReport {
  PropertyCheck reflexive;
  PropertyCheck irreflexive;
  PropertyCheck symmetric;
  PropertyCheck antisymmetric;
  PropertyCheck asymmetric;
  PropertyCheck complete;
  PropertyCheck transitive;
  PropertyCheck negatively_transitive;
};

inline PropertyReport check_properties(const Relation& r) {
  return {check_reflexive(r),  check_irreflexive(r),   check_symmetric(r),
          check_antisymmetric(r), check_asymmetric(r), check_complete(r),
          check_transitive(r), check_negatively_transitive(r)};
}

inline bool is_preorder(const Relation& r) {
  return check_reflexive(r).holds && check_transitive(r).holds;
}
inline bool is_partial_order(const Relation& r) {
  return is_preorder(r) && check_antisymmetric(r).holds;
}
inline bool is_linear_order(const Relation& r) {
  return is_partial_order(r) && check_complete(r).holds;
}
inline bool is_equivalence(const Relation& r) {
  return check_reflexive(r).holds && check_symmetric(r).holds &&
         check_transitive(r).holds;
}

// ---------------------------------------------------------------------------
// Saturation
// ---------------------------------------------------------------------------

enum class SaturationMode { left, right, full, weak };

/// Saturation of `s` with respect to `e` (which need not be an equivalence).
///   left:  x e y, y s z  =>  x s z
///   right: x s y, y e z  =>  x s z
///   full:  left and right
///   weak:  x e y, y s z  =>  exists t with z e t and x s t
/// Witnesses are (x, y, z) in the order the quantifiers above are written.
inline PropertyCheck check_saturation(const Relation& s, const Relation& e,
                                      SaturationMode mode) {
  require_same_carrier(s, e);
  const std::size_t n = s.size();
  switch (mode) {
    case SaturationMode::left:
      for (std::size_t x = 0; x < n; ++x)
        for (auto y : e.row(x).members())
          if (auto z = (s.row(y) - s.row(x)).next())
            return PropertyCheck::fail({x, y, *z});
      return PropertyCheck::pass();
    case SaturationMode::right:
      for (std::size_t x = 0; x < n; ++x)
        for (auto y : s.row(x).members())
          if (auto z = (e.row(y) - s.row(x)).next())
            return PropertyCheck::fail({x, y, *z});
      return PropertyCheck::pass();
    case SaturationMode::full: {
      auto l = check_saturation(s, e, SaturationMode::left);
      if (!l.holds) return l;
      return check_saturation(s, e, SaturationMode::right);
    }
    case SaturationMode::weak:
      for (std::size_t x = 0; x < n; ++x)
        for (auto y : e.row(x).members())
          for (auto z : s.row(y).members())
            if (!e.row(z).intersects(s.row(x))) return PropertyCheck::fail({x, y, z});
      return PropertyCheck::pass();
  }
  return PropertyCheck::pass();
}

/// R ∪ R⁻¹ = A² \ E for an equivalence E.
inline bool is_e_complete(const Relation& r, const Relation& e) {
  require_same_carrier(r, e);
  if (!is_equivalence(e))
    throw Error(ErrorKind::NotAnEquivalence,
                "E-completeness is defined against an equivalence relation");
  return comparability(r) == complement(e);
}

// ---------------------------------------------------------------------------
// Transitive closure (Warshall over packed rows).
// ---------------------------------------------------------------------------

inline Relation transitive_closure(const Relation& r) {
  Relation out(r);
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k) {
    const ElementSet through_k = out.row(k);
    for (std::size_t i = 0; i < n; ++i)
      if (out.test(i, k)) out.row(i) |= through_k;
  }
  return out;
}

/// Restriction of r to the elements in `subset`, with the induced carrier.
inline Relation restrict(const Relation& r, std::span<const std::size_t> subset) {
  Relation out(Carrier(r.carrier().labels_of(subset)));
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j)
      if (r.test(subset[i], subset[j])) out.set(i, j);
  return out;
}

}  // namespace ordbubble

#endif  // ORDBUBBLE_RELATION_HPP
