#ifndef ORDBUBBLE_CLI_HPP
#define ORDBUBBLE_CLI_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

#include "ordbubble/error.hpp"
#include "ordbubble/factor.hpp"
#include "ordbubble/io.hpp"
#include "ordbubble/order_ext.hpp"
#include "ordbubble/relation.hpp"
#include "ordbubble/structure.hpp"
#include "ordbubble/topology.hpp"

namespace ordbubble::cli {

using json = nlohmann::json;

inline constexpr std::uint64_t kDefaultSeed = 20240611;
inline constexpr std::size_t kMaxSweep = 4;

enum class Verb { analyze, decompose, bubble, extend, utility, topology, sweep };

inline constexpr std::string_view kVerbs[] = {"analyze", "decompose", "bubble", "extend",
                                              "utility", "topology",  "sweep"};

inline std::string_view to_string(Verb v) { return kVerbs[static_cast<std::size_t>(v)]; }

inline Verb parse_verb(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kVerbs); ++i)
    if (kVerbs[i] == name) return static_cast<Verb>(i);
  throw Error(ErrorKind::ParseError, "unknown verb '" + std::string(name) + "'");
}

/// Test hooks that deliberately break a verified invariant.
struct SweepOptions {
  bool corrupt_saturation = false;
};

struct Command {
  Verb verb = Verb::analyze;
  std::optional<std::string> input;
  std::optional<std::string> output;
  std::size_t n = 3;
  std::uint64_t seed = kDefaultSeed;
  io::InputFormat format = io::InputFormat::automatic;
  SweepOptions sweep;
};

struct Report {
  std::string verb;
  std::optional<std::string> input_digest;
  json result;
  std::vector<NamedCheck> invariants;

  bool all_pass() const {
    return std::all_of(invariants.begin(), invariants.end(),
                       [](const NamedCheck& c) { return c.pass; });
  }

  json to_json() const {
    json inv = json::array();
    for (const auto& c : invariants) inv.push_back({{"name", c.name}, {"pass", c.pass}});
    return {{"verb", verb},
            {"input_digest", input_digest ? json(*input_digest) : json(nullptr)},
            {"result", result},
            {"invariants", std::move(inv)}};
  }

  std::string dump() const { return to_json().dump(2) + "\n"; }
};

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::ValidationError, "digest computation failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace detail {

inline const Relation& need_relation(const io::Input& in, Verb verb) {
  if (const auto* r = std::get_if<Relation>(&in)) return *r;
  throw Error(ErrorKind::ValidationError,
              std::string(to_string(verb)) + " expects a relation, not a bubble system");
}

inline json order_json(const Loset& l) {
  json out = json::array();
  for (std::size_t p = 0; p < l.size(); ++p) out.push_back(l.carrier().label(l.element_at(p)));
  return out;
}

inline void analyze(const Relation& r, Report& rep) {
  const DerivedParts parts = derived_parts(r);
  const Carrier& c = r.carrier();
  rep.result = {
      {"relation", io::properties_to_json(check_properties(r), c)},
      {"strict_part", io::properties_to_json(check_properties(parts.asymmetric_part), c)},
      {"derived_parts",
       {{"symmetric_part", io::relation_to_json(parts.symmetric_part)},
        {"asymmetric_part", io::relation_to_json(parts.asymmetric_part)},
        {"comparability", io::relation_to_json(parts.comparability)},
        {"incomparability", io::relation_to_json(parts.incomparability)}}}};
  rep.invariants = {
      {"symmetric and asymmetric parts partition the relation",
       (parts.symmetric_part & parts.asymmetric_part).empty() &&
           (parts.symmetric_part | parts.asymmetric_part) == r},
      {"comparability and incomparability partition the square",
       (parts.comparability & parts.incomparability).empty() &&
           (parts.comparability | parts.incomparability) == Relation::full(c)},
      {"incomparability of the complement is the symmetric part",
       incomparability(complement(r)) == parts.symmetric_part}};
}

inline void decompose_verb(const Relation& r, Report& rep) {
  const Decomposition d = decompose(r);
  if (d.bubbles) {
    rep.result = {{"kind", "bubbles"}, {"system", io::bubble_system_to_json(*d.bubbles)}};
    rep.invariants = necessary_conditions(r);
    rep.invariants.push_back({"composing the decomposition reproduces the input",
                              bubble_compose(*d.bubbles, r.carrier()) == r});
    return;
  }
  const BourbakiFactor& f = *d.fallback;
  rep.result = {{"kind", "fallback"},
                {"fallback", "bourbaki"},
                {"witness", d.witness},
                {"partition", io::partition_to_json(f.partition)},
                {"order", order_json(f.order)}};
  rep.invariants = {
      {"closed indifference quotient is a linear order", is_linear_order(f.order.relation())},
      {"witness violates negative transitivity of the strict part",
       d.witness.size() == 3 && [&] {
         const Relation p = asymmetric_part(r);
         const auto x = r.carrier().index_of(d.witness[0]);
         const auto y = r.carrier().index_of(d.witness[1]);
         const auto z = r.carrier().index_of(d.witness[2]);
         return p.test(x, z) && !p.test(x, y) && !p.test(y, z);
       }()}};
}

inline void bubble_verb(const BubbleSystem& sys, Report& rep) {
  const Relation r = bubble_compose(sys);
  rep.result = io::relation_to_json(r);
  bool recovered = false;
  try {
    recovered = same_structure(bubble_decompose(r), sys);
  } catch (const Error&) {
  }
  rep.invariants = {
      {"composition is a preorder", is_preorder(r)},
      {"strict part is negatively transitive",
       check_negatively_transitive(asymmetric_part(r)).holds},
      {"decomposing the composition recovers the system", recovered}};
}

inline void extend_verb(const Relation& r, Report& rep) {
  const Loset l = szpilrajn_extend(r);
  rep.result = {{"order", order_json(l)}};
  rep.invariants = {{"extension is a linear order", is_linear_order(l.relation())},
                    {"extension contains the input", r.subset_of(l.relation())}};
}

inline void utility_verb(const Relation& r, Report& rep) {
  const UtilityAssignment u = generalized_utility(r);
  const bool continuous = utility_continuity(r, u).holds;
  rep.result = io::utility_to_json(u);
  rep.result["continuous"] = continuous;
  auto [strict_ok, equal_ok] = verify_utility(r, u.values);
  rep.invariants = {strict_ok, equal_ok,
                    {"utility is continuous for the image-grid topology", continuous}};
}

inline void topology_verb(const Relation& r, Report& rep) {
  const auto intervals = open_intervals(r);
  const FiniteTopology t = generate_topology(r.carrier(), std::span<const Interval>(intervals));
  rep.result = io::topology_to_json(t, r);
  std::vector<OpenMask> family;
  for (const auto& iv : intervals) family.push_back(to_mask(iv.extent));
  family.push_back(t.whole());
  rep.invariants = {{"opens are closed under union and intersection", t.invariants_hold()},
                    {"intervals with the whole space form a base", is_base(family, t).holds}};
}

}  // namespace detail

/// Exhaustive invariant suite over every relation on the canonical
/// n-element carrier, plus a seeded batch of random bubble systems.
inline Report sweep(std::size_t n, std::uint64_t seed, const SweepOptions& options = {}) {
  if (n < 1 || n > kMaxSweep)
    throw Error(ErrorKind::ValidationError,
                "exhaustive sweep supports 1 <= n <= 4; larger carriers are covered by the "
                "randomized test suites");
  const Carrier c = Carrier::canonical(n);
  std::size_t relations = 0, preorders = 0, decomposable = 0, fallback = 0;
  bool split_join = true, round_trip = true, saturated = true, fallback_linear = true;
  std::vector<Relation> equivalences;
  for_each_relation(c, [&](const Relation& r) {
    ++relations;
    if (is_equivalence(r)) equivalences.push_back(r);
    if (!is_preorder(r)) return;
    ++preorders;
    const PreorderSplit s = split_preorder(r);
    split_join = split_join && join_pair(s.equivalence, s.strict) == r;
    const Relation f = asymmetric_part(r);
    if (check_negatively_transitive(f).holds) {
      ++decomposable;
      bool sat = check_saturation(f, incomparability(f), SaturationMode::full).holds;
      if (options.corrupt_saturation) sat = !sat;
      saturated = saturated && sat;
      round_trip = round_trip && bubble_compose(bubble_decompose(r), c) == r;
    } else {
      ++fallback;
      fallback_linear = fallback_linear && is_linear_order(bourbaki_factor(r).order.relation());
    }
  });

  // Independent count of (equivalence, strict order) pairs: F irreflexive,
  // transitive, disjoint from E and E-saturated on both sides.
  std::size_t pairs = 0;
  for (const auto& e : equivalences) {
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (!e.test(x, y)) free.emplace_back(x, y);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << free.size()); ++m) {
      Relation f(c);
      for (std::size_t k = 0; k < free.size(); ++k)
        if ((m >> k) & 1u) f.set(free[k].first, free[k].second);
      if (!check_transitive(f).holds) continue;
      if (!check_saturation(f, e, SaturationMode::full).holds) continue;
      ++pairs;
      const PreorderSplit back = split_preorder(join_pair(EquivalenceRelation(e), f));
      split_join = split_join && back.equivalence.relation() == e && back.strict == f;
    }
  }

  std::mt19937_64 rng(seed);
  constexpr std::size_t kRandomSystems = 50;
  bool random_round_trip = true;
  for (std::size_t i = 0; i < kRandomSystems; ++i) {
    const BubbleSystem sys = random_bubble_system(rng, 5, 3);
    random_round_trip = random_round_trip && same_structure(bubble_decompose(bubble_compose(sys)), sys);
  }

  Report rep;
  rep.verb = "sweep";
  rep.result = {{"n", n},
                {"seed", seed},
                {"relations", relations},
                {"preorders", preorders},
                {"equivalence_strict_pairs", pairs},
                {"decomposable", decomposable},
                {"fallback", fallback},
                {"random_systems", kRandomSystems}};
  rep.invariants = {
      {"preorders correspond one to one with equivalence and strict order pairs",
       split_join && pairs == preorders},
      {"strict part is saturated by the bubble equivalence", saturated},
      {"decomposition then composition is the identity", round_trip},
      {"closed indifference quotient is linear when decomposition fails", fallback_linear},
      {"random bubble systems survive composition then decomposition", random_round_trip}};
  return rep;
}

/// Runs a verb on already-loaded input text (ignored by sweep).
inline Report run_on_text(const Command& cmd, std::string_view text) {
  if (cmd.verb == Verb::sweep) return sweep(cmd.n, cmd.seed, cmd.sweep);
  Report rep;
  rep.verb = std::string(to_string(cmd.verb));
  rep.input_digest = sha256_hex(text);
  const io::Input in = io::parse_input_text(text, cmd.format);
  switch (cmd.verb) {
    case Verb::analyze: detail::analyze(detail::need_relation(in, cmd.verb), rep); break;
    case Verb::decompose: detail::decompose_verb(detail::need_relation(in, cmd.verb), rep); break;
    case Verb::bubble: {
      const auto* sys = std::get_if<BubbleSystem>(&in);
      if (!sys) throw Error(ErrorKind::ValidationError, "bubble expects a bubble system");
      detail::bubble_verb(*sys, rep);
      break;
    }
    case Verb::extend: detail::extend_verb(detail::need_relation(in, cmd.verb), rep); break;
    case Verb::utility: detail::utility_verb(detail::need_relation(in, cmd.verb), rep); break;
    case Verb::topology: detail::topology_verb(detail::need_relation(in, cmd.verb), rep); break;
    case Verb::sweep: break;
  }
  return rep;
}

inline Report run(const Command& cmd) {
  if (cmd.verb == Verb::sweep) return sweep(cmd.n, cmd.seed, cmd.sweep);
  if (!cmd.input) throw Error(ErrorKind::ParseError, "--in is required for this verb");
  return run_on_text(cmd, io::read_file(*cmd.input));
}

/// 0 when every invariant passed, 2 otherwise.
inline int exit_code(const Report& rep) { return rep.all_pass() ? 0 : 2; }

/// 2 for invariant violations, 1 for every other error.
inline int exit_code(const Error& err) {
  return err.kind() == ErrorKind::InvariantViolation ? 2 : 1;
}

}  // namespace ordbubble::cli

#endif  // ORDBUBBLE_CLI_HPP
