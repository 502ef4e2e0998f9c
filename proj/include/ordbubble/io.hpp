#ifndef ORDBUBBLE_IO_HPP
#define ORDBUBBLE_IO_HPP

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "ordbubble/error.hpp"
#include "ordbubble/factor.hpp"
#include "ordbubble/order_ext.hpp"
#include "ordbubble/relation.hpp"
#include "ordbubble/structure.hpp"
#include "ordbubble/topology.hpp"

namespace ordbubble::io {

using json = nlohmann::json;

namespace detail {

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError,
                "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline const json& field(const json& j, const char* name, json::value_t type) {
  if (!j.is_object() || !j.contains(name))
    throw Error(ErrorKind::ParseError, std::string("missing field '") + name + "'");
  const json& v = j.at(name);
  if (v.type() != type)
    throw Error(ErrorKind::ParseError, std::string("field '") + name + "' has the wrong type");
  return v;
}

inline std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, where + " must be an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string())
      throw Error(ErrorKind::ParseError, where + "[" + std::to_string(i) + "] must be a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> pair_list(const json& j,
                                                                  const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, where + " must be an array");
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto p = string_list(j[i], where + "[" + std::to_string(i) + "]");
    if (p.size() != 2)
      throw Error(ErrorKind::ParseError,
                  where + "[" + std::to_string(i) + "] must hold exactly two labels");
    out.emplace_back(std::move(p[0]), std::move(p[1]));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Readers
// ---------------------------------------------------------------------------

inline Relation relation_from_json(const json& j) {
  const auto elements = detail::string_list(detail::field(j, "elements", json::value_t::array),
                                            "elements");
  const auto pairs = detail::pair_list(detail::field(j, "pairs", json::value_t::array), "pairs");
  const Carrier c(elements);
  return make_relation(c, pairs);
}

/// {"elements": [...], "pairs": [[x, y], ...]}
inline Relation parse_relation_json(std::string_view text) {
  return relation_from_json(detail::parse_json(text));
}

/// First line n, then n lines of n characters '0' or '1'. Labels e0..e{n-1}.
inline Relation parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw Error(ErrorKind::ParseError, "line 1: missing size");
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoul(line, &used);
    if (used != line.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": bad size");
  }
  Relation r(Carrier::canonical(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!next_line())
      throw Error(ErrorKind::ParseError, "expected " + std::to_string(n) + " matrix rows");
    if (line.size() != n)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": row has " +
                                             std::to_string(line.size()) + " entries, expected " +
                                             std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (line[j] != '0' && line[j] != '1')
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ", column " +
                                               std::to_string(j + 1) + ": expected 0 or 1");
      if (line[j] == '1') r.set(i, j);
    }
  }
  if (next_line())
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": extra row");
  return r;
}

inline BubbleSystem bubble_system_from_json(const json& j) {
  const auto index = detail::string_list(detail::field(j, "index", json::value_t::array), "index");
  const json& list = detail::field(j, "bubbles", json::value_t::array);
  std::vector<Bubble> bubbles;
  for (std::size_t k = 0; k < index.size(); ++k) {
    const std::string where = "bubbles[" + std::to_string(k) + "]";
    if (k >= list.size()) throw Error(ErrorKind::ParseError, "missing " + where);
    const json& b = list[k];
    const std::string label = detail::field(b, "label", json::value_t::string).get<std::string>();
    if (label != index[k])
      throw Error(ErrorKind::ValidationError,
                  where + " is labelled '" + label + "' but the index lists '" + index[k] + "'");
    auto elements =
        detail::string_list(detail::field(b, "elements", json::value_t::array), where + ".elements");
    const auto pairs = detail::pair_list(detail::field(b, "inner_pairs", json::value_t::array),
                                         where + ".inner_pairs");
    const Carrier c(elements);
    const Relation inner = make_relation(c, pairs);
    if (!is_equivalence(inner))
      throw Error(ErrorKind::ValidationError, where + ".inner_pairs is not an equivalence");
    bubbles.push_back({std::move(elements), EquivalenceRelation(inner)});
  }
  if (list.size() != index.size())
    throw Error(ErrorKind::ParseError, "more bubbles than index labels");
  return BubbleSystem(index, std::move(bubbles));
}

/// {"index": [...], "bubbles": [{"label", "elements", "inner_pairs"}, ...]}
inline BubbleSystem parse_bubble_json(std::string_view text) {
  return bubble_system_from_json(detail::parse_json(text));
}

enum class InputFormat { automatic, relation_json, matrix, bubble_json };

inline InputFormat parse_format(std::string_view name) {
  if (name == "auto") return InputFormat::automatic;
  if (name == "relation_json") return InputFormat::relation_json;
  if (name == "matrix") return InputFormat::matrix;
  if (name == "bubble_json") return InputFormat::bubble_json;
  throw Error(ErrorKind::ParseError, "unknown format '" + std::string(name) + "'");
}

using Input = std::variant<Relation, BubbleSystem>;

/// Auto-detection: text starting with '{' is JSON, a bubble system when it
/// has an "index" field and a relation otherwise; anything else is a matrix.
inline Input parse_input_text(std::string_view text, InputFormat format = InputFormat::automatic) {
  switch (format) {
    case InputFormat::relation_json: return parse_relation_json(text);
    case InputFormat::matrix: return parse_matrix(text);
    case InputFormat::bubble_json: return parse_bubble_json(text);
    case InputFormat::automatic: break;
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    const json j = detail::parse_json(text);
    if (j.contains("index")) return bubble_system_from_json(j);
    return relation_from_json(j);
  }
  return parse_matrix(text);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Input parse_input(const std::string& path, InputFormat format = InputFormat::automatic) {
  return parse_input_text(read_file(path), format);
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

inline json labels_json(const Carrier& c, const ElementSet& s) {
  return json(c.labels_of(s.members()));
}

inline json relation_to_json(const Relation& r) {
  json pairs = json::array();
  for (auto [x, y] : r.pairs()) pairs.push_back({r.carrier().label(x), r.carrier().label(y)});
  return {{"elements", r.carrier().labels()}, {"pairs", std::move(pairs)}};
}

inline json partition_to_json(const Partition& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks()) blocks.push_back(p.carrier().labels_of(b));
  return {{"blocks", std::move(blocks)}};
}

inline json bubble_system_to_json(const BubbleSystem& sys) {
  json bubbles = json::array();
  for (std::size_t k = 0; k < sys.bubbles().size(); ++k) {
    const Bubble& b = sys.bubbles()[k];
    json pairs = json::array();
    for (auto [i, j] : b.inner.relation().pairs()) pairs.push_back({b.elements[i], b.elements[j]});
    bubbles.push_back(
        {{"label", sys.index()[k]}, {"elements", b.elements}, {"inner_pairs", std::move(pairs)}});
  }
  return {{"index", sys.index()}, {"bubbles", std::move(bubbles)}};
}

inline json check_to_json(const PropertyCheck& c, const Carrier& carrier) {
  json j{{"holds", c.holds}};
  if (!c.holds) j["witness"] = carrier.labels_of(c.witness);
  return j;
}

inline json properties_to_json(const PropertyReport& p, const Carrier& c) {
  return {{"reflexive", check_to_json(p.reflexive, c)},
          {"irreflexive", check_to_json(p.irreflexive, c)},
          {"symmetric", check_to_json(p.symmetric, c)},
          {"antisymmetric", check_to_json(p.antisymmetric, c)},
          {"asymmetric", check_to_json(p.asymmetric, c)},
          {"complete", check_to_json(p.complete, c)},
          {"transitive", check_to_json(p.transitive, c)},
          {"negatively_transitive", check_to_json(p.negatively_transitive, c)}};
}

inline json utility_to_json(const UtilityAssignment& u) {
  json values = json::object();
  for (std::size_t x = 0; x < u.values.size(); ++x)
    values[u.carrier.label(x)] = u.values[x].to_string();
  return {{"interval", std::string(to_string(u.interval))}, {"values", std::move(values)}};
}

inline json topology_to_json(const FiniteTopology& t, const Relation& r) {
  json opens = json::array();
  for (auto m : t.opens()) opens.push_back(labels_json(t.carrier(), to_element_set(m, t.size())));
  json gap_list = json::array();
  for (auto [x, y] : gaps(r)) gap_list.push_back({r.carrier().label(x), r.carrier().label(y)});
  return {{"opens", std::move(opens)},
          {"connected", connectivity_report(t).connected},
          {"gaps", std::move(gap_list)}};
}

}  // namespace ordbubble::io

#endif  // ORDBUBBLE_IO_HPP
