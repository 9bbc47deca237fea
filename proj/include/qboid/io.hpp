#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qboid/enumerate.hpp"
#include "qboid/error.hpp"
#include "qboid/geometry.hpp"
#include "qboid/model.hpp"
#include "qboid/pair.hpp"

namespace qboid {

// Documents are UTF-8 JSON with a mandatory format_version "1" and a kind
// tag; the payload fields sit at the top level.  All labels and indices are
// 1-based in files.

enum class DocKind { Graph, Tree, Pair, Polygon, Report };

inline const char* to_string(DocKind k) {
  switch (k) {
    case DocKind::Graph: return "graph";
    case DocKind::Tree: return "tree";
    case DocKind::Pair: return "pair";
    case DocKind::Polygon: return "polygon";
    case DocKind::Report: return "report";
  }
  return "?";
}

inline std::optional<DocKind> kind_from_string(const std::string& s) {
  if (s == "graph") return DocKind::Graph;
  if (s == "tree") return DocKind::Tree;
  if (s == "pair") return DocKind::Pair;
  if (s == "polygon") return DocKind::Polygon;
  if (s == "report") return DocKind::Report;
  return std::nullopt;
}

struct ParseError {
  std::string message;
  int line = -1;  // 1-based; -1 when the failure is structural, not lexical
  int column = -1;

  std::string str() const {
    if (line < 0) return message;
    return message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
  }
};

struct Document {
  DocKind kind = DocKind::Graph;
  std::variant<RawGraph, RawTree, RawPair, SpecialPolygon, EnumerationReport> payload;
};

struct ParseResult {
  std::optional<Document> doc;
  std::optional<ParseError> error;

  bool ok() const { return doc.has_value(); }
};

namespace detail_io {

using nlohmann::json;

struct SchemaError {
  std::string message;
};

[[noreturn]] inline void fail(const std::string& m) { throw SchemaError{m}; }

inline const json& field(const json& o, const char* key) {
  auto it = o.find(key);
  if (it == o.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

inline int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) fail("field '" + what + "' must be an integer");
  return v.get<int>();
}

inline std::uint64_t as_count(const json& v, const std::string& what) {
  if (!v.is_number_integer()) fail("field '" + what + "' must be a nonnegative integer");
  if (!v.is_number_unsigned() && v.get<long long>() < 0)
    fail("field '" + what + "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline double as_double(const json& v, const std::string& what) {
  if (!v.is_number()) fail("field '" + what + "' must be a number");
  return v.get<double>();
}

// Array of 1-based labels, converted to 0-based.
inline std::vector<int> as_labels(const json& v, const std::string& what) {
  if (!v.is_array()) fail("field '" + what + "' must be an array of labels");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(as_int(x, what + " entry") - 1);
  return out;
}

inline std::vector<std::vector<int>> as_label_lists(const json& v, const std::string& what) {
  if (!v.is_array()) fail("field '" + what + "' must be an array of arrays");
  std::vector<std::vector<int>> out;
  for (const auto& x : v) out.push_back(as_labels(x, what));
  return out;
}

inline RawGraph parse_graph(const json& j) {
  RawGraph g;
  g.q = as_int(field(j, "q"), "q");
  g.n = as_int(field(j, "edges"), "edges");
  g.black = as_label_lists(field(j, "black"), "black");
  g.white = as_label_lists(field(j, "white"), "white");
  if (auto it = j.find("rotations"); it != j.end()) {
    if (!it->is_object()) fail("field 'rotations' must be an object keyed by white vertex");
    for (const auto& [key, value] : it->items()) {
      int w = 0;
      try {
        w = std::stoi(key);
      } catch (...) {
        fail("rotations key '" + key + "' is not a vertex index");
      }
      g.rotations[w - 1] = as_labels(value, "rotations[" + key + "]");
    }
  }
  return g;
}

inline RawTree parse_tree(const json& j) {
  RawTree t;
  t.q = as_int(field(j, "q"), "q");
  t.n = as_int(field(j, "edges"), "edges");
  t.internal_vertices = as_label_lists(field(j, "internal"), "internal");
  t.red = as_labels(field(j, "red"), "red");
  t.blue = as_labels(field(j, "blue"), "blue");
  const json& sig = field(j, "sigma");
  if (!sig.is_array()) fail("field 'sigma' must be an array of 2-element orbits");
  for (const auto& orb : sig) {
    if (!orb.is_array() || orb.size() != 2) fail("sigma orbits must be 2-element arrays");
    t.sigma_pairs.emplace_back(as_int(orb[0], "sigma") - 1, as_int(orb[1], "sigma") - 1);
  }
  return t;
}

// Permutations in documents: an image array (1-based) or a cycle string.
inline std::vector<int> as_images(const json& v, int n, const std::string& what) {
  if (v.is_string()) {
    auto p = Permutation::parse_cycles(v.get<std::string>(), n);
    if (!p) fail("field '" + what + "' is not valid cycle notation for n=" + std::to_string(n));
    return p->images();
  }
  return as_labels(v, what);
}

inline RawPair parse_pair(const json& j) {
  RawPair p;
  p.q = as_int(field(j, "q"), "q");
  p.n = as_int(field(j, "n"), "n");
  if (p.n < 0) fail("field 'n' must be nonnegative");
  p.sigma2 = as_images(field(j, "sigma2"), p.n, "sigma2");
  p.sigmaq = as_images(field(j, "sigmaq"), p.n, "sigmaq");
  return p;
}

inline SpecialPolygon parse_polygon(const json& j) {
  SpecialPolygon poly;
  poly.q = as_int(field(j, "q"), "q");
  const json& verts = field(j, "vertices");
  if (!verts.is_array()) fail("field 'vertices' must be an array");
  for (const auto& v : verts) {
    if (v.is_string()) {
      if (v.get<std::string>() != "inf") fail("vertex strings must be \"inf\"");
      poly.vertices.push_back(HPoint::inf());
    } else if (v.is_array() && v.size() == 2) {
      const double x = as_double(v[0], "vertex"), y = as_double(v[1], "vertex");
      if (y < 0) fail("vertex below the real axis");
      poly.vertices.push_back(HPoint::at(x, y));
    } else {
      fail("vertices must be [x, y] pairs or \"inf\"");
    }
  }
  const json& sides = field(j, "sides");
  if (!sides.is_array()) fail("field 'sides' must be an array");
  for (const auto& s : sides) {
    if (!s.is_object()) fail("sides must be objects");
    PolygonSide side;
    side.from = as_int(field(s, "from"), "from") - 1;
    side.to = as_int(field(s, "to"), "to") - 1;
    const std::string kind = field(s, "kind").is_string() ? field(s, "kind").get<std::string>() : "";
    if (kind == "even")
      side.kind = SideKind::Even;
    else if (kind == "odd")
      side.kind = SideKind::Odd;
    else if (kind == "free")
      side.kind = SideKind::Free;
    else
      fail("side kind must be even, odd or free");
    side.partner = as_int(field(s, "partner"), "partner") - 1;
    if (auto it = s.find("apex"); it != s.end()) side.apex = as_int(*it, "apex") - 1;
    const json& m = field(s, "pairing");
    if (!m.is_array() || m.size() != 4) fail("side pairing must be [a, b, c, d]");
    side.pairing = MoebiusMap{as_double(m[0], "pairing"), as_double(m[1], "pairing"),
                              as_double(m[2], "pairing"), as_double(m[3], "pairing")};
    poly.sides.push_back(side);
  }
  return poly;
}

inline EnumerationReport parse_report(const json& j) {
  EnumerationReport r;
  r.q = as_int(field(j, "q"), "q");
  r.n = as_int(field(j, "n"), "n");
  if (r.n < 0) fail("field 'n' must be nonnegative");
  r.class_count = as_count(field(j, "class_count"), "class_count");
  r.transitive_pair_count = as_count(field(j, "transitive_pair_count"), "transitive_pair_count");
  r.all_pair_count = as_count(field(j, "all_pair_count"), "all_pair_count");
  r.subgroup_count = as_count(field(j, "subgroup_count"), "subgroup_count");
  r.hall_count = as_count(field(j, "hall_transitive_count"), "hall_transitive_count");
  const json& hc = field(j, "hall_consistent");
  if (!hc.is_boolean()) fail("field 'hall_consistent' must be a boolean");
  r.hall_consistent = hc.get<bool>();
  const json& classes = field(j, "classes");
  if (!classes.is_array()) fail("field 'classes' must be an array");
  for (const auto& c : classes) {
    if (!c.is_object()) fail("classes must be objects");
    const auto s2 = as_images(field(c, "sigma2"), r.n, "sigma2");
    const auto sq = as_images(field(c, "sigmaq"), r.n, "sigmaq");
    auto p2 = Permutation::from_images(s2);
    auto pq = Permutation::from_images(sq);
    if (!p2 || !pq) fail("class permutations must be permutations of 1..n");
    r.classes.push_back(PermutationPair{r.q, *p2, *pq});
  }
  return r;
}

}  // namespace detail_io

inline ParseResult parse_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offset to line/column.
    const std::size_t at = e.byte > 0 ? std::min(static_cast<std::size_t>(e.byte) - 1, text.size()) : 0;
    int line = 1, col = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {std::nullopt, ParseError{"not valid JSON: " + std::string(e.what()), line, col}};
  }

  try {
    if (!j.is_object()) detail_io::fail("document must be a JSON object");
    const auto& fv = detail_io::field(j, "format_version");
    if (!fv.is_string() || fv.get<std::string>() != "1")
      detail_io::fail("format_version must be the string \"1\"");
    const auto& kindv = detail_io::field(j, "kind");
    if (!kindv.is_string()) detail_io::fail("kind must be a string");
    const auto kind = kind_from_string(kindv.get<std::string>());
    if (!kind) detail_io::fail("unknown kind '" + kindv.get<std::string>() + "'");

    Document doc;
    doc.kind = *kind;
    switch (*kind) {
      case DocKind::Graph: doc.payload = detail_io::parse_graph(j); break;
      case DocKind::Tree: doc.payload = detail_io::parse_tree(j); break;
      case DocKind::Pair: doc.payload = detail_io::parse_pair(j); break;
      case DocKind::Polygon: doc.payload = detail_io::parse_polygon(j); break;
      case DocKind::Report: doc.payload = detail_io::parse_report(j); break;
    }
    return {std::move(doc), std::nullopt};
  } catch (const detail_io::SchemaError& e) {
    return {std::nullopt, ParseError{e.message, -1, -1}};
  }
}

// Serializers.  Output is pretty-printed with two-space indent and a
// trailing newline; field order is fixed, so equal objects serialize to
// equal bytes.

namespace detail_io {

using ojson = nlohmann::ordered_json;

inline ojson labels_out(const std::vector<int>& xs) {
  ojson a = ojson::array();
  for (int x : xs) a.push_back(x + 1);
  return a;
}

inline ojson doc_head(DocKind kind) {
  ojson j;
  j["format_version"] = "1";
  j["kind"] = to_string(kind);
  return j;
}

inline std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

inline ojson graph_body(const QBoidGraph& g) {
  ojson j = doc_head(DocKind::Graph);
  j["q"] = g.q;
  j["edges"] = g.n;
  ojson black = ojson::array(), white = ojson::array();
  for (const auto& inc : g.black) black.push_back(labels_out(inc));
  for (const auto& inc : g.white) white.push_back(labels_out(inc));
  j["black"] = std::move(black);
  j["white"] = std::move(white);
  ojson rot = ojson::object();
  for (int w = 0; w < static_cast<int>(g.white.size()); ++w)
    if (static_cast<int>(g.white[w].size()) == g.q) rot[std::to_string(w + 1)] = labels_out(g.white[w]);
  j["rotations"] = std::move(rot);
  return j;
}

inline ojson tree_body(const TreeDiagram& t) {
  ojson j = doc_head(DocKind::Tree);
  j["q"] = t.q;
  j["edges"] = t.n;
  ojson internal = ojson::array();
  for (const auto& inc : t.internal_vertices) internal.push_back(labels_out(inc));
  j["internal"] = std::move(internal);
  j["red"] = labels_out(t.red);
  j["blue"] = labels_out(t.blue);
  ojson sig = ojson::array();
  for (int r = 0; r < static_cast<int>(t.sigma.size()); ++r)
    if (t.sigma[r] > r) sig.push_back(ojson::array({t.red[r] + 1, t.red[t.sigma[r]] + 1}));
  j["sigma"] = std::move(sig);
  return j;
}

inline ojson pair_fields(const PermutationPair& p) {
  ojson j;
  j["sigma2"] = labels_out(p.sigma2.images());
  j["sigmaq"] = labels_out(p.sigmaq.images());
  return j;
}

inline ojson pair_body(const PermutationPair& p) {
  ojson j = doc_head(DocKind::Pair);
  j["q"] = p.q;
  j["n"] = p.size();
  j["sigma2"] = labels_out(p.sigma2.images());
  j["sigmaq"] = labels_out(p.sigmaq.images());
  return j;
}

inline ojson polygon_body(const SpecialPolygon& poly) {
  ojson j = doc_head(DocKind::Polygon);
  j["q"] = poly.q;
  ojson verts = ojson::array();
  for (const auto& v : poly.vertices) {
    if (v.infinite)
      verts.push_back("inf");
    else
      verts.push_back(ojson::array({v.x, v.y}));
  }
  j["vertices"] = std::move(verts);
  ojson sides = ojson::array();
  for (const auto& s : poly.sides) {
    ojson o;
    o["from"] = s.from + 1;
    o["to"] = s.to + 1;
    o["kind"] = to_string(s.kind);
    o["partner"] = s.partner + 1;
    if (s.apex >= 0) o["apex"] = s.apex + 1;
    o["pairing"] = ojson::array({s.pairing.a, s.pairing.b, s.pairing.c, s.pairing.d});
    sides.push_back(std::move(o));
  }
  j["sides"] = std::move(sides);
  return j;
}

inline ojson report_body(const EnumerationReport& r) {
  ojson j = doc_head(DocKind::Report);
  j["q"] = r.q;
  j["n"] = r.n;
  j["class_count"] = r.class_count;
  j["transitive_pair_count"] = r.transitive_pair_count;
  j["all_pair_count"] = r.all_pair_count;
  j["subgroup_count"] = r.subgroup_count;
  j["hall_transitive_count"] = r.hall_count;
  j["hall_consistent"] = r.hall_consistent;
  ojson classes = ojson::array();
  for (const auto& p : r.classes) classes.push_back(pair_fields(p));
  j["classes"] = std::move(classes);
  return j;
}

}  // namespace detail_io

inline std::string serialize(const QBoidGraph& g) { return detail_io::dump(detail_io::graph_body(g)); }
inline std::string serialize(const TreeDiagram& t) { return detail_io::dump(detail_io::tree_body(t)); }
inline std::string serialize(const PermutationPair& p) { return detail_io::dump(detail_io::pair_body(p)); }
inline std::string serialize(const SpecialPolygon& poly) { return detail_io::dump(detail_io::polygon_body(poly)); }
inline std::string serialize(const EnumerationReport& r) { return detail_io::dump(detail_io::report_body(r)); }

// Single-line form used when streaming many documents.
inline std::string serialize_compact(const PermutationPair& p) {
  return detail_io::pair_body(p).dump() + "\n";
}

}  // namespace qboid
