// Command-line front end: validate, convert, invariants, enumerate, export.
// Exit codes: 0 success, 1 domain error, 2 parse or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qboid/qboid.hpp"

namespace {

using nlohmann::ordered_json;

struct Options {
  bool json = false;
  bool quiet = false;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int report_violations(const std::vector<qboid::Violation>& vs) {
  for (const auto& v : vs) std::cerr << v.str() << "\n";
  return 1;
}

int report_domain_error(const qboid::DomainError& e) {
  std::cerr << qboid::to_string(e.code) << ": " << e.what() << "\n";
  return 1;
}

int report_parse_error(const qboid::ParseError& e) {
  std::cerr << "parse error: " << e.str() << "\n";
  return 2;
}

// A parsed and fully validated document.
struct Loaded {
  qboid::DocKind kind = qboid::DocKind::Graph;
  std::optional<qboid::QBoidGraph> graph;
  std::optional<qboid::TreeDiagram> tree;
  std::optional<qboid::PermutationPair> pair;
  std::optional<qboid::SpecialPolygon> polygon;
  std::optional<qboid::EnumerationReport> report;
};

// Reads, parses, and validates; fills `out` and returns 0, or returns the
// exit code after printing diagnostics.  `expect` restricts the kind.
int load_document(const std::string& path, std::optional<qboid::DocKind> expect, Loaded& out) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << "cannot read file: " << path << "\n";
    return 2;
  }
  auto parsed = qboid::parse_document(*text);
  if (!parsed.ok()) return report_parse_error(*parsed.error);
  const qboid::Document& doc = *parsed.doc;
  if (expect && doc.kind != *expect) {
    std::cerr << "document kind is '" << qboid::to_string(doc.kind) << "' but '"
              << qboid::to_string(*expect) << "' was requested\n";
    return 2;
  }
  out.kind = doc.kind;
  switch (doc.kind) {
    case qboid::DocKind::Graph: {
      auto checked = qboid::validate_graph(std::get<qboid::RawGraph>(doc.payload));
      if (!checked.ok()) return report_violations(checked.violations);
      out.graph = std::move(*checked.value);
      break;
    }
    case qboid::DocKind::Tree: {
      auto checked = qboid::validate_tree(std::get<qboid::RawTree>(doc.payload));
      if (!checked.ok()) return report_violations(checked.violations);
      out.tree = std::move(*checked.value);
      break;
    }
    case qboid::DocKind::Pair: {
      auto checked = qboid::validate_pair(std::get<qboid::RawPair>(doc.payload));
      if (!checked.ok()) return report_violations(checked.violations);
      out.pair = std::move(*checked.value);
      break;
    }
    case qboid::DocKind::Polygon: {
      auto poly = std::get<qboid::SpecialPolygon>(doc.payload);
      auto errs = qboid::check_polygon(poly);
      if (!errs.empty()) return report_violations(errs);
      out.polygon = std::move(poly);
      break;
    }
    case qboid::DocKind::Report: {
      auto rep = std::get<qboid::EnumerationReport>(doc.payload);
      auto errs = qboid::validate_report(rep);
      if (!errs.empty()) return report_violations(errs);
      out.report = std::move(rep);
      break;
    }
  }
  return 0;
}

int cmd_validate(const std::string& path, const std::string& kind_name, const Options& opt) {
  std::optional<qboid::DocKind> expect;
  if (!kind_name.empty()) {
    expect = qboid::kind_from_string(kind_name);
    if (!expect) {
      std::cerr << "unknown kind '" << kind_name << "'\n";
      return 2;
    }
  }
  Loaded loaded;
  // Success diagnostics go to stdout; violations were already printed.
  const int rc = load_document(path, expect, loaded);
  if (rc == 0) {
    if (opt.json)
      std::cout << ordered_json{{"ok", true}, {"kind", qboid::to_string(loaded.kind)}}.dump() << "\n";
    else if (!opt.quiet)
      std::cout << "OK\n";
  }
  return rc;
}

int cmd_convert(const std::string& path, const std::string& from, const std::string& to,
                int cut_index) {
  const auto from_kind = qboid::kind_from_string(from);
  const auto to_kind = qboid::kind_from_string(to);
  const auto convertible = [](std::optional<qboid::DocKind> k) {
    return k == qboid::DocKind::Graph || k == qboid::DocKind::Tree || k == qboid::DocKind::Pair;
  };
  if (!convertible(from_kind) || !convertible(to_kind)) {
    std::cerr << "convert accepts kinds graph, tree, and pair\n";
    return 2;
  }
  Loaded loaded;
  if (const int rc = load_document(path, from_kind, loaded); rc != 0) return rc;

  // Everything funnels through the graph form.
  qboid::QBoidGraph g = [&] {
    switch (*from_kind) {
      case qboid::DocKind::Graph: return *loaded.graph;
      case qboid::DocKind::Tree: return qboid::tree_to_graph(*loaded.tree);
      default: return qboid::perms_to_graph(*loaded.pair);
    }
  }();

  switch (*to_kind) {
    case qboid::DocKind::Graph: std::cout << qboid::serialize(g); break;
    case qboid::DocKind::Pair: std::cout << qboid::serialize(qboid::graph_to_perms(g)); break;
    case qboid::DocKind::Tree: {
      if (*from_kind == qboid::DocKind::Tree) {
        // Identity conversion keeps the original tree, cut choice included.
        std::cout << qboid::serialize(*loaded.tree);
        break;
      }
      const auto cuts = qboid::enumerate_cut_sets(g);
      if (cut_index < 0 || cut_index >= static_cast<int>(cuts.size()))
        throw qboid::DomainError(qboid::ErrorCode::InvalidCutSet,
                                 "cut-set index " + std::to_string(cut_index) + " out of range, graph has " +
                                     std::to_string(cuts.size()) + " cut sets");
      std::cout << qboid::serialize(qboid::graph_to_tree(g, cuts[cut_index]));
      break;
    }
    default: break;
  }
  return 0;
}

void invariants_row(std::ostream& os, const qboid::OrbifoldInvariants& inv, int dg, int rank,
                    const char* sep) {
  os << "index" << sep << inv.index << "\n";
  os << "e2" << sep << inv.e2 << "\n";
  os << "eq" << sep << inv.eq << "\n";
  os << "cusps" << sep << inv.cusps << "\n";
  os << "orbifold_genus" << sep << inv.genus << "\n";
  os << "dessin_genus" << sep << dg << "\n";
  os << "cycle_rank" << sep << rank << "\n";
}

ordered_json invariants_json(const qboid::OrbifoldInvariants& inv, int dg, int rank) {
  ordered_json j;
  j["index"] = inv.index;
  j["e2"] = inv.e2;
  j["eq"] = inv.eq;
  j["cusps"] = inv.cusps;
  j["orbifold_genus"] = inv.genus;
  j["dessin_genus"] = dg;
  j["cycle_rank"] = rank;
  return j;
}

int cmd_invariants(const std::string& path, const Options& opt) {
  Loaded loaded;
  if (const int rc = load_document(path, std::nullopt, loaded); rc != 0) return rc;

  if (loaded.kind == qboid::DocKind::Report) {
    ordered_json rows = ordered_json::array();
    int idx = 1;
    for (const auto& p : loaded.report->classes) {
      const auto inv = qboid::orbifold_invariants(p);
      const int dg = qboid::dessin_genus(p);
      const int rank = qboid::cycle_rank(qboid::perms_to_graph(p));
      if (opt.json) {
        auto j = invariants_json(inv, dg, rank);
        j["class"] = idx;
        rows.push_back(std::move(j));
      } else {
        std::cout << "class " << idx << ": index=" << inv.index << " e2=" << inv.e2 << " eq=" << inv.eq
                  << " cusps=" << inv.cusps << " orbifold_genus=" << inv.genus << " dessin_genus=" << dg
                  << " cycle_rank=" << rank << "\n";
      }
      ++idx;
    }
    if (opt.json) std::cout << rows.dump(2) << "\n";
    return 0;
  }

  qboid::OrbifoldInvariants inv;
  int dg = 0, rank = 0;
  if (loaded.kind == qboid::DocKind::Polygon) {
    const auto d = qboid::polygon_class_data(*loaded.polygon);
    inv = qboid::invariants_from_counts(loaded.polygon->q, d.index, d.e2, d.eq, d.cusps);
    dg = qboid::dessin_genus_from_counts(loaded.polygon->q, d.index, d.e2, d.eq, d.cusps);
    rank = qboid::cycle_rank_from_counts(loaded.polygon->q, d.index, d.e2, d.eq);
  } else {
    const qboid::QBoidGraph g = loaded.graph ? *loaded.graph
                                : loaded.tree ? qboid::tree_to_graph(*loaded.tree)
                                              : qboid::perms_to_graph(*loaded.pair);
    const auto p = qboid::graph_to_perms(g);
    inv = qboid::orbifold_invariants(p);
    dg = qboid::dessin_genus(p);
    rank = qboid::cycle_rank(g);
  }
  if (opt.json)
    std::cout << invariants_json(inv, dg, rank).dump(2) << "\n";
  else
    invariants_row(std::cout, inv, dg, rank, ": ");
  return 0;
}

int cmd_enumerate(int q, int n, bool count_only, int limit, const Options& opt) {
  const auto report = qboid::all_classes(q, n, limit);
  if (opt.json) {
    auto out = report;
    if (count_only) out.classes.clear();
    std::cout << qboid::serialize(out);
    return 0;
  }
  if (!count_only)
    for (const auto& p : report.classes) std::cout << qboid::serialize_compact(p);
  if (!opt.quiet || count_only)
    std::cout << "class_count=" << report.class_count
              << " transitive_pair_count=" << report.transitive_pair_count
              << " subgroup_count=" << report.subgroup_count
              << " hall=" << (report.hall_consistent ? "consistent" : "INCONSISTENT") << "\n";
  return report.hall_consistent ? 0 : 1;
}

int cmd_export(const std::string& path, const std::string& format) {
  Loaded loaded;
  if (const int rc = load_document(path, std::nullopt, loaded); rc != 0) return rc;

  const auto unsupported = [&]() {
    std::cerr << "unsupported kind/format combination: " << qboid::to_string(loaded.kind) << " as "
              << format << "\n";
    return 1;
  };

  if (format == "dot") {
    switch (loaded.kind) {
      case qboid::DocKind::Graph: std::cout << qboid::dot_graph(*loaded.graph); return 0;
      case qboid::DocKind::Tree: std::cout << qboid::dot_tree(*loaded.tree); return 0;
      case qboid::DocKind::Pair: std::cout << qboid::dot_graph(qboid::perms_to_graph(*loaded.pair)); return 0;
      default: return unsupported();
    }
  }
  if (format == "svg") {
    switch (loaded.kind) {
      case qboid::DocKind::Polygon: std::cout << qboid::svg_polygon(*loaded.polygon); return 0;
      case qboid::DocKind::Tree: std::cout << qboid::svg_polygon(qboid::develop_tree(*loaded.tree)); return 0;
      default: return unsupported();
    }
  }
  if (format == "json") {
    switch (loaded.kind) {
      case qboid::DocKind::Graph: std::cout << qboid::serialize(*loaded.graph); return 0;
      // A tree exports as its developed polygon; the normalized tree
      // document itself comes from convert --to tree.
      case qboid::DocKind::Tree: std::cout << qboid::serialize(qboid::develop_tree(*loaded.tree)); return 0;
      case qboid::DocKind::Pair: std::cout << qboid::serialize(*loaded.pair); return 0;
      case qboid::DocKind::Polygon: std::cout << qboid::serialize(*loaded.polygon); return 0;
      case qboid::DocKind::Report: std::cout << qboid::serialize(*loaded.report); return 0;
    }
  }
  std::cerr << "unknown format '" << format << "'\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-boid graphs, tree diagrams, and permutation pairs for Hecke triangle groups"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "machine-readable output where applicable");
  app.add_flag("--quiet", opt.quiet, "suppress success messages");

  std::string v_path, v_kind;
  auto* validate = app.add_subcommand("validate", "check a document against its kind's invariants");
  validate->add_option("path", v_path, "document to check")->required();
  validate->add_option("--kind", v_kind, "expected kind (graph, tree, pair, polygon, report)");
  validate->add_flag("--json", opt.json, "machine-readable output");
  validate->add_flag("--quiet", opt.quiet, "suppress success messages");

  std::string c_path, c_from, c_to;
  int c_cut = 0;
  auto* convert = app.add_subcommand("convert", "convert between graph, tree, and pair documents");
  convert->add_option("path", c_path, "source document")->required();
  convert->add_option("--from", c_from, "source kind")->required();
  convert->add_option("--to", c_to, "target kind")->required();
  convert->add_option("--cut-set", c_cut, "cut set index for graph to tree (default 0, the least)");

  std::string i_path;
  auto* invariants = app.add_subcommand("invariants", "subgroup invariants of a document");
  invariants->add_option("path", i_path, "source document")->required();
  invariants->add_flag("--json", opt.json, "machine-readable output");

  int e_q = 0, e_n = 0, e_limit = 9;
  bool e_count_only = false;
  auto* enumerate = app.add_subcommand("enumerate", "all conjugacy classes at a fixed index");
  enumerate->add_option("--q", e_q, "signature q of the group")->required();
  enumerate->add_option("--n", e_n, "subgroup index")->required();
  enumerate->add_flag("--count-only", e_count_only, "emit only the final counts");
  enumerate->add_option("--limit", e_limit, "largest permitted index (default 9)");
  enumerate->add_flag("--json", opt.json, "emit a report document");
  enumerate->add_flag("--quiet", opt.quiet, "suppress the final count line");

  std::string x_path, x_format;
  auto* exporter = app.add_subcommand("export", "render a document as dot, svg, or normalized json");
  exporter->add_option("path", x_path, "source document")->required();
  exporter->add_option("--format", x_format, "dot, svg, or json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(v_path, v_kind, opt);
    if (convert->parsed()) return cmd_convert(c_path, c_from, c_to, c_cut);
    if (invariants->parsed()) return cmd_invariants(i_path, opt);
    if (enumerate->parsed()) return cmd_enumerate(e_q, e_n, e_count_only, e_limit, opt);
    if (exporter->parsed()) return cmd_export(x_path, x_format);
  } catch (const qboid::DomainError& e) {
    return report_domain_error(e);
  }
  return 2;
}
