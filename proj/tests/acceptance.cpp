// Acceptance suite: nine pinned properties of the library, one PASS/FAIL
// line each.  Exits 1 if any criterion fails.
//
// Usage: acceptance <path-to-cli-binary>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>

#include "qboid/qboid.hpp"
#include "support/coset_enum.hpp"
#include "support/oracles.hpp"
#include "support/tree_enum.hpp"

namespace {

struct Criterion {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (notes.size() < 6) notes.push_back(what);
  }
};

std::string key_str(int q, int n) { return "q=" + std::to_string(q) + " n=" + std::to_string(n); }

// Shared enumeration runs: the library report next to the brute-force oracle.
struct ClassRun {
  qboid::EnumerationReport report;
  oracle::BruteClasses brute;
};

const std::vector<std::pair<int, int>>& ranges() {
  static const std::vector<std::pair<int, int>> r = [] {
    std::vector<std::pair<int, int>> out;
    for (int n = 1; n <= 6; ++n) out.emplace_back(3, n);
    for (int q : {4, 5})
      for (int n = 1; n <= 5; ++n) out.emplace_back(q, n);
    return out;
  }();
  return r;
}

using RunMap = std::map<std::pair<int, int>, ClassRun>;

std::string canon_key(const qboid::PermutationPair& p) {
  return p.sigma2.cycle_string() + "|" + p.sigmaq.cycle_string();
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// --- criteria -------------------------------------------------------------

void class_counts_match_oracle(const RunMap& runs, Criterion& c) {
  for (const auto& [qn, run] : runs) {
    const auto& [q, n] = qn;
    c.require(run.report.class_count == run.brute.reps.size(),
              key_str(q, n) + ": class_count " + std::to_string(run.report.class_count) +
                  " != oracle " + std::to_string(run.brute.reps.size()));

    std::set<std::string> ours, theirs;
    for (const auto& p : run.report.classes) ours.insert(canon_key(p));
    for (const auto& rep : run.brute.reps) theirs.insert(canon_key(qboid::canonical_form(rep)));
    c.require(ours == theirs, key_str(q, n) + ": class representatives differ from the oracle");
  }
}

void hall_identities_hold(const RunMap& runs, Criterion& c) {
  for (const auto& [qn, run] : runs) {
    const auto& [q, n] = qn;
    const auto& r = run.report;
    c.require(run.brute.transitive_pair_count == r.transitive_pair_count,
              key_str(q, n) + ": directly counted transitive pairs " +
                  std::to_string(run.brute.transitive_pair_count) + " != report " +
                  std::to_string(r.transitive_pair_count));
    c.require(r.transitive_pair_count == qboid::hall_transitive_count(q, n),
              key_str(q, n) + ": transitive pairs != hall recurrence");
    c.require(run.brute.valid_pair_count == r.all_pair_count,
              key_str(q, n) + ": all valid pairs differ from the oracle");
    c.require(r.subgroup_count * factorial(n - 1) == r.transitive_pair_count,
              key_str(q, n) + ": subgroup_count (n-1)! != transitive_pair_count");
    c.require(r.hall_consistent, key_str(q, n) + ": report flags hall inconsistency");
  }
}

void coset_enumeration_recovers_index(const RunMap& runs, Criterion& c) {
  for (const auto& [qn, run] : runs) {
    const auto& [q, n] = qn;
    for (const auto& p : run.report.classes) {
      const int cosets = coset::coset_count(q, qboid::subgroup_generators(p));
      c.require(cosets == n, key_str(q, n) + " class " + canon_key(p) + ": " +
                                 std::to_string(cosets) + " cosets");
      if (!c.pass && c.notes.size() >= 6) return;
    }
  }
}

void conversions_round_trip(const RunMap& runs, Criterion& c) {
  for (const auto& [qn, run] : runs) {
    const auto& [q, n] = qn;
    if ((q != 3 && q != 4) || n > 5) continue;
    for (const auto& p : run.report.classes) {
      const qboid::QBoidGraph g = qboid::perms_to_graph(p);
      const qboid::PermutationPair back = qboid::graph_to_perms(g);
      c.require(back.sigma2.images() == p.sigma2.images() &&
                    back.sigmaq.images() == p.sigmaq.images(),
                key_str(q, n) + " class " + canon_key(p) + ": pair-graph-pair is not the identity");

      const auto cuts = qboid::enumerate_cut_sets(g);
      c.require(!cuts.empty(), key_str(q, n) + " class " + canon_key(p) + ": no cut sets");
      for (const auto& cut : cuts) {
        const qboid::TreeDiagram t = qboid::graph_to_tree(g, cut);
        const qboid::QBoidGraph g2 = qboid::tree_to_graph(t);
        c.require(qboid::are_isomorphic(g, g2).isomorphic(),
                  key_str(q, n) + " class " + canon_key(p) + ": graph-tree-graph not isomorphic");
      }
      if (!c.pass && c.notes.size() >= 6) return;
    }
  }
}

void genus_formulas_are_integral(const RunMap& runs, Criterion& c) {
  for (const auto& [qn, run] : runs) {
    const auto& [q, n] = qn;
    for (const auto& p : run.report.classes) {
      try {
        const auto inv = qboid::orbifold_invariants(p);
        c.require(inv.genus >= 0, key_str(q, n) + ": negative orbifold genus");
        const int dg = qboid::dessin_genus(p);
        c.require(dg >= 0, key_str(q, n) + ": negative dessin genus");
        c.require(dg == qboid::dessin_genus_from_counts(q, n, inv.e2, inv.eq, inv.cusps),
                  key_str(q, n) + ": count-based dessin genus disagrees");
      } catch (const qboid::DomainError& e) {
        c.require(false, key_str(q, n) + " class " + canon_key(p) + ": " + e.what());
      }
    }
  }
}

void face_convention_is_invariant(Criterion& c) {
  std::mt19937 rng(20260817u);
  const int qs[] = {3, 4, 5, 6};
  for (int trial = 0; trial < 1000; ++trial) {
    const int q = qs[trial % 4];
    const int n = 1 + static_cast<int>(rng() % 12);
    const qboid::Permutation s2 = oracle::random_involution(rng, n);
    const qboid::Permutation sq = oracle::random_q_perm(rng, n, q);

    auto lengths = [](const qboid::Permutation& p) {
      std::vector<int> out;
      for (const auto& cyc : p.cycles()) out.push_back(static_cast<int>(cyc.size()));
      std::sort(out.begin(), out.end());
      return out;
    };
    c.require(lengths(s2 * sq) == lengths(sq * s2),
              "trial " + std::to_string(trial) + " q=" + std::to_string(q) +
                  ": face cycle types differ between conventions");
    if (!c.pass) return;
  }
}

void geometry_relations_hold(Criterion& c) {
  const auto id = qboid::MoebiusMap::identity();
  for (int q = 3; q <= 12; ++q) {
    const auto h = qboid::hecke_generators(q);
    c.require((h.K * h.K).projectively_equal(id, 1e-9), "q=" + std::to_string(q) + ": K^2 != 1");
    qboid::MoebiusMap gq = h.G;
    for (int p = 1; p < q; ++p) gq = gq * h.G;
    c.require(gq.projectively_equal(id, 1e-9), "q=" + std::to_string(q) + ": G^q != 1");

    const auto fe = qboid::f_edge(q);
    c.require(std::abs(fe.length - std::acosh(1.0 / std::sin(qboid::pi / q))) <= 1e-12,
              "q=" + std::to_string(q) + ": f-edge length off");

    const auto r = qboid::rotation_about(fe.to, 2 * qboid::pi / q);
    qboid::Complex a = fe.from, b = fe.to;
    for (int p = 0; p < q; ++p) {
      a = r(a);
      b = r(b);
    }
    c.require(std::abs(a - fe.from) <= 1e-9 && std::abs(b - fe.to) <= 1e-9,
              "q=" + std::to_string(q) + ": q-fold rotation does not close the f-edge orbit");
  }
}

void developments_are_coherent(Criterion& c) {
  for (int q : {3, 4}) {
    std::set<std::string> seen;
    int unrealizable = 0;
    long realizable = 0;
    treegen::for_each_tree(q, 3, [&](const qboid::TreeDiagram& t) {
      if (!c.pass && c.notes.size() >= 6) return;
      if (!seen.insert(treegen::canonical_key(t)).second) return;

      qboid::SpecialPolygon poly;
      int expected_edges = 0;
      try {
        const qboid::QBoidGraph g = qboid::tree_to_graph(t);
        expected_edges = g.n;
        poly = qboid::develop_tree(t);
      } catch (const qboid::DomainError& e) {
        if (e.code == qboid::ErrorCode::NotRealizable) {
          ++unrealizable;
          return;
        }
        c.require(false, std::string("development threw: ") + e.what());
        return;
      }
      ++realizable;

      const int m = static_cast<int>(poly.sides.size());
      for (int k = 0; k < m; ++k) {
        const auto& s = poly.sides[k];
        const auto& partner = poly.sides[s.partner];
        const bool carried =
            qboid::chordal(s.pairing(poly.vertices[s.from]), poly.vertices[partner.to]) <= 1e-9 &&
            qboid::chordal(s.pairing(poly.vertices[s.to]), poly.vertices[partner.from]) <= 1e-9;
        c.require(carried, "q=" + std::to_string(q) + ": a pairing misses its partner endpoints");
      }

      int fixed_reds = 0;
      for (int r = 0; r < static_cast<int>(t.sigma.size()); ++r)
        if (t.sigma[r] == r) ++fixed_reds;
      int even = 0, odd = 0, free_sides = 0;
      for (const auto& s : poly.sides) {
        if (s.kind == qboid::SideKind::Even) ++even;
        if (s.kind == qboid::SideKind::Odd) ++odd;
        if (s.kind == qboid::SideKind::Free) ++free_sides;
      }
      c.require(even == fixed_reds && free_sides == static_cast<int>(t.red.size()) - fixed_reds &&
                    odd == 2 * static_cast<int>(t.blue.size()),
                "q=" + std::to_string(q) + ": side kind counts break the terminal formulas");

      const double unit = qboid::pi * (q - 2) / q;
      c.require(std::abs(qboid::polygon_area(poly) - expected_edges * unit) <= 1e-6,
                "q=" + std::to_string(q) + ": area misses the Gauss-Bonnet value");

      if (t.internal_vertices.size() <= 2) {
        const int terminals = static_cast<int>(t.red.size() + t.blue.size());
        for (int start = 1; start < terminals; ++start)
          c.require(qboid::polygons_congruent(poly, qboid::develop_tree(t, start)),
                    "q=" + std::to_string(q) + ": developments from different starts disagree");
      }
    });
    c.require(unrealizable == 2,
              "q=" + std::to_string(q) + ": expected exactly the two one-edge all-red diagrams to be "
                                         "unrealizable, got " + std::to_string(unrealizable));
    c.require(realizable > 100, "q=" + std::to_string(q) + ": suspiciously few realizable trees");
  }
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

void serialization_and_cli_are_stable(const RunMap& runs, const std::string& cli, Criterion& c) {
  // Byte stability: serialize, parse, re-validate, serialize again.
  auto stable = [&](const std::string& text) {
    const auto parsed = qboid::parse_document(text);
    if (!parsed.ok()) return false;
    switch (parsed.doc->kind) {
      case qboid::DocKind::Graph: {
        auto v = qboid::validate_graph(std::get<qboid::RawGraph>(parsed.doc->payload));
        return v.ok() && qboid::serialize(*v.value) == text;
      }
      case qboid::DocKind::Tree: {
        auto v = qboid::validate_tree(std::get<qboid::RawTree>(parsed.doc->payload));
        return v.ok() && qboid::serialize(*v.value) == text;
      }
      case qboid::DocKind::Pair: {
        auto v = qboid::validate_pair(std::get<qboid::RawPair>(parsed.doc->payload));
        return v.ok() && qboid::serialize(*v.value) == text;
      }
      case qboid::DocKind::Polygon:
        return qboid::serialize(std::get<qboid::SpecialPolygon>(parsed.doc->payload)) == text;
      case qboid::DocKind::Report:
        return qboid::serialize(std::get<qboid::EnumerationReport>(parsed.doc->payload)) == text;
    }
    return false;
  };

  for (const auto& [qn, run] : runs) {
    const auto& [q, n] = qn;
    c.require(stable(qboid::serialize(run.report)), key_str(q, n) + ": report bytes unstable");
    for (const auto& p : run.report.classes) {
      c.require(stable(qboid::serialize(p)), key_str(q, n) + ": pair bytes unstable");
      if ((q != 3 && q != 4) || n > 4) continue;
      const qboid::QBoidGraph g = qboid::perms_to_graph(p);
      c.require(stable(qboid::serialize(g)), key_str(q, n) + ": graph bytes unstable");
      const auto cuts = qboid::enumerate_cut_sets(g);
      for (const auto& cut : cuts) {
        const qboid::TreeDiagram t = qboid::graph_to_tree(g, cut);
        c.require(stable(qboid::serialize(t)), key_str(q, n) + ": tree bytes unstable");
      }
      if (!cuts.empty()) {
        const auto poly = qboid::develop_tree(qboid::graph_to_tree(g, cuts.front()));
        c.require(stable(qboid::serialize(poly)), key_str(q, n) + ": polygon bytes unstable");
      }
    }
    if (!c.pass && c.notes.size() >= 6) break;
  }

  // Exit codes on a fixture matrix.
  const auto& some = runs.at({3, 3});
  write_file("acceptance_good.json", qboid::serialize(some.report.classes.front()));
  write_file("acceptance_bad_lex.json", "{ \"format_version\": \"1\",\n");
  write_file("acceptance_bad_schema.json",
             "{\"format_version\": \"9\", \"kind\": \"pair\", \"q\": 3, \"n\": 1, "
             "\"sigma2\": [1], \"sigmaq\": [1]}\n");
  write_file("acceptance_bad_domain.json",
             "{\"format_version\": \"1\", \"kind\": \"pair\", \"q\": 3, \"n\": 3, "
             "\"sigma2\": \"(1 2 3)\", \"sigmaq\": \"(1 2 3)\"}\n");

  const std::pair<std::string, int> matrix[] = {
      {"validate acceptance_good.json", 0},
      {"validate acceptance_bad_lex.json", 2},
      {"validate acceptance_bad_schema.json", 2},
      {"validate acceptance_bad_domain.json", 1},
      {"validate acceptance_missing_file.json", 2},
      {"convert acceptance_good.json --from pair --to graph", 0},
      {"invariants acceptance_bad_domain.json", 1},
      {"enumerate --q 3 --n 12", 1},
      {"probe-no-such-command", 2},
  };
  for (const auto& [args, want] : matrix) {
    const int got = run_cli(cli, args);
    c.require(got == want, "cli '" + args + "': exit " + std::to_string(got) + ", expected " +
                               std::to_string(want));
  }
  for (const char* f : {"acceptance_good.json", "acceptance_bad_lex.json",
                        "acceptance_bad_schema.json", "acceptance_bad_domain.json"})
    std::remove(f);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  RunMap runs;
  std::string setup_error;
  try {
    for (const auto& [q, n] : ranges())
      runs.emplace(std::make_pair(q, n), ClassRun{qboid::all_classes(q, n), oracle::brute_classes(q, n)});
  } catch (const std::exception& e) {
    setup_error = e.what();
  }

  struct Entry {
    const char* title;
    std::function<void(Criterion&)> run;
  };
  const Entry entries[] = {
      {"class counts and representatives match the brute-force oracle",
       [&](Criterion& c) { class_counts_match_oracle(runs, c); }},
      {"transitive counts satisfy the recurrence and the subgroup identity",
       [&](Criterion& c) { hall_identities_hold(runs, c); }},
      {"coset enumeration of every class yields exactly n cosets",
       [&](Criterion& c) { coset_enumeration_recovers_index(runs, c); }},
      {"pair-graph and graph-tree conversions round trip on every class and cut set",
       [&](Criterion& c) { conversions_round_trip(runs, c); }},
      {"orbifold and dessin genus are nonnegative integers on every class",
       [&](Criterion& c) { genus_formulas_are_integral(runs, c); }},
      {"face counts agree between the two composition conventions",
       [&](Criterion& c) { face_convention_is_invariant(c); }},
      {"generator relations, f-edge length, and rotation closure hold numerically",
       [&](Criterion& c) { geometry_relations_hold(c); }},
      {"every realizable small tree develops into a coherent polygon",
       [&](Criterion& c) { developments_are_coherent(c); }},
      {"serialization is byte-stable and CLI exit codes match the contract",
       [&](Criterion& c) { serialization_and_cli_are_stable(runs, cli, c); }},
  };

  bool all_pass = true;
  int number = 1;
  for (const auto& entry : entries) {
    Criterion c;
    if (!setup_error.empty() && number <= 5) {
      c.require(false, "enumeration setup failed: " + setup_error);
    } else {
      try {
        entry.run(c);
      } catch (const std::exception& e) {
        c.require(false, std::string("unexpected exception: ") + e.what());
      }
    }
    std::cout << "criterion " << number << ": " << (c.pass ? "PASS" : "FAIL") << " - " << entry.title
              << "\n";
    for (const auto& note : c.notes) std::cout << "    " << note << "\n";
    all_pass = all_pass && c.pass;
    ++number;
  }
  return all_pass ? 0 : 1;
}
