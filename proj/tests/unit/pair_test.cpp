#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "qboid/pair.hpp"
#include "support/coset_enum.hpp"

using namespace qboid;

namespace {

PermutationPair make_pair(int q, const std::string& s2, const std::string& sq, int n) {
  auto a = Permutation::parse_cycles(s2, n);
  auto b = Permutation::parse_cycles(sq, n);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  auto checked = validate_pair(q, *a, *b);
  REQUIRE(checked.ok());
  return *checked;
}

bool has_code(const std::vector<Violation>& errs, ErrorCode code) {
  return std::any_of(errs.begin(), errs.end(), [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("cycle length constraints are enforced", "[pair]") {
  const auto c3 = *Permutation::parse_cycles("(1 2 3)", 3);
  const auto t12 = *Permutation::parse_cycles("(1 2)", 3);
  CHECK(has_code(validate_pair(3, c3, c3).violations, ErrorCode::BadValence));   // 3-cycle in sigma2
  CHECK(has_code(validate_pair(4, t12, t12).violations, ErrorCode::BadValence)); // 2-cycle in sigmaq
  CHECK(validate_pair(3, t12, c3).ok());
}

TEST_CASE("non-transitive pairs are rejected", "[pair]") {
  const auto id = Permutation(2);
  const auto t12 = *Permutation::parse_cycles("(1 2)", 2);
  CHECK(has_code(validate_pair(3, id, id).violations, ErrorCode::Disconnected));
  CHECK(validate_pair(3, t12, id).ok());
}

TEST_CASE("raw image arrays are validated", "[pair]") {
  RawPair raw;
  raw.q = 3;
  raw.n = 2;
  raw.sigma2 = {0, 0};  // not a bijection
  raw.sigmaq = {0, 1};
  CHECK(has_code(validate_pair(raw).violations, ErrorCode::BadPermutation));

  raw.sigma2 = {1, 0, 2};  // wrong length
  CHECK(has_code(validate_pair(raw).violations, ErrorCode::BadPermutation));

  raw.sigma2 = {1, 0};
  CHECK(validate_pair(raw).ok());
}

TEST_CASE("graph and pair readings invert each other", "[pair]") {
  // Black {1,2},{3}; white (1 2 3): the three-edge example.
  RawGraph g;
  g.q = 3;
  g.n = 3;
  g.black = {{0, 1}, {2}};
  g.white = {{0, 1, 2}};
  g.rotations[0] = {0, 1, 2};
  auto checked = validate_graph(g);
  REQUIRE(checked.ok());

  const PermutationPair p = graph_to_perms(*checked);
  CHECK(p.sigma2.cycle_string() == "(1 2)");
  CHECK(p.sigmaq.cycle_string() == "(1 2 3)");

  const QBoidGraph back = perms_to_graph(p);
  CHECK(back.q == checked->q);
  CHECK(back.n == checked->n);
  CHECK(back.black == checked->black);
  CHECK(back.white == checked->white);
}

TEST_CASE("perms_to_graph orders vertices by least edge label", "[pair]") {
  const auto p = make_pair(4, "(1 2)(3 4)", "(1 2 3 4)", 4);
  const QBoidGraph g = perms_to_graph(p);
  REQUIRE(g.black.size() == 2);
  CHECK(g.black[0] == std::vector<int>{0, 1});
  CHECK(g.black[1] == std::vector<int>{2, 3});
  REQUIRE(g.white.size() == 1);
  CHECK(g.white[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(graph_to_perms(g) == p);
}

TEST_CASE("faces apply sigmaq first", "[pair]") {
  const auto p = make_pair(3, "(1 2)", "(1 2 3)", 3);
  const auto f = faces(p);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::vector<int>{0});
  CHECK(f[1] == std::vector<int>{1, 2});

  const auto p4 = make_pair(4, "(1 2)(3 4)", "(1 2 3 4)", 4);
  CHECK(faces(p4).size() == 3);
}

TEST_CASE("orbifold invariants match hand computations", "[pair]") {
  const auto trivial = make_pair(3, "id", "id", 1);
  auto inv = orbifold_invariants(trivial);
  CHECK(inv.index == 1);
  CHECK(inv.e2 == 1);
  CHECK(inv.eq == 1);
  CHECK(inv.cusps == 1);
  CHECK(inv.genus == 0);
  CHECK(dessin_genus(trivial) == 0);

  const auto p3 = make_pair(3, "(1 2)", "(1 2 3)", 3);
  inv = orbifold_invariants(p3);
  CHECK(inv.index == 3);
  CHECK(inv.e2 == 1);
  CHECK(inv.eq == 0);
  CHECK(inv.cusps == 2);
  CHECK(inv.genus == 0);
  CHECK(dessin_genus(p3) == 0);

  const auto p4 = make_pair(4, "(1 2)(3 4)", "(1 2 3 4)", 4);
  inv = orbifold_invariants(p4);
  CHECK(inv.index == 4);
  CHECK(inv.e2 == 0);
  CHECK(inv.eq == 0);
  CHECK(inv.cusps == 3);
  CHECK(inv.genus == 0);
  CHECK(dessin_genus(p4) == 0);
}

TEST_CASE("count-based invariants agree with the permutation reading", "[pair]") {
  const auto p = make_pair(3, "(1 2)(3 4)(5 6)", "(1 2 3)(4 5 6)", 6);
  const auto inv = orbifold_invariants(p);
  const auto from_counts = invariants_from_counts(p.q, p.size(), inv.e2, inv.eq, inv.cusps);
  CHECK(from_counts.genus == inv.genus);
  CHECK(dessin_genus_from_counts(p.q, p.size(), inv.e2, inv.eq, inv.cusps) == dessin_genus(p));
  CHECK(cycle_rank_from_counts(p.q, p.size(), inv.e2, inv.eq) == cycle_rank(perms_to_graph(p)));
}

TEST_CASE("isomorphism finds an explicit witness", "[pair]") {
  const auto a = make_pair(3, "(1 2)", "(1 2 3)", 3);
  const auto b = make_pair(3, "(1 2)", "(1 3 2)", 3);
  const auto res = are_isomorphic(a, b);
  REQUIRE(res.isomorphic());
  REQUIRE(res.witness.has_value());
  const Permutation& tau = *res.witness;
  CHECK(a.sigma2.conjugated_by(tau) == b.sigma2);
  CHECK(a.sigmaq.conjugated_by(tau) == b.sigmaq);
}

TEST_CASE("distinct classes are told apart", "[pair]") {
  const auto a = make_pair(3, "(1 2)", "(1 2 3)", 3);
  const auto c = make_pair(3, "id", "(1 2 3)", 3);
  const auto res = are_isomorphic(a, c);
  CHECK(res.status == IsoResult::Status::NonIsomorphic);
  CHECK_FALSE(res.witness.has_value());
}

TEST_CASE("signature mismatches are flagged, not merely negative", "[pair]") {
  const auto a = make_pair(3, "(1 2)", "(1 2 3)", 3);
  const auto b = make_pair(4, "(1 2)", "id", 2);
  CHECK(are_isomorphic(a, b).status == IsoResult::Status::SignatureMismatch);

  const auto c = make_pair(3, "(1 2)", "id", 2);
  CHECK(are_isomorphic(a, c).status == IsoResult::Status::SignatureMismatch);
}

TEST_CASE("graph isomorphism delegates to the pair test", "[pair]") {
  const auto a = perms_to_graph(make_pair(3, "(1 2)", "(1 2 3)", 3));
  const auto b = perms_to_graph(make_pair(3, "(2 3)", "(1 3 2)", 3));
  CHECK(are_isomorphic(a, b).isomorphic());
}

TEST_CASE("canonical form is conjugation invariant and idempotent", "[pair]") {
  const auto p = make_pair(3, "(1 2)(3 4)(5 6)", "(1 2 3)(4 5 6)", 6);
  const auto canon = canonical_form(p);
  CHECK(canonical_form(canon) == canon);
  CHECK(are_isomorphic(p, canon).isomorphic());

  const auto tau = *Permutation::parse_cycles("(1 4)(2 6 3)", 6);
  const PermutationPair conj{p.q, p.sigma2.conjugated_by(tau), p.sigmaq.conjugated_by(tau)};
  CHECK(canonical_form(conj) == canon);
}

TEST_CASE("automorphism counts are centralizer orders", "[pair]") {
  CHECK(automorphism_count(make_pair(3, "id", "id", 1)) == 1);
  CHECK(automorphism_count(make_pair(3, "(1 2)", "(1 2 3)", 3)) == 1);
  CHECK(automorphism_count(make_pair(3, "id", "(1 2 3)", 3)) == 3);
  CHECK(automorphism_count(make_pair(3, "(1 2)", "id", 2)) == 2);
}

TEST_CASE("words reduce freely and print", "[pair]") {
  const Word w = {Letter::K, Letter::Kinv, Letter::G};
  CHECK(free_reduce(w) == Word{Letter::G});
  CHECK(word_str(free_reduce(Word{Letter::K, Letter::Kinv})) == "e");
  CHECK(word_str(Word{Letter::K, Letter::Ginv}) == "K G^-1");
  CHECK(inverse(Letter::G) == Letter::Ginv);
}

TEST_CASE("word actions compose left to right", "[pair]") {
  const auto p = make_pair(3, "(1 2)", "(1 2 3)", 3);
  const Word w = {Letter::G, Letter::K};  // sigmaq then sigma2
  const Permutation act = word_action(w, p);
  CHECK(act(0) == (p.sigma2 * p.sigmaq)(0));
  CHECK(word_action(Word{Letter::Ginv}, p) == p.sigmaq.inverse());
}

TEST_CASE("index one subgroup generators are the group generators", "[pair]") {
  const auto p = make_pair(3, "id", "id", 1);
  const auto gens = subgroup_generators(p);
  REQUIRE(gens.size() == 2);
  CHECK(gens[0] == Word{Letter::K});
  CHECK(gens[1] == Word{Letter::G});
}

TEST_CASE("subgroup generators stabilize the basepoint", "[pair]") {
  for (const auto& p : {make_pair(3, "(1 2)", "(1 2 3)", 3),
                        make_pair(4, "(1 2)(3 4)", "(1 2 3 4)", 4),
                        make_pair(3, "(1 2)(3 4)(5 6)", "(1 2 3)(4 5 6)", 6)}) {
    for (const auto& w : subgroup_generators(p)) {
      CHECK(word_action(w, p)(0) == 0);
      CHECK_FALSE(w.empty());
    }
  }
}

TEST_CASE("coset enumeration over the generators recovers the index", "[pair]") {
  for (const auto& p : {make_pair(3, "(1 2)", "(1 2 3)", 3),
                        make_pair(4, "(1 2)(3 4)", "(1 2 3 4)", 4),
                        make_pair(3, "(1 2)(3 4)(5 6)", "(1 2 3)(4 5 6)", 6)}) {
    CHECK(coset::coset_count(p.q, subgroup_generators(p)) == p.size());
  }
}

TEST_CASE("basepoints outside the action are rejected", "[pair]") {
  const auto p = make_pair(3, "(1 2)", "(1 2 3)", 3);
  CHECK_THROWS_AS(subgroup_generators(p, 3), DomainError);
  CHECK_THROWS_AS(subgroup_generators(p, -1), DomainError);
  for (int base = 0; base < 3; ++base)
    for (const auto& w : subgroup_generators(p, base)) CHECK(word_action(w, p)(base) == base);
}
