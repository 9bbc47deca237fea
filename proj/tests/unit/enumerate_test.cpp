#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "qboid/enumerate.hpp"
#include "support/oracles.hpp"

using namespace qboid;

namespace {

bool has_code(const std::vector<Violation>& errs, ErrorCode code) {
  return std::any_of(errs.begin(), errs.end(), [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("solution counts match the recurrences", "[enumerate]") {
  const std::uint64_t want_i2[] = {1, 2, 4, 10, 26, 76};
  const std::uint64_t want_i3[] = {1, 1, 3, 9, 21, 81};
  for (int n = 1; n <= 6; ++n) {
    auto [i2, i3] = count_solutions(3, n);
    CHECK(i2 == want_i2[n - 1]);
    CHECK(i3 == want_i3[n - 1]);
  }
}

TEST_CASE("solution counts match a direct filter", "[enumerate]") {
  for (int q : {3, 4}) {
    for (int n = 1; n <= 6; ++n) {
      std::uint64_t by_filter_2 = 0, by_filter_q = 0;
      for (const auto& p : oracle::all_permutations(n)) {
        if (oracle::cycle_lengths_in(p, 1, 2)) ++by_filter_2;
        if (oracle::cycle_lengths_in(p, 1, q)) ++by_filter_q;
      }
      auto [i2, iq] = count_solutions(q, n);
      CHECK(i2 == by_filter_2);
      CHECK(iq == by_filter_q);
    }
  }
}

TEST_CASE("q exceeding n leaves only the identity for sigmaq", "[enumerate]") {
  CHECK(count_solutions(7, 3).second == 1);
  CHECK(count_solutions(5, 4).second == 1);
}

TEST_CASE("transitive pair counts by hand", "[enumerate]") {
  CHECK(hall_transitive_count(3, 1) == 1);
  CHECK(hall_transitive_count(3, 2) == 1);
  CHECK(hall_transitive_count(3, 3) == 8);
  CHECK(hall_transitive_count(3, 4) == 48);
  CHECK(hall_transitive_count(3, 5) == 120);
  CHECK(hall_transitive_count(3, 6) == 2640);
}

TEST_CASE("class lists at small index", "[enumerate]") {
  const std::uint64_t want_classes[] = {1, 1, 2, 2, 1, 8};
  const std::uint64_t want_subgroups[] = {1, 1, 4, 8, 5, 22};
  for (int n = 1; n <= 6; ++n) {
    const auto rep = all_classes(3, n);
    CHECK(rep.class_count == want_classes[n - 1]);
    CHECK(rep.subgroup_count == want_subgroups[n - 1]);
    CHECK(rep.hall_consistent);
  }
}

TEST_CASE("the index two class is the blue-blue pair", "[enumerate]") {
  const auto rep = all_classes(3, 2);
  REQUIRE(rep.classes.size() == 1);
  CHECK(rep.classes[0].sigma2.cycle_string() == "(1 2)");
  CHECK(rep.classes[0].sigmaq.is_identity());

  const auto rep4 = all_classes(4, 2);
  CHECK(rep4.class_count == 1);
}

TEST_CASE("no transitive pairs exist when q exceeds n beyond reach", "[enumerate]") {
  const auto rep = all_classes(7, 3);
  CHECK(rep.class_count == 0);
  CHECK(rep.transitive_pair_count == 0);
  CHECK(rep.hall_consistent);
}

TEST_CASE("reports are internally coherent", "[enumerate]") {
  const auto rep = all_classes(3, 5);
  CHECK(validate_report(rep).empty());

  // Burnside: summing orbit sizes n!/|Aut| recovers the transitive count.
  std::uint64_t fact = 1;
  for (int i = 2; i <= rep.n; ++i) fact *= i;
  std::uint64_t orbit_sum = 0;
  for (const auto& p : rep.classes)
    orbit_sum += fact / static_cast<std::uint64_t>(automorphism_count(p));
  CHECK(orbit_sum == rep.transitive_pair_count);

  for (const auto& p : rep.classes) {
    CHECK(canonical_form(p) == p);
    CHECK(validate_pair(p.q, p.sigma2, p.sigmaq).ok());
  }
  CHECK(std::is_sorted(rep.classes.begin(), rep.classes.end(),
                       [](const PermutationPair& a, const PermutationPair& b) {
                         return std::pair{a.sigma2, a.sigmaq} < std::pair{b.sigma2, b.sigmaq};
                       }));
}

TEST_CASE("tampered reports are flagged", "[enumerate]") {
  auto rep = all_classes(3, 3);

  auto wrong_count = rep;
  wrong_count.class_count += 1;
  CHECK(has_code(validate_report(wrong_count), ErrorCode::BadReport));

  auto not_canonical = rep;
  const auto tau = *Permutation::parse_cycles("(1 3)", 3);
  auto& cls = not_canonical.classes[not_canonical.classes.size() - 1];
  cls.sigma2 = cls.sigma2.conjugated_by(tau);
  cls.sigmaq = cls.sigmaq.conjugated_by(tau);
  CHECK(has_code(validate_report(not_canonical), ErrorCode::BadReport));

  auto wrong_q = rep;
  wrong_q.classes[0].q = 4;
  CHECK(has_code(validate_report(wrong_q), ErrorCode::SignatureMismatch));

  auto wrong_hall = rep;
  wrong_hall.hall_count += 1;
  CHECK(has_code(validate_report(wrong_hall), ErrorCode::BadReport));

  auto wrong_subgroups = rep;
  wrong_subgroups.subgroup_count += 1;
  CHECK(has_code(validate_report(wrong_subgroups), ErrorCode::BadReport));
}

TEST_CASE("the enumeration limit guards against blowups", "[enumerate]") {
  try {
    all_classes(3, 10);
    FAIL("expected LimitExceeded");
  } catch (const DomainError& e) {
    CHECK(e.code == ErrorCode::LimitExceeded);
  }
  // Raising the limit knowingly is allowed.
  const auto rep = all_classes(3, 7, 7);
  CHECK(rep.hall_consistent);
  CHECK(rep.subgroup_count == 42);
}

TEST_CASE("enumeration rejects bad signatures", "[enumerate]") {
  CHECK_THROWS_AS(all_classes(2, 3), DomainError);
  CHECK_THROWS_AS(all_classes(3, 0), DomainError);
  CHECK_THROWS_AS(count_solutions(2, 3), DomainError);
  CHECK_THROWS_AS(hall_transitive_count(3, 0), DomainError);
}
