#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "qboid/error.hpp"
#include "qboid/pair.hpp"

namespace qboid {

// Counting here is exact in 64 bits for the index range the enumerator
// accepts; the recurrences would overflow long before the enumeration
// becomes feasible anyway.

// (number of involutions on n points, number of permutations on n points
// with all cycle lengths in {1, q}).
inline std::pair<std::uint64_t, std::uint64_t> count_solutions(int q, int n) {
  if (q < 3) throw DomainError(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(q));
  if (n < 0) throw DomainError(ErrorCode::Empty, "n must be nonnegative");
  std::vector<std::uint64_t> i2(n + 1, 1), iq(n + 1, 1);
  for (int m = 2; m <= n; ++m) i2[m] = i2[m - 1] + static_cast<std::uint64_t>(m - 1) * i2[m - 2];
  for (int m = q; m <= n; ++m) {
    std::uint64_t falling = 1;
    for (int j = 1; j < q; ++j) falling *= static_cast<std::uint64_t>(m - j);
    iq[m] = iq[m - 1] + falling * iq[m - q];
  }
  return {i2[n], iq[n]};
}

// Number of transitive pairs (sigma2, sigmaq) on n labelled points, by
// inclusion-exclusion over the part containing point 1:
//   t(n) = h(n) - sum_{k<n} C(n-1, k-1) t(k) h(n-k),   h(m) = i2(m) iq(m).
inline std::uint64_t hall_transitive_count(int q, int n) {
  if (q < 3) throw DomainError(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(q));
  if (n < 1) throw DomainError(ErrorCode::Empty, "n must be at least 1");
  std::vector<std::uint64_t> h(n + 1);
  for (int m = 0; m <= n; ++m) {
    auto [a, b] = count_solutions(q, m);
    h[m] = a * b;
  }
  // Pascal triangle up to n-1.
  std::vector<std::vector<std::uint64_t>> choose(n, std::vector<std::uint64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    choose[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : 0);
  }
  std::vector<std::uint64_t> t(n + 1, 0);
  for (int m = 1; m <= n; ++m) {
    std::uint64_t total = h[m];
    for (int k = 1; k < m; ++k) total -= choose[m - 1][k - 1] * t[k] * h[m - k];
    t[m] = total;
  }
  return t[n];
}

struct EnumerationReport {
  int q = 0;
  int n = 0;
  std::vector<PermutationPair> classes;  // canonical forms, sorted
  std::uint64_t class_count = 0;
  std::uint64_t transitive_pair_count = 0;  // labelled transitive pairs
  std::uint64_t all_pair_count = 0;         // labelled pairs, transitivity dropped
  std::uint64_t subgroup_count = 0;         // transitive_pair_count / (n-1)!
  std::uint64_t hall_count = 0;             // hall_transitive_count(q, n)
  bool hall_consistent = false;             // hall_count == transitive_pair_count
};

namespace detail {

inline void involutions_rec(std::vector<int>& img, std::vector<char>& used, int n,
                            std::vector<Permutation>& out) {
  int x = 0;
  while (x < n && used[x]) ++x;
  if (x == n) {
    out.push_back(*Permutation::from_images(img));
    return;
  }
  used[x] = 1;
  img[x] = x;
  involutions_rec(img, used, n, out);
  for (int y = x + 1; y < n; ++y) {
    if (used[y]) continue;
    used[y] = 1;
    img[x] = y;
    img[y] = x;
    involutions_rec(img, used, n, out);
    img[y] = y;
    used[y] = 0;
  }
  img[x] = x;
  used[x] = 0;
}

inline std::vector<Permutation> involutions(int n) {
  std::vector<Permutation> out;
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  std::vector<char> used(n, 0);
  involutions_rec(img, used, n, out);
  return out;
}

// One representative of each sigmaq cycle type: k leading q-cycles on
// consecutive points, the rest fixed.  Every conjugacy class of pairs
// contains a pair whose sigmaq has this form.
inline std::vector<Permutation> sigmaq_type_representatives(int n, int q) {
  std::vector<Permutation> out;
  for (int k = 0; k * q <= n; ++k) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    for (int c = 0; c < k; ++c)
      for (int j = 0; j < q; ++j) img[c * q + j] = c * q + (j + 1) % q;
    out.push_back(*Permutation::from_images(std::move(img)));
  }
  return out;
}

}  // namespace detail

// Exhaustive classification at index n: every conjugacy class of transitive
// pairs, one canonical representative each.  The guard keeps accidental
// exponential blowups out; raise the limit knowingly.
inline EnumerationReport all_classes(int q, int n, int limit = 9) {
  if (q < 3) throw DomainError(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(q));
  if (n < 1) throw DomainError(ErrorCode::Empty, "n must be at least 1");
  if (n > limit)
    throw DomainError(ErrorCode::LimitExceeded,
                      "index " + std::to_string(n) + " exceeds the enumeration limit " + std::to_string(limit));

  EnumerationReport report;
  report.q = q;
  report.n = n;

  std::map<std::pair<std::vector<int>, std::vector<int>>, int> seen;  // canonical -> aut order
  const auto invs = detail::involutions(n);
  for (const auto& sq : detail::sigmaq_type_representatives(n, q)) {
    for (const auto& s2 : invs) {
      if (!detail::transitive(s2, sq)) continue;
      PermutationPair p{q, s2, sq};
      PermutationPair canon = canonical_form(p);
      seen.emplace(std::pair{canon.sigma2.images(), canon.sigmaq.images()}, automorphism_count(canon));
    }
  }

  std::uint64_t fact_n = 1, fact_n1 = 1;
  for (int i = 2; i <= n; ++i) fact_n *= i;
  for (int i = 2; i <= n - 1; ++i) fact_n1 *= i;

  for (const auto& [key, aut] : seen) {
    PermutationPair p;
    p.q = q;
    p.sigma2 = *Permutation::from_images(key.first);
    p.sigmaq = *Permutation::from_images(key.second);
    report.classes.push_back(std::move(p));
    report.transitive_pair_count += fact_n / static_cast<std::uint64_t>(aut);
  }
  report.class_count = report.classes.size();
  auto [i2, iq] = count_solutions(q, n);
  report.all_pair_count = i2 * iq;
  report.subgroup_count = report.transitive_pair_count / fact_n1;
  report.hall_count = hall_transitive_count(q, n);
  report.hall_consistent = report.hall_count == report.transitive_pair_count;
  return report;
}

// Consistency of a report document, e.g. one loaded from a file: classes
// must be valid canonical pairs of the right signature, sorted, pairwise
// distinct, and the counts must cohere.
inline std::vector<Violation> validate_report(const EnumerationReport& r) {
  std::vector<Violation> errs;
  auto err = [&](ErrorCode c, std::string d) { errs.push_back({c, std::move(d)}); };
  if (r.q < 3) err(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(r.q));
  if (r.n < 1) err(ErrorCode::Empty, "n must be at least 1");
  if (!errs.empty()) return errs;

  if (r.class_count != r.classes.size())
    err(ErrorCode::BadReport, "class_count " + std::to_string(r.class_count) + " does not match " +
                                  std::to_string(r.classes.size()) + " listed classes");
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& p = r.classes[i];
    if (p.q != r.q || p.size() != r.n) {
      err(ErrorCode::SignatureMismatch, "class " + label(static_cast<int>(i)) + " has signature q=" +
                                            std::to_string(p.q) + ", n=" + std::to_string(p.size()));
      continue;
    }
    auto checked = validate_pair(p.q, p.sigma2, p.sigmaq);
    for (auto& v : checked.violations)
      err(v.code, "class " + label(static_cast<int>(i)) + ": " + v.detail);
    if (!checked.ok()) continue;
    if (!(canonical_form(p) == p))
      err(ErrorCode::BadReport, "class " + label(static_cast<int>(i)) + " is not in canonical form");
    if (i > 0 && !(std::pair{r.classes[i - 1].sigma2, r.classes[i - 1].sigmaq} <
                   std::pair{p.sigma2, p.sigmaq}))
      err(ErrorCode::BadReport, "classes are not sorted strictly by canonical form at position " +
                                    label(static_cast<int>(i)));
  }

  std::uint64_t fact_n1 = 1;
  for (int i = 2; i <= r.n - 1; ++i) fact_n1 *= i;
  if (r.subgroup_count * fact_n1 != r.transitive_pair_count)
    err(ErrorCode::BadReport, "subgroup_count is not transitive_pair_count / (n-1)!");
  auto [i2, iq] = count_solutions(r.q, r.n);
  if (r.all_pair_count != i2 * iq)
    err(ErrorCode::BadReport, "all_pair_count does not match the solution counts");
  if (r.hall_count != hall_transitive_count(r.q, r.n))
    err(ErrorCode::BadReport, "hall_count does not match the recurrence");
  if (r.hall_consistent != (r.hall_count == r.transitive_pair_count))
    err(ErrorCode::BadReport, "hall_consistent flag contradicts the counts");
  return errs;
}

}  // namespace qboid
