#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qboid/error.hpp"
#include "qboid/model.hpp"
#include "qboid/perm.hpp"

namespace qboid {

// (sigma2, sigmaq) acting on edge labels.  sigma2 has cycle lengths in {1,2}
// (its cycles are the black vertices), sigmaq in {1,q} (white vertices, each
// q-cycle read counter-clockwise), and the pair acts transitively.
struct PermutationPair {
  int q = 0;
  Permutation sigma2;
  Permutation sigmaq;

  int size() const { return sigma2.size(); }
  bool operator==(const PermutationPair&) const = default;
};

namespace detail {

inline bool transitive(const Permutation& a, const Permutation& b) {
  const int n = a.size();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : {a(x), b(x)})
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  return reached == n;
}

}  // namespace detail

inline Checked<PermutationPair> validate_pair(int q, const Permutation& sigma2,
                                              const Permutation& sigmaq) {
  std::vector<Violation> errs;
  auto err = [&](ErrorCode c, std::string d) { errs.push_back({c, std::move(d)}); };

  if (q < 3) err(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(q));
  if (sigma2.size() != sigmaq.size())
    err(ErrorCode::BadPermutation, "sigma2 acts on " + std::to_string(sigma2.size()) + " points but sigmaq on " + std::to_string(sigmaq.size()));
  if (sigma2.size() < 1) err(ErrorCode::Empty, "permutations must act on at least one point");
  if (!errs.empty()) return Checked<PermutationPair>::fail(std::move(errs));

  for (const auto& cyc : sigma2.cycles()) {
    const int len = static_cast<int>(cyc.size());
    if (len != 1 && len != 2)
      err(ErrorCode::BadValence, "sigma2 has a cycle of length " + std::to_string(len) + " at point " + label(cyc[0]) + ", expected 1 or 2");
  }
  for (const auto& cyc : sigmaq.cycles()) {
    const int len = static_cast<int>(cyc.size());
    if (len != 1 && len != q)
      err(ErrorCode::BadValence, "sigmaq has a cycle of length " + std::to_string(len) + " at point " + label(cyc[0]) + ", expected 1 or " + std::to_string(q));
  }
  if (!detail::transitive(sigma2, sigmaq))
    err(ErrorCode::Disconnected, "the pair does not act transitively");

  if (!errs.empty()) return Checked<PermutationPair>::fail(std::move(errs));
  return Checked<PermutationPair>::pass(PermutationPair{q, sigma2, sigmaq});
}

// A pair as read from a document: image arrays that may fail to be
// permutations at all.
struct RawPair {
  int q = 0;
  int n = 0;
  std::vector<int> sigma2;  // images, 0-based
  std::vector<int> sigmaq;
};

inline Checked<PermutationPair> validate_pair(const RawPair& raw) {
  std::vector<Violation> errs;
  auto check = [&](const std::vector<int>& img, const char* name) -> std::optional<Permutation> {
    if (static_cast<int>(img.size()) != raw.n) {
      errs.push_back({ErrorCode::BadPermutation,
                      std::string(name) + " lists " + std::to_string(img.size()) + " images but n is " +
                          std::to_string(raw.n)});
      return std::nullopt;
    }
    auto p = Permutation::from_images(img);
    if (!p)
      errs.push_back({ErrorCode::BadPermutation,
                      std::string(name) + " is not a permutation of 1.." + std::to_string(raw.n)});
    return p;
  };
  auto s2 = check(raw.sigma2, "sigma2");
  auto sq = check(raw.sigmaq, "sigmaq");
  if (raw.q < 3) errs.push_back({ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(raw.q)});
  if (raw.n < 1) errs.push_back({ErrorCode::Empty, "n must be at least 1"});
  if (!errs.empty()) return Checked<PermutationPair>::fail(std::move(errs));
  return validate_pair(raw.q, *s2, *sq);
}

// Black vertices become the cycles of sigma2, white vertices the cycles of
// sigmaq, with each rotation read counter-clockwise.
inline PermutationPair graph_to_perms(const QBoidGraph& g) {
  std::vector<int> s2(g.n), sq(g.n);
  for (const auto& inc : g.black) {
    if (inc.size() == 1)
      s2[inc[0]] = inc[0];
    else {
      s2[inc[0]] = inc[1];
      s2[inc[1]] = inc[0];
    }
  }
  for (const auto& inc : g.white) {
    const int k = static_cast<int>(inc.size());
    for (int i = 0; i < k; ++i) sq[inc[i]] = inc[(i + 1) % k];
  }
  PermutationPair p;
  p.q = g.q;
  p.sigma2 = *Permutation::from_images(std::move(s2));
  p.sigmaq = *Permutation::from_images(std::move(sq));
  return p;
}

// Inverse of graph_to_perms.  Vertices are ordered by the minimum edge label
// of their cycle; rotations are the sigmaq cycles themselves.
inline QBoidGraph perms_to_graph(const PermutationPair& p) {
  QBoidGraph g;
  g.q = p.q;
  g.n = p.size();
  g.black = p.sigma2.cycles();
  g.white = p.sigmaq.cycles();
  return g;
}

// Cycles of sigma2 ∘ sigmaq (sigmaq applied first).  These are the faces of
// the ribbon structure; their count is the cusp count of the subgroup.
inline std::vector<std::vector<int>> faces(const PermutationPair& p) {
  return (p.sigma2 * p.sigmaq).cycles();
}

struct OrbifoldInvariants {
  int index = 0;
  int e2 = 0;     // order-2 cone points: fixed points of sigma2
  int eq = 0;     // order-q cone points: fixed points of sigmaq
  int cusps = 0;  // faces
  int genus = 0;
};

// Riemann-Hurwitz for an index n subgroup of the (2, q, infinity) triangle
// group: 4q*g = 4q + n(q-2) - 2q*f - q*e2 - 2(q-1)*eq.
inline OrbifoldInvariants invariants_from_counts(int q, int n, int e2, int eq, int cusps) {
  OrbifoldInvariants inv{n, e2, eq, cusps, 0};
  const long long qq = q, nn = n;
  const long long num = 4 * qq + nn * (qq - 2) - 2 * qq * cusps - qq * e2 - 2 * (qq - 1) * eq;
  if (num % (4 * qq) != 0 || num < 0)
    throw DomainError(ErrorCode::NumericalFailure,
                      "genus formula gave " + std::to_string(num) + "/" + std::to_string(4 * qq) + " for index " + std::to_string(nn));
  inv.genus = static_cast<int>(num / (4 * qq));
  return inv;
}

inline OrbifoldInvariants orbifold_invariants(const PermutationPair& p) {
  return invariants_from_counts(p.q, p.size(), p.sigma2.fixed_point_count(),
                                p.sigmaq.fixed_point_count(), static_cast<int>(faces(p).size()));
}

// Genus of the underlying dessin surface via Euler's formula:
// 2 - 2g = #cyc(sigma2) + #cyc(sigmaq) + #cyc(sigma2*sigmaq) - n.
inline int dessin_genus(const PermutationPair& p) {
  const int chi = p.sigma2.cycle_count() + p.sigmaq.cycle_count() +
                  (p.sigma2 * p.sigmaq).cycle_count() - p.size();
  if (chi > 2 || chi % 2 != 0)
    throw DomainError(ErrorCode::NumericalFailure, "Euler characteristic " + std::to_string(chi) + " is not of the form 2-2g");
  return (2 - chi) / 2;
}

// The valence constraints pin the cycle counts: sigma2 has (n+e2)/2 cycles
// and sigmaq has eq + (n-eq)/q, so the dessin genus and the cycle rank of
// the graph follow from the four counts alone.
inline int dessin_genus_from_counts(int q, int n, int e2, int eq, int cusps) {
  if ((n + e2) % 2 != 0 || (n - eq) % q != 0)
    throw DomainError(ErrorCode::NumericalFailure, "cone point counts are inconsistent with q and n");
  const int chi = (n + e2) / 2 + eq + (n - eq) / q + cusps - n;
  if (chi > 2 || chi % 2 != 0)
    throw DomainError(ErrorCode::NumericalFailure, "Euler characteristic " + std::to_string(chi) + " is not of the form 2-2g");
  return (2 - chi) / 2;
}

inline int cycle_rank_from_counts(int q, int n, int e2, int eq) {
  if ((n + e2) % 2 != 0 || (n - eq) % q != 0)
    throw DomainError(ErrorCode::NumericalFailure, "cone point counts are inconsistent with q and n");
  return n - ((n + e2) / 2 + eq + (n - eq) / q) + 1;
}

namespace detail {

// A conjugating bijection tau with tau(0) = target is determined by orbit
// propagation; returns it if consistent.
inline std::optional<Permutation> conjugator_fixing(const PermutationPair& a,
                                                    const PermutationPair& b, int target) {
  const int n = a.size();
  std::vector<int> tau(n, -1);
  std::vector<char> hit(n, 0);
  tau[0] = target;
  hit[target] = 1;
  std::vector<int> stack = {0};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (auto [src, dst] : {std::pair{a.sigma2(x), b.sigma2(tau[x])},
                            std::pair{a.sigmaq(x), b.sigmaq(tau[x])}}) {
      if (tau[src] == -1) {
        if (hit[dst]) return std::nullopt;
        tau[src] = dst;
        hit[dst] = 1;
        stack.push_back(src);
      } else if (tau[src] != dst) {
        return std::nullopt;
      }
    }
  }
  // Transitivity fills tau completely; verify the conjugation on all points.
  auto perm = Permutation::from_images(std::move(tau));
  if (!perm) return std::nullopt;
  for (int x = 0; x < n; ++x) {
    if ((*perm)(a.sigma2(x)) != b.sigma2((*perm)(x))) return std::nullopt;
    if ((*perm)(a.sigmaq(x)) != b.sigmaq((*perm)(x))) return std::nullopt;
  }
  return perm;
}

}  // namespace detail

struct IsoResult {
  enum class Status { Isomorphic, NonIsomorphic, SignatureMismatch } status;
  std::optional<Permutation> witness;  // tau with tau sigma2 tau^-1 = sigma2', same for sigmaq

  bool isomorphic() const { return status == Status::Isomorphic; }
};

// Simultaneous conjugacy test.  Pairs over different q or different index
// are reported as a signature mismatch rather than a plain negative.
inline IsoResult are_isomorphic(const PermutationPair& a, const PermutationPair& b) {
  if (a.q != b.q || a.size() != b.size())
    return {IsoResult::Status::SignatureMismatch, std::nullopt};
  for (int target = 0; target < a.size(); ++target)
    if (auto tau = detail::conjugator_fixing(a, b, target))
      return {IsoResult::Status::Isomorphic, std::move(tau)};
  return {IsoResult::Status::NonIsomorphic, std::nullopt};
}

inline IsoResult are_isomorphic(const QBoidGraph& a, const QBoidGraph& b) {
  if (a.q != b.q || a.n != b.n) return {IsoResult::Status::SignatureMismatch, std::nullopt};
  return are_isomorphic(graph_to_perms(a), graph_to_perms(b));
}

// The automorphism group of a transitive pair is semiregular: an
// automorphism is determined by the image of point 0.
inline int automorphism_count(const PermutationPair& p) {
  int count = 0;
  for (int target = 0; target < p.size(); ++target)
    if (detail::conjugator_fixing(p, p, target)) ++count;
  return count;
}

// Canonical representative of the conjugacy class: relabel by breadth-first
// discovery order (queueing sigmaq then sigma2 images) from every start
// point and keep the lexicographically least (sigma2 images, sigmaq images).
inline PermutationPair canonical_form(const PermutationPair& p) {
  const int n = p.size();
  std::optional<std::pair<std::vector<int>, std::vector<int>>> best;
  for (int start = 0; start < n; ++start) {
    std::vector<int> pi(n, -1);  // old label -> new label
    std::vector<int> order;
    order.reserve(n);
    pi[start] = 0;
    order.push_back(start);
    for (int head = 0; head < static_cast<int>(order.size()); ++head) {
      const int x = order[head];
      for (int y : {p.sigmaq(x), p.sigma2(x)}) {
        if (pi[y] == -1) {
          pi[y] = static_cast<int>(order.size());
          order.push_back(y);
        }
      }
    }
    std::vector<int> s2(n), sq(n);
    for (int x = 0; x < n; ++x) {
      s2[pi[x]] = pi[p.sigma2(x)];
      sq[pi[x]] = pi[p.sigmaq(x)];
    }
    auto cand = std::make_pair(std::move(s2), std::move(sq));
    if (!best || cand < *best) best = std::move(cand);
  }
  PermutationPair out;
  out.q = p.q;
  out.sigma2 = *Permutation::from_images(best->first);
  out.sigmaq = *Permutation::from_images(best->second);
  return out;
}

// Words in the generators K (order 2) and G (order q).
enum class Letter { K, Kinv, G, Ginv };

using Word = std::vector<Letter>;

inline Letter inverse(Letter l) {
  switch (l) {
    case Letter::K: return Letter::Kinv;
    case Letter::Kinv: return Letter::K;
    case Letter::G: return Letter::Ginv;
    case Letter::Ginv: return Letter::G;
  }
  return Letter::K;
}

// Cancels adjacent inverse pairs only; no relator is applied.
inline Word free_reduce(Word w) {
  Word out;
  for (Letter l : w) {
    if (!out.empty() && out.back() == inverse(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline std::string word_str(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (Letter l : w) {
    if (!s.empty()) s += ' ';
    switch (l) {
      case Letter::K: s += "K"; break;
      case Letter::Kinv: s += "K^-1"; break;
      case Letter::G: s += "G"; break;
      case Letter::Ginv: s += "G^-1"; break;
    }
  }
  return s;
}

// Action on edge labels: K acts as sigma2, G as sigmaq.  Words act on the
// right of the letter sequence, i.e. the first letter acts first.
inline Permutation word_action(const Word& w, const PermutationPair& p) {
  Permutation acc(p.size());
  for (Letter l : w) {
    switch (l) {
      case Letter::K: acc = p.sigma2 * acc; break;
      case Letter::Kinv: acc = p.sigma2.inverse() * acc; break;
      case Letter::G: acc = p.sigmaq * acc; break;
      case Letter::Ginv: acc = p.sigmaq.inverse() * acc; break;
    }
  }
  return acc;
}

// Schreier generators of the stabilizer of basepoint under the action, from
// the breadth-first spanning tree that explores K before G.  Each non-tree
// transition (x, s) with s in {K, G} contributes u_x s u_{t(s,x)}^{-1} where
// u_y is the tree word carrying basepoint to y.  Trivial generators are
// dropped; the rest are freely reduced.
inline std::vector<Word> subgroup_generators(const PermutationPair& p, int basepoint = 0) {
  const int n = p.size();
  if (basepoint < 0 || basepoint >= n)
    throw DomainError(ErrorCode::BadBasepoint, "basepoint " + label(basepoint) + " out of range 1.." + std::to_string(n));

  std::vector<std::optional<Word>> to(n);  // u_y: word with basepoint^u = y
  to[basepoint] = Word{};
  std::vector<int> order = {basepoint};
  const std::array<std::pair<Letter, const Permutation*>, 2> gens = {
      std::pair<Letter, const Permutation*>{Letter::K, &p.sigma2},
      std::pair<Letter, const Permutation*>{Letter::G, &p.sigmaq}};
  for (int head = 0; head < static_cast<int>(order.size()); ++head) {
    const int x = order[head];
    for (auto [letter, perm] : gens) {
      const int y = (*perm)(x);
      if (!to[y]) {
        Word w = *to[x];
        w.push_back(letter);
        to[y] = std::move(w);
        order.push_back(y);
      }
    }
  }

  std::vector<Word> out;
  for (int x : order) {
    for (auto [letter, perm] : gens) {
      const int y = (*perm)(x);
      Word w = *to[x];
      w.push_back(letter);
      if (w == *to[y]) continue;  // tree transition
      const Word& back = *to[y];
      for (auto it = back.rbegin(); it != back.rend(); ++it) w.push_back(inverse(*it));
      w = free_reduce(std::move(w));
      if (!w.empty()) out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace qboid
