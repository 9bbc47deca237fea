#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "qboid/error.hpp"
#include "qboid/model.hpp"

namespace qboid {

// Valence-2 black vertices to sever.  Cutting each listed vertex splits it
// into two valence-1 halves; a valid cut set turns the graph into a tree.
struct CutSet {
  std::vector<int> black_indices;  // sorted

  bool operator==(const CutSet&) const = default;
};

namespace detail {

// Tree-edge endpoint in graph_to_tree / tree_to_graph bookkeeping.
enum class EndKind { Internal, Red, Blue };

struct End {
  EndKind kind;
  int index;  // internal vertex, red slot or blue slot
};

inline bool cut_graph_connected(const QBoidGraph& g, const std::vector<char>& is_cut) {
  // Vertices: whites, then intact blacks, then two halves per cut black.
  const int nb = static_cast<int>(g.black.size());
  const int nw = static_cast<int>(g.white.size());
  std::vector<int> black_vertex(nb, -1);
  int total = nw;
  for (int b = 0; b < nb; ++b)
    if (!is_cut[b]) black_vertex[b] = total++;
  std::map<std::pair<int, int>, int> half_vertex;  // (black, slot)
  for (int b = 0; b < nb; ++b)
    if (is_cut[b])
      for (int s = 0; s < static_cast<int>(g.black[b].size()); ++s)
        half_vertex[{b, s}] = total++;

  std::vector<int> edge_white(g.n, -1);
  for (int w = 0; w < nw; ++w)
    for (int e : g.white[w]) edge_white[e] = w;
  std::vector<int> edge_black_vertex(g.n, -1);
  for (int b = 0; b < nb; ++b)
    for (int s = 0; s < static_cast<int>(g.black[b].size()); ++s)
      edge_black_vertex[g.black[b][s]] = is_cut[b] ? half_vertex[{b, s}] : black_vertex[b];

  std::vector<std::vector<int>> adj(total);
  for (int e = 0; e < g.n; ++e) {
    adj[edge_white[e]].push_back(edge_black_vertex[e]);
    adj[edge_black_vertex[e]].push_back(edge_white[e]);
  }
  std::vector<char> seen(total, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
  }
  return reached == total;
}

}  // namespace detail

inline bool is_valid_cut_set(const QBoidGraph& g, const CutSet& cut) {
  std::vector<char> is_cut(g.black.size(), 0);
  for (int b : cut.black_indices) {
    if (b < 0 || b >= static_cast<int>(g.black.size())) return false;
    if (g.black[b].size() != 2) return false;
    if (is_cut[b]) return false;
    is_cut[b] = 1;
  }
  if (static_cast<int>(cut.black_indices.size()) != cycle_rank(g)) return false;
  // Cutting keeps edge count and adds one vertex per cut, so the cut graph
  // is a tree exactly when it stays connected.
  return detail::cut_graph_connected(g, is_cut);
}

// All valid cut sets, in lexicographic order of their sorted index lists.
inline std::vector<CutSet> enumerate_cut_sets(const QBoidGraph& g) {
  std::vector<int> candidates;
  for (int b = 0; b < static_cast<int>(g.black.size()); ++b)
    if (g.black[b].size() == 2) candidates.push_back(b);
  const int r = cycle_rank(g);
  std::vector<CutSet> out;
  if (r > static_cast<int>(candidates.size())) return out;

  std::vector<int> pick(r);
  auto rec = [&](auto&& self, int from, int depth) -> void {
    if (depth == r) {
      CutSet c{std::vector<int>(pick.begin(), pick.end())};
      if (is_valid_cut_set(g, c)) out.push_back(std::move(c));
      return;
    }
    for (int i = from; i < static_cast<int>(candidates.size()); ++i) {
      pick[depth] = candidates[i];
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

// Identifies each sigma pair of reds into one valence-2 black vertex, keeps
// fixed reds as valence-1 blacks, and subdivides every edge whose endpoints
// are both internal or blue with a new valence-2 black.  Output edges are
// relabelled 1..n' in traversal order (internal vertices in index order,
// then blue vertices, incident edges in rotation order).
inline QBoidGraph tree_to_graph(const TreeDiagram& t) {
  const int ni = static_cast<int>(t.internal_vertices.size());
  const int nr = static_cast<int>(t.red.size());

  std::vector<std::pair<detail::End, detail::End>> ends(
      t.n, {detail::End{detail::EndKind::Internal, -1}, detail::End{detail::EndKind::Internal, -1}});
  {
    std::vector<int> count(t.n, 0);
    auto attach = [&](int e, detail::End end) {
      (count[e]++ == 0 ? ends[e].first : ends[e].second) = end;
    };
    for (int i = 0; i < ni; ++i)
      for (int e : t.internal_vertices[i]) attach(e, {detail::EndKind::Internal, i});
    for (int r = 0; r < nr; ++r) attach(t.red[r], {detail::EndKind::Red, r});
    for (int b = 0; b < static_cast<int>(t.blue.size()); ++b) attach(t.blue[b], {detail::EndKind::Blue, b});
  }

  for (int e = 0; e < t.n; ++e)
    if (ends[e].first.kind == detail::EndKind::Red && ends[e].second.kind == detail::EndKind::Red)
      throw DomainError(ErrorCode::NotRealizable,
                        "edge " + label(e) + " joins two red vertices; red vertices are even and every edge needs an odd end");

  // Provisional graph edge ids: whole tree edge e -> 2e; the two halves of a
  // subdivided edge -> 2e (first endpoint side) and 2e+1.
  auto splits = [&](int e) {
    return ends[e].first.kind != detail::EndKind::Red && ends[e].second.kind != detail::EndKind::Red;
  };
  auto half_at = [&](int e, bool second_end) -> int {
    if (!splits(e)) return 2 * e;
    return 2 * e + (second_end ? 1 : 0);
  };

  // Blacks: subdivision points in tree-edge order, then sigma orbits by
  // smallest red index.
  std::vector<std::vector<int>> blacks;
  for (int e = 0; e < t.n; ++e)
    if (splits(e)) blacks.push_back({2 * e, 2 * e + 1});
  for (int r = 0; r < nr; ++r) {
    if (t.sigma[r] == r)
      blacks.push_back({2 * t.red[r]});
    else if (t.sigma[r] > r)
      blacks.push_back({2 * t.red[r], 2 * t.red[t.sigma[r]]});
  }

  // Whites: internal vertices in rotation order, then blues.
  std::vector<std::vector<int>> whites;
  for (int i = 0; i < ni; ++i) {
    std::vector<int> inc;
    for (int e : t.internal_vertices[i]) {
      // A tree has no self-loops, so the end at this vertex is unambiguous.
      const bool at_second = ends[e].second.kind == detail::EndKind::Internal && ends[e].second.index == i;
      inc.push_back(half_at(e, at_second));
    }
    whites.push_back(std::move(inc));
  }
  for (int b = 0; b < static_cast<int>(t.blue.size()); ++b) {
    const int e = t.blue[b];
    const bool at_second = ends[e].second.kind == detail::EndKind::Blue && ends[e].second.index == b;
    whites.push_back({half_at(e, at_second)});
  }

  // Relabel by first encounter over the white lists; every graph edge has
  // exactly one white end.
  std::map<int, int> relabel;
  for (const auto& inc : whites)
    for (int pe : inc)
      if (!relabel.count(pe)) {
        const int next = static_cast<int>(relabel.size());
        relabel[pe] = next;
      }
  const int n2 = static_cast<int>(relabel.size());
  for (auto& inc : whites)
    for (int& pe : inc) pe = relabel.at(pe);
  for (auto& inc : blacks)
    for (int& pe : inc) pe = relabel.at(pe);

  RawGraph raw;
  raw.q = t.q;
  raw.n = n2;
  raw.black = std::move(blacks);
  raw.white = whites;
  for (int w = 0; w < static_cast<int>(whites.size()); ++w)
    if (static_cast<int>(whites[w].size()) == t.q) raw.rotations[w] = whites[w];
  auto checked = validate_graph(raw);
  if (!checked.ok())
    throw DomainError(ErrorCode::NotRealizable, "tree does not assemble into a valid graph: " + checked.violations.front().str());
  return *checked;
}

// Inverse construction: severs the cut set into sigma-paired reds, turns
// valence-1 blacks into fixed reds and valence-1 whites into blues, and
// suppresses the remaining valence-2 blacks by merging their two edges.
// Tree edges are relabelled 1..m in traversal order as in tree_to_graph.
inline TreeDiagram graph_to_tree(const QBoidGraph& g, const CutSet& cut) {
  const int nb = static_cast<int>(g.black.size());
  const int nw = static_cast<int>(g.white.size());
  std::vector<char> is_cut(nb, 0);
  for (int b : cut.black_indices) {
    if (b < 0 || b >= nb)
      throw DomainError(ErrorCode::InvalidCutSet, "cut names nonexistent black vertex " + label(b));
    if (g.black[b].size() != 2)
      throw DomainError(ErrorCode::InvalidCutSet, "cut black vertex " + label(b) + " does not have valence 2");
    if (is_cut[b])
      throw DomainError(ErrorCode::InvalidCutSet, "cut repeats black vertex " + label(b));
    is_cut[b] = 1;
  }
  if (static_cast<int>(cut.black_indices.size()) != cycle_rank(g))
    throw DomainError(ErrorCode::InvalidCutSet,
                      "cut has " + std::to_string(cut.black_indices.size()) + " vertices but the cycle rank is " + std::to_string(cycle_rank(g)));
  if (!detail::cut_graph_connected(g, is_cut))
    throw DomainError(ErrorCode::InvalidCutSet, "cutting disconnects the graph");

  // Union graph edges through suppressed valence-2 blacks.  Each class has
  // one or two edges; bipartiteness forbids longer chains.
  std::vector<int> mate(g.n, -1);
  for (int b = 0; b < nb; ++b)
    if (!is_cut[b] && g.black[b].size() == 2) {
      mate[g.black[b][0]] = g.black[b][1];
      mate[g.black[b][1]] = g.black[b][0];
    }

  std::vector<int> edge_white(g.n, -1);
  for (int w = 0; w < nw; ++w)
    for (int e : g.white[w]) edge_white[e] = w;

  // Tree edge ids: the representative graph edge is the smaller of a merged
  // pair.  Relabel by first encounter over whites in index order (internals
  // first, then blues) and rotation order.
  auto rep = [&](int e) { return mate[e] >= 0 ? std::min(e, mate[e]) : e; };
  std::vector<int> internal_whites, blue_whites;
  for (int w = 0; w < nw; ++w)
    (g.white[w].size() == 1 ? blue_whites : internal_whites).push_back(w);

  std::map<int, int> tree_label;
  for (int w : internal_whites)
    for (int e : g.white[w])
      if (!tree_label.count(rep(e))) {
        const int next = static_cast<int>(tree_label.size());
        tree_label[rep(e)] = next;
      }
  for (int w : blue_whites) {
    const int e = g.white[w][0];
    if (!tree_label.count(rep(e))) {
      const int next = static_cast<int>(tree_label.size());
      tree_label[rep(e)] = next;
    }
  }

  RawTree raw;
  raw.q = g.q;
  raw.n = static_cast<int>(tree_label.size());
  for (int w : internal_whites) {
    std::vector<int> rot;
    for (int e : g.white[w]) rot.push_back(tree_label.at(rep(e)));
    raw.internal_vertices.push_back(std::move(rot));
  }
  for (int w : blue_whites) raw.blue.push_back(tree_label.at(rep(g.white[w][0])));

  // Reds in black-index order; a cut vertex contributes its two edge slots
  // as a sigma pair.
  for (int b = 0; b < nb; ++b) {
    if (g.black[b].size() == 1 && !is_cut[b]) {
      raw.red.push_back(tree_label.at(rep(g.black[b][0])));
    } else if (is_cut[b]) {
      const int ra = tree_label.at(rep(g.black[b][0]));
      const int rb = tree_label.at(rep(g.black[b][1]));
      raw.red.push_back(ra);
      raw.red.push_back(rb);
      raw.sigma_pairs.emplace_back(ra, rb);
    }
  }

  auto checked = validate_tree(raw);
  if (!checked.ok())
    throw DomainError(ErrorCode::InvalidCutSet, "cut does not produce a valid tree: " + checked.violations.front().str());
  return *checked;
}

}  // namespace qboid
