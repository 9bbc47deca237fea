#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qboid/error.hpp"

namespace qboid {

// Vertex and edge labels are 0-based in memory and 1-based in files, cycle
// strings and diagnostic messages.

inline std::string label(int x) { return std::to_string(x + 1); }

struct HeckeSignature {
  int q = 3;
};

// A graph as read from a document, before validation.  black[i] / white[i]
// list the edge labels incident to that vertex; rotations give the
// counter-clockwise edge order at q-valent white vertices, keyed by white
// vertex index.
struct RawGraph {
  int q = 0;
  int n = 0;
  std::vector<std::vector<int>> black;
  std::vector<std::vector<int>> white;
  std::map<int, std::vector<int>> rotations;
};

// Validated bipartite graph: every edge joins one black and one white vertex,
// black valence is 1 or 2, white valence is 1 or q, the graph is connected,
// and each q-valent white vertex carries a cyclic edge order.  white[i] is
// stored in rotation order.
struct QBoidGraph {
  int q = 0;
  int n = 0;
  std::vector<std::vector<int>> black;
  std::vector<std::vector<int>> white;

  int black_of(int edge) const {
    for (int b = 0; b < static_cast<int>(black.size()); ++b)
      for (int e : black[b])
        if (e == edge) return b;
    return -1;
  }
  int white_of(int edge) const {
    for (int w = 0; w < static_cast<int>(white.size()); ++w)
      for (int e : white[w])
        if (e == edge) return w;
    return -1;
  }
};

namespace detail {

// Connectivity over the vertex set (blacks then whites) through shared edges.
inline bool graph_connected(const std::vector<std::vector<int>>& black,
                            const std::vector<std::vector<int>>& white, int n) {
  const int nb = static_cast<int>(black.size());
  const int nw = static_cast<int>(white.size());
  if (nb + nw == 0) return true;
  std::vector<int> edge_black(n, -1), edge_white(n, -1);
  for (int b = 0; b < nb; ++b)
    for (int e : black[b])
      if (e >= 0 && e < n) edge_black[e] = b;
  for (int w = 0; w < nw; ++w)
    for (int e : white[w])
      if (e >= 0 && e < n) edge_white[e] = w;

  std::vector<char> seen(nb + nw, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    const bool is_black = v < nb;
    const auto& inc = is_black ? black[v] : white[v - nb];
    for (int e : inc) {
      if (e < 0 || e >= n) continue;
      int other = is_black ? (edge_white[e] >= 0 ? nb + edge_white[e] : -1)
                           : edge_black[e];
      if (other >= 0 && !seen[other]) {
        seen[other] = 1;
        stack.push_back(other);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace detail

inline Checked<QBoidGraph> validate_graph(const RawGraph& raw) {
  std::vector<Violation> errs;
  auto err = [&](ErrorCode c, std::string d) { errs.push_back({c, std::move(d)}); };

  if (raw.q < 3) err(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(raw.q));
  if (raw.n < 1) err(ErrorCode::Empty, "graph must have at least one edge");
  if (!errs.empty()) return Checked<QBoidGraph>::fail(std::move(errs));

  // Each edge label must appear exactly once on the black side and once on
  // the white side.
  std::vector<int> black_uses(raw.n, 0), white_uses(raw.n, 0);
  bool out_of_range = false;
  for (const auto& inc : raw.black)
    for (int e : inc) {
      if (e < 0 || e >= raw.n) {
        err(ErrorCode::DanglingEdge, "edge label " + label(e) + " out of range 1.." + std::to_string(raw.n));
        out_of_range = true;
      } else {
        ++black_uses[e];
      }
    }
  for (const auto& inc : raw.white)
    for (int e : inc) {
      if (e < 0 || e >= raw.n) {
        err(ErrorCode::DanglingEdge, "edge label " + label(e) + " out of range 1.." + std::to_string(raw.n));
        out_of_range = true;
      } else {
        ++white_uses[e];
      }
    }
  for (int e = 0; e < raw.n && !out_of_range; ++e) {
    if (black_uses[e] == 0)
      err(ErrorCode::DanglingEdge, "edge " + label(e) + " has no black endpoint");
    if (white_uses[e] == 0)
      err(ErrorCode::DanglingEdge, "edge " + label(e) + " has no white endpoint");
    if (black_uses[e] > 1 || white_uses[e] > 1)
      err(ErrorCode::NotBipartite, "edge " + label(e) + " is incident to more than one vertex on a side");
  }

  for (int b = 0; b < static_cast<int>(raw.black.size()); ++b) {
    const int v = static_cast<int>(raw.black[b].size());
    if (v != 1 && v != 2)
      err(ErrorCode::BadValence, "black vertex " + label(b) + " has valence " + std::to_string(v) + ", expected 1 or 2");
  }
  for (int w = 0; w < static_cast<int>(raw.white.size()); ++w) {
    const int v = static_cast<int>(raw.white[w].size());
    if (v != 1 && v != raw.q)
      err(ErrorCode::BadValence, "white vertex " + label(w) + " has valence " + std::to_string(v) + ", expected 1 or " + std::to_string(raw.q));
  }

  // Rotations: required at q-valent whites, forbidden elsewhere, and must be
  // a permutation of the incident edges.
  for (int w = 0; w < static_cast<int>(raw.white.size()); ++w) {
    const bool needs = static_cast<int>(raw.white[w].size()) == raw.q && raw.q > 1;
    auto it = raw.rotations.find(w);
    if (!needs) {
      if (it != raw.rotations.end())
        err(ErrorCode::BadRotation, "white vertex " + label(w) + " has valence 1 and needs no rotation");
      continue;
    }
    if (it == raw.rotations.end()) {
      err(ErrorCode::BadRotation, "white vertex " + label(w) + " is missing its rotation");
      continue;
    }
    std::multiset<int> a(it->second.begin(), it->second.end());
    std::multiset<int> b(raw.white[w].begin(), raw.white[w].end());
    if (a != b)
      err(ErrorCode::BadRotation, "rotation at white vertex " + label(w) + " is not an ordering of its incident edges");
  }
  for (const auto& [w, rot] : raw.rotations) {
    (void)rot;
    if (w < 0 || w >= static_cast<int>(raw.white.size()))
      err(ErrorCode::BadRotation, "rotation given for nonexistent white vertex " + label(w));
  }

  if (!out_of_range && !detail::graph_connected(raw.black, raw.white, raw.n))
    err(ErrorCode::Disconnected, "graph is not connected");

  if (!errs.empty()) return Checked<QBoidGraph>::fail(std::move(errs));

  QBoidGraph g;
  g.q = raw.q;
  g.n = raw.n;
  g.black = raw.black;
  g.white = raw.white;
  for (int w = 0; w < static_cast<int>(g.white.size()); ++w) {
    auto it = raw.rotations.find(w);
    if (it != raw.rotations.end()) g.white[w] = it->second;
  }
  return Checked<QBoidGraph>::pass(std::move(g));
}

// First Betti number of the underlying graph; equals the number of
// independent cycles and the number of black vertices any tree-producing cut
// must sever.
inline int cycle_rank(const QBoidGraph& g) {
  const int vertices = static_cast<int>(g.black.size() + g.white.size());
  return g.n - vertices + 1;
}

// A plane tree with internal vertices of valence q carrying cyclic edge
// orders, and terminal vertices partitioned into red and blue.  sigma is an
// involution on the red vertices.  Edges are labelled; terminals are
// identified by the unique edge they lie on.
struct RawTree {
  int q = 0;
  int n = 0;                                    // edge count
  std::vector<std::vector<int>> internal_vertices;  // edges in rotation order
  std::vector<int> red;                         // terminal vertices, by incident edge
  std::vector<int> blue;
  std::vector<std::pair<int, int>> sigma_pairs;  // swapped red pairs, by incident edge
};

struct TreeDiagram {
  int q = 0;
  int n = 0;
  std::vector<std::vector<int>> internal_vertices;
  std::vector<int> red;
  std::vector<int> blue;
  std::vector<int> sigma;  // involution as indices into red

  int red_index_of_edge(int e) const {
    for (int i = 0; i < static_cast<int>(red.size()); ++i)
      if (red[i] == e) return i;
    return -1;
  }
};

inline Checked<TreeDiagram> validate_tree(const RawTree& raw) {
  std::vector<Violation> errs;
  auto err = [&](ErrorCode c, std::string d) { errs.push_back({c, std::move(d)}); };

  if (raw.q < 3) err(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(raw.q));
  if (raw.n < 1) err(ErrorCode::Empty, "tree must have at least one edge");
  if (!errs.empty()) return Checked<TreeDiagram>::fail(std::move(errs));

  for (int i = 0; i < static_cast<int>(raw.internal_vertices.size()); ++i) {
    const int v = static_cast<int>(raw.internal_vertices[i].size());
    if (v != raw.q)
      err(ErrorCode::BadInternalValence, "internal vertex " + label(i) + " has valence " + std::to_string(v) + ", expected " + std::to_string(raw.q));
  }

  // Every edge has exactly two endpoints among internal vertices and
  // terminals.  A single edge may carry two terminals, one per end, of any
  // colors; a one-edge tree with both ends red or both ends blue is valid.
  std::vector<int> uses(raw.n, 0);
  bool out_of_range = false;
  auto use = [&](int e, const char* where) {
    if (e < 0 || e >= raw.n) {
      err(ErrorCode::DanglingEdge, std::string("edge label ") + label(e) + " out of range 1.." + std::to_string(raw.n) + " in " + where);
      out_of_range = true;
    } else {
      ++uses[e];
    }
  };
  for (const auto& inc : raw.internal_vertices)
    for (int e : inc) use(e, "an internal vertex");
  for (int e : raw.red) use(e, "red");
  for (int e : raw.blue) use(e, "blue");
  for (int e = 0; e < raw.n && !out_of_range; ++e) {
    if (uses[e] < 2)
      err(ErrorCode::BadPartition, "an end of edge " + label(e) + " is neither internal nor a colored terminal");
    else if (uses[e] > 2)
      err(ErrorCode::BadPartition, "edge " + label(e) + " has " + std::to_string(uses[e]) + " endpoints, expected 2");
  }
  if (out_of_range || !errs.empty()) return Checked<TreeDiagram>::fail(std::move(errs));

  // Acyclicity and connectedness.  Vertices: internals, then one terminal
  // per red/blue entry.
  {
    const int ni = static_cast<int>(raw.internal_vertices.size());
    const int nt = static_cast<int>(raw.red.size() + raw.blue.size());
    std::vector<std::pair<int, int>> ends(raw.n, {-1, -1});
    auto attach = [&](int e, int v) {
      if (ends[e].first < 0)
        ends[e].first = v;
      else
        ends[e].second = v;
    };
    for (int i = 0; i < ni; ++i)
      for (int e : raw.internal_vertices[i]) attach(e, i);
    for (int t = 0; t < static_cast<int>(raw.red.size()); ++t) attach(raw.red[t], ni + t);
    for (int t = 0; t < static_cast<int>(raw.blue.size()); ++t)
      attach(raw.blue[t], ni + static_cast<int>(raw.red.size()) + t);

    const int nv = ni + nt;
    if (nv != raw.n + 1) {
      err(ErrorCode::NotATree, "tree on " + std::to_string(nv) + " vertices must have " + std::to_string(nv - 1) + " edges, got " + std::to_string(raw.n));
    } else {
      std::vector<std::vector<int>> adj(nv);
      for (auto [a, b] : ends) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      std::vector<char> seen(nv, 0);
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
      if (reached != nv) err(ErrorCode::NotATree, "tree is not connected");
    }
  }

  // sigma: pairs of distinct red edges, each red used at most once.
  std::vector<int> sigma(raw.red.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = static_cast<int>(i);
  {
    std::set<int> used;
    auto red_index = [&](int e) {
      for (int i = 0; i < static_cast<int>(raw.red.size()); ++i)
        if (raw.red[i] == e) return i;
      return -1;
    };
    for (auto [a, b] : raw.sigma_pairs) {
      const int ia = red_index(a), ib = red_index(b);
      if (ia < 0 || ib < 0) {
        err(ErrorCode::BadInvolution, "sigma pair (" + label(a) + " " + label(b) + ") names a non-red vertex");
        continue;
      }
      if (ia == ib) {
        err(ErrorCode::BadInvolution, "sigma pair (" + label(a) + " " + label(b) + ") repeats a vertex");
        continue;
      }
      if (used.count(ia) || used.count(ib)) {
        err(ErrorCode::BadInvolution, "a red vertex of sigma pair (" + label(a) + " " + label(b) + ") already appears in another pair");
        continue;
      }
      used.insert(ia);
      used.insert(ib);
      sigma[ia] = ib;
      sigma[ib] = ia;
    }
  }

  if (!errs.empty()) return Checked<TreeDiagram>::fail(std::move(errs));

  TreeDiagram t;
  t.q = raw.q;
  t.n = raw.n;
  t.internal_vertices = raw.internal_vertices;
  t.red = raw.red;
  t.blue = raw.blue;
  t.sigma = std::move(sigma);
  return Checked<TreeDiagram>::pass(std::move(t));
}

}  // namespace qboid
