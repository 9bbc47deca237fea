#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "qboid/error.hpp"
#include "qboid/model.hpp"
#include "qboid/moebius.hpp"
#include "qboid/treeops.hpp"

namespace qboid {

inline constexpr double pi = 3.14159265358979323846;

// K: z -> -1/z and G: z -> -1/(z + lambda) with lambda = 2 cos(pi/q).
// K G generates the rotation by 2pi/q about rho = e^{i pi/q}; K is the
// rotation by pi about i.
struct HeckeGenerators {
  int q = 0;
  double lambda = 0;
  MoebiusMap K;
  MoebiusMap G;
};

inline HeckeGenerators hecke_generators(int q) {
  if (q < 3) throw DomainError(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(q));
  const double lambda = 2 * std::cos(pi / q);
  return {q, lambda, MoebiusMap{0, -1, 1, 0}, MoebiusMap{0, -1, 1, lambda}};
}

// Elliptic element fixing center, turning tangent vectors there by angle
// (counter-clockwise).  Conjugate of [cos a/2, sin a/2; -sin a/2, cos a/2]
// by z -> v z + u.
inline MoebiusMap rotation_about(Complex center, double angle) {
  if (!(center.imag() > 0) || !std::isfinite(center.real()) || !std::isfinite(center.imag()))
    throw DomainError(ErrorCode::BadCenter, "rotation center must lie in the open upper half-plane");
  const double ch = std::cos(angle / 2), sh = std::sin(angle / 2);
  const MoebiusMap r{ch, sh, -sh, ch};
  const MoebiusMap t{center.imag(), center.real(), 0, 1};
  return t * r * t.inverse();
}

// The edge of the standard fundamental wedge joining the even fixed point i
// to the odd fixed point rho = e^{i pi/q}; all edges of a developed tree are
// isometric copies of it.
struct FEdge {
  Complex from;  // i
  Complex to;    // rho
  double length;
};

inline FEdge f_edge(int q) {
  if (q < 3) throw DomainError(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(q));
  return {Complex(0, 1), Complex(std::cos(pi / q), std::sin(pi / q)),
          std::acosh(1.0 / std::sin(pi / q))};
}

enum class SideKind { Even, Odd, Free };

inline const char* to_string(SideKind k) {
  switch (k) {
    case SideKind::Even: return "even";
    case SideKind::Odd: return "odd";
    case SideKind::Free: return "free";
  }
  return "?";
}

// One boundary side: the geodesic segment from vertices[from] to
// vertices[to].  pairing carries this side onto side partner (endpoints
// reversed).  Even and free sides pass through an even point recorded as
// apex; odd sides end at their blue corner and have apex -1.
struct PolygonSide {
  int from = -1;
  int to = -1;
  SideKind kind = SideKind::Even;
  int partner = -1;
  int apex = -1;
  MoebiusMap pairing;
};

// Boundary corners first, in counter-clockwise order (one per side), then
// the apex points of even and free sides.
struct SpecialPolygon {
  int q = 0;
  std::vector<HPoint> vertices;
  std::vector<PolygonSide> sides;
};

namespace detail {

// Unique orientation-preserving isometry taking i to p and rho_q to qp;
// requires d(p, qp) = d(i, rho_q).  It carries the standard f-edge onto the
// segment [p, qp].
inline MoebiusMap frame(int q, Complex p, Complex qp) {
  const FEdge fe = f_edge(q);
  if (std::abs(hyperbolic_distance(p, qp) - fe.length) > 1e-6)
    throw DomainError(ErrorCode::NumericalFailure, "frame endpoints are not an f-edge apart");
  // Direction angle at p of the geodesic toward qp.
  double psi;
  const double dx = qp.real() - p.real();
  if (std::abs(dx) < 1e-13 * (1 + std::abs(p) + std::abs(qp))) {
    psi = qp.imag() > p.imag() ? pi / 2 : -pi / 2;
  } else {
    const double m = (std::norm(qp) - std::norm(p)) / (2 * dx);
    Complex t = Complex(0, 1) * (p - m);
    if ((dx > 0) != (t.real() > 0)) t = -t;
    psi = std::arg(t);
  }
  const double ch = std::cos(psi / 2), sh = std::sin(psi / 2);
  const MoebiusMap r{ch, sh, -sh, ch};
  const MoebiusMap t{p.imag(), p.real(), 0, 1};
  return t * r;
}

// Direction at interior point p along the geodesic toward ideal point e.
inline Complex direction_toward_ideal(Complex p, const HPoint& e) {
  if (e.infinite) return {0, 1};
  const double dx = e.x - p.real();
  if (std::abs(dx) < 1e-13 * (1 + std::abs(p) + std::abs(e.x))) return {0, -1};
  const double m = (e.x * e.x - std::norm(p)) / (2 * dx);
  Complex t = Complex(0, 1) * (p - m);
  if ((dx > 0) != (t.real() > 0)) t = -t;
  return t / std::abs(t);
}

struct DevNode {
  int kind = 0;        // 0 internal, 1 red, 2 blue, 3 midpoint
  int index = -1;      // index within its kind
  std::vector<int> nbrs;  // cyclic order at internals
  Complex img;
  bool placed = false;
};

}  // namespace detail

// Hyperbolic area from the angle deficit: (#corners - 2) pi minus the sum of
// interior corner angles.  Ideal corners contribute zero.
inline double polygon_area(const SpecialPolygon& poly) {
  const int m = static_cast<int>(poly.sides.size());
  double angle_sum = 0;
  for (int k = 0; k < m; ++k) {
    const PolygonSide& in = poly.sides[k];
    const PolygonSide& out = poly.sides[(k + 1) % m];
    const HPoint& corner = poly.vertices[in.to];
    if (corner.ideal()) continue;
    const Complex z = corner.z();
    const Complex da = detail::direction_toward_ideal(z, poly.vertices[in.from]);
    const Complex db = detail::direction_toward_ideal(z, poly.vertices[out.to]);
    const double dot = std::clamp(da.real() * db.real() + da.imag() * db.imag(), -1.0, 1.0);
    angle_sum += std::acos(dot);
  }
  return (m - 2) * pi - angle_sum;
}

// Structural and numeric invariants of a special polygon.  tol bounds the
// chordal mismatch of carried endpoints and the deviation of angles and
// traces.
inline std::vector<Violation> check_polygon(const SpecialPolygon& poly, double tol = 1e-9) {
  std::vector<Violation> errs;
  auto err = [&](ErrorCode c, std::string d) { errs.push_back({c, std::move(d)}); };
  const int m = static_cast<int>(poly.sides.size());
  const int nv = static_cast<int>(poly.vertices.size());
  if (poly.q < 3) err(ErrorCode::BadQ, "q must be at least 3, got " + std::to_string(poly.q));
  if (m < 3) err(ErrorCode::Empty, "polygon needs at least 3 sides, got " + std::to_string(m));
  if (!errs.empty()) return errs;

  for (int k = 0; k < m; ++k) {
    const PolygonSide& s = poly.sides[k];
    if (s.from < 0 || s.from >= nv || s.to < 0 || s.to >= nv) {
      err(ErrorCode::BadPairing, "side " + label(k) + " references a nonexistent vertex");
      return errs;
    }
    if (s.to != poly.sides[(k + 1) % m].from)
      err(ErrorCode::BadPairing, "side " + label(k) + " does not chain into the next side");
    if (s.partner < 0 || s.partner >= m) {
      err(ErrorCode::BadPairing, "side " + label(k) + " has no valid partner");
      continue;
    }
    const PolygonSide& p = poly.sides[s.partner];
    if (p.partner != k)
      err(ErrorCode::BadPairing, "side pairing is not an involution at side " + label(k));
    if (p.kind != s.kind)
      err(ErrorCode::BadPairing, "side " + label(k) + " is paired across kinds");
    if (s.kind == SideKind::Even && s.partner != k)
      err(ErrorCode::BadPairing, "even side " + label(k) + " must pair with itself");
    if (s.kind != SideKind::Even && s.partner == k)
      err(ErrorCode::BadPairing, "side " + label(k) + " of its kind cannot pair with itself");

    if (s.pairing.det() <= 0) {
      err(ErrorCode::BadPairing, "pairing of side " + label(k) + " is not orientation-preserving");
      continue;
    }
    const HPoint from_img = s.pairing(poly.vertices[s.from]);
    const HPoint to_img = s.pairing(poly.vertices[s.to]);
    if (chordal(from_img, poly.vertices[p.to]) > tol || chordal(to_img, poly.vertices[p.from]) > tol)
      err(ErrorCode::BadPairing, "pairing of side " + label(k) + " does not carry it onto side " + label(s.partner));

    if (s.kind == SideKind::Odd) {
      const double want = 2 * std::abs(std::cos(pi / poly.q));
      if (std::abs(s.pairing.trace_normalized() - want) > tol)
        err(ErrorCode::BadPairing, "odd pairing at side " + label(k) + " is not a rotation by 2pi/q");
      // The shared blue corner is fixed.
      const HPoint corner = poly.vertices[s.to].ideal() ? poly.vertices[s.from] : poly.vertices[s.to];
      if (!corner.ideal() && chordal(s.pairing(corner), corner) > tol)
        err(ErrorCode::BadPairing, "odd pairing at side " + label(k) + " does not fix its blue corner");
    }
    if (s.kind != SideKind::Odd) {
      if (s.apex < 0 || s.apex >= nv) {
        err(ErrorCode::BadPairing, "side " + label(k) + " is missing its apex");
      } else if (s.kind == SideKind::Even) {
        const HPoint apex = poly.vertices[s.apex];
        if (apex.ideal() || chordal(s.pairing(apex), apex) > tol)
          err(ErrorCode::BadPairing, "even pairing at side " + label(k) + " does not fix its apex");
        if (!s.pairing.projectively_equal(s.pairing.inverse(), 1e-7))
          err(ErrorCode::BadPairing, "even pairing at side " + label(k) + " is not an involution");
      }
    }
  }

  // Blue corner angles.
  for (int k = 0; k < m; ++k) {
    const PolygonSide& in = poly.sides[k];
    const HPoint& corner = poly.vertices[in.to];
    if (corner.ideal()) continue;
    const PolygonSide& out = poly.sides[(k + 1) % m];
    const Complex z = corner.z();
    const Complex da = detail::direction_toward_ideal(z, poly.vertices[in.from]);
    const Complex db = detail::direction_toward_ideal(z, poly.vertices[out.to]);
    const double dot = std::clamp(da.real() * db.real() + da.imag() * db.imag(), -1.0, 1.0);
    const double angle = std::acos(dot);
    if (std::abs(angle - 2 * pi / poly.q) > std::max(tol, 1e-9))
      err(ErrorCode::NumericalFailure,
          "interior corner before side " + label((k + 1) % m) + " has angle " + std::to_string(angle) +
              ", expected " + std::to_string(2 * pi / poly.q));
  }

  // Total area is a positive multiple of the fundamental area pi (q-2)/q.
  const double unit = pi * (poly.q - 2) / poly.q;
  const double area = polygon_area(poly);
  const double ratio = area / unit;
  if (area <= 0 || std::abs(ratio - std::round(ratio)) > 1e-6 || std::round(ratio) < 1)
    err(ErrorCode::NumericalFailure,
        "area " + std::to_string(area) + " is not a positive multiple of " + std::to_string(unit));

  return errs;
}

// Combinatorial data read off a special polygon: the subgroup index from the
// area, cone point counts from the side kinds, and the cusp count as the
// number of ideal vertex orbits under the side pairings (each pairing sends
// the endpoints of a side to those of its partner, reversed).
struct PolygonClassData {
  int index = 0;
  int e2 = 0;
  int eq = 0;
  int cusps = 0;
};

inline PolygonClassData polygon_class_data(const SpecialPolygon& poly) {
  PolygonClassData d;
  int odd_sides = 0;
  for (const auto& s : poly.sides) {
    if (s.kind == SideKind::Even) ++d.e2;
    if (s.kind == SideKind::Odd) ++odd_sides;
  }
  if (odd_sides % 2 != 0)
    throw DomainError(ErrorCode::BadPairing, "odd sides come in pairs, got " + std::to_string(odd_sides));
  d.eq = odd_sides / 2;

  const double unit = pi * (poly.q - 2) / poly.q;
  const double area = polygon_area(poly);
  const double ratio = area / unit;
  d.index = static_cast<int>(std::llround(ratio));
  if (d.index < 1 || std::abs(ratio - d.index) > 1e-6)
    throw DomainError(ErrorCode::NumericalFailure,
                      "area " + std::to_string(area) + " is not a positive multiple of " + std::to_string(unit));

  const int nv = static_cast<int>(poly.vertices.size());
  std::vector<int> parent(nv);
  for (int v = 0; v < nv; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (const auto& s : poly.sides) {
    if (s.partner < 0 || s.partner >= static_cast<int>(poly.sides.size()))
      throw DomainError(ErrorCode::BadPairing, "side partner out of range");
    const auto& p = poly.sides[s.partner];
    unite(s.from, p.to);
    unite(s.to, p.from);
  }
  std::vector<char> seen(nv, 0);
  for (int v = 0; v < nv; ++v)
    if (poly.vertices[v].ideal() && !seen[find(v)]) {
      seen[find(v)] = 1;
      ++d.cusps;
    }
  return d;
}

// Development of a realizable tree diagram into a special polygon.
//
// The tree is metrized by making every edge one or two f-edges: edges whose
// endpoints are both odd (internal or blue) receive an even midpoint.  The
// start terminal is placed at i (red) or rho (blue), its neighbor at the
// other end of the standard f-edge, and images propagate outward: the j-th
// successor (counter-clockwise) of the arrival edge at an internal vertex is
// the rotation of the arrival image by j 2pi/q, and midpoints continue
// straight through (rotation by pi).  Boundary sides are read off the facial
// walk of the plane tree:
//   red r:  the complete geodesic through img(r) orthogonal to its edge,
//           an even side if sigma fixes r, else one of a free pair;
//   blue b: two rays from the corner img(b) at angle 2pi/q, paired by the
//           rotation about img(b).
// start_terminal overrides the default start (least red edge, else least
// blue edge): values 0..#red-1 pick a red, #red..#red+#blue-1 a blue.
inline SpecialPolygon develop_tree(const TreeDiagram& t, int start_terminal = -1) {
  const QBoidGraph as_graph = tree_to_graph(t);  // realizability gate; also fixes the area below
  const FEdge fe = f_edge(t.q);
  const int ni = static_cast<int>(t.internal_vertices.size());
  const int nr = static_cast<int>(t.red.size());
  const int nbl = static_cast<int>(t.blue.size());

  // Edge endpoints as in treeops.
  std::vector<std::pair<int, int>> ends(t.n, {-1, -1});
  auto attach = [&](int e, int node) {
    (ends[e].first < 0 ? ends[e].first : ends[e].second) = node;
  };
  for (int i = 0; i < ni; ++i)
    for (int e : t.internal_vertices[i]) attach(e, i);
  for (int r = 0; r < nr; ++r) attach(t.red[r], ni + r);
  for (int b = 0; b < nbl; ++b) attach(t.blue[b], ni + nr + b);

  std::vector<detail::DevNode> nodes(ni + nr + nbl);
  for (int i = 0; i < ni; ++i) nodes[i] = {0, i, {}, {}, false};
  for (int r = 0; r < nr; ++r) nodes[ni + r] = {1, r, {}, {}, false};
  for (int b = 0; b < nbl; ++b) nodes[ni + nr + b] = {2, b, {}, {}, false};

  auto odd_node = [&](int node) { return nodes[node].kind == 0 || nodes[node].kind == 2; };

  // Midpoints subdivide odd-odd edges; link[e] maps a tree edge to the
  // midpoint node or -1.
  std::vector<int> mid_of(t.n, -1);
  for (int e = 0; e < t.n; ++e)
    if (odd_node(ends[e].first) && odd_node(ends[e].second)) {
      mid_of[e] = static_cast<int>(nodes.size());
      nodes.push_back({3, e, {}, {}, false});
    }

  auto across = [&](int e, int from_node) {
    return ends[e].first == from_node ? ends[e].second : ends[e].first;
  };
  // Neighbor lists; internals keep their rotation order.
  for (int i = 0; i < ni; ++i)
    for (int e : t.internal_vertices[i])
      nodes[i].nbrs.push_back(mid_of[e] >= 0 ? mid_of[e] : across(e, i));
  for (int r = 0; r < nr; ++r) {
    const int e = t.red[r];
    nodes[ni + r].nbrs.push_back(mid_of[e] >= 0 ? mid_of[e] : across(e, ni + r));
  }
  for (int b = 0; b < nbl; ++b) {
    const int e = t.blue[b];
    nodes[ni + nr + b].nbrs.push_back(mid_of[e] >= 0 ? mid_of[e] : across(e, ni + nr + b));
  }
  for (int e = 0; e < t.n; ++e)
    if (mid_of[e] >= 0) nodes[mid_of[e]].nbrs = {ends[e].first, ends[e].second};

  // Start terminal.
  int start_node;
  if (start_terminal >= 0) {
    if (start_terminal >= nr + nbl)
      throw DomainError(ErrorCode::BadBasepoint, "start terminal " + label(start_terminal) + " out of range");
    start_node = ni + start_terminal;
  } else if (nr > 0) {
    int best = 0;
    for (int r = 1; r < nr; ++r)
      if (t.red[r] < t.red[best]) best = r;
    start_node = ni + best;
  } else {
    int best = 0;
    for (int b = 1; b < nbl; ++b)
      if (t.blue[b] < t.blue[best]) best = b;
    start_node = ni + nr + best;
  }

  // Place images.
  {
    const int nbr = nodes[start_node].nbrs[0];
    const bool start_red = nodes[start_node].kind == 1;
    nodes[start_node].img = start_red ? fe.from : fe.to;
    nodes[nbr].img = start_red ? fe.to : fe.from;
    nodes[start_node].placed = nodes[nbr].placed = true;
    std::vector<std::pair<int, int>> stack = {{nbr, start_node}, {start_node, nbr}};
    while (!stack.empty()) {
      auto [v, from] = stack.back();
      stack.pop_back();
      const auto& nb = nodes[v].nbrs;
      const int deg = static_cast<int>(nb.size());
      if (deg <= 1) continue;
      const int at = static_cast<int>(std::find(nb.begin(), nb.end(), from) - nb.begin());
      const double step = nodes[v].kind == 0 ? 2 * pi / t.q : pi;
      for (int j = 1; j < deg; ++j) {
        const int u = nb[(at + j) % deg];
        if (nodes[u].placed) continue;
        nodes[u].img = rotation_about(nodes[v].img, j * step)(nodes[from].img);
        nodes[u].placed = true;
        stack.push_back({u, v});
      }
    }
  }

  // Facial walk: next(u -> v) = (v, successor of u in the rotation at v).
  // Terminals are recorded in counter-clockwise boundary order; the walk
  // starts on the start terminal's edge, so the start terminal is recorded
  // last and rotated to the front.
  std::vector<int> boundary;
  {
    const std::pair<int, int> first = {start_node, nodes[start_node].nbrs[0]};
    std::pair<int, int> cur = first;
    do {
      const auto& [u, v] = cur;
      if (nodes[v].kind == 1 || nodes[v].kind == 2) boundary.push_back(v);
      const auto& nb = nodes[v].nbrs;
      const int at = static_cast<int>(std::find(nb.begin(), nb.end(), u) - nb.begin());
      cur = {v, nb[(at + 1) % nb.size()]};
    } while (cur != first);
    std::rotate(boundary.begin(), boundary.end() - 1, boundary.end());
  }

  // Assemble sides.  Each terminal contributes its side endpoints in walk
  // order; shared ideal endpoints are matched within match_tol.
  const double match_tol = 1e-6;
  struct ProtoSide {
    HPoint from, to;
    std::optional<HPoint> corner_after;  // blue corner between the two rays
    SideKind kind;
    int terminal;  // node id
    MoebiusMap pairing;
  };
  std::vector<ProtoSide> protos;
  std::vector<MoebiusMap> red_frame(nr);
  std::vector<int> red_side(nr, -1);

  for (int node : boundary) {
    const int nbr = nodes[node].nbrs[0];
    if (nodes[node].kind == 1) {
      const int r = nodes[node].index;
      const MoebiusMap d = detail::frame(t.q, nodes[node].img, nodes[nbr].img);
      red_frame[r] = d;
      red_side[r] = static_cast<int>(protos.size());
      ProtoSide s;
      s.from = d(HPoint::inf());
      s.to = d(HPoint::at(0));
      s.kind = t.sigma[r] == r ? SideKind::Even : SideKind::Free;
      s.terminal = node;
      protos.push_back(std::move(s));
    } else {
      const MoebiusMap d = detail::frame(t.q, nodes[nbr].img, nodes[node].img);
      const Complex corner = nodes[node].img;
      ProtoSide in;
      in.from = d(HPoint::at(0));
      in.to = HPoint::of(corner);
      in.kind = SideKind::Odd;
      in.terminal = node;
      in.pairing = rotation_about(corner, -2 * pi / t.q);
      ProtoSide out;
      out.from = HPoint::of(corner);
      out.to = d(HPoint::inf());
      out.kind = SideKind::Odd;
      out.terminal = node;
      out.pairing = rotation_about(corner, 2 * pi / t.q);
      protos.push_back(std::move(in));
      protos.push_back(std::move(out));
    }
  }

  // Pairings for red sides.
  const MoebiusMap k_std{0, -1, 1, 0};
  for (int r = 0; r < nr; ++r) {
    ProtoSide& s = protos[red_side[r]];
    if (t.sigma[r] == r)
      s.pairing = rotation_about(nodes[ni + r].img, pi);
    else
      s.pairing = red_frame[t.sigma[r]] * k_std * red_frame[r].inverse();
  }

  // Chain endpoints into the vertex list.
  SpecialPolygon poly;
  poly.q = t.q;
  const int m = static_cast<int>(protos.size());
  std::vector<int> from_id(m, -1), to_id(m, -1);
  for (int k = 0; k < m; ++k) {
    const ProtoSide& s = protos[k];
    const ProtoSide& next = protos[(k + 1) % m];
    if (chordal(s.to, next.from) > match_tol)
      throw DomainError(ErrorCode::NumericalFailure,
                        "development boundary does not chain at side " + label(k));
    if (k == 0) {
      poly.vertices.push_back(s.from);
      from_id[0] = 0;
    }
    if (k + 1 < m) {
      poly.vertices.push_back(s.to);
      to_id[k] = static_cast<int>(poly.vertices.size()) - 1;
      from_id[k + 1] = to_id[k];
    } else {
      if (chordal(s.to, protos[0].from) > match_tol)
        throw DomainError(ErrorCode::NumericalFailure, "development boundary does not close up");
      to_id[k] = 0;
    }
  }

  // Sides with partners; apexes appended after the corners.
  poly.sides.resize(m);
  std::vector<int> proto_partner(m, -1);
  {
    // Odd rays pair within a blue terminal (consecutive by construction);
    // red sides pair through sigma.
    for (int k = 0; k < m; ++k) {
      if (protos[k].kind != SideKind::Odd) continue;
      if (proto_partner[k] >= 0) continue;
      const int kk = (k + 1) % m;
      proto_partner[k] = kk;
      proto_partner[kk] = k;
    }
    for (int r = 0; r < nr; ++r) {
      if (t.sigma[r] == r)
        proto_partner[red_side[r]] = red_side[r];
      else
        proto_partner[red_side[r]] = red_side[t.sigma[r]];
    }
  }
  for (int k = 0; k < m; ++k) {
    PolygonSide side;
    side.from = from_id[k];
    side.to = to_id[k];
    side.kind = protos[k].kind;
    side.partner = proto_partner[k];
    side.pairing = protos[k].pairing;
    if (protos[k].kind != SideKind::Odd) {
      poly.vertices.push_back(HPoint::of(nodes[protos[k].terminal].img));
      side.apex = static_cast<int>(poly.vertices.size()) - 1;
    }
    poly.sides[k] = side;
  }

  // The development must tile n' copies of the fundamental wedge pair.
  const double unit = pi * (t.q - 2) / t.q;
  const double area = polygon_area(poly);
  if (std::abs(area - as_graph.n * unit) > 1e-6)
    throw DomainError(ErrorCode::NumericalFailure,
                      "developed area " + std::to_string(area) + " does not match " +
                          std::to_string(as_graph.n) + " fundamental domains");
  return poly;
}

// Congruence of polygons under orientation-preserving isometry, allowing any
// cyclic relabeling of the sides.  Each candidate alignment is normalized by
// the Moebius map sending its first ideal corner to infinity and the next to
// zero, with the scale pinned by the following corner.
inline bool polygons_congruent(const SpecialPolygon& a, const SpecialPolygon& b, double tol = 1e-6) {
  const int m = static_cast<int>(a.sides.size());
  if (m != static_cast<int>(b.sides.size()) || a.q != b.q) return false;

  auto corner_seq = [](const SpecialPolygon& p, int offset) {
    std::vector<HPoint> out;
    const int mm = static_cast<int>(p.sides.size());
    for (int k = 0; k < mm; ++k) out.push_back(p.vertices[p.sides[(offset + k) % mm].from]);
    return out;
  };
  auto kinds = [](const SpecialPolygon& p, int offset) {
    std::vector<SideKind> out;
    const int mm = static_cast<int>(p.sides.size());
    for (int k = 0; k < mm; ++k) out.push_back(p.sides[(offset + k) % mm].kind);
    return out;
  };

  auto normalize = [&](std::vector<HPoint> pts) -> std::optional<std::vector<HPoint>> {
    // First two ideal corners -> (inf, 0); scale from the next corner.
    int i0 = -1, i1 = -1, i2 = -1;
    for (int k = 0; k < static_cast<int>(pts.size()); ++k)
      if (pts[k].ideal()) {
        if (i0 < 0)
          i0 = k;
        else if (i1 < 0)
          i1 = k;
        else if (i2 < 0)
          i2 = k;
      }
    if (i1 < 0) return std::nullopt;
    MoebiusMap g;
    if (pts[i0].infinite) {
      g = MoebiusMap{1, -pts[i1].x, 0, 1};
    } else if (pts[i1].infinite) {
      const double aa = pts[i0].x;
      g = MoebiusMap{0, -1, 1, -aa};  // aa -> inf, inf -> 0, det 1
    } else {
      const double aa = pts[i0].x, bb = pts[i1].x;
      const double sgn = bb > aa ? 1.0 : -1.0;
      g = MoebiusMap{sgn, -sgn * bb, 1, -aa};
    }
    std::vector<HPoint> img;
    img.reserve(pts.size());
    for (const auto& p : pts) img.push_back(g(p));
    // Scale so the reference corner sits at modulus 1.
    int ref = i2;
    if (ref < 0) {
      for (int k = 0; k < static_cast<int>(pts.size()); ++k)
        if (!pts[k].ideal()) {
          ref = k;
          break;
        }
    }
    if (ref < 0) return std::nullopt;
    const HPoint rp = img[ref];
    const double mod = rp.infinite ? 0 : std::hypot(rp.x, rp.y);
    if (!(mod > 0)) return std::nullopt;
    MoebiusMap scale{1 / mod, 0, 0, 1};
    for (auto& p : img) p = scale(p);
    return img;
  };

  const auto ka = kinds(a, 0);
  const auto na = normalize(corner_seq(a, 0));
  if (!na) return false;
  for (int offset = 0; offset < m; ++offset) {
    if (kinds(b, offset) != ka) continue;
    const auto nb = normalize(corner_seq(b, offset));
    if (!nb) continue;
    bool all = true;
    for (int k = 0; k < m && all; ++k)
      if (chordal((*na)[k], (*nb)[k]) > tol) all = false;
    if (all) return true;
  }
  return false;
}

}  // namespace qboid
