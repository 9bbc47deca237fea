#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "qboid/error.hpp"
#include "qboid/geometry.hpp"
#include "qboid/model.hpp"

namespace qboid {

namespace detail_export {

// Fixed-precision decimal with no locale surprises; "-0" collapses to "0".
inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

inline int rotation_position(const std::vector<int>& rotation, int edge) {
  for (int i = 0; i < static_cast<int>(rotation.size()); ++i)
    if (rotation[i] == edge) return i + 1;
  return 0;
}

}  // namespace detail_export

// Graphviz DOT.  Black vertices are filled, white vertices hollow; each edge
// carries its label and its position in the white endpoint's rotation.
inline std::string dot_graph(const QBoidGraph& g) {
  std::ostringstream out;
  out << "graph qboid {\n";
  out << "  node [shape=circle, fixedsize=true, width=0.35];\n";
  for (int b = 0; b < static_cast<int>(g.black.size()); ++b)
    out << "  b" << b + 1 << " [label=\"b" << b + 1 << "\", style=filled, fillcolor=black, fontcolor=white];\n";
  for (int w = 0; w < static_cast<int>(g.white.size()); ++w)
    out << "  w" << w + 1 << " [label=\"w" << w + 1 << "\"];\n";
  for (int e = 0; e < g.n; ++e) {
    const int b = g.black_of(e), w = g.white_of(e);
    out << "  b" << b + 1 << " -- w" << w + 1 << " [label=\"" << e + 1 << "\", rot=\""
        << detail_export::rotation_position(g.white[w], e) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

// Internal vertices are hollow, red terminals filled red, blue terminals
// hollow blue; sigma orbits appear as dashed red edges.
inline std::string dot_tree(const TreeDiagram& t) {
  std::ostringstream out;
  out << "graph tree {\n";
  out << "  node [shape=circle, fixedsize=true, width=0.35];\n";
  for (int v = 0; v < static_cast<int>(t.internal_vertices.size()); ++v)
    out << "  v" << v + 1 << " [label=\"v" << v + 1 << "\"];\n";
  for (int e : t.red)
    out << "  r" << e + 1 << " [label=\"r" << e + 1 << "\", style=filled, fillcolor=red, fontcolor=white];\n";
  for (int e : t.blue)
    out << "  b" << e + 1 << " [label=\"b" << e + 1 << "\", color=blue, fontcolor=blue];\n";
  for (int e = 0; e < t.n; ++e) {
    // Both endpoint slots of edge e, internals first.
    std::vector<std::string> ends;
    std::vector<int> rot_positions;
    for (int v = 0; v < static_cast<int>(t.internal_vertices.size()); ++v) {
      for (int f : t.internal_vertices[v])
        if (f == e) {
          ends.push_back("v" + std::to_string(v + 1));
          rot_positions.push_back(detail_export::rotation_position(t.internal_vertices[v], e));
        }
    }
    for (int f : t.red)
      if (f == e) ends.push_back("r" + std::to_string(e + 1));
    for (int f : t.blue)
      if (f == e) ends.push_back("b" + std::to_string(e + 1));
    if (ends.size() != 2) continue;  // validate_tree guarantees two slots
    out << "  " << ends[0] << " -- " << ends[1] << " [label=\"" << e + 1 << "\"";
    if (!rot_positions.empty()) {
      out << ", rot=\"";
      for (std::size_t i = 0; i < rot_positions.size(); ++i)
        out << (i ? "," : "") << rot_positions[i];
      out << "\"";
    }
    out << "];\n";
  }
  for (int r = 0; r < static_cast<int>(t.sigma.size()); ++r)
    if (t.sigma[r] > r)
      out << "  r" << t.red[r] + 1 << " -- r" << t.red[t.sigma[r]] + 1
          << " [style=dashed, color=red, constraint=false];\n";
  out << "}\n";
  return out.str();
}

namespace detail_export {

struct SvgMap {
  double wx0, wy1, s, margin, height, width;

  double X(double x) const { return margin + (x - wx0) * s; }
  double Y(double y) const { return margin + (wy1 - y) * s; }
};

// Center (on the real axis) and radius of the geodesic through two finite
// points with distinct real parts.
inline std::pair<double, double> geodesic_circle(const HPoint& a, const HPoint& b) {
  const double na = a.x * a.x + a.y * a.y, nb = b.x * b.x + b.y * b.y;
  const double cx = (na - nb) / (2.0 * (a.x - b.x));
  const double r = std::hypot(a.x - cx, a.y);
  return {cx, r};
}

inline bool is_vertical(const HPoint& a, const HPoint& b) {
  const double scale = std::max({1.0, std::fabs(a.x), std::fabs(b.x)});
  return std::fabs(a.x - b.x) <= 1e-9 * scale;
}

}  // namespace detail_export

// Upper half-plane drawing: geodesic sides as circular arcs or vertical
// segments, rays to infinity with arrowheads, vertices dotted, sides tinted
// by kind and labelled by pairing orbit (a, a', b, ...).
inline std::string svg_polygon(const SpecialPolygon& poly) {
  using detail_export::num;
  const int ns = static_cast<int>(poly.sides.size());

  // World extent.
  double x0 = 1e300, x1 = -1e300, ytop = 0.0;
  bool any_finite = false;
  for (const auto& v : poly.vertices) {
    if (v.infinite) continue;
    any_finite = true;
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    ytop = std::max(ytop, v.y);
  }
  if (!any_finite) throw DomainError{ErrorCode::NumericalFailure, "polygon has no finite vertices to draw"};
  for (const auto& s : poly.sides) {
    const HPoint& a = poly.vertices[s.from];
    const HPoint& b = poly.vertices[s.to];
    if (a.infinite && b.infinite)
      throw DomainError{ErrorCode::NumericalFailure, "side with both endpoints at infinity"};
    if (a.infinite || b.infinite) continue;
    if (detail_export::is_vertical(a, b)) continue;
    const auto [cx, r] = detail_export::geodesic_circle(a, b);
    // The arc's top lies between the endpoints iff cx does.
    if ((a.x - cx) * (b.x - cx) < 0) ytop = std::max(ytop, r);
  }
  if (x1 <= x0) x1 = x0 + 1.0;
  const double xc = (x0 + x1) / 2.0, half = (x1 - x0) / 2.0;
  const double wx0 = xc - 1.2 * half, wx1 = xc + 1.2 * half;
  const double wy1 = std::max(0.1, 1.2 * ytop);

  detail_export::SvgMap m;
  m.wx0 = wx0;
  m.wy1 = wy1;
  m.margin = 28.0;
  m.width = 760.0;
  m.s = (m.width - 2 * m.margin) / (wx1 - wx0);
  m.height = m.margin * 2 + wy1 * m.s;

  // Pairing orbit letters in side order; the partner gets a prime.
  std::vector<std::string> letter(ns);
  int next = 0;
  for (int i = 0; i < ns; ++i) {
    if (!letter[i].empty()) continue;
    const std::string base(1, static_cast<char>('a' + next % 26));
    const std::string rep = next >= 26 ? base + std::to_string(next / 26) : base;
    ++next;
    letter[i] = rep;
    const int p = poly.sides[i].partner;
    if (p != i && p >= 0 && p < ns && letter[p].empty()) letter[p] = rep + "'";
  }

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(m.width) << "\" height=\""
      << num(m.height) << "\" viewBox=\"0 0 " << num(m.width) << " " << num(m.height) << "\">\n";
  out << "  <defs>\n"
      << "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"6\""
      << " markerHeight=\"6\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\"/></marker>\n"
      << "  </defs>\n";
  out << "  <style>\n"
      << "    .axis { stroke: #999; stroke-width: 1; }\n"
      << "    .side { fill: none; stroke-width: 2; }\n"
      << "    .even { stroke: #2a9d8f; }\n"
      << "    .odd { stroke: #e76f51; }\n"
      << "    .free { stroke: #457b9d; }\n"
      << "    .corner { fill: #222; }\n"
      << "    .apex { fill: #fff; stroke: #222; stroke-width: 1; }\n"
      << "    text { font: 13px sans-serif; fill: #333; text-anchor: middle; }\n"
      << "  </style>\n";
  out << "  <line class=\"axis\" x1=\"0\" y1=\"" << num(m.Y(0)) << "\" x2=\"" << num(m.width)
      << "\" y2=\"" << num(m.Y(0)) << "\"/>\n";

  for (int i = 0; i < ns; ++i) {
    const auto& s = poly.sides[i];
    const HPoint& a = poly.vertices[s.from];
    const HPoint& b = poly.vertices[s.to];
    const std::string cls = std::string("side ") + to_string(s.kind);
    double lx = 0, ly = 0;  // label anchor in world coords
    if (a.infinite || b.infinite) {
      const HPoint& fin = a.infinite ? b : a;
      const double X = m.X(fin.x);
      // Ray to the top edge; the arrow marks the ideal endpoint.
      out << "  <line class=\"" << cls << "\" x1=\"" << num(X) << "\" y1=\"" << num(m.Y(fin.y))
          << "\" x2=\"" << num(X) << "\" y2=\"" << num(m.margin * 0.55) << "\" marker-end=\"url(#arrow)\"/>\n";
      lx = fin.x;
      ly = (fin.y + wy1) / 2.0;
    } else if (detail_export::is_vertical(a, b)) {
      out << "  <line class=\"" << cls << "\" x1=\"" << num(m.X(a.x)) << "\" y1=\"" << num(m.Y(a.y))
          << "\" x2=\"" << num(m.X(b.x)) << "\" y2=\"" << num(m.Y(b.y)) << "\"/>\n";
      lx = (a.x + b.x) / 2.0;
      ly = (a.y + b.y) / 2.0;
    } else {
      const auto [cx, r] = detail_export::geodesic_circle(a, b);
      const double R = r * m.s;
      const int sweep = a.x < b.x ? 1 : 0;
      out << "  <path class=\"" << cls << "\" d=\"M " << num(m.X(a.x)) << " " << num(m.Y(a.y))
          << " A " << num(R) << " " << num(R) << " 0 0 " << sweep << " " << num(m.X(b.x)) << " "
          << num(m.Y(b.y)) << "\"/>\n";
      const double ta = std::atan2(a.y, a.x - cx), tb = std::atan2(b.y, b.x - cx);
      const double tm = (ta + tb) / 2.0;
      lx = cx + r * std::cos(tm);
      ly = r * std::sin(tm);
    }
    out << "  <text x=\"" << num(m.X(lx)) << "\" y=\"" << num(m.Y(ly) - 6) << "\">" << letter[i]
        << "</text>\n";
  }

  std::vector<bool> is_apex(poly.vertices.size(), false);
  for (const auto& s : poly.sides)
    if (s.apex >= 0 && s.apex < static_cast<int>(poly.vertices.size())) is_apex[s.apex] = true;
  for (std::size_t v = 0; v < poly.vertices.size(); ++v) {
    const auto& p = poly.vertices[v];
    if (p.infinite) continue;
    out << "  <circle class=\"" << (is_apex[v] ? "apex" : "corner") << "\" cx=\"" << num(m.X(p.x))
        << "\" cy=\"" << num(m.Y(p.y)) << "\" r=\"" << (is_apex[v] ? "3" : "3.5") << "\"/>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace qboid
