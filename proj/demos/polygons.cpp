// Develops a few small tree diagrams into special polygons, prints their
// class data, and writes an SVG rendering of each.

#include <fstream>
#include <iostream>
#include <string>

#include "qboid/qboid.hpp"

namespace {

void emit(const std::string& name, const qboid::TreeDiagram& t) {
  const auto poly = qboid::develop_tree(t);
  const auto errs = qboid::check_polygon(poly);
  const auto data = qboid::polygon_class_data(poly);
  const auto inv = qboid::invariants_from_counts(poly.q, data.index, data.e2, data.eq, data.cusps);

  std::cout << name << ": q=" << poly.q << " sides=" << poly.sides.size() << " index=" << data.index
            << " e2=" << data.e2 << " eq=" << data.eq << " cusps=" << data.cusps << " genus=" << inv.genus
            << (errs.empty() ? "" : "  INVALID") << "\n";

  std::ofstream out(name + ".svg");
  out << qboid::svg_polygon(poly);
  std::cout << "  wrote " << name << ".svg\n";
}

}  // namespace

int main() {
  // One red and one blue end: the fundamental domain itself.
  emit("wedge_q3", {3, 1, {}, {0}, {0}, {0}});
  emit("wedge_q4", {4, 1, {}, {0}, {0}, {0}});

  // Both ends blue: index 2, the midpoint becomes an internal elliptic point.
  emit("two_blue_q3", {3, 1, {}, {}, {0, 0}, {}});

  // Star with a swapped red pair: index 4 with one free side pairing.
  emit("swapped_star_q3", {3, 3, {{0, 1, 2}}, {0, 1}, {2}, {1, 0}});

  // Two internal vertices, reds swapped across the middle edge: an ideal
  // quadrilateral with opposite sides identified.
  emit("crossed_pairs_q3", {3, 5, {{0, 1, 2}, {2, 3, 4}}, {0, 1, 3, 4}, {}, {2, 3, 0, 1}});

  return 0;
}
