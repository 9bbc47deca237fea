#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "qboid/error.hpp"

namespace qboid {

using Complex = std::complex<double>;

// Point of the closed upper half-plane boundary-or-interior, with a single
// point at infinity.  Ideal points are real or infinite.
struct HPoint {
  bool infinite = false;
  double x = 0;
  double y = 0;

  static HPoint inf() { return {true, 0, 0}; }
  static HPoint at(double x, double y = 0) { return {false, x, y}; }
  static HPoint of(Complex z) { return {false, z.real(), z.imag()}; }

  Complex z() const { return {x, y}; }
  bool ideal() const { return infinite || y == 0; }
};

// Distance in the chordal metric on the boundary circle R u {inf}; the right
// notion of closeness when a point may sit at infinity.
inline double chordal(const HPoint& a, const HPoint& b) {
  auto lift = [](const HPoint& p) {
    // Stereographic lift of x + iy to the Riemann sphere.
    if (p.infinite) return std::array<double, 3>{0, 0, 1};
    const double n = p.x * p.x + p.y * p.y;
    return std::array<double, 3>{2 * p.x / (n + 1), 2 * p.y / (n + 1), (n - 1) / (n + 1)};
  };
  const auto u = lift(a), v = lift(b);
  return std::sqrt((u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]) +
                   (u[2] - v[2]) * (u[2] - v[2]));
}

// z -> (az + b) / (cz + d) with real entries and positive determinant, up to
// a positive scalar.
struct MoebiusMap {
  double a = 1, b = 0, c = 0, d = 1;

  static MoebiusMap identity() { return {}; }

  double det() const { return a * d - b * c; }

  MoebiusMap inverse() const { return {d, -b, -c, a}; }

  // Entries divided by sqrt(det); the representative with det 1, still up to
  // global sign.
  MoebiusMap normalized() const {
    const double s = std::sqrt(det());
    return {a / s, b / s, c / s, d / s};
  }

  double trace_normalized() const { return std::abs(a + d) / std::sqrt(det()); }

  Complex operator()(Complex z) const { return (a * z + b) / (c * z + d); }

  HPoint operator()(const HPoint& p) const {
    if (p.infinite) {
      if (std::abs(c) == 0) return HPoint::inf();
      return HPoint::at(a / c);
    }
    if (p.y == 0) {
      const double den = c * p.x + d;
      if (den == 0) return HPoint::inf();
      return HPoint::at((a * p.x + b) / den);
    }
    return HPoint::of((*this)(p.z()));
  }

  friend MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }

  // Equality in PSL(2, R): normalized entries agree up to one global sign,
  // each within tol.
  bool projectively_equal(const MoebiusMap& other, double tol = 1e-9) const {
    const MoebiusMap p = normalized(), o = other.normalized();
    auto close = [&](double sign) {
      return std::abs(p.a - sign * o.a) <= tol && std::abs(p.b - sign * o.b) <= tol &&
             std::abs(p.c - sign * o.c) <= tol && std::abs(p.d - sign * o.d) <= tol;
    };
    return close(1) || close(-1);
  }

  std::string str() const {
    return "[" + std::to_string(a) + ", " + std::to_string(b) + "; " + std::to_string(c) + ", " +
           std::to_string(d) + "]";
  }
};

inline double hyperbolic_distance(Complex z, Complex w) {
  const double t = 1 + std::norm(z - w) / (2 * z.imag() * w.imag());
  return std::acosh(t);
}

}  // namespace qboid
