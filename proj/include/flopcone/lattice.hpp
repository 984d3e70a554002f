#pragma once

// Exact 3d lattice linear algebra: primitive vectors, unimodular 3x3
// matrices, adjugate inverses, inverse-transposes, and the 2d cone index
// used to detect A_{k-1} surface singularities in local fans.

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>
#include <stdexcept>

#include "flopcone/numeric.hpp"

namespace flopcone {

using Vec3 = Eigen::Matrix<Int, 3, 1>;
using Vec2 = Eigen::Matrix<Int, 2, 1>;
using Mat3 = Eigen::Matrix<Int, 3, 3>;
using Vec3q = Eigen::Matrix<Rat, 3, 1>;

inline Vec3 vec3(Int x, Int y, Int z) {
  Vec3 v;
  v << std::move(x), std::move(y), std::move(z);
  return v;
}

inline Vec2 vec2(Int x, Int y) {
  Vec2 v;
  v << std::move(x), std::move(y);
  return v;
}

inline Vec3q vec3q(Rat x, Rat y, Rat z) {
  Vec3q v;
  v << std::move(x), std::move(y), std::move(z);
  return v;
}

inline Vec3q to_rational(const Vec3& v) {
  return vec3q(Rat(v(0)), Rat(v(1)), Rat(v(2)));
}

// Clears denominators and divides by content: the primitive integral
// vector spanning the same ray (requires v != 0 and a consistent sign,
// which the positive common denominator preserves).
inline Vec3 ray_of(const Vec3q& v);

template <typename Derived>
Int det3(const Eigen::MatrixBase<Derived>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

template <typename Derived>
Mat3 adjugate(const Eigen::MatrixBase<Derived>& m) {
  Mat3 a;
  a(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  a(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  a(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  a(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  a(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  a(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  a(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  a(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  a(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return a;
}

inline bool is_unimodular(const Mat3& m) {
  Int d = det3(m);
  return d == 1 || d == -1;
}

// Exact inverse of a matrix with det = +-1.
inline Mat3 inverse_unimodular(const Mat3& m) {
  Int d = det3(m);
  if (d != 1 && d != -1)
    throw std::invalid_argument("matrix not invertible over the integers");
  Mat3 a = adjugate(m);
  if (d == -1) a = -a;
  return a;
}

inline Mat3 inverse_transpose(const Mat3& m) {
  return inverse_unimodular(m).transpose();
}

inline Int gcd_of(const Vec3& v) {
  return gcd(gcd(v(0), v(1)), v(2));
}

inline Vec3 primitive(const Vec3& v) {
  Int g = gcd_of(v);
  if (g == 0)
    throw std::invalid_argument("zero vector has no primitive representative");
  return vec3(v(0) / g, v(1) / g, v(2) / g);
}

inline Vec3 ray_of(const Vec3q& v) {
  Int d = den(v(0)) * den(v(1)) * den(v(2));
  Vec3 w = vec3(num(v(0)) * (d / den(v(0))), num(v(1)) * (d / den(v(1))),
                num(v(2)) * (d / den(v(2))));
  return primitive(w);
}

// |det [g1 g2]| of a 2d cone; the value k marks an A_{k-1} chart.
inline Int cone_index_2d(const Vec2& g1, const Vec2& g2) {
  Int d = g1(0) * g2(1) - g1(1) * g2(0);
  if (d == 0) throw std::invalid_argument("degenerate 2D cone");
  return d < 0 ? Int(-d) : d;
}

inline bool parallel(const Vec3& a, const Vec3& b) {
  return a(0) * b(1) == a(1) * b(0) && a(0) * b(2) == a(2) * b(0) &&
         a(1) * b(2) == a(2) * b(1);
}

// Index of the sublattice Z w1 + Z w2 inside the lattice of the plane it
// spans: gcd of the 2x2 minors. Equal to 1 exactly when {w1, w2} extends
// to a basis of Z^3.
inline Int wall_lattice_index(const Vec3& w1, const Vec3& w2) {
  Int m0 = w1(1) * w2(2) - w1(2) * w2(1);
  Int m1 = w1(2) * w2(0) - w1(0) * w2(2);
  Int m2 = w1(0) * w2(1) - w1(1) * w2(0);
  Int g = gcd(gcd(m0, m1), m2);
  if (g == 0) throw std::invalid_argument("degenerate 2D cone");
  return g;
}

// Lattice basis completion U with U*v = (0,0,1)^t for primitive v; the
// first two rows of U are the canonical coordinates on Z^3 / Z v. Unit
// coordinates are used as pivots directly so the standard rays get the
// evident quotient charts.
inline Mat3 complete_ray_to_basis(const Vec3& v) {
  if (gcd_of(v) != 1)
    throw std::invalid_argument("basis completion needs a primitive vector");
  Mat3 u;
  if (v(2) == 1 || v(2) == -1) {
    u << 1, 0, -v(0) * v(2), 0, 1, -v(1) * v(2), 0, 0, v(2);
    return u;
  }
  if (v(2) == 0 && (v(1) == 1 || v(1) == -1)) {
    u << 1, -v(0) * v(1), 0, 0, 0, 1, 0, v(1), 0;
    return u;
  }
  if (v(1) == 0 && v(2) == 0) {
    u << 0, 1, 0, 0, 0, 1, v(0), 0, 0;
    return u;
  }
  // general extended-gcd reduction
  Int s, t;
  Int g1 = gcdext(v(0), v(1), s, t);
  Mat3 r1;
  if (g1 == 0) {
    r1 = Mat3::Identity();
    g1 = 0;
  } else {
    r1 << s, t, 0, -v(1) / g1, v(0) / g1, 0, 0, 0, 1;
  }
  // r1 * v = (g1, 0, v2); combine (g1, v2) -> 1 = gcd
  Int s2, t2;
  Int g2 = gcdext(g1, v(2), s2, t2);
  if (g2 != 1) throw std::logic_error("primitive vector with gcd != 1");
  Mat3 r2;
  r2 << v(2), 0, -g1, 0, 1, 0, s2, 0, t2;
  return r2 * r1;
}

}  // namespace flopcone
