#pragma once

#include <cmath>

#include "lw/errors.hpp"

namespace lw {

/// Point/vector of the semi-Euclidean 4-space with signature (-,-,+,+).
struct Vec4 {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
};

/// Point/vector of Minkowski 3-space, signature (-,+,+); x1 is the timelike
/// coordinate. Identified with the imaginary split-quaternion x1*i + x2*j' + x3*k'.
struct Vec3L {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  Vec3L operator+(const Vec3L& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
  Vec3L operator-(const Vec3L& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
  Vec3L operator-() const { return {-x1, -x2, -x3}; }
  Vec3L operator*(double s) const { return {x1 * s, x2 * s, x3 * s}; }
  Vec3L operator/(double s) const { return {x1 / s, x2 / s, x3 / s}; }
};

inline Vec3L operator*(double s, const Vec3L& v) { return v * s; }

/// Real 2x2 matrix, row-major: [[a, b], [c, d]]. Houses split-quaternions and
/// SL(2,R) frames.
struct Mat2R {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  Mat2R operator+(const Mat2R& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2R operator-(const Mat2R& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2R operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
};

inline Mat2R operator*(double s, const Mat2R& m) { return m * s; }

// Split-quaternion basis: 1, i, j', k' with i^2 = -1, j'^2 = k'^2 = 1.
inline Mat2R mat_one() { return {1, 0, 0, 1}; }
inline Mat2R mat_i() { return {0, 1, -1, 0}; }
inline Mat2R mat_jp() { return {0, 1, 1, 0}; }
inline Mat2R mat_kp() { return {1, 0, 0, -1}; }

/// Matrix product; realizes the split-quaternion multiplication.
Mat2R sq_mul(const Mat2R& a, const Mat2R& b);

/// Inverse; throws SingularMatrix when |det| < 1e-12.
Mat2R inverse(const Mat2R& m);

/// Identification of E^4_2 with 2x2 real matrices:
/// (x0,x1,x2,x3) <-> [[x0+x3, x1+x2], [-x1+x2, x0-x3]].
Mat2R to_matrix(const Vec4& v);
Vec4 from_matrix(const Mat2R& m);

inline Mat2R to_matrix(const Vec3L& v) { return to_matrix(Vec4{0.0, v.x1, v.x2, v.x3}); }

/// Imaginary part of a split-quaternion as a Minkowski 3-vector (the x0
/// component is dropped).
inline Vec3L imag_part(const Mat2R& m) {
  Vec4 v = from_matrix(m);
  return {v.x1, v.x2, v.x3};
}

/// <u,v> = -u0 v0 - u1 v1 + u2 v2 + u3 v3.
double inner4(const Vec4& u, const Vec4& v);

/// Matrix-trace route for the same inner product:
/// <u,v> = (tr(uv) - tr(u) tr(v)) / 2.
double inner4_matrix(const Mat2R& u, const Mat2R& v);

/// <a,b> = -a1 b1 + a2 b2 + a3 b3.
inline double inner3(const Vec3L& a, const Vec3L& b) {
  return -a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

/// Lorentz cross product, c = diag(-1,1,1) * (a x b); inner3(c,a) = inner3(c,b) = 0.
inline Vec3L lorentz_cross(const Vec3L& a, const Vec3L& b) {
  return {-(a.x2 * b.x3 - a.x3 * b.x2), a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}

/// Ad(g)X = g X g^{-1} on Minkowski 3-space. g is renormalized to det 1 when
/// |det-1| <= 1e-6; SingularMatrix beyond that or when |det| < 1e-12.
Vec3L ad_action(const Mat2R& g, const Vec3L& x);

}  // namespace lw
