#include "lw/algebra.hpp"

#include <cmath>

namespace lw {

Mat2R sq_mul(const Mat2R& x, const Mat2R& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2R inverse(const Mat2R& m) {
  double det = m.det();
  if (std::fabs(det) < 1e-12) {
    throw SingularMatrix("matrix is singular, |det| < 1e-12");
  }
  return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}

Mat2R to_matrix(const Vec4& v) {
  return {v.x0 + v.x3, v.x1 + v.x2, -v.x1 + v.x2, v.x0 - v.x3};
}

Vec4 from_matrix(const Mat2R& m) {
  return {0.5 * (m.a + m.d), 0.5 * (m.b - m.c), 0.5 * (m.b + m.c), 0.5 * (m.a - m.d)};
}

double inner4(const Vec4& u, const Vec4& v) {
  return -u.x0 * v.x0 - u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}

double inner4_matrix(const Mat2R& u, const Mat2R& v) {
  Mat2R uv = sq_mul(u, v);
  return 0.5 * (uv.trace() - u.trace() * v.trace());
}

Vec3L ad_action(const Mat2R& g, const Vec3L& x) {
  double det = g.det();
  if (std::fabs(det) < 1e-12) {
    throw SingularMatrix("ad_action: matrix is singular");
  }
  Mat2R gn = g;
  double dev = std::fabs(det - 1.0);
  if (dev > 1e-12) {
    if (dev > 1e-6) {
      throw SingularMatrix("ad_action: matrix is not unimodular (|det-1| > 1e-6)");
    }
    gn = g * (1.0 / std::sqrt(det));
  }
  Mat2R m = sq_mul(sq_mul(gn, to_matrix(x)), inverse(gn));
  return imag_part(m);
}

}  // namespace lw
