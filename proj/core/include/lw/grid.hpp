#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lw/algebra.hpp"

namespace lw {

/// Rectangle in the null-coordinate plane.
struct Rect {
  double u0 = 0.0;
  double u1 = 1.0;
  double v0 = 0.0;
  double v1 = 1.0;
};

/// Per-node flags. Degenerate nodes are excluded from residual statistics;
/// the negative-metric flag marks orientation-reversed data (the immersion is
/// still timelike there) and is informational.
enum NodeFlag : std::uint8_t {
  kFlagNone = 0,
  kFlagDegenerate = 1,
  kFlagNegativeMetric = 2,
};

using TangentField = std::function<Vec3L(double, double)>;

/// Uniform (u,v) lattice of surface positions with optional exact tangent
/// closures and the X(u)+Y(v) decomposition when the surface was built by
/// integrating null curves.
struct SurfaceGrid {
  Rect rect;
  int nu = 0;
  int nv = 0;
  std::vector<Vec3L> pos;  // row-major, index = i*nv + j (i along u)
  std::vector<std::uint8_t> flags;

  // X(u_i), Y(v_j) with X(u_0) = Y(v_0) = 0; empty when unavailable.
  std::vector<Vec3L> xcurve;
  std::vector<Vec3L> ycurve;

  // Exact tangents phi_u, phi_v as functions of (u,v); null when the grid
  // came from raw samples.
  TangentField tangent_u;
  TangentField tangent_v;

  double du() const { return nu > 1 ? (rect.u1 - rect.u0) / (nu - 1) : 0.0; }
  double dv() const { return nv > 1 ? (rect.v1 - rect.v0) / (nv - 1) : 0.0; }
  double u_at(int i) const { return rect.u0 + i * du(); }
  double v_at(int j) const { return rect.v0 + j * dv(); }
  int index(int i, int j) const { return i * nv + j; }
  const Vec3L& at(int i, int j) const { return pos[index(i, j)]; }
  std::uint8_t flag(int i, int j) const { return flags[index(i, j)]; }
  bool degenerate(int i, int j) const { return (flag(i, j) & kFlagDegenerate) != 0; }
  bool has_decomposition() const { return !xcurve.empty() && !ycurve.empty(); }
  bool has_closures() const { return static_cast<bool>(tangent_u) && static_cast<bool>(tangent_v); }
  bool interior(int i, int j, int ring = 1) const {
    return i >= ring && j >= ring && i < nu - ring && j < nv - ring;
  }
};

}  // namespace lw
