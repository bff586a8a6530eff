#pragma once

#include <functional>
#include <string>
#include <utility>

#include "lw/func1.hpp"
#include "lw/grid.hpp"

namespace lw {

/// Generating quadruple (q(u), f(u), r(v), g(v)). q and f depend only on u,
/// r and g only on v; each function is symbolic or sampled.
struct WeierstrassData {
  Func1D q, f, r, g;

  static WeierstrassData from_exprs(const Expr& q, const Expr& f, const Expr& r, const Expr& g);
  static WeierstrassData from_strings(const std::string& q, const std::string& f,
                                      const std::string& r, const std::string& g);

  /// Signed metric coefficient (1 + q r)^2 f g = 2<phi_u, phi_v>.
  double metric_coeff(double u, double v) const;
};

/// Scalar field on the (u,v) plane with optionally exact partial derivatives;
/// finite differences fill in when the partials are absent.
struct Field2 {
  std::function<double(double, double)> value;
  std::function<double(double, double)> du;  // may be null
  std::function<double(double, double)> dv;  // may be null

  double d_u(double u, double v) const;
  double d_v(double u, double v) const;
};

/// Spinor quadruple (s1, t1, s2, t2) with Dirac potential p; the conformal
/// frame is [[s1, -t2], [t1, s2]] with det = s1 s2 + t1 t2 = e^{omega/2}.
struct SpinorField {
  Field2 s1, t1, s2, t2;
  Field2 p;
};

/// Pair of null-curve tangents xi(u), eta(v) with their parameter ranges.
struct NullCurvePair {
  std::function<Vec3L(double)> xi;
  std::function<Vec3L(double)> eta;
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;
};

/// Null tangents (phi_u, phi_v) of the surface generated by d:
///   phi_u = ( (1+q^2)/2, -(1-q^2)/2, -q ) f(u),
///   phi_v = ( -(1+r^2)/2, -(1-r^2)/2, -r ) g(v).
std::pair<Vec3L, Vec3L> tangents(const WeierstrassData& d, double u, double v);

/// Integrates the null curves into phi(u,v) = X(u) + Y(v), anchored so that
/// phi(u0, v0) = 0. Cumulative per-cell 4-point Gauss-Legendre quadrature.
/// Nodes with |(1+qr)^2 f g| < 1e-10 are flagged degenerate (not fatal);
/// negative values additionally get the negative-metric flag.
SurfaceGrid integrate_surface(const WeierstrassData& d, const Rect& rect, int nu, int nv);

/// Conjugate surface X(u) - Y(v), re-anchored to 0 at the corner. Requires
/// the X/Y decomposition (MissingDecomposition otherwise).
SurfaceGrid conjugate(const SurfaceGrid& s);

/// Recovers sampled (q, f, r, g) from null-curve tangents via
/// -xi0 + xi1 = -f, xi2 = -q f, eta0 + eta1 = -g, eta2 = -r g.
/// NotNull if a tangent fails the null check (1e-9); ZeroDenominator when
/// |f| or |g| < 1e-12 at a sample.
WeierstrassData extract_data(const NullCurvePair& n, int samples);

/// Surface from spinors:
///   phi1 = 1/2 Int (s1^2 + t1^2) du - (s2^2 + t2^2) dv,
///   phi2 = 1/2 Int (s1^2 - t1^2) du + (s2^2 - t2^2) dv,
///   phi3 = Int (-s1 t1 du - s2 t2 dv).
/// NonPositiveFrameDet when s1 s2 + t1 t2 <= 0 anywhere on the lattice.
SurfaceGrid surface_from_spinors(const SpinorField& sp, const Rect& rect, int nu, int nv);

/// (s1, t1, s2, t2) = (q sqrt(f), sqrt(f), r sqrt(g), sqrt(g)) with p = 0.
/// SignObstruction when f or g takes non-positive values on the domain.
SpinorField spinors_from_data(const WeierstrassData& d, const Rect& rect);

/// Max-norm residual of the Dirac system over an n x n lattice:
///   d_u(-t2) - p s1,  -d_v s1 + p t2,  d_u s2 - p t1,  -d_v t1 - p s2.
double dirac_residual(const SpinorField& sp, const Rect& rect, int n);

/// Totally umbilic CMC surface
///   phi = ( -(q-r)/(H(1+qr)) + c1, -(q+r)/(H(1+qr)) + c2, (1-qr)/(H(1+qr)) + c3 );
/// satisfies inner3(phi - c, phi - c) = 1/H^2. EquatorSingularity when
/// |1 + q r| < 1e-10 at a node.
SurfaceGrid pseudosphere_surface(double H, const Vec3L& center, const Expr& q, const Expr& r,
                                 const Rect& rect, int nu, int nv);

}  // namespace lw
