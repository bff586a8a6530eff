#pragma once

#include <utility>
#include <vector>

#include "lw/algebra.hpp"
#include "lw/grid.hpp"
#include "lw/weierstrass.hpp"

namespace lw {

/// Derivative stencil control. Everything is 2nd-order central at the grid
/// spacing; Richardson halving (h and 2h combined) upgrades to 4th order and
/// is the mode acceptance runs use.
struct AnalyzerOptions {
  bool richardson = false;
};

/// First and second fundamental forms at a node, in isothermal (x,y)
/// coordinates, plus the conformal data in null coordinates. `metric_uv`
/// keeps the sign of 2<phi_u,phi_v>; omega = ln|metric_uv|.
struct FundamentalForms {
  double E = 0.0, F = 0.0, G = 0.0;
  double l = 0.0, m = 0.0, n = 0.0;
  double omega = 0.0;
  double metric_uv = 0.0;
};

/// Hopf differential coefficients Q = <phi_uu, N>, R = <phi_vv, N>.
struct HopfPair {
  double Q = 0.0;
  double R = 0.0;
};

/// Tangents at a node: exact closures when the grid has them, otherwise
/// central (interior) or one-sided (boundary) differences of positions.
Vec3L tangent_u_at(const SurfaceGrid& s, int i, int j);
Vec3L tangent_v_at(const SurfaceGrid& s, int i, int j);

/// Second derivatives phi_uu, phi_uv, phi_vv at a node.
Vec3L second_uu(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt = {});
Vec3L second_vv(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt = {});
Vec3L second_uv(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt = {});

FundamentalForms fundamental_forms(const SurfaceGrid& s, int i, int j,
                                   const AnalyzerOptions& opt = {});

/// Oriented unit normal: lorentz_cross(phi_x, phi_y) divided by the signed
/// metric coefficient 2<phi_u, phi_v>, which keeps the Gauss map consistent
/// across orientation-reversed patches. inner3(N, N) = 1.
/// DegenerateMetric when |2<phi_u,phi_v>| <= 1e-12.
Vec3L unit_normal(const SurfaceGrid& s, int i, int j);

/// Mean curvature H = 2 e^{-omega} <phi_uv, N> (signed coefficient).
double mean_curvature(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt = {});

/// Classical route H = (G l + E n - 2 F m) / (2 (E G - F^2)); agrees with
/// mean_curvature to FD accuracy and is exposed for cross-checks.
double mean_curvature_classical(const SurfaceGrid& s, int i, int j,
                                const AnalyzerOptions& opt = {});

HopfPair hopf_differential(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt = {});

/// K = H^2 - 4 e^{-2 omega} Q R.
double gaussian_curvature(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt = {});

/// Residuals of the Gauss and Codazzi equations from finite differences of
/// the measured fields (omega, H, Q, R):
///   r1 = omega_uv + H^2 e^omega / 2 - 2 e^{-omega} Q R
///   r2 = H_u - 2 e^{-omega} Q_v
///   r3 = H_v - 2 e^{-omega} R_u
struct GaussCodazzi {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
  bool resolved = true;  // false when the stencil cannot resolve the fields
};
GaussCodazzi gauss_codazzi_residual(const SurfaceGrid& s, int i, int j,
                                    const AnalyzerOptions& opt = {});

/// Grid-wide Gauss-Codazzi statistic. Richardson is always on; a node counts
/// as resolved when its (h,2h) and (2h,4h) Richardson estimates agree to
/// 5e-5 and no stencil sample is degenerate.
struct GaussCodazziStats {
  double max_r1 = 0.0, max_r2 = 0.0, max_r3 = 0.0;
  int resolved = 0;
  int unresolved = 0;
};
GaussCodazziStats gauss_codazzi_stats(const SurfaceGrid& s);

/// Stereographic projection from the north pole in null coordinates:
///   N = (x1, x2, x3) on the pseudosphere maps to
///   ( (x1+x2)/(1-x3), (-x1+x2)/(1-x3) ).
/// NorthPole when |1 - x3| < 1e-10; NotOnSphere when |<N,N> - 1| > 1e-6.
std::pair<double, double> project_gauss_map(const Vec3L& n);

/// Inverse projection ((q-r)/(1+qr), (q+r)/(1+qr), (-1+qr)/(1+qr));
/// EquatorSingularity when |1+qr| < 1e-10.
Vec3L inverse_stereographic(double q, double r);

/// Residuals of the projected-Gauss-map equations, using the symbolic data
/// derivatives on the left and the measured Hopf coefficients on the right:
///   q_u - Q/f,  q_v - H (1+qr)^2 g / 2,  r_u - H (1+qr)^2 f / 2,  r_v - R/g.
struct GmapResiduals {
  double q_u = 0.0, q_v = 0.0, r_u = 0.0, r_v = 0.0;
};
GmapResiduals gmap_pde_residual(const WeierstrassData& d, double H, const SurfaceGrid& s, int i,
                                int j, const AnalyzerOptions& opt = {});

/// Interior non-degenerate nodes with max(|Q|, |R|) < threshold.
std::vector<std::pair<int, int>> umbilic_points(const SurfaceGrid& s, double threshold,
                                                const AnalyzerOptions& opt = {});

/// Scalar fields feeding the Lax system, built symbolically from data
/// (omega from the metric coefficient, Q = q' f, R = r' g, constant H).
struct LaxFields {
  std::function<double(double, double)> metric;  // signed e^omega
  std::function<double(double, double)> omega_u;
  std::function<double(double, double)> omega_v;
  std::function<double(double)> Q;  // of u
  std::function<double(double)> R;  // of v
  double H = 0.0;
};
LaxFields lax_fields_from_data(const WeierstrassData& d);

/// Coordinate frame at a point, solving Ad(Phi)(i, j', k') = (e^{-w/2}phi_x,
/// e^{-w/2}phi_y, N) by the eigenvector construction; det Phi = 1.
Mat2R frame_from_data(const WeierstrassData& d, double u, double v);

enum class LaxPath { URowsFirst, VColumnsFirst };

/// RK4 integration of Phi_u = Phi U, Phi_v = Phi V over the lattice, starting
/// from Phi0 at the lower-left corner. StepRejected when the local step
/// estimate exceeds 1e-6. Returns the frame at every node (row-major).
std::vector<Mat2R> integrate_lax_frame(const LaxFields& fields, const Mat2R& phi0,
                                       const Rect& rect, int nu, int nv,
                                       LaxPath path = LaxPath::URowsFirst);

/// Tangent reconstructed from a frame: e^{w/2} Phi [[0,1],[0,0]] Phi^{-1}.
Vec3L tangent_from_frame(const LaxFields& fields, const Mat2R& phi, double u, double v);

}  // namespace lw
