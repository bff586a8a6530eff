#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lw/gallery.hpp"
#include "lw/geometry.hpp"
#include "lw/grid.hpp"
#include "lw/weierstrass.hpp"

namespace lw {
namespace verify {

/// Worst |<phi_u,phi_u>| and |<phi_v,phi_v>| over non-degenerate nodes.
double max_null_tangent(const SurfaceGrid& s);

/// Worst relative deviation of 2<phi_u,phi_v> from (1+qr)^2 f g.
double max_metric_identity_rel(const SurfaceGrid& s, const WeierstrassData& d);

/// Worst node distance from the anchored closed form X(u) + Y(v).
double max_closed_form_err(const SurfaceGrid& s, const std::function<Vec3L(double)>& X,
                           const std::function<Vec3L(double)>& Y);

/// Worst |H| over non-degenerate interior nodes.
double max_abs_mean_curvature(const SurfaceGrid& s);

/// Worst component of the position-stencil phi_uv over interior nodes.
double max_abs_mixed_derivative(const SurfaceGrid& s);

/// Worst disagreement between the conformal and classical mean-curvature
/// formulas.
double max_mean_curvature_disagreement(const SurfaceGrid& s);

/// Worst curvature error against the oracle; relative where |K| > 1e-6,
/// absolute otherwise. Optional mask keeps nodes with |1 + q r| > mask.
double max_curvature_err(const SurfaceGrid& s, const std::function<double(double, double)>& K,
                         const WeierstrassData* mask_data = nullptr, double mask = 0.0);

/// Worst |Q - Q*| / |R - R*| against constant oracle values.
double max_hopf_err(const SurfaceGrid& s, double Q, double R);

/// Row-wise variance of Q (fixed u) and column-wise variance of R (fixed v).
std::pair<double, double> holomorphy_variances(const SurfaceGrid& s);

/// Worst deviation of the measured projected Gauss map from (q(u), r(v)).
double max_gauss_map_err(const SurfaceGrid& s, const WeierstrassData& d);

/// Measured projected Gauss map at a node.
std::pair<double, double> measured_gauss_map(const SurfaceGrid& s, int i, int j);

/// Number of interior non-degenerate nodes, and how many are umbilic at the
/// threshold.
std::pair<int, int> umbilic_count(const SurfaceGrid& s, double threshold);

/// Worst |inner3(phi-c, phi-c) H^2 - 1| over the grid.
double max_radius_err(const SurfaceGrid& s, const Vec3L& center, double H);

/// Worst |s H_measured - H| with one global sign s chosen from the grid;
/// reports s through *sign when non-null.
double max_cmc_err(const SurfaceGrid& s, double H, int* sign = nullptr);

/// Spinor-route comparison: rebuilds the surface from spinors_from_data and
/// returns the worst node distance from integrate_surface output.
double spinor_route_diff(const WeierstrassData& d, const Rect& rect, int nu, int nv);

/// Round trip through extract_data at the extraction knots.
double extraction_roundtrip_err(const WeierstrassData& d, const Rect& rect, int samples);

struct LaxReport {
  double det_drift = 0.0;
  double reconstruction = 0.0;
  double path_compat = 0.0;
};
LaxReport lax_check(const WeierstrassData& d, const Rect& rect, int nu, int nv);

/// One verification suite outcome. Non-applicable suites are informational
/// and do not affect the aggregate exit status.
struct SuiteResult {
  std::string name;
  bool applicable = true;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string note;
};

/// Full suite battery for a gallery entry at the default resolution.
std::vector<SuiteResult> run_entry_suites(const gallery::GalleryEntry& entry, int nu = 129,
                                          int nv = 129);

/// Suite battery for raw Weierstrass data (treated as a minimal surface).
std::vector<SuiteResult> run_data_suites(const WeierstrassData& d, const Rect& rect, int nu = 129,
                                         int nv = 129);

/// True when every applicable suite passed.
bool all_pass(const std::vector<SuiteResult>& results);

}  // namespace verify
}  // namespace lw
