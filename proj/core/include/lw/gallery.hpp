#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lw/weierstrass.hpp"

namespace lw {
namespace gallery {

/// Named example with its generating data, closed-form null curves where
/// known, and oracle fields for verification.
struct GalleryEntry {
  std::string name;

  // Construction: either Weierstrass data (possibly conjugated) or a
  // pseudosphere (H, center, q, r).
  bool is_pseudosphere = false;
  bool build_as_conjugate = false;  // integrate the data, then conjugate
  WeierstrassData data;             // for pseudosphere: empty
  double cmc_H = 0.0;               // pseudosphere mean curvature
  Expr ps_q, ps_r;                  // pseudosphere projected-Gauss-map data
  Vec3L center{};

  Rect default_domain;

  // Closed-form X(u), Y(v) (not anchored); absent for the pseudosphere.
  std::function<Vec3L(double)> closed_X;
  std::function<Vec3L(double)> closed_Y;

  // Oracles where the source gives them.
  std::function<double(double, double)> oracle_K;  // Gaussian curvature
  std::optional<double> oracle_H;                  // constant mean curvature
  std::optional<std::pair<double, double>> oracle_QR;

  bool minimal = false;
  bool totally_umbilic = false;
  bool spinor_compatible = false;  // f > 0 and g > 0 on the default domain

  /// Builds the default grid (or one at a custom resolution).
  SurfaceGrid build(int nu = 129, int nv = 129) const;
  SurfaceGrid build(const Rect& rect, int nu, int nv) const;
};

/// Names, in registry order: plane, enneper_plus, enneper_minus,
/// catenoid_spacelike, helicoid_spacelike, catenoid_timelike,
/// helicoid_timelike, pseudosphere.
std::vector<std::string> list();

/// Entry by name; UnknownName otherwise.
const GalleryEntry& get(const std::string& name);

}  // namespace gallery
}  // namespace lw
