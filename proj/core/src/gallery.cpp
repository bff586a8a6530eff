#include "lw/gallery.hpp"

#include <cmath>
#include <memory>

namespace lw {
namespace gallery {

namespace {

const double kPi = 3.14159265358979323846;

GalleryEntry make_plane() {
  GalleryEntry e;
  e.name = "plane";
  e.data = WeierstrassData::from_strings("0", "1", "0", "1");
  e.default_domain = {-1.0, 1.0, -1.0, 1.0};
  e.closed_X = [](double u) { return Vec3L{0.5 * u, -0.5 * u, 0.0}; };
  e.closed_Y = [](double v) { return Vec3L{-0.5 * v, -0.5 * v, 0.0}; };
  e.oracle_K = [](double, double) { return 0.0; };
  e.oracle_H = 0.0;
  e.oracle_QR = std::make_pair(0.0, 0.0);
  e.minimal = true;
  e.totally_umbilic = true;
  e.spinor_compatible = true;
  return e;
}

GalleryEntry make_enneper(double eps) {
  GalleryEntry e;
  e.name = eps > 0 ? "enneper_plus" : "enneper_minus";
  e.data = WeierstrassData::from_strings(eps > 0 ? "u" : "-u", "1", "v", "1");
  e.default_domain = {-0.8, 0.8, -0.8, 0.8};
  e.closed_X = [eps](double u) {
    return Vec3L{0.5 * (u + u * u * u / 3.0), 0.5 * (-u + u * u * u / 3.0), -0.5 * eps * u * u};
  };
  e.closed_Y = [](double v) {
    return Vec3L{0.5 * (-v - v * v * v / 3.0), 0.5 * (-v + v * v * v / 3.0), -0.5 * v * v};
  };
  e.oracle_K = [eps](double u, double v) {
    double d = 1.0 + eps * u * v;
    return -4.0 * eps / (d * d * d * d);
  };
  e.oracle_H = 0.0;
  e.oracle_QR = std::make_pair(eps, 1.0);
  e.minimal = true;
  e.spinor_compatible = true;
  return e;
}

GalleryEntry make_catenoid_spacelike() {
  GalleryEntry e;
  e.name = "catenoid_spacelike";
  e.data = WeierstrassData::from_strings("-exp(u)", "-exp(-u)", "exp(-v)", "-exp(v)");
  e.default_domain = {-1.0, 1.0, -1.0, 1.0};
  e.closed_X = [](double u) { return Vec3L{-std::sinh(u), -std::cosh(u), -u}; };
  e.closed_Y = [](double v) { return Vec3L{std::sinh(v), std::cosh(v), v}; };
  e.oracle_H = 0.0;
  e.oracle_QR = std::make_pair(1.0, 1.0);
  e.minimal = true;
  return e;
}

GalleryEntry make_helicoid_spacelike() {
  GalleryEntry e = make_catenoid_spacelike();
  e.name = "helicoid_spacelike";
  e.build_as_conjugate = true;
  // Direct data for the conjugate: g flips sign, (q, f, r) are shared.
  e.data = WeierstrassData::from_strings("-exp(u)", "-exp(-u)", "exp(-v)", "exp(v)");
  auto y = e.closed_Y;
  e.closed_Y = [y](double v) { return -y(v); };
  e.oracle_QR = std::make_pair(1.0, -1.0);
  return e;
}

GalleryEntry make_catenoid_timelike() {
  GalleryEntry e;
  e.name = "catenoid_timelike";
  e.data = WeierstrassData::from_strings("sin(u)/(-1+cos(u))", "-1+cos(u)", "sin(v)/(1+cos(v))",
                                         "-(1+cos(v))");
  e.default_domain = {0.5 * kPi, 1.5 * kPi, -0.5 * kPi, 0.5 * kPi};
  e.closed_X = [](double u) { return Vec3L{-u, -std::sin(u), std::cos(u)}; };
  e.closed_Y = [](double v) { return Vec3L{v, std::sin(v), -std::cos(v)}; };
  e.oracle_H = 0.0;
  e.oracle_QR = std::make_pair(-1.0, -1.0);
  e.minimal = true;
  return e;
}

GalleryEntry make_helicoid_timelike() {
  GalleryEntry e = make_catenoid_timelike();
  e.name = "helicoid_timelike";
  e.build_as_conjugate = true;
  e.data = WeierstrassData::from_strings("sin(u)/(-1+cos(u))", "-1+cos(u)", "sin(v)/(1+cos(v))",
                                         "1+cos(v)");
  auto y = e.closed_Y;
  e.closed_Y = [y](double v) { return -y(v); };
  e.oracle_QR = std::make_pair(-1.0, 1.0);
  return e;
}

GalleryEntry make_pseudosphere() {
  GalleryEntry e;
  e.name = "pseudosphere";
  e.is_pseudosphere = true;
  e.cmc_H = 1.0;
  e.ps_q = Expr::parse("u");
  e.ps_r = Expr::parse("v");
  e.center = Vec3L{0.0, 0.0, 0.0};
  e.default_domain = {-0.6, 0.6, -0.6, 0.6};
  e.oracle_K = [](double, double) { return 1.0; };
  e.oracle_H = 1.0;
  e.oracle_QR = std::make_pair(0.0, 0.0);
  e.totally_umbilic = true;
  return e;
}

std::vector<GalleryEntry> build_registry() {
  std::vector<GalleryEntry> reg;
  reg.push_back(make_plane());
  reg.push_back(make_enneper(1.0));
  reg.push_back(make_enneper(-1.0));
  reg.push_back(make_catenoid_spacelike());
  reg.push_back(make_helicoid_spacelike());
  reg.push_back(make_catenoid_timelike());
  reg.push_back(make_helicoid_timelike());
  reg.push_back(make_pseudosphere());
  return reg;
}

const std::vector<GalleryEntry>& registry() {
  static const std::vector<GalleryEntry> reg = build_registry();
  return reg;
}

}  // namespace

SurfaceGrid GalleryEntry::build(int nu, int nv) const { return build(default_domain, nu, nv); }

SurfaceGrid GalleryEntry::build(const Rect& rect, int nu, int nv) const {
  if (is_pseudosphere) {
    return pseudosphere_surface(cmc_H, center, ps_q, ps_r, rect, nu, nv);
  }
  if (build_as_conjugate) {
    // Conjugating the base surface; equals integrating this entry's own data
    // directly, but keeps the X - Y provenance.
    WeierstrassData base = data;
    Func1D neg_g = Func1D::from_expr(Expr::negate(base.g.expr()));
    WeierstrassData partner{base.q, base.f, base.r, neg_g};
    return conjugate(integrate_surface(partner, rect, nu, nv));
  }
  return integrate_surface(data, rect, nu, nv);
}

std::vector<std::string> list() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.push_back(e.name);
  return names;
}

const GalleryEntry& get(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e;
  }
  throw UnknownName("no gallery entry named '" + name + "'");
}

}  // namespace gallery
}  // namespace lw
