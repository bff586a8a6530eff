#include <doctest.h>

#include <cmath>

#include "lw/gallery.hpp"
#include "lw/geometry.hpp"
#include "lw/verify.hpp"
#include "lw/weierstrass.hpp"
#include "testutil.hpp"

using namespace lw;

namespace {

SurfaceGrid plane_grid(int n = 33) {
  return integrate_surface(WeierstrassData::from_strings("0", "1", "0", "1"),
                           Rect{-1.0, 1.0, -1.0, 1.0}, n, n);
}

SurfaceGrid enneper_grid(int n = 65) {
  return integrate_surface(WeierstrassData::from_strings("u", "1", "v", "1"),
                           Rect{-0.8, 0.8, -0.8, 0.8}, n, n);
}

}  // namespace

TEST_CASE("fundamental forms of the plane") {
  SurfaceGrid p = plane_grid();
  FundamentalForms ff = fundamental_forms(p, 16, 16);
  CHECK(ff.E == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(ff.G == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ff.F == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ff.omega == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("conformal factor on the Lorentz Enneper surface") {
  // Metric coefficient (1+uv)^2; at (u,v) near (1,1) on a domain reaching it.
  SurfaceGrid g = integrate_surface(WeierstrassData::from_strings("u", "1", "v", "1"),
                                    Rect{0.0, 1.0, 0.0, 1.0}, 33, 33);
  FundamentalForms ff = fundamental_forms(g, 32, 32);
  CHECK(ff.metric_uv == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(ff.omega == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  // Conformality: E + G = 0 and F = 0.
  CHECK(std::fabs(ff.E + ff.G) <= 1e-12);
  CHECK(std::fabs(ff.F) <= 1e-12);
}

TEST_CASE("unit normal") {
  SurfaceGrid p = plane_grid();
  Vec3L n = unit_normal(p, 10, 20);
  CHECK(n.x1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(n.x2 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(n.x3 == doctest::Approx(-1.0).epsilon(1e-14));

  SurfaceGrid e = enneper_grid();
  for (int k = 0; k < 50; ++k) {
    int i = 1 + static_cast<int>(lwtest::uniform(0, e.nu - 2));
    int j = 1 + static_cast<int>(lwtest::uniform(0, e.nv - 2));
    Vec3L nn = unit_normal(e, i, j);
    CHECK(inner3(nn, nn) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(inner3(nn, tangent_u_at(e, i, j))) <= 1e-10);
    CHECK(std::fabs(inner3(nn, tangent_v_at(e, i, j))) <= 1e-10);
  }

  // Pseudosphere normal is radial up to one global sign.
  SurfaceGrid ps = gallery::get("pseudosphere").build(33, 33);
  Vec3L n0 = unit_normal(ps, 16, 16);
  double sign = n0.x3 > 0 ? 1.0 : -1.0;
  for (int k = 0; k < 30; ++k) {
    int i = 1 + static_cast<int>(lwtest::uniform(0, 30));
    int j = 1 + static_cast<int>(lwtest::uniform(0, 30));
    Vec3L nn = unit_normal(ps, i, j);
    Vec3L radial = ps.at(i, j);
    CHECK(std::fabs(nn.x1 - sign * radial.x1) <= 1e-9);
    CHECK(std::fabs(nn.x2 - sign * radial.x2) <= 1e-9);
    CHECK(std::fabs(nn.x3 - sign * radial.x3) <= 1e-9);
  }
}

TEST_CASE("mean curvature") {
  SurfaceGrid p = plane_grid();
  CHECK(std::fabs(mean_curvature(p, 16, 16)) <= 1e-12);

  for (const char* name : {"enneper_plus", "enneper_minus", "catenoid_timelike"}) {
    SurfaceGrid g = gallery::get(name).build(65, 65);
    CHECK(verify::max_abs_mean_curvature(g) <= 1e-6);
  }

  SurfaceGrid ps = gallery::get("pseudosphere").build(65, 65);
  int sign = 0;
  CHECK(verify::max_cmc_err(ps, 1.0, &sign) <= 1e-4);
  CHECK(sign == -1);  // corollary parametrization reverses the orientation

  // The two formulas agree.
  CHECK(verify::max_mean_curvature_disagreement(ps) <= 1e-5);
}

TEST_CASE("hopf differential and gaussian curvature") {
  SurfaceGrid e = enneper_grid();
  AnalyzerOptions rich;
  rich.richardson = true;
  HopfPair qr = hopf_differential(e, 32, 32, rich);
  CHECK(qr.Q == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(qr.R == doctest::Approx(1.0).epsilon(1e-9));

  SurfaceGrid p = plane_grid();
  HopfPair pqr = hopf_differential(p, 16, 16);
  CHECK(std::fabs(pqr.Q) <= 1e-12);
  CHECK(std::fabs(pqr.R) <= 1e-12);

  // K at the center node (u=v=0) equals -4 eps.
  SurfaceGrid gp = gallery::get("enneper_plus").build(65, 65);
  CHECK(gaussian_curvature(gp, 32, 32, rich) == doctest::Approx(-4.0).epsilon(1e-6));
  SurfaceGrid gm = gallery::get("enneper_minus").build(65, 65);
  CHECK(gaussian_curvature(gm, 32, 32, rich) == doctest::Approx(4.0).epsilon(1e-6));

  // K at (1,1) for the +1 Enneper surface: -4/(1+uv)^4 = -0.25.
  SurfaceGrid g11 = integrate_surface(WeierstrassData::from_strings("u", "1", "v", "1"),
                                      Rect{0.0, 1.0, 0.0, 1.0}, 65, 65);
  CHECK(gaussian_curvature(g11, 64, 64, rich) == doctest::Approx(-0.25).epsilon(1e-6));
}

TEST_CASE("gauss-codazzi residuals") {
  SurfaceGrid p = plane_grid();
  GaussCodazzi gc = gauss_codazzi_residual(p, 16, 16);
  CHECK(std::fabs(gc.r1) <= 1e-12);
  CHECK(std::fabs(gc.r2) <= 1e-12);
  CHECK(std::fabs(gc.r3) <= 1e-12);

  GaussCodazziStats stats = gauss_codazzi_stats(enneper_grid(129));
  CHECK(stats.max_r1 <= 1e-4);
  CHECK(stats.max_r2 <= 1e-4);
  CHECK(stats.max_r3 <= 1e-4);
  CHECK(stats.resolved > stats.unresolved);

  // Refinement widens the resolvable region around the catenoid diagonal.
  auto coverage = [](const GaussCodazziStats& st) {
    return static_cast<double>(st.resolved) / (st.resolved + st.unresolved);
  };
  SurfaceGrid cat65 = gallery::get("catenoid_spacelike").build(65, 65);
  SurfaceGrid cat129 = gallery::get("catenoid_spacelike").build(129, 129);
  double c65 = coverage(gauss_codazzi_stats(cat65));
  double c129 = coverage(gauss_codazzi_stats(cat129));
  CHECK(c129 > c65);
  CHECK(c129 >= 0.5);

  // A hand-perturbed grid (smooth bump, height 0.01) must register.
  SurfaceGrid bump = plane_grid(65);
  bump.tangent_u = nullptr;  // force position-based analysis
  bump.tangent_v = nullptr;
  for (int i = 0; i < bump.nu; ++i) {
    for (int j = 0; j < bump.nv; ++j) {
      double u = bump.u_at(i), v = bump.v_at(j);
      double r2 = u * u + v * v;
      bump.pos[bump.index(i, j)].x3 += 0.01 * std::exp(-8.0 * r2);
    }
  }
  GaussCodazziStats bs = gauss_codazzi_stats(bump);
  CHECK(std::max({bs.max_r1, bs.max_r2, bs.max_r3}) >= 1e-3);
}

TEST_CASE("stereographic projection") {
  auto [q0, r0] = project_gauss_map(Vec3L{0.0, 0.0, -1.0});
  CHECK(q0 == 0.0);
  CHECK(r0 == 0.0);

  Vec3L s = inverse_stereographic(0.0, 0.0);
  CHECK(s.x1 == 0.0);
  CHECK(s.x2 == 0.0);
  CHECK(s.x3 == -1.0);

  Vec3L one = inverse_stereographic(1.0, 1.0);
  CHECK(one.x1 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(one.x2 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.x3 == doctest::Approx(0.0).epsilon(1e-15));

  // Round trip for 100 random points of the pseudosphere. Points too close
  // to the equator set 1 + q r = 0 amplify rounding and are filtered.
  for (int k = 0; k < 100; ++k) {
    double q = lwtest::uniform(-2.0, 2.0), r = lwtest::uniform(-2.0, 2.0);
    if (std::fabs(1.0 + q * r) < 0.1) continue;
    Vec3L n = inverse_stereographic(q, r);
    CHECK(inner3(n, n) == doctest::Approx(1.0).epsilon(1e-12));
    auto [qb, rb] = project_gauss_map(n);
    CHECK(std::fabs(qb - q) <= 1e-12 * (1.0 + std::fabs(q)));
    CHECK(std::fabs(rb - r) <= 1e-12 * (1.0 + std::fabs(r)));
  }

  CHECK_THROWS_AS(project_gauss_map(Vec3L{1.0, 1.0, 1.0}), NorthPole);  // on sphere, x3 = 1
  CHECK_THROWS_AS(project_gauss_map(Vec3L{0.0, 0.0, 0.0}), NotOnSphere);
  CHECK_THROWS_AS(inverse_stereographic(1.0, -1.0), EquatorSingularity);
}

TEST_CASE("measured gauss map equals the data (q, r)") {
  const auto& entry = gallery::get("enneper_plus");
  SurfaceGrid g = entry.build(65, 65);
  CHECK(verify::max_gauss_map_err(g, entry.data) <= 1e-6);

  // Conjugate pairs share the projected Gauss map.
  const auto& cat = gallery::get("catenoid_spacelike");
  SurfaceGrid catenoid = cat.build(65, 65);
  SurfaceGrid helicoid = conjugate(catenoid);
  double worst = 0.0;
  for (int i = 0; i < 65; ++i) {
    for (int j = 0; j < 65; ++j) {
      if (catenoid.degenerate(i, j)) continue;
      auto [qc, rc] = verify::measured_gauss_map(catenoid, i, j);
      auto [qh, rh] = verify::measured_gauss_map(helicoid, i, j);
      worst = std::max({worst, std::fabs(qc - qh), std::fabs(rc - rh)});
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("gauss-map PDE residuals") {
  const auto& entry = gallery::get("enneper_plus");
  SurfaceGrid g = entry.build(65, 65);
  AnalyzerOptions rich;
  rich.richardson = true;
  GmapResiduals res = gmap_pde_residual(entry.data, 0.0, g, 32, 32, rich);
  CHECK(std::fabs(res.q_u) <= 1e-6);
  CHECK(res.q_v == 0.0);
  CHECK(res.r_u == 0.0);
  CHECK(std::fabs(res.r_v) <= 1e-6);

  const auto& cat = gallery::get("catenoid_spacelike");
  SurfaceGrid cg = cat.build(65, 65);
  GmapResiduals cres = gmap_pde_residual(cat.data, 0.0, cg, 20, 40, rich);
  CHECK(std::fabs(cres.q_u) <= 1e-4);
  CHECK(std::fabs(cres.r_v) <= 1e-4);

  SurfaceGrid p = plane_grid();
  GmapResiduals pres = gmap_pde_residual(WeierstrassData::from_strings("0", "1", "0", "1"), 0.0,
                                          p, 16, 16);
  CHECK(pres.q_u == 0.0);
  CHECK(pres.q_v == 0.0);
  CHECK(pres.r_u == 0.0);
  CHECK(pres.r_v == 0.0);
}

TEST_CASE("umbilic points") {
  SurfaceGrid ps = gallery::get("pseudosphere").build(33, 33);
  auto [interior, found] = verify::umbilic_count(ps, 1e-4);
  CHECK(interior == 31 * 31);
  CHECK(found == interior);

  SurfaceGrid e = enneper_grid(33);
  CHECK(umbilic_points(e, 0.5).empty());

  SurfaceGrid p = plane_grid();
  auto [pint, pfound] = verify::umbilic_count(p, 1e-4);
  CHECK(pint == pfound);
}

TEST_CASE("coordinate frame construction") {
  WeierstrassData plane = WeierstrassData::from_strings("0", "1", "0", "1");
  Mat2R phi = frame_from_data(plane, 0.0, 0.0);
  CHECK(phi.det() == doctest::Approx(1.0).epsilon(1e-12));
  // The frame maps k' to the plane normal (0,0,-1) under Ad.
  Vec3L n = ad_action(phi, Vec3L{0.0, 0.0, 1.0});
  CHECK(n.x3 == doctest::Approx(-1.0).epsilon(1e-12));

  WeierstrassData en = WeierstrassData::from_strings("u", "1", "v", "1");
  Mat2R phi2 = frame_from_data(en, 0.3, -0.2);
  CHECK(phi2.det() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lax frame integration") {
  // Plane: U = V = 0, frame stays put.
  WeierstrassData plane = WeierstrassData::from_strings("0", "1", "0", "1");
  LaxFields pf = lax_fields_from_data(plane);
  Mat2R phi0 = frame_from_data(plane, 0.0, 0.0);
  auto frames = integrate_lax_frame(pf, phi0, Rect{0.0, 1.0, 0.0, 1.0}, 9, 9);
  for (const auto& m : frames) {
    CHECK(std::fabs(m.a - phi0.a) <= 1e-14);
    CHECK(std::fabs(m.b - phi0.b) <= 1e-14);
    CHECK(std::fabs(m.c - phi0.c) <= 1e-14);
    CHECK(std::fabs(m.d - phi0.d) <= 1e-14);
  }

  // Enneper on [-0.5, 0.5]^2.
  WeierstrassData en = WeierstrassData::from_strings("u", "1", "v", "1");
  verify::LaxReport rep = verify::lax_check(en, Rect{-0.5, 0.5, -0.5, 0.5}, 65, 65);
  CHECK(rep.det_drift <= 1e-8);
  CHECK(rep.reconstruction <= 1e-6);
  CHECK(rep.path_compat <= 1e-6);

  CHECK_THROWS_AS(integrate_lax_frame(pf, Mat2R{2, 0, 0, 1}, Rect{0, 1, 0, 1}, 5, 5),
                  SingularMatrix);

  // Steep fields on a coarse lattice blow through the local error budget.
  WeierstrassData steep = WeierstrassData::from_strings("u", "exp(5*u)", "v", "1");
  LaxFields sf = lax_fields_from_data(steep);
  Mat2R s0 = frame_from_data(steep, 0.0, 0.0);
  CHECK_THROWS_AS(integrate_lax_frame(sf, s0, Rect{0.0, 3.0, 0.0, 3.0}, 4, 4), StepRejected);
}
