#include <doctest.h>

#include <cmath>

#include "lw/gallery.hpp"
#include "lw/verify.hpp"
#include "testutil.hpp"

using namespace lw;

TEST_CASE("gallery listing") {
  auto names = gallery::list();
  CHECK(names.size() == 8);
  CHECK(names[0] == "plane");
  CHECK(std::find(names.begin(), names.end(), "enneper_plus") != names.end());
  CHECK(std::find(names.begin(), names.end(), "catenoid_timelike") != names.end());
  CHECK(std::find(names.begin(), names.end(), "pseudosphere") != names.end());
  CHECK_THROWS_AS(gallery::get("moebius"), UnknownName);
}

TEST_CASE("entry data evaluates to the stated closed forms") {
  const auto& cat = gallery::get("catenoid_spacelike");
  Vec3L x1 = cat.closed_X(1.0);
  CHECK(x1.x1 == doctest::Approx(-std::sinh(1.0)).epsilon(1e-15));
  CHECK(x1.x2 == doctest::Approx(-std::cosh(1.0)).epsilon(1e-15));
  CHECK(x1.x3 == -1.0);

  CHECK(gallery::get("enneper_minus").data.q(0.7) == doctest::Approx(-0.7).epsilon(1e-15));

  Vec3L yt = gallery::get("catenoid_timelike").closed_Y(0.5 * 3.14159265358979323846);
  CHECK(yt.x1 == doctest::Approx(0.5 * 3.14159265358979323846).epsilon(1e-15));
  CHECK(yt.x2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(yt.x3 == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("data tangents differentiate the closed forms") {
  for (const auto& name : gallery::list()) {
    const auto& e = gallery::get(name);
    if (!e.closed_X || e.is_pseudosphere) continue;
    double u0 = e.default_domain.u0, u1 = e.default_domain.u1;
    double v0 = e.default_domain.v0, v1 = e.default_domain.v1;
    double worst = 0.0;
    for (int k = 0; k < 40; ++k) {
      double u = lwtest::uniform(u0, u1);
      double v = lwtest::uniform(v0, v1);
      auto [xi, eta] = tangents(e.data, u, v);
      auto dx = [&](auto comp) {
        return lwtest::fd_derivative([&](double t) { return e.closed_X(t).*comp; }, u, 1e-4);
      };
      auto dy = [&](auto comp) {
        return lwtest::fd_derivative([&](double t) { return e.closed_Y(t).*comp; }, v, 1e-4);
      };
      worst = std::max({worst, std::fabs(xi.x1 - dx(&Vec3L::x1)), std::fabs(xi.x2 - dx(&Vec3L::x2)),
                        std::fabs(xi.x3 - dx(&Vec3L::x3)), std::fabs(eta.x1 - dy(&Vec3L::x1)),
                        std::fabs(eta.x2 - dy(&Vec3L::x2)), std::fabs(eta.x3 - dy(&Vec3L::x3))});
    }
    CHECK_MESSAGE(worst <= 1e-10, name);
  }
}

TEST_CASE("conjugate-built entries equal direct integration of their data") {
  for (const char* name : {"helicoid_spacelike", "helicoid_timelike"}) {
    const auto& e = gallery::get(name);
    SurfaceGrid via_conjugate = e.build(33, 33);
    SurfaceGrid direct = integrate_surface(e.data, e.default_domain, 33, 33);
    double worst = 0.0;
    for (std::size_t k = 0; k < direct.pos.size(); ++k) {
      Vec3L diff = via_conjugate.pos[k] - direct.pos[k];
      worst = std::max({worst, std::fabs(diff.x1), std::fabs(diff.x2), std::fabs(diff.x3)});
    }
    CHECK_MESSAGE(worst <= 1e-10, name);
  }
}

TEST_CASE("principal-curvature discriminant signs of the two enneper surfaces") {
  // sign(H^2 - K) = sign(4 e^{-2 omega} Q R) = sign(eps): real distinct
  // principal curvatures for +1, imaginary for -1.
  AnalyzerOptions rich;
  rich.richardson = true;
  SurfaceGrid plus = gallery::get("enneper_plus").build(33, 33);
  SurfaceGrid minus = gallery::get("enneper_minus").build(33, 33);
  for (int k = 0; k < 30; ++k) {
    int i = 1 + static_cast<int>(lwtest::uniform(0, 30));
    int j = 1 + static_cast<int>(lwtest::uniform(0, 30));
    double hp = mean_curvature(plus, i, j, rich);
    double kp = gaussian_curvature(plus, i, j, rich);
    CHECK(hp * hp - kp > 0.0);
    double hm = mean_curvature(minus, i, j, rich);
    double km = gaussian_curvature(minus, i, j, rich);
    CHECK(hm * hm - km < 0.0);
  }
}

TEST_CASE("integration matches closed forms on the safe domains") {
  for (const auto& name : gallery::list()) {
    const auto& e = gallery::get(name);
    if (!e.closed_X) continue;
    SurfaceGrid g = e.build(65, 65);
    CHECK_MESSAGE(verify::max_closed_form_err(g, e.closed_X, e.closed_Y) <= 1e-8, name);
  }
}
