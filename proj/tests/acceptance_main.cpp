// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Default lattices are 129 x 129 on the gallery safe domains.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lw/gallery.hpp"
#include "lw/geometry.hpp"
#include "lw/mesh_io.hpp"
#include "lw/verify.hpp"
#include "lw/weierstrass.hpp"
#include "lw/worldsheet.hpp"

#ifndef LW_CLI_PATH
#define LW_CLI_PATH "lw"
#endif

using namespace lw;

namespace {

struct Criterion {
  std::string label;
  bool pass = true;
  double worst = 0.0;
  double tol = 0.0;
  std::string detail;

  void bound(double measured, double tolerance, const std::string& what) {
    if (measured > worst) {
      worst = measured;
      detail = what;
    }
    tol = tolerance;
    if (measured > tolerance) pass = false;
  }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail = what;
    }
  }
};

const char* kMinimalEntries[] = {
    "plane",
    "enneper_plus",
    "enneper_minus",
    "catenoid_spacelike",
    "helicoid_spacelike",
    "catenoid_timelike",
    "helicoid_timelike",
};

SurfaceGrid entry_grid(const std::string& name) { return gallery::get(name).build(129, 129); }

Criterion c1_reproduction() {
  Criterion c;
  c.label = "C01 closed-form reproduction (gallery vs X(u)+Y(v))";
  for (const char* name : kMinimalEntries) {
    const auto& e = gallery::get(name);
    if (!e.closed_X) continue;
    SurfaceGrid g = e.build(129, 129);
    c.bound(verify::max_closed_form_err(g, e.closed_X, e.closed_Y), 1e-8, name);
  }
  return c;
}

Criterion c2_metric_identity() {
  Criterion c;
  c.label = "C02 metric identity 2<phi_u,phi_v> = (1+qr)^2 f g";
  for (const char* name : kMinimalEntries) {
    const auto& e = gallery::get(name);
    c.bound(verify::max_metric_identity_rel(entry_grid(name), e.data), 1e-9, name);
  }
  return c;
}

Criterion c3_minimality() {
  Criterion c;
  c.label = "C03 minimality: |H| and |phi_uv|";
  for (const char* name : kMinimalEntries) {
    SurfaceGrid g = entry_grid(name);
    c.bound(verify::max_abs_mean_curvature(g), 1e-6, std::string(name) + " H");
    double uv = verify::max_abs_mixed_derivative(g);
    if (uv > 1e-7) c.require(false, std::string(name) + " phi_uv");
  }
  return c;
}

Criterion c4_curvature() {
  Criterion c;
  c.label = "C04 Enneper curvature vs closed form";
  AnalyzerOptions rich;
  rich.richardson = true;
  for (const char* name : {"enneper_plus", "enneper_minus"}) {
    const auto& e = gallery::get(name);
    SurfaceGrid g = e.build(129, 129);
    double eps = (std::string(name) == "enneper_plus") ? 1.0 : -1.0;
    c.bound(std::fabs(gaussian_curvature(g, 64, 64, rich) - (-4.0 * eps)), 1e-5,
            std::string(name) + " K(0,0)");
    c.bound(verify::max_curvature_err(g, e.oracle_K, &e.data, 0.2), 1e-5,
            std::string(name) + " grid");
  }
  return c;
}

Criterion c5_hopf() {
  Criterion c;
  c.label = "C05 Enneper Hopf differential and Lorentz holomorphy";
  for (const char* name : {"enneper_plus", "enneper_minus"}) {
    const auto& e = gallery::get(name);
    SurfaceGrid g = e.build(129, 129);
    c.bound(verify::max_hopf_err(g, e.oracle_QR->first, e.oracle_QR->second), 1e-6, name);
    auto [qvar, rvar] = verify::holomorphy_variances(g);
    if (std::max(qvar, rvar) > 1e-10) c.require(false, std::string(name) + " variance");
  }
  return c;
}

Criterion c6_pseudosphere() {
  Criterion c;
  c.label = "C06 pseudosphere radius, H, K, umbilicity";
  const auto& e = gallery::get("pseudosphere");
  SurfaceGrid g = e.build(129, 129);
  c.bound(verify::max_radius_err(g, e.center, e.cmc_H), 1e-10, "radius");
  int sign = 0;
  double h_err = verify::max_cmc_err(g, e.cmc_H, &sign);
  if (h_err > 1e-4) c.require(false, "H");
  c.detail += std::string(" H-sign ") + (sign > 0 ? "+1" : "-1");
  double k_err = verify::max_curvature_err(g, e.oracle_K);
  if (k_err > 1e-4) c.require(false, "K");
  auto [interior, found] = verify::umbilic_count(g, 1e-4);
  c.require(found == interior,
            "umbilic nodes " + std::to_string(found) + "/" + std::to_string(interior));
  return c;
}

Criterion c7_gauss_map() {
  Criterion c;
  c.label = "C07 projected Gauss map: Enneper (u,v); conjugates share (q,r)";
  const auto& en = gallery::get("enneper_plus");
  c.bound(verify::max_gauss_map_err(en.build(129, 129), en.data), 1e-6, "enneper_plus");
  for (const char* base : {"catenoid_spacelike", "catenoid_timelike"}) {
    SurfaceGrid cat = entry_grid(base);
    SurfaceGrid hel = conjugate(cat);
    double worst = 0.0;
    for (int i = 0; i < cat.nu; ++i) {
      for (int j = 0; j < cat.nv; ++j) {
        if (cat.degenerate(i, j)) continue;
        auto [qc, rc] = verify::measured_gauss_map(cat, i, j);
        auto [qh, rh] = verify::measured_gauss_map(hel, i, j);
        worst = std::max({worst, std::fabs(qc - qh), std::fabs(rc - rh)});
      }
    }
    c.bound(worst, 1e-6, std::string(base) + " vs conjugate");
  }
  return c;
}

Criterion c8_gmap_pdes() {
  Criterion c;
  c.label = "C08 Gauss-map PDE residuals (H = 0)";
  AnalyzerOptions rich;
  rich.richardson = true;
  for (const char* name : kMinimalEntries) {
    const auto& e = gallery::get(name);
    SurfaceGrid g = e.build(129, 129);
    double sym = 0.0, meas = 0.0;
    for (int i = 1; i + 1 < g.nu; i += 2) {
      for (int j = 1; j + 1 < g.nv; j += 2) {
        if (g.degenerate(i, j)) continue;
        GmapResiduals res = gmap_pde_residual(e.data, 0.0, g, i, j, rich);
        sym = std::max({sym, std::fabs(res.q_v), std::fabs(res.r_u)});
        meas = std::max({meas, std::fabs(res.q_u), std::fabs(res.r_v)});
      }
    }
    if (sym > 1e-6) c.require(false, std::string(name) + " symbolic");
    c.bound(meas, 1e-4, std::string(name) + " measured");
  }
  return c;
}

Criterion c9_spinor_route() {
  Criterion c;
  c.label = "C09 spinor route equals the data route; Dirac residual";
  const auto& e = gallery::get("enneper_plus");
  c.bound(verify::spinor_route_diff(e.data, e.default_domain, 129, 129), 1e-8, "route diff");
  SpinorField sp = spinors_from_data(e.data, e.default_domain);
  double dr = dirac_residual(sp, e.default_domain, 129);
  if (dr > 1e-8) c.require(false, "dirac");
  return c;
}

Criterion c10_gauss_codazzi() {
  Criterion c;
  c.label = "C10 Gauss-Codazzi residuals";
  for (const char* name : kMinimalEntries) {
    GaussCodazziStats st = gauss_codazzi_stats(entry_grid(name));
    double worst = std::max({st.max_r1, st.max_r2, st.max_r3});
    double tol = std::string(name) == "plane" ? 1e-10 : 1e-4;
    if (worst > tol) c.require(false, std::string(name) + " residual");
    c.bound(worst, 1e-4, name);
    double coverage = static_cast<double>(st.resolved) / (st.resolved + st.unresolved);
    c.require(coverage >= 0.5, std::string(name) + " coverage " + std::to_string(coverage));
  }
  GaussCodazziStats ps = gauss_codazzi_stats(entry_grid("pseudosphere"));
  c.bound(std::max({ps.max_r1, ps.max_r2, ps.max_r3}), 1e-4, "pseudosphere");
  return c;
}

Criterion c11_lax() {
  Criterion c;
  c.label = "C11 Lax frame on Enneper [-0.5,0.5]^2";
  const auto& e = gallery::get("enneper_plus");
  verify::LaxReport rep = verify::lax_check(e.data, Rect{-0.5, 0.5, -0.5, 0.5}, 129, 129);
  if (rep.det_drift > 1e-8) c.require(false, "det drift");
  if (rep.reconstruction > 1e-6) c.require(false, "reconstruction");
  c.bound(rep.path_compat, 1e-6, "path compatibility");
  c.detail +=
      " drift=" + std::to_string(rep.det_drift) + " rec=" + std::to_string(rep.reconstruction);
  return c;
}

Criterion c12_worldsheet() {
  Criterion c;
  c.label = "C12 worldsheet: action, wave residual, Einstein-Hilbert";
  SurfaceGrid flat = integrate_surface(WeierstrassData::from_strings("0", "1", "0", "1"),
                                       Rect{0.0, 1.0, 0.0, 2.0}, 129, 129);
  c.bound(std::fabs(nambu_goto_action(flat, 1.0) + 1.0), 1e-10, "plane action");

  const auto& en = gallery::get("enneper_plus");
  SurfaceGrid eg = en.build(129, 129);
  double a = 0.8;
  double cross = 2.0 * a * a * a / 3.0;
  double analytic = -0.5 * (4.0 * a * a + cross * cross);
  double action = nambu_goto_action(eg, 1.0);
  if (std::fabs(action - analytic) / std::fabs(analytic) > 1e-4) {
    c.require(false, "enneper action");
  }

  for (const char* name : kMinimalEntries) {
    if (wave_residual(entry_grid(name)) > 1e-6) {
      c.require(false, std::string(name) + " wave residual");
    }
  }
  if (wave_residual(entry_grid("pseudosphere")) < 0.1) {
    c.require(false, "pseudosphere wave residual must exceed 0.1");
  }

  Rect patch{-0.4, 0.4, -0.4, 0.4};
  double eh129 = einstein_hilbert_interior(en.build(patch, 129, 129), 1.0).value;
  double eh65 = einstein_hilbert_interior(en.build(patch, 65, 65), 1.0).value;
  if (std::fabs(eh129 - eh65) / std::fabs(eh129) > 1e-3) {
    c.require(false, "einstein-hilbert refinement stability");
  }
  return c;
}

Criterion c13_roundtrip() {
  Criterion c;
  c.label = "C13 extract_data(tangents(d)) = d on the safe domains";
  for (const char* name : kMinimalEntries) {
    const auto& e = gallery::get(name);
    c.bound(verify::extraction_roundtrip_err(e.data, e.default_domain, 129), 1e-10, name);
  }
  return c;
}

Criterion c14_cli_determinism() {
  Criterion c;
  c.label = "C14 CLI determinism: byte-identical OBJ outputs";
  auto run = [](const std::string& args) {
    std::string cmd = std::string(LW_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  int r1 = run("generate --gallery enneper_plus --out acc_c14_a.obj");
  int r2 = run("generate --gallery enneper_plus --out acc_c14_b.obj");
  c.require(r1 == 0 && r2 == 0, "generate runs");
  auto slurp = [](const char* p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::string a = slurp("acc_c14_a.obj");
  std::string b = slurp("acc_c14_b.obj");
  c.require(!a.empty() && a == b, "byte comparison");
  return c;
}

}  // namespace

int main() {
  std::vector<std::function<Criterion()>> criteria = {
      c1_reproduction, c2_metric_identity, c3_minimality, c4_curvature,
      c5_hopf,         c6_pseudosphere,    c7_gauss_map,  c8_gmap_pdes,
      c9_spinor_route, c10_gauss_codazzi,  c11_lax,       c12_worldsheet,
      c13_roundtrip,   c14_cli_determinism,
  };
  int failures = 0;
  for (auto& fn : criteria) {
    Criterion c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("exception: ") + e.what();
    }
    if (!c.pass) ++failures;
    std::printf("%s %s", c.pass ? "PASS" : "FAIL", c.label.c_str());
    if (c.tol > 0.0) std::printf(" (worst=%.3g, tol=%.3g)", c.worst, c.tol);
    if (!c.detail.empty()) std::printf(" [%s]", c.detail.c_str());
    std::printf("\n");
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
