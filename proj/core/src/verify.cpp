#include "lw/verify.hpp"

#include <algorithm>
#include <cmath>

#include "lw/parallel.hpp"
#include "lw/worldsheet.hpp"

namespace lw {
namespace verify {

namespace {

// Max-reduction over grid rows, parallel and deterministic.
template <typename Fn>
double grid_max(const SurfaceGrid& s, int ring, const Fn& node_value) {
  std::vector<double> row_max(s.nu, 0.0);
  parallel_for(s.nu, [&](int i) {
    if (i < ring || i >= s.nu - ring) return;
    double worst = 0.0;
    for (int j = ring; j < s.nv - ring; ++j) {
      if (s.degenerate(i, j)) continue;
      worst = std::max(worst, node_value(i, j));
    }
    row_max[i] = worst;
  });
  double out = 0.0;
  for (double w : row_max) out = std::max(out, w);
  return out;
}

AnalyzerOptions rich_opts() {
  AnalyzerOptions opt;
  opt.richardson = true;
  return opt;
}

}  // namespace

double max_null_tangent(const SurfaceGrid& s) {
  return grid_max(s, 0, [&](int i, int j) {
    Vec3L tu = tangent_u_at(s, i, j);
    Vec3L tv = tangent_v_at(s, i, j);
    return std::max(std::fabs(inner3(tu, tu)), std::fabs(inner3(tv, tv)));
  });
}

double max_metric_identity_rel(const SurfaceGrid& s, const WeierstrassData& d) {
  return grid_max(s, 0, [&](int i, int j) {
    double measured = 2.0 * inner3(tangent_u_at(s, i, j), tangent_v_at(s, i, j));
    double expected = d.metric_coeff(s.u_at(i), s.v_at(j));
    if (std::fabs(expected) < 1e-12) return 0.0;
    return std::fabs(measured - expected) / std::fabs(expected);
  });
}

double max_closed_form_err(const SurfaceGrid& s, const std::function<Vec3L(double)>& X,
                           const std::function<Vec3L(double)>& Y) {
  Vec3L x0 = X(s.rect.u0);
  Vec3L y0 = Y(s.rect.v0);
  return grid_max(s, 0, [&](int i, int j) {
    Vec3L expected = (X(s.u_at(i)) - x0) + (Y(s.v_at(j)) - y0);
    Vec3L diff = s.at(i, j) - expected;
    return std::max({std::fabs(diff.x1), std::fabs(diff.x2), std::fabs(diff.x3)});
  });
}

double max_abs_mean_curvature(const SurfaceGrid& s) {
  return grid_max(s, 1, [&](int i, int j) { return std::fabs(mean_curvature(s, i, j)); });
}

double max_abs_mixed_derivative(const SurfaceGrid& s) {
  double scale = 4.0 * s.du() * s.dv();
  return grid_max(s, 1, [&](int i, int j) {
    Vec3L uv = (s.at(i + 1, j + 1) - s.at(i + 1, j - 1) - s.at(i - 1, j + 1) +
                s.at(i - 1, j - 1)) /
               scale;
    return std::max({std::fabs(uv.x1), std::fabs(uv.x2), std::fabs(uv.x3)});
  });
}

double max_mean_curvature_disagreement(const SurfaceGrid& s) {
  AnalyzerOptions opt = rich_opts();
  return grid_max(s, 1, [&](int i, int j) {
    return std::fabs(mean_curvature(s, i, j, opt) - mean_curvature_classical(s, i, j, opt));
  });
}

double max_curvature_err(const SurfaceGrid& s, const std::function<double(double, double)>& K,
                         const WeierstrassData* mask_data, double mask) {
  AnalyzerOptions opt = rich_opts();
  return grid_max(s, 1, [&](int i, int j) {
    double u = s.u_at(i), v = s.v_at(j);
    if (mask_data != nullptr &&
        std::fabs(1.0 + mask_data->q(u) * mask_data->r(v)) <= mask) {
      return 0.0;
    }
    double expected = K(u, v);
    double measured = gaussian_curvature(s, i, j, opt);
    double err = std::fabs(measured - expected);
    return std::fabs(expected) > 1e-6 ? err / std::fabs(expected) : err;
  });
}

double max_hopf_err(const SurfaceGrid& s, double Q, double R) {
  AnalyzerOptions opt = rich_opts();
  return grid_max(s, 1, [&](int i, int j) {
    HopfPair h = hopf_differential(s, i, j, opt);
    return std::max(std::fabs(h.Q - Q), std::fabs(h.R - R));
  });
}

std::pair<double, double> holomorphy_variances(const SurfaceGrid& s) {
  AnalyzerOptions opt = rich_opts();
  // Q over each row (fixed u), R over each column (fixed v).
  std::vector<std::vector<double>> q_rows(s.nu);
  std::vector<std::vector<double>> r_cols(s.nv);
  for (int i = 1; i + 1 < s.nu; ++i) {
    for (int j = 1; j + 1 < s.nv; ++j) {
      if (s.degenerate(i, j)) continue;
      HopfPair h = hopf_differential(s, i, j, opt);
      q_rows[i].push_back(h.Q);
      r_cols[j].push_back(h.R);
    }
  }
  auto variance = [](const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return var / xs.size();
  };
  double qv = 0.0, rv = 0.0;
  for (const auto& row : q_rows) qv = std::max(qv, variance(row));
  for (const auto& col : r_cols) rv = std::max(rv, variance(col));
  return {qv, rv};
}

std::pair<double, double> measured_gauss_map(const SurfaceGrid& s, int i, int j) {
  return project_gauss_map(unit_normal(s, i, j));
}

double max_gauss_map_err(const SurfaceGrid& s, const WeierstrassData& d) {
  return grid_max(s, 0, [&](int i, int j) {
    // Nodes whose normal hits the projection pole are skipped; they are a
    // measure-zero set and carry no comparable (q, r).
    try {
      auto [q, r] = measured_gauss_map(s, i, j);
      return std::max(std::fabs(q - d.q(s.u_at(i))), std::fabs(r - d.r(s.v_at(j))));
    } catch (const NorthPole&) {
      return 0.0;
    }
  });
}

std::pair<int, int> umbilic_count(const SurfaceGrid& s, double threshold) {
  int interior = 0;
  for (int i = 1; i + 1 < s.nu; ++i) {
    for (int j = 1; j + 1 < s.nv; ++j) {
      if (!s.degenerate(i, j)) ++interior;
    }
  }
  auto pts = umbilic_points(s, threshold, rich_opts());
  return {interior, static_cast<int>(pts.size())};
}

double max_radius_err(const SurfaceGrid& s, const Vec3L& center, double H) {
  return grid_max(s, 0, [&](int i, int j) {
    Vec3L rel = s.at(i, j) - center;
    return std::fabs(inner3(rel, rel) * H * H - 1.0);
  });
}

double max_cmc_err(const SurfaceGrid& s, double H, int* sign) {
  AnalyzerOptions opt = rich_opts();
  int sgn = 0;
  for (int i = 1; i + 1 < s.nu && sgn == 0; ++i) {
    for (int j = 1; j + 1 < s.nv && sgn == 0; ++j) {
      if (s.degenerate(i, j)) continue;
      double h = mean_curvature(s, i, j, opt);
      if (std::fabs(h) > 0.5 * std::fabs(H)) sgn = h * H > 0 ? 1 : -1;
    }
  }
  if (sgn == 0) sgn = 1;
  if (sign != nullptr) *sign = sgn;
  return grid_max(s, 1, [&](int i, int j) {
    return std::fabs(sgn * mean_curvature(s, i, j, opt) - H);
  });
}

double spinor_route_diff(const WeierstrassData& d, const Rect& rect, int nu, int nv) {
  SpinorField sp = spinors_from_data(d, rect);
  SurfaceGrid a = surface_from_spinors(sp, rect, nu, nv);
  SurfaceGrid b = integrate_surface(d, rect, nu, nv);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.pos.size(); ++k) {
    Vec3L diff = a.pos[k] - b.pos[k];
    worst = std::max({worst, std::fabs(diff.x1), std::fabs(diff.x2), std::fabs(diff.x3)});
  }
  return worst;
}

double extraction_roundtrip_err(const WeierstrassData& d, const Rect& rect, int samples) {
  NullCurvePair pair;
  WeierstrassData dd = d;
  pair.xi = [dd, rect](double u) { return tangents(dd, u, rect.v0).first; };
  pair.eta = [dd, rect](double v) { return tangents(dd, rect.u0, v).second; };
  pair.u0 = rect.u0;
  pair.u1 = rect.u1;
  pair.v0 = rect.v0;
  pair.v1 = rect.v1;
  WeierstrassData ex = extract_data(pair, samples);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    double u = rect.u0 + k * (rect.u1 - rect.u0) / (samples - 1);
    double v = rect.v0 + k * (rect.v1 - rect.v0) / (samples - 1);
    worst = std::max({worst, std::fabs(ex.q(u) - d.q(u)), std::fabs(ex.f(u) - d.f(u)),
                      std::fabs(ex.r(v) - d.r(v)), std::fabs(ex.g(v) - d.g(v))});
  }
  return worst;
}

LaxReport lax_check(const WeierstrassData& d, const Rect& rect, int nu, int nv) {
  LaxFields fields = lax_fields_from_data(d);
  Mat2R phi0 = frame_from_data(d, rect.u0, rect.v0);
  auto ua = integrate_lax_frame(fields, phi0, rect, nu, nv, LaxPath::URowsFirst);
  auto vb = integrate_lax_frame(fields, phi0, rect, nu, nv, LaxPath::VColumnsFirst);

  LaxReport rep;
  double du = (rect.u1 - rect.u0) / (nu - 1);
  double dv = (rect.v1 - rect.v0) / (nv - 1);
  for (int i = 0; i < nu; ++i) {
    double u = rect.u0 + i * du;
    for (int j = 0; j < nv; ++j) {
      double v = rect.v0 + j * dv;
      const Mat2R& phi = ua[static_cast<std::size_t>(i) * nv + j];
      const Mat2R& phi_b = vb[static_cast<std::size_t>(i) * nv + j];
      rep.det_drift = std::max(rep.det_drift, std::fabs(phi.det() - 1.0));
      rep.path_compat = std::max({rep.path_compat, std::fabs(phi.a - phi_b.a),
                                  std::fabs(phi.b - phi_b.b), std::fabs(phi.c - phi_b.c),
                                  std::fabs(phi.d - phi_b.d)});
      Vec3L rec = tangent_from_frame(fields, phi, u, v);
      Vec3L expected = tangents(d, u, v).first;
      Vec3L diff = rec - expected;
      rep.reconstruction = std::max(
          {rep.reconstruction, std::fabs(diff.x1), std::fabs(diff.x2), std::fabs(diff.x3)});
    }
  }
  return rep;
}

namespace {

SuiteResult suite(const std::string& name, bool applicable, double measured, double tol,
                  bool less_is_pass = true, const std::string& note = "") {
  SuiteResult r;
  r.name = name;
  r.applicable = applicable;
  r.measured = measured;
  r.tolerance = tol;
  r.pass = less_is_pass ? (measured <= tol) : (measured >= tol);
  r.note = note;
  return r;
}

void common_grid_suites(const SurfaceGrid& grid, bool minimal, std::vector<SuiteResult>* out) {
  out->push_back(suite("conformality", true, max_null_tangent(grid), 1e-10));
  double h_worst = max_abs_mean_curvature(grid);
  double uv_worst = max_abs_mixed_derivative(grid);
  // The minimality suites always run; for CMC entries they are tagged
  // non-applicable and the failure is expected.
  SuiteResult min_h = suite("minimality-H", minimal, h_worst, 1e-6);
  SuiteResult min_uv = suite("minimality-wave", minimal, uv_worst, 1e-7);
  if (!minimal) {
    min_h.note = "FAIL expected: entry is CMC, not minimal";
    min_uv.note = min_h.note;
  }
  out->push_back(min_h);
  out->push_back(min_uv);
  out->push_back(suite("mean-curvature-formulas", true, max_mean_curvature_disagreement(grid),
                       1e-5));
  GaussCodazziStats gc = gauss_codazzi_stats(grid);
  double gc_worst = std::max({gc.max_r1, gc.max_r2, gc.max_r3});
  double coverage =
      gc.resolved + gc.unresolved > 0
          ? static_cast<double>(gc.resolved) / (gc.resolved + gc.unresolved)
          : 0.0;
  out->push_back(suite("gauss-codazzi", true, gc_worst, 1e-4, true,
                       "coverage " + std::to_string(coverage)));
  // The resolvable fraction shrinks with the lattice spacing near metric
  // degeneracies; 0.25 keeps the statistic honest at any sane resolution.
  out->push_back(suite("gauss-codazzi-coverage", true, coverage, 0.25, false));
  double wave = wave_residual(grid);
  if (minimal) {
    out->push_back(suite("wave-equation", true, wave, 1e-6));
  } else {
    out->push_back(suite("wave-equation-nonminimal", true, wave, 0.1, false,
                         "non-minimal control: residual must be large"));
  }
}

}  // namespace

std::vector<SuiteResult> run_entry_suites(const gallery::GalleryEntry& entry, int nu, int nv) {
  std::vector<SuiteResult> out;
  SurfaceGrid grid = entry.build(nu, nv);

  common_grid_suites(grid, entry.minimal, &out);

  if (!entry.is_pseudosphere) {
    out.push_back(suite("metric-identity", true, max_metric_identity_rel(grid, entry.data), 1e-9));
    out.push_back(
        suite("extraction-roundtrip", true,
              extraction_roundtrip_err(entry.data, entry.default_domain, nu), 1e-10));
  }
  if (entry.closed_X && entry.closed_Y) {
    out.push_back(suite("closed-form", true,
                        max_closed_form_err(grid, entry.closed_X, entry.closed_Y), 1e-8));
  }
  if (entry.oracle_K) {
    const WeierstrassData* mask = entry.is_pseudosphere ? nullptr : &entry.data;
    out.push_back(
        suite("curvature-oracle", true, max_curvature_err(grid, entry.oracle_K, mask, 0.2), 1e-5));
  }
  if (entry.oracle_QR) {
    out.push_back(suite("hopf-oracle", true,
                        max_hopf_err(grid, entry.oracle_QR->first, entry.oracle_QR->second),
                        1e-6));
  }
  if (entry.minimal) {
    auto [qv, rv] = holomorphy_variances(grid);
    out.push_back(suite("lorentz-holomorphy", true, std::max(qv, rv), 1e-10));
    out.push_back(suite("gauss-map", true, max_gauss_map_err(grid, entry.data), 1e-6));
  }
  if (entry.totally_umbilic) {
    auto [interior, found] = umbilic_count(grid, 1e-4);
    out.push_back(suite("umbilicity", true, static_cast<double>(interior - found), 0.0, true,
                        "all interior nodes umbilic at 1e-4"));
  } else {
    auto [interior, found] = umbilic_count(grid, 0.5);
    (void)interior;
    out.push_back(
        suite("umbilicity", true, static_cast<double>(found), 0.0, true, "no umbilics at 0.5"));
  }
  if (entry.is_pseudosphere) {
    out.push_back(suite("pseudosphere-radius", true,
                        max_radius_err(grid, entry.center, entry.cmc_H), 1e-10));
    int sgn = 0;
    double h_err = max_cmc_err(grid, entry.cmc_H, &sgn);
    out.push_back(suite("pseudosphere-H", true, h_err, 1e-4, true,
                        std::string("orientation sign ") + (sgn > 0 ? "+1" : "-1")));
  }
  if (entry.spinor_compatible) {
    out.push_back(suite("spinor-route", true,
                        spinor_route_diff(entry.data, entry.default_domain, nu, nv), 1e-8));
    SpinorField sp = spinors_from_data(entry.data, entry.default_domain);
    out.push_back(suite("dirac-residual", true, dirac_residual(sp, entry.default_domain, 65),
                        1e-8));
  }
  return out;
}

std::vector<SuiteResult> run_data_suites(const WeierstrassData& d, const Rect& rect, int nu,
                                         int nv) {
  std::vector<SuiteResult> out;
  SurfaceGrid grid = integrate_surface(d, rect, nu, nv);
  common_grid_suites(grid, true, &out);
  out.push_back(suite("metric-identity", true, max_metric_identity_rel(grid, d), 1e-9));
  out.push_back(suite("extraction-roundtrip", true, extraction_roundtrip_err(d, rect, nu), 1e-10));
  auto [qv, rv] = holomorphy_variances(grid);
  out.push_back(suite("lorentz-holomorphy", true, std::max(qv, rv), 1e-10));
  out.push_back(suite("gauss-map", true, max_gauss_map_err(grid, d), 1e-6));
  return out;
}

bool all_pass(const std::vector<SuiteResult>& results) {
  for (const auto& r : results) {
    if (r.applicable && !r.pass) return false;
  }
  return true;
}

}  // namespace verify
}  // namespace lw
