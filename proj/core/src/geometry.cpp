#include "lw/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lw {

namespace {

constexpr double kMetricEps = 1e-12;

using Fn1 = std::function<Vec3L(double)>;
using Sf = std::function<double(double)>;

// First derivative of a curve, central stencil; Richardson combines h and 2h.
Vec3L d1(const Fn1& f, double t, double h, bool richardson) {
  Vec3L dh = (f(t + h) - f(t - h)) / (2.0 * h);
  if (!richardson) return dh;
  Vec3L d2h = (f(t + 2.0 * h) - f(t - 2.0 * h)) / (4.0 * h);
  return (4.0 * dh - d2h) / 3.0;
}

double d1s(const Sf& f, double t, double h, bool richardson) {
  double dh = (f(t + h) - f(t - h)) / (2.0 * h);
  if (!richardson) return dh;
  double d2h = (f(t + 2.0 * h) - f(t - 2.0 * h)) / (4.0 * h);
  return (4.0 * dh - d2h) / 3.0;
}

// Position-based tangent along u at a node; one-sided at the boundary.
Vec3L pos_tangent_u(const SurfaceGrid& s, int i, int j) {
  double h = s.du();
  if (i >= 1 && i + 1 < s.nu) return (s.at(i + 1, j) - s.at(i - 1, j)) / (2.0 * h);
  if (s.nu < 3) return (s.at(s.nu - 1, j) - s.at(0, j)) / ((s.nu - 1) * h);
  if (i == 0) return (s.at(2, j) * -1.0 + s.at(1, j) * 4.0 - s.at(0, j) * 3.0) / (2.0 * h);
  return (s.at(s.nu - 3, j) - s.at(s.nu - 2, j) * 4.0 + s.at(s.nu - 1, j) * 3.0) / (2.0 * h);
}

Vec3L pos_tangent_v(const SurfaceGrid& s, int i, int j) {
  double h = s.dv();
  if (j >= 1 && j + 1 < s.nv) return (s.at(i, j + 1) - s.at(i, j - 1)) / (2.0 * h);
  if (s.nv < 3) return (s.at(i, s.nv - 1) - s.at(i, 0)) / ((s.nv - 1) * h);
  if (j == 0) return (s.at(i, 2) * -1.0 + s.at(i, 1) * 4.0 - s.at(i, 0) * 3.0) / (2.0 * h);
  return (s.at(i, s.nv - 3) - s.at(i, s.nv - 2) * 4.0 + s.at(i, s.nv - 1) * 3.0) / (2.0 * h);
}

// Second derivative along one axis from positions (one-sided at the boundary).
Vec3L pos_second(const SurfaceGrid& s, int i, int j, bool along_u) {
  int n = along_u ? s.nu : s.nv;
  int k = along_u ? i : j;
  double h = along_u ? s.du() : s.dv();
  auto p = [&](int t) { return along_u ? s.at(t, j) : s.at(i, t); };
  if (k >= 1 && k + 1 < n) return (p(k + 1) - p(k) * 2.0 + p(k - 1)) / (h * h);
  if (n < 4) throw DomainError("boundary second derivative needs at least four nodes");
  if (k == 0) return (p(0) * 2.0 - p(1) * 5.0 + p(2) * 4.0 - p(3)) / (h * h);
  return (p(n - 1) * 2.0 - p(n - 2) * 5.0 + p(n - 3) * 4.0 - p(n - 4)) / (h * h);
}

}  // namespace

Vec3L tangent_u_at(const SurfaceGrid& s, int i, int j) {
  if (s.tangent_u) return s.tangent_u(s.u_at(i), s.v_at(j));
  return pos_tangent_u(s, i, j);
}

Vec3L tangent_v_at(const SurfaceGrid& s, int i, int j) {
  if (s.tangent_v) return s.tangent_v(s.u_at(i), s.v_at(j));
  return pos_tangent_v(s, i, j);
}

Vec3L second_uu(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt) {
  if (s.tangent_u) {
    double v = s.v_at(j);
    TangentField tu = s.tangent_u;
    return d1([&](double t) { return tu(t, v); }, s.u_at(i), s.du(), opt.richardson);
  }
  return pos_second(s, i, j, true);
}

Vec3L second_vv(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt) {
  if (s.tangent_v) {
    double u = s.u_at(i);
    TangentField tv = s.tangent_v;
    return d1([&](double t) { return tv(u, t); }, s.v_at(j), s.dv(), opt.richardson);
  }
  return pos_second(s, i, j, false);
}

Vec3L second_uv(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt) {
  if (s.tangent_u) {
    double u = s.u_at(i);
    TangentField tu = s.tangent_u;
    return d1([&](double t) { return tu(u, t); }, s.v_at(j), s.dv(), opt.richardson);
  }
  if (!s.interior(i, j)) throw DomainError("mixed derivative needs an interior node");
  double scale = 4.0 * s.du() * s.dv();
  return (s.at(i + 1, j + 1) - s.at(i + 1, j - 1) - s.at(i - 1, j + 1) + s.at(i - 1, j - 1)) /
         scale;
}

Vec3L unit_normal(const SurfaceGrid& s, int i, int j) {
  Vec3L tu = tangent_u_at(s, i, j);
  Vec3L tv = tangent_v_at(s, i, j);
  double metric = 2.0 * inner3(tu, tv);
  if (std::fabs(metric) <= kMetricEps) {
    throw DegenerateMetric("metric coefficient vanishes at node (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
  }
  return lorentz_cross(tu, tv) * (2.0 / metric);
}

FundamentalForms fundamental_forms(const SurfaceGrid& s, int i, int j,
                                   const AnalyzerOptions& opt) {
  Vec3L tu = tangent_u_at(s, i, j);
  Vec3L tv = tangent_v_at(s, i, j);
  double metric = 2.0 * inner3(tu, tv);
  if (std::fabs(metric) <= kMetricEps) {
    throw DegenerateMetric("metric coefficient vanishes at node (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");
  }
  Vec3L n = lorentz_cross(tu, tv) * (2.0 / metric);
  Vec3L phi_x = tu - tv;
  Vec3L phi_y = tu + tv;
  Vec3L uu = second_uu(s, i, j, opt);
  Vec3L vv = second_vv(s, i, j, opt);
  Vec3L uv = second_uv(s, i, j, opt);

  FundamentalForms ff;
  ff.E = inner3(phi_x, phi_x);
  ff.F = inner3(phi_x, phi_y);
  ff.G = inner3(phi_y, phi_y);
  ff.l = inner3(uu - uv * 2.0 + vv, n);
  ff.m = inner3(uu - vv, n);
  ff.n = inner3(uu + uv * 2.0 + vv, n);
  ff.metric_uv = metric;
  ff.omega = std::log(std::fabs(metric));
  return ff;
}

double mean_curvature(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt) {
  Vec3L tu = tangent_u_at(s, i, j);
  Vec3L tv = tangent_v_at(s, i, j);
  double metric = 2.0 * inner3(tu, tv);
  if (std::fabs(metric) <= kMetricEps) {
    throw DegenerateMetric("metric coefficient vanishes");
  }
  Vec3L n = lorentz_cross(tu, tv) * (2.0 / metric);
  Vec3L uv = second_uv(s, i, j, opt);
  return 2.0 * inner3(uv, n) / metric;
}

double mean_curvature_classical(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt) {
  FundamentalForms ff = fundamental_forms(s, i, j, opt);
  double denom = 2.0 * (ff.E * ff.G - ff.F * ff.F);
  if (std::fabs(denom) <= kMetricEps) throw DegenerateMetric("E G - F^2 vanishes");
  return (ff.G * ff.l + ff.E * ff.n - 2.0 * ff.F * ff.m) / denom;
}

HopfPair hopf_differential(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt) {
  Vec3L n = unit_normal(s, i, j);
  return {inner3(second_uu(s, i, j, opt), n), inner3(second_vv(s, i, j, opt), n)};
}

double gaussian_curvature(const SurfaceGrid& s, int i, int j, const AnalyzerOptions& opt) {
  Vec3L tu = tangent_u_at(s, i, j);
  Vec3L tv = tangent_v_at(s, i, j);
  double metric = 2.0 * inner3(tu, tv);
  if (std::fabs(metric) <= kMetricEps) throw DegenerateMetric("metric coefficient vanishes");
  Vec3L n = lorentz_cross(tu, tv) * (2.0 / metric);
  double H = 2.0 * inner3(second_uv(s, i, j, opt), n) / metric;
  double Q = inner3(second_uu(s, i, j, opt), n);
  double R = inner3(second_vv(s, i, j, opt), n);
  return H * H - 4.0 * Q * R / (metric * metric);
}

namespace {

// Continuous measured fields for closure-backed grids. Every evaluation
// throws DegenerateMetric when the sample sits on a (near-)degenerate point,
// which the statistics treat as "unresolved".
struct MeasuredFields {
  const SurfaceGrid& s;
  double h;  // derivative step for the inner stencils
  bool richardson;

  double metric(double u, double v) const {
    double m = 2.0 * inner3(s.tangent_u(u, v), s.tangent_v(u, v));
    if (std::fabs(m) <= kMetricEps) throw DegenerateMetric("degenerate sample");
    return m;
  }
  Vec3L normal(double u, double v) const {
    double m = metric(u, v);
    return lorentz_cross(s.tangent_u(u, v), s.tangent_v(u, v)) * (2.0 / m);
  }
  double omega(double u, double v) const { return std::log(std::fabs(metric(u, v))); }
  double H(double u, double v) const {
    TangentField tu = s.tangent_u;
    Vec3L uv = d1([&](double t) { return tu(u, t); }, v, h, richardson);
    return 2.0 * inner3(uv, normal(u, v)) / metric(u, v);
  }
  double Q(double u, double v) const {
    TangentField tu = s.tangent_u;
    Vec3L uu = d1([&](double t) { return tu(t, v); }, u, h, richardson);
    return inner3(uu, normal(u, v));
  }
  double R(double u, double v) const {
    TangentField tv = s.tangent_v;
    Vec3L vv = d1([&](double t) { return tv(u, t); }, v, h, richardson);
    return inner3(vv, normal(u, v));
  }
};

// Closure-backed residuals at an explicit derivative step.
GaussCodazzi gc_closure_at(const SurfaceGrid& s, double u, double v, double h, bool richardson) {
  MeasuredFields f{s, h, richardson};

  double metric = f.metric(u, v);
  double H0 = f.H(u, v);
  double Q0 = f.Q(u, v);
  double R0 = f.R(u, v);

  auto om_v = [&](double uu) {
    return d1s([&](double t) { return f.omega(uu, t); }, v, h, richardson);
  };
  // omega_uv as d/du of omega_v.
  double omega_uv = d1s([&](double t) { return om_v(t); }, u, h, richardson);
  double r1 = omega_uv + 0.5 * H0 * H0 * metric - 2.0 * Q0 * R0 / metric;
  double r2 = d1s([&](double t) { return f.H(t, v); }, u, h, richardson) -
              2.0 / metric * d1s([&](double t) { return f.Q(u, t); }, v, h, richardson);
  double r3 = d1s([&](double t) { return f.H(u, t); }, v, h, richardson) -
              2.0 / metric * d1s([&](double t) { return f.R(t, v); }, u, h, richardson);
  return {r1, r2, r3, true};
}

GaussCodazzi gc_closure(const SurfaceGrid& s, int i, int j, bool richardson) {
  return gc_closure_at(s, s.u_at(i), s.v_at(j), s.du(), richardson);
}

GaussCodazzi gc_positions(const SurfaceGrid& s, int i, int j) {
  if (!s.interior(i, j, 2)) throw DomainError("Gauss-Codazzi needs a 2-ring interior node");
  AnalyzerOptions plain;
  auto omega_at = [&](int a, int b) { return fundamental_forms(s, a, b, plain).omega; };
  auto H_at = [&](int a, int b) { return mean_curvature(s, a, b, plain); };
  auto hopf_at = [&](int a, int b) { return hopf_differential(s, a, b, plain); };

  double du = s.du(), dv = s.dv();
  double metric = fundamental_forms(s, i, j, plain).metric_uv;
  double H0 = H_at(i, j);
  HopfPair qr = hopf_at(i, j);
  double omega_uv = (omega_at(i + 1, j + 1) - omega_at(i + 1, j - 1) - omega_at(i - 1, j + 1) +
                     omega_at(i - 1, j - 1)) /
                    (4.0 * du * dv);
  double r1 = omega_uv + 0.5 * H0 * H0 * metric - 2.0 * qr.Q * qr.R / metric;
  double H_u = (H_at(i + 1, j) - H_at(i - 1, j)) / (2.0 * du);
  double H_v = (H_at(i, j + 1) - H_at(i, j - 1)) / (2.0 * dv);
  double Q_v = (hopf_at(i, j + 1).Q - hopf_at(i, j - 1).Q) / (2.0 * dv);
  double R_u = (hopf_at(i + 1, j).R - hopf_at(i - 1, j).R) / (2.0 * du);
  return {r1, H_u - 2.0 * Q_v / metric, H_v - 2.0 * R_u / metric, true};
}

}  // namespace

GaussCodazzi gauss_codazzi_residual(const SurfaceGrid& s, int i, int j,
                                    const AnalyzerOptions& opt) {
  if (s.has_closures()) return gc_closure(s, i, j, opt.richardson);
  return gc_positions(s, i, j);
}

GaussCodazziStats gauss_codazzi_stats(const SurfaceGrid& s) {
  GaussCodazziStats stats;
  const double kGate = 5e-5;
  int ring = s.has_closures() ? 1 : 2;
  for (int i = ring; i < s.nu - ring; ++i) {
    for (int j = ring; j < s.nv - ring; ++j) {
      if (s.degenerate(i, j)) continue;
      GaussCodazzi fine;
      bool ok = true;
      try {
        if (s.has_closures()) {
          double u = s.u_at(i), v = s.v_at(j);
          fine = gc_closure_at(s, u, v, s.du(), true);
          // The doubled-spacing estimate gates the truncation error: the two
          // Richardson values differ by ~15x the fine-step error.
          GaussCodazzi coarse = gc_closure_at(s, u, v, 2.0 * s.du(), true);
          double est = std::max({std::fabs(fine.r1 - coarse.r1), std::fabs(fine.r2 - coarse.r2),
                                 std::fabs(fine.r3 - coarse.r3)}) /
                       15.0;
          if (est > kGate) ok = false;
        } else {
          fine = gc_positions(s, i, j);
        }
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        ++stats.unresolved;
        continue;
      }
      ++stats.resolved;
      stats.max_r1 = std::max(stats.max_r1, std::fabs(fine.r1));
      stats.max_r2 = std::max(stats.max_r2, std::fabs(fine.r2));
      stats.max_r3 = std::max(stats.max_r3, std::fabs(fine.r3));
    }
  }
  return stats;
}

std::pair<double, double> project_gauss_map(const Vec3L& n) {
  double norm = inner3(n, n);
  if (std::fabs(norm - 1.0) > 1e-6) {
    throw NotOnSphere("point is not on the pseudosphere (|<N,N>-1| = " +
                      std::to_string(std::fabs(norm - 1.0)) + ")");
  }
  double denom = 1.0 - n.x3;
  if (std::fabs(denom) < 1e-10) throw NorthPole("stereographic projection undefined at x3 = 1");
  return {(n.x1 + n.x2) / denom, (-n.x1 + n.x2) / denom};
}

Vec3L inverse_stereographic(double q, double r) {
  double D = 1.0 + q * r;
  if (std::fabs(D) < 1e-10) throw EquatorSingularity("1 + q r vanishes");
  return {(q - r) / D, (q + r) / D, (-1.0 + q * r) / D};
}

GmapResiduals gmap_pde_residual(const WeierstrassData& d, double H, const SurfaceGrid& s, int i,
                                int j, const AnalyzerOptions& opt) {
  double u = s.u_at(i), v = s.v_at(j);
  double fv = d.f(u), gv = d.g(v);
  if (std::fabs(fv) < 1e-12 || std::fabs(gv) < 1e-12) {
    throw ZeroDenominator("f or g vanishes at the node");
  }
  HopfPair qr = hopf_differential(s, i, j, opt);
  double one_qr = 1.0 + d.q(u) * d.r(v);
  double c = 0.5 * H * one_qr * one_qr;
  GmapResiduals res;
  res.q_u = d.q.derivative()(u) - qr.Q / fv;
  res.q_v = 0.0 - c * gv;
  res.r_u = 0.0 - c * fv;
  res.r_v = d.r.derivative()(v) - qr.R / gv;
  return res;
}

std::vector<std::pair<int, int>> umbilic_points(const SurfaceGrid& s, double threshold,
                                                const AnalyzerOptions& opt) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i + 1 < s.nu; ++i) {
    for (int j = 1; j + 1 < s.nv; ++j) {
      if (s.degenerate(i, j)) continue;
      HopfPair qr = hopf_differential(s, i, j, opt);
      if (std::max(std::fabs(qr.Q), std::fabs(qr.R)) < threshold) out.emplace_back(i, j);
    }
  }
  return out;
}

LaxFields lax_fields_from_data(const WeierstrassData& d) {
  Func1D q = d.q, f = d.f, r = d.r, g = d.g;
  Func1D dq = q.derivative(), df = f.derivative(), dr = r.derivative(), dg = g.derivative();
  LaxFields out;
  out.metric = [q, f, r, g](double u, double v) {
    double one_qr = 1.0 + q(u) * r(v);
    return one_qr * one_qr * f(u) * g(v);
  };
  out.omega_u = [q, dq, r, f, df](double u, double v) {
    return 2.0 * dq(u) * r(v) / (1.0 + q(u) * r(v)) + df(u) / f(u);
  };
  out.omega_v = [q, r, dr, g, dg](double u, double v) {
    return 2.0 * q(u) * dr(v) / (1.0 + q(u) * r(v)) + dg(v) / g(v);
  };
  out.Q = [dq, f](double u) { return dq(u) * f(u); };
  out.R = [dr, g](double v) { return dr(v) * g(v); };
  out.H = 0.0;
  return out;
}

Mat2R frame_from_data(const WeierstrassData& d, double u, double v) {
  auto [tu, tv] = tangents(d, u, v);
  double metric = 2.0 * inner3(tu, tv);
  if (metric <= kMetricEps) {
    throw DegenerateMetric("coordinate frame needs a positively oriented conformal patch");
  }
  double e_half = std::sqrt(metric);  // e^{omega/2} with e^omega = metric
  Vec3L n = lorentz_cross(tu, tv) * (2.0 / metric);

  Mat2R C = to_matrix(n);
  // B = Phi [[0,0],[1,0]] Phi^{-1} = matrix(phi_v) / e^{omega/2}.
  Mat2R B = to_matrix(tv * (1.0 / e_half));

  // c1 spans the +1 eigenspace of C (C^2 = 1, trace 0).
  double w1, w2;
  if (std::fabs(C.a - 1.0) + std::fabs(C.b) >= std::fabs(C.c) + std::fabs(C.d - 1.0)) {
    w1 = C.b;
    w2 = 1.0 - C.a;
  } else {
    w1 = 1.0 - C.d;
    w2 = C.c;
  }
  double wn = std::hypot(w1, w2);
  if (wn < 1e-12) {
    // C = k'; the frame is diagonal in the standard basis.
    w1 = 1.0;
    w2 = 0.0;
    wn = 1.0;
  }
  w1 /= wn;
  w2 /= wn;
  double c2_1 = B.a * w1 + B.b * w2;
  double c2_2 = B.c * w1 + B.d * w2;
  double dd = w1 * c2_2 - w2 * c2_1;
  if (dd <= 1e-12) {
    throw DegenerateMetric("frame construction failed (non-positive determinant)");
  }
  double scale = 1.0 / std::sqrt(dd);
  Mat2R phi{w1 * scale, c2_1 * scale, w2 * scale, c2_2 * scale};

  // Consistency: A c2 = c1 with A = Phi n_+ Phi^{-1} = matrix(phi_u / e^{omega/2}).
  Mat2R A = to_matrix(tu * (1.0 / e_half));
  double a1 = A.a * phi.b + A.b * phi.d - phi.a;
  double a2 = A.c * phi.b + A.d * phi.d - phi.c;
  if (std::fabs(a1) > 1e-8 || std::fabs(a2) > 1e-8 || std::fabs(phi.det() - 1.0) > 1e-8) {
    throw DegenerateMetric("frame construction inconsistent at the requested point");
  }
  return phi;
}

namespace {

Mat2R lax_U(const LaxFields& f, double u, double v) {
  double metric = f.metric(u, v);
  if (metric <= kMetricEps) throw DegenerateMetric("Lax fields need a positive metric");
  double e_half = std::sqrt(metric);
  double wu = f.omega_u(u, v);
  return {0.25 * wu, 0.5 * f.H * e_half, -f.Q(u) / e_half, -0.25 * wu};
}

Mat2R lax_V(const LaxFields& f, double u, double v) {
  double metric = f.metric(u, v);
  if (metric <= kMetricEps) throw DegenerateMetric("Lax fields need a positive metric");
  double e_half = std::sqrt(metric);
  double wv = f.omega_v(u, v);
  return {-0.25 * wv, f.R(v) / e_half, -0.5 * f.H * e_half, 0.25 * wv};
}

using MatFn = std::function<Mat2R(double)>;

Mat2R rk4_step(const Mat2R& phi, const MatFn& M, double t, double h) {
  auto mul = [](const Mat2R& x, const Mat2R& y) { return sq_mul(x, y); };
  Mat2R k1 = mul(phi, M(t));
  Mat2R k2 = mul(phi + k1 * (0.5 * h), M(t + 0.5 * h));
  Mat2R k3 = mul(phi + k2 * (0.5 * h), M(t + 0.5 * h));
  Mat2R k4 = mul(phi + k3 * h, M(t + h));
  return phi + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

// One lattice cell: two half steps, with a full step as error control.
Mat2R rk4_cell(const Mat2R& phi, const MatFn& M, double t, double h) {
  Mat2R full = rk4_step(phi, M, t, h);
  Mat2R halfway = rk4_step(phi, M, t, 0.5 * h);
  Mat2R fine = rk4_step(halfway, M, t + 0.5 * h, 0.5 * h);
  double err = std::max({std::fabs(full.a - fine.a), std::fabs(full.b - fine.b),
                         std::fabs(full.c - fine.c), std::fabs(full.d - fine.d)});
  if (err > 1e-6) {
    throw StepRejected("local RK4 error estimate " + std::to_string(err) + " exceeds 1e-6");
  }
  return fine;
}

}  // namespace

std::vector<Mat2R> integrate_lax_frame(const LaxFields& fields, const Mat2R& phi0,
                                       const Rect& rect, int nu, int nv, LaxPath path) {
  if (std::fabs(phi0.det() - 1.0) > 1e-9) {
    throw SingularMatrix("initial frame must have det 1");
  }
  std::vector<Mat2R> frames(static_cast<std::size_t>(nu) * nv);
  double du = (rect.u1 - rect.u0) / (nu - 1);
  double dv = (rect.v1 - rect.v0) / (nv - 1);
  auto idx = [nv](int i, int j) { return i * nv + j; };

  if (path == LaxPath::URowsFirst) {
    frames[idx(0, 0)] = phi0;
    for (int i = 1; i < nu; ++i) {
      double t = rect.u0 + (i - 1) * du;
      MatFn M = [&](double uu) { return lax_U(fields, uu, rect.v0); };
      frames[idx(i, 0)] = rk4_cell(frames[idx(i - 1, 0)], M, t, du);
    }
    for (int i = 0; i < nu; ++i) {
      double u = rect.u0 + i * du;
      MatFn M = [&](double vv) { return lax_V(fields, u, vv); };
      for (int j = 1; j < nv; ++j) {
        double t = rect.v0 + (j - 1) * dv;
        frames[idx(i, j)] = rk4_cell(frames[idx(i, j - 1)], M, t, dv);
      }
    }
  } else {
    frames[idx(0, 0)] = phi0;
    for (int j = 1; j < nv; ++j) {
      double t = rect.v0 + (j - 1) * dv;
      MatFn M = [&](double vv) { return lax_V(fields, rect.u0, vv); };
      frames[idx(0, j)] = rk4_cell(frames[idx(0, j - 1)], M, t, dv);
    }
    for (int j = 0; j < nv; ++j) {
      double v = rect.v0 + j * dv;
      MatFn M = [&](double uu) { return lax_U(fields, uu, v); };
      for (int i = 1; i < nu; ++i) {
        double t = rect.u0 + (i - 1) * du;
        frames[idx(i, j)] = rk4_cell(frames[idx(i - 1, j)], M, t, du);
      }
    }
  }
  return frames;
}

Vec3L tangent_from_frame(const LaxFields& fields, const Mat2R& phi, double u, double v) {
  double metric = fields.metric(u, v);
  if (metric <= kMetricEps) throw DegenerateMetric("Lax fields need a positive metric");
  double e_half = std::sqrt(metric);
  Mat2R nplus{0.0, 1.0, 0.0, 0.0};
  Mat2R m = sq_mul(sq_mul(phi, nplus), inverse(phi)) * e_half;
  return imag_part(m);
}

}  // namespace lw
