#include "lw/weierstrass.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "lw/parallel.hpp"

namespace lw {

namespace {

constexpr double kDegenerateEps = 1e-10;

// 4-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlx[2] = {0.3399810435848562648, 0.8611363115940525752};
constexpr double kGlw[2] = {0.6521451548625461426, 0.3478548451374538574};

// Cumulative line integral of F over the uniform lattice [a, b] / (n-1),
// anchored to 0 at a.
std::vector<Vec3L> cumulative_integral(const std::function<Vec3L(double)>& F, double a, double b,
                                       int n) {
  std::vector<Vec3L> out(n);
  out[0] = Vec3L{};
  double h = n > 1 ? (b - a) / (n - 1) : 0.0;
  for (int k = 1; k < n; ++k) {
    double lo = a + (k - 1) * h;
    double mid = lo + 0.5 * h;
    double half = 0.5 * h;
    Vec3L cell{};
    for (int g = 0; g < 2; ++g) {
      Vec3L p1 = F(mid - half * kGlx[g]);
      Vec3L p2 = F(mid + half * kGlx[g]);
      cell = cell + (p1 + p2) * kGlw[g];
    }
    out[k] = out[k - 1] + cell * half;
  }
  return out;
}

void assemble_from_curves(SurfaceGrid* grid) {
  grid->pos.resize(static_cast<std::size_t>(grid->nu) * grid->nv);
  parallel_for(grid->nu, [&](int i) {
    for (int j = 0; j < grid->nv; ++j) {
      grid->pos[grid->index(i, j)] = grid->xcurve[i] + grid->ycurve[j];
    }
  });
}

}  // namespace

double Field2::d_u(double u, double v) const {
  if (du) return du(u, v);
  const double h = 1e-5;
  return (8.0 * (value(u + h, v) - value(u - h, v)) - (value(u + 2 * h, v) - value(u - 2 * h, v))) /
         (12.0 * h);
}

double Field2::d_v(double u, double v) const {
  if (dv) return dv(u, v);
  const double h = 1e-5;
  return (8.0 * (value(u, v + h) - value(u, v - h)) - (value(u, v + 2 * h) - value(u, v - 2 * h))) /
         (12.0 * h);
}

WeierstrassData WeierstrassData::from_exprs(const Expr& q, const Expr& f, const Expr& r,
                                            const Expr& g) {
  // q,f share the u variable and r,g the v variable; the axis is positional,
  // so the only hard requirement is that the two axes use distinct names.
  auto axis_var = [](const Expr& a, const Expr& b, const char* axis) {
    const std::string& va = a.variable();
    const std::string& vb = b.variable();
    if (!va.empty() && !vb.empty() && va != vb) {
      throw DomainError(std::string("data functions of the ") + axis +
                        " axis use different variables ('" + va + "' vs '" + vb + "')");
    }
    return va.empty() ? vb : va;
  };
  std::string uvar = axis_var(q, f, "u");
  std::string vvar = axis_var(r, g, "v");
  if (!uvar.empty() && uvar == vvar) {
    throw DomainError("r and g must depend on the second variable only, not on '" + uvar + "'");
  }
  WeierstrassData d;
  d.q = Func1D::from_expr(q);
  d.f = Func1D::from_expr(f);
  d.r = Func1D::from_expr(r);
  d.g = Func1D::from_expr(g);
  return d;
}

WeierstrassData WeierstrassData::from_strings(const std::string& q, const std::string& f,
                                              const std::string& r, const std::string& g) {
  return from_exprs(Expr::parse(q), Expr::parse(f), Expr::parse(r), Expr::parse(g));
}

double WeierstrassData::metric_coeff(double u, double v) const {
  double one_qr = 1.0 + q(u) * r(v);
  return one_qr * one_qr * f(u) * g(v);
}

std::pair<Vec3L, Vec3L> tangents(const WeierstrassData& d, double u, double v) {
  double qv = d.q(u), fv = d.f(u);
  double rv = d.r(v), gv = d.g(v);
  Vec3L xi{0.5 * (1.0 + qv * qv) * fv, -0.5 * (1.0 - qv * qv) * fv, -qv * fv};
  Vec3L eta{-0.5 * (1.0 + rv * rv) * gv, -0.5 * (1.0 - rv * rv) * gv, -rv * gv};
  return {xi, eta};
}

SurfaceGrid integrate_surface(const WeierstrassData& d, const Rect& rect, int nu, int nv) {
  if (nu < 2 || nv < 2) throw DomainError("grid needs nu, nv >= 2");
  SurfaceGrid grid;
  grid.rect = rect;
  grid.nu = nu;
  grid.nv = nv;

  auto xi = [d](double u) {
    double qv = d.q(u), fv = d.f(u);
    return Vec3L{0.5 * (1.0 + qv * qv) * fv, -0.5 * (1.0 - qv * qv) * fv, -qv * fv};
  };
  auto eta = [d](double v) {
    double rv = d.r(v), gv = d.g(v);
    return Vec3L{-0.5 * (1.0 + rv * rv) * gv, -0.5 * (1.0 - rv * rv) * gv, -rv * gv};
  };
  grid.xcurve = cumulative_integral(xi, rect.u0, rect.u1, nu);
  grid.ycurve = cumulative_integral(eta, rect.v0, rect.v1, nv);
  assemble_from_curves(&grid);

  grid.flags.assign(grid.pos.size(), kFlagNone);
  for (int i = 0; i < nu; ++i) {
    double u = grid.u_at(i);
    double qv = d.q(u), fv = d.f(u);
    for (int j = 0; j < nv; ++j) {
      double v = grid.v_at(j);
      double one_qr = 1.0 + qv * d.r(v);
      double metric = one_qr * one_qr * fv * d.g(v);
      std::uint8_t fl = kFlagNone;
      if (std::fabs(metric) < kDegenerateEps) fl |= kFlagDegenerate;
      if (metric < -kDegenerateEps) fl |= kFlagNegativeMetric;
      grid.flags[grid.index(i, j)] = fl;
    }
  }

  grid.tangent_u = [d](double u, double v) { return tangents(d, u, v).first; };
  grid.tangent_v = [d](double u, double v) { return tangents(d, u, v).second; };
  return grid;
}

SurfaceGrid conjugate(const SurfaceGrid& s) {
  if (!s.has_decomposition()) {
    throw MissingDecomposition("conjugate needs a surface built as X(u) + Y(v)");
  }
  SurfaceGrid grid;
  grid.rect = s.rect;
  grid.nu = s.nu;
  grid.nv = s.nv;
  grid.xcurve = s.xcurve;
  grid.ycurve.resize(s.ycurve.size());
  for (std::size_t k = 0; k < s.ycurve.size(); ++k) grid.ycurve[k] = -s.ycurve[k];
  assemble_from_curves(&grid);

  // The degenerate set is unchanged (the metric coefficient only flips sign);
  // orientation flags do not carry over.
  grid.flags.resize(s.flags.size());
  for (std::size_t k = 0; k < s.flags.size(); ++k) {
    grid.flags[k] = s.flags[k] & kFlagDegenerate;
  }
  if (s.has_closures()) {
    TangentField tv = s.tangent_v;
    grid.tangent_u = s.tangent_u;
    grid.tangent_v = [tv](double u, double v) { return -tv(u, v); };
  }
  return grid;
}

WeierstrassData extract_data(const NullCurvePair& n, int samples) {
  if (samples < 2) throw DomainError("extract_data needs at least two samples");
  std::vector<double> us(samples), vs(samples);
  std::vector<double> qs(samples), fs(samples), rs(samples), gs(samples);
  double hu = (n.u1 - n.u0) / (samples - 1);
  double hv = (n.v1 - n.v0) / (samples - 1);
  for (int k = 0; k < samples; ++k) {
    double u = n.u0 + k * hu;
    Vec3L xi = n.xi(u);
    if (std::fabs(inner3(xi, xi)) > 1e-9) {
      throw NotNull("xi is not a null curve at u = " + std::to_string(u));
    }
    double f = xi.x1 - xi.x2;  // -xi0 + xi1 = -f
    if (std::fabs(f) < 1e-12) {
      throw ZeroDenominator("f vanishes at u = " + std::to_string(u));
    }
    us[k] = u;
    fs[k] = f;
    qs[k] = -xi.x3 / f;  // xi2 = -q f
  }
  for (int k = 0; k < samples; ++k) {
    double v = n.v0 + k * hv;
    Vec3L eta = n.eta(v);
    if (std::fabs(inner3(eta, eta)) > 1e-9) {
      throw NotNull("eta is not a null curve at v = " + std::to_string(v));
    }
    double g = -(eta.x1 + eta.x2);  // eta0 + eta1 = -g
    if (std::fabs(g) < 1e-12) {
      throw ZeroDenominator("g vanishes at v = " + std::to_string(v));
    }
    vs[k] = v;
    gs[k] = g;
    rs[k] = -eta.x3 / g;  // eta2 = -r g
  }
  WeierstrassData d;
  d.q = Func1D::from_samples(us, qs);
  d.f = Func1D::from_samples(us, fs);
  d.r = Func1D::from_samples(vs, rs);
  d.g = Func1D::from_samples(vs, gs);
  return d;
}

SurfaceGrid surface_from_spinors(const SpinorField& sp, const Rect& rect, int nu, int nv) {
  if (nu < 2 || nv < 2) throw DomainError("grid needs nu, nv >= 2");
  SurfaceGrid grid;
  grid.rect = rect;
  grid.nu = nu;
  grid.nv = nv;

  // Frame determinant must stay positive on the lattice.
  for (int i = 0; i < nu; ++i) {
    double u = rect.u0 + i * (rect.u1 - rect.u0) / (nu - 1);
    for (int j = 0; j < nv; ++j) {
      double v = rect.v0 + j * (rect.v1 - rect.v0) / (nv - 1);
      double det = sp.s1.value(u, v) * sp.s2.value(u, v) + sp.t1.value(u, v) * sp.t2.value(u, v);
      if (det <= 0.0) {
        throw NonPositiveFrameDet("det of the conformal frame is not positive at (u,v) = (" +
                                  std::to_string(u) + ", " + std::to_string(v) + ")");
      }
    }
  }

  // One-form components; the du parts are integrated along v = v0 and the dv
  // parts along u = u0, which is exact for Dirac solutions with p = 0.
  double v0 = rect.v0, u0 = rect.u0;
  auto xi = [&sp, v0](double u) {
    double a = sp.s1.value(u, v0), b = sp.t1.value(u, v0);
    return Vec3L{0.5 * (a * a + b * b), 0.5 * (a * a - b * b), -a * b};
  };
  auto eta = [&sp, u0](double v) {
    double a = sp.s2.value(u0, v), b = sp.t2.value(u0, v);
    return Vec3L{-0.5 * (a * a + b * b), 0.5 * (a * a - b * b), -a * b};
  };
  grid.xcurve = cumulative_integral(xi, rect.u0, rect.u1, nu);
  grid.ycurve = cumulative_integral(eta, rect.v0, rect.v1, nv);
  assemble_from_curves(&grid);

  grid.flags.assign(grid.pos.size(), kFlagNone);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      double u = grid.u_at(i), v = grid.v_at(j);
      double det = sp.s1.value(u, v) * sp.s2.value(u, v) + sp.t1.value(u, v) * sp.t2.value(u, v);
      if (det * det < kDegenerateEps) grid.flags[grid.index(i, j)] |= kFlagDegenerate;
    }
  }

  SpinorField cp = sp;
  grid.tangent_u = [cp](double u, double v) {
    double a = cp.s1.value(u, v), b = cp.t1.value(u, v);
    return Vec3L{0.5 * (a * a + b * b), 0.5 * (a * a - b * b), -a * b};
  };
  grid.tangent_v = [cp](double u, double v) {
    double a = cp.s2.value(u, v), b = cp.t2.value(u, v);
    return Vec3L{-0.5 * (a * a + b * b), 0.5 * (a * a - b * b), -a * b};
  };
  return grid;
}

SpinorField spinors_from_data(const WeierstrassData& d, const Rect& rect) {
  const int kProbe = 257;
  for (int k = 0; k < kProbe; ++k) {
    double u = rect.u0 + k * (rect.u1 - rect.u0) / (kProbe - 1);
    double v = rect.v0 + k * (rect.v1 - rect.v0) / (kProbe - 1);
    if (d.f(u) <= 0.0) {
      throw SignObstruction("f must be positive for the spinor form (f(" + std::to_string(u) +
                            ") <= 0)");
    }
    if (d.g(v) <= 0.0) {
      throw SignObstruction("g must be positive for the spinor form (g(" + std::to_string(v) +
                            ") <= 0)");
    }
  }

  Func1D q = d.q, f = d.f, r = d.r, g = d.g;
  Func1D dq = q.derivative(), df = f.derivative(), dr = r.derivative(), dg = g.derivative();

  SpinorField sp;
  auto sqrt_of = [](const Func1D& h) {
    return [h](double t) { return std::sqrt(h(t)); };
  };
  auto su = sqrt_of(f), sv = sqrt_of(g);
  // s1 = q sqrt(f): d/du = q' sqrt(f) + q f' / (2 sqrt(f)).
  sp.s1.value = [q, su](double u, double) { return q(u) * su(u); };
  sp.s1.du = [q, dq, f, df, su](double u, double) {
    return dq(u) * su(u) + q(u) * df(u) / (2.0 * su(u));
  };
  sp.s1.dv = [](double, double) { return 0.0; };
  sp.t1.value = [su](double u, double) { return su(u); };
  sp.t1.du = [df, su](double u, double) { return df(u) / (2.0 * su(u)); };
  sp.t1.dv = [](double, double) { return 0.0; };
  sp.s2.value = [r, sv](double, double v) { return r(v) * sv(v); };
  sp.s2.du = [](double, double) { return 0.0; };
  sp.s2.dv = [r, dr, g, dg, sv](double, double v) {
    return dr(v) * sv(v) + r(v) * dg(v) / (2.0 * sv(v));
  };
  sp.t2.value = [sv](double, double v) { return sv(v); };
  sp.t2.du = [](double, double) { return 0.0; };
  sp.t2.dv = [dg, sv](double, double v) { return dg(v) / (2.0 * sv(v)); };
  sp.p.value = [](double, double) { return 0.0; };
  sp.p.du = sp.p.dv = [](double, double) { return 0.0; };
  return sp;
}

double dirac_residual(const SpinorField& sp, const Rect& rect, int n) {
  if (n < 2) throw DomainError("dirac_residual needs n >= 2");
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rect.u0 + i * (rect.u1 - rect.u0) / (n - 1);
    for (int j = 0; j < n; ++j) {
      double v = rect.v0 + j * (rect.v1 - rect.v0) / (n - 1);
      double p = sp.p.value(u, v);
      double r1 = -sp.t2.d_u(u, v) - p * sp.s1.value(u, v);
      double r2 = -sp.s1.d_v(u, v) + p * sp.t2.value(u, v);
      double r3 = sp.s2.d_u(u, v) - p * sp.t1.value(u, v);
      double r4 = -sp.t1.d_v(u, v) - p * sp.s2.value(u, v);
      worst = std::max({worst, std::fabs(r1), std::fabs(r2), std::fabs(r3), std::fabs(r4)});
    }
  }
  return worst;
}

SurfaceGrid pseudosphere_surface(double H, const Vec3L& center, const Expr& q, const Expr& r,
                                 const Rect& rect, int nu, int nv) {
  if (H == 0.0) throw DomainError("pseudosphere needs H != 0");
  if (nu < 2 || nv < 2) throw DomainError("grid needs nu, nv >= 2");
  SurfaceGrid grid;
  grid.rect = rect;
  grid.nu = nu;
  grid.nv = nv;
  grid.pos.resize(static_cast<std::size_t>(nu) * nv);
  grid.flags.assign(grid.pos.size(), kFlagNone);

  Expr dq = q.differentiate();
  Expr dr = r.differentiate();

  auto position = [H, center, q, r](double u, double v) {
    double qv = q.eval(u), rv = r.eval(v);
    double D = 1.0 + qv * rv;
    if (std::fabs(D) < 1e-10) {
      throw EquatorSingularity("1 + q r vanishes at (u,v) = (" + std::to_string(u) + ", " +
                               std::to_string(v) + ")");
    }
    double s = 1.0 / (H * D);
    return Vec3L{-(qv - rv) * s + center.x1, -(qv + rv) * s + center.x2,
                 (1.0 - qv * rv) * s + center.x3};
  };

  for (int i = 0; i < nu; ++i) {
    double u = grid.u_at(i);
    double qv = q.eval(u), dqv = dq.eval(u);
    for (int j = 0; j < nv; ++j) {
      double v = grid.v_at(j);
      grid.pos[grid.index(i, j)] = position(u, v);
      double rv = r.eval(v);
      double D = 1.0 + qv * rv;
      double metric = 4.0 * dqv * dr.eval(v) / (H * H * D * D);
      std::uint8_t fl = kFlagNone;
      if (std::fabs(metric) < kDegenerateEps) fl |= kFlagDegenerate;
      if (metric < -kDegenerateEps) fl |= kFlagNegativeMetric;
      grid.flags[grid.index(i, j)] = fl;
    }
  }

  // phi_u = -q'(u)/H * d/dq [invproj], phi_v = -r'(v)/H * d/dr [invproj].
  grid.tangent_u = [H, q, r, dq](double u, double v) {
    double qv = q.eval(u), rv = r.eval(v);
    double D = 1.0 + qv * rv;
    double s = -dq.eval(u) / (H * D * D);
    return Vec3L{(1.0 + rv * rv) * s, (1.0 - rv * rv) * s, 2.0 * rv * s};
  };
  grid.tangent_v = [H, q, r, dr](double u, double v) {
    double qv = q.eval(u), rv = r.eval(v);
    double D = 1.0 + qv * rv;
    double s = -dr.eval(v) / (H * D * D);
    return Vec3L{-(1.0 + qv * qv) * s, (1.0 - qv * qv) * s, 2.0 * qv * s};
  };
  return grid;
}

}  // namespace lw
