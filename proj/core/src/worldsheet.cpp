#include "lw/worldsheet.hpp"

#include <algorithm>
#include <cmath>

#include "lw/func1.hpp"

namespace lw {

namespace {

// Trapezoid weight for a 1-D index.
double trap(int k, int n) { return (k == 0 || k == n - 1) ? 0.5 : 1.0; }

struct WorldsheetMetric {
  double h11, h12, h22;  // tau-tau, tau-sigma, sigma-sigma
};

WorldsheetMetric metric_at(const SurfaceGrid& s, int i, int j) {
  Vec3L tu = tangent_u_at(s, i, j);
  Vec3L tv = tangent_v_at(s, i, j);
  Vec3L phi_tau = tu - tv;
  Vec3L phi_sigma = tu + tv;
  return {inner3(phi_tau, phi_tau), inner3(phi_tau, phi_sigma), inner3(phi_sigma, phi_sigma)};
}

double neg_det(const WorldsheetMetric& m, int i, int j) {
  double nd = m.h12 * m.h12 - m.h11 * m.h22;
  if (nd < -1e-9) {
    throw SignatureError("worldsheet is not timelike at node (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
  }
  return std::max(nd, 0.0);
}

}  // namespace

double nambu_goto_action(const SurfaceGrid& s, double tension) {
  // dtau dsigma = du dv / 2.
  double cell = 0.5 * s.du() * s.dv();
  double sum = 0.0;
  for (int i = 0; i < s.nu; ++i) {
    for (int j = 0; j < s.nv; ++j) {
      WorldsheetMetric m = metric_at(s, i, j);
      sum += trap(i, s.nu) * trap(j, s.nv) * std::sqrt(neg_det(m, i, j));
    }
  }
  return -tension * sum * cell;
}

double wave_residual(const SurfaceGrid& s) {
  // Box phi = -phi_tautau + phi_sigmasigma = 4 phi_uv.
  double scale = 4.0 * s.du() * s.dv();
  double worst = 0.0;
  for (int i = 1; i + 1 < s.nu; ++i) {
    for (int j = 1; j + 1 < s.nv; ++j) {
      Vec3L box = (s.at(i + 1, j + 1) - s.at(i + 1, j - 1) - s.at(i - 1, j + 1) +
                   s.at(i - 1, j - 1)) *
                  (4.0 / scale);
      worst = std::max(worst, std::sqrt(std::fabs(inner3(box, box))));
    }
  }
  return worst;
}

SurfaceGrid dalembert_evolve(const StringState& st, double tau_max, int n_tau) {
  const std::size_t n = st.position.size();
  if (n < 4 || st.velocity.size() != n) {
    throw ConstraintViolation("initial data needs at least four matching samples");
  }
  if (!(st.sigma1 > st.sigma0)) throw ConstraintViolation("empty sigma range");
  double half_width = 0.5 * (st.sigma1 - st.sigma0);
  if (tau_max > half_width + 1e-12) {
    throw DomainError("tau_max exceeds the causal development of the initial segment");
  }
  if (n_tau < 2) throw DomainError("n_tau must be at least 2");

  std::vector<double> sig(n);
  for (std::size_t k = 0; k < n; ++k) {
    sig[k] = st.sigma0 + (st.sigma1 - st.sigma0) * static_cast<double>(k) / (n - 1);
  }
  auto component_spline = [&](const std::vector<Vec3L>& curve, auto member) {
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = curve[k].*member;
    return CubicSpline(sig, std::move(y));
  };
  CubicSpline p1 = component_spline(st.position, &Vec3L::x1);
  CubicSpline p2 = component_spline(st.position, &Vec3L::x2);
  CubicSpline p3 = component_spline(st.position, &Vec3L::x3);
  CubicSpline v1 = component_spline(st.velocity, &Vec3L::x1);
  CubicSpline v2 = component_spline(st.velocity, &Vec3L::x2);
  CubicSpline v3 = component_spline(st.velocity, &Vec3L::x3);

  // Conformal-gauge constraints at the samples.
  for (std::size_t k = 0; k < n; ++k) {
    Vec3L tau{v1.eval(sig[k]), v2.eval(sig[k]), v3.eval(sig[k])};
    Vec3L sgm{p1.derivative(sig[k]), p2.derivative(sig[k]), p3.derivative(sig[k])};
    if (std::fabs(inner3(tau, sgm)) > 1e-8 ||
        std::fabs(inner3(tau, tau) + inner3(sgm, sgm)) > 1e-8) {
      throw ConstraintViolation(
          "conformal-gauge constraints fail at sigma = " + std::to_string(sig[k]) +
          " (the sigma-derivative is spline-estimated; curved strings may need finer sampling)");
    }
  }

  // Capture the splines by value: the closures outlive this frame inside the
  // returned grid.
  auto xprime = [p1, p2, p3, v1, v2, v3](double t) {
    Vec3L tau{v1.eval(t), v2.eval(t), v3.eval(t)};
    Vec3L sgm{p1.derivative(t), p2.derivative(t), p3.derivative(t)};
    return (sgm + tau) * 0.5;
  };
  auto yprime = [p1, p2, p3, v1, v2, v3](double t) {
    Vec3L tau{v1.eval(t), v2.eval(t), v3.eval(t)};
    Vec3L sgm{p1.derivative(t), p2.derivative(t), p3.derivative(t)};
    return (sgm - tau) * 0.5;
  };

  SurfaceGrid grid;
  grid.rect = {st.sigma0, st.sigma1, st.sigma0, st.sigma1};
  grid.nu = grid.nv = n_tau;
  grid.xcurve.resize(n_tau);
  grid.ycurve.resize(n_tau);
  double h = (st.sigma1 - st.sigma0) / (n_tau - 1);
  grid.xcurve[0] = grid.ycurve[0] = Vec3L{};
  // Cumulative integrals of the spline-backed null-curve tangents; per-cell
  // 4-point Gauss-Legendre, matching the data-driven surface path.
  const double glx[2] = {0.3399810435848562648, 0.8611363115940525752};
  const double glw[2] = {0.6521451548625461426, 0.3478548451374538574};
  for (int k = 1; k < n_tau; ++k) {
    double lo = st.sigma0 + (k - 1) * h;
    double mid = lo + 0.5 * h, half = 0.5 * h;
    Vec3L cx{}, cy{};
    for (int g = 0; g < 2; ++g) {
      cx = cx + (xprime(mid - half * glx[g]) + xprime(mid + half * glx[g])) * glw[g];
      cy = cy + (yprime(mid - half * glx[g]) + yprime(mid + half * glx[g])) * glw[g];
    }
    grid.xcurve[k] = grid.xcurve[k - 1] + cx * half;
    grid.ycurve[k] = grid.ycurve[k - 1] + cy * half;
  }
  grid.pos.resize(static_cast<std::size_t>(n_tau) * n_tau);
  for (int i = 0; i < n_tau; ++i) {
    for (int j = 0; j < n_tau; ++j) {
      grid.pos[grid.index(i, j)] = grid.xcurve[i] + grid.ycurve[j];
    }
  }
  grid.tangent_u = [xprime](double u, double) { return xprime(u); };
  grid.tangent_v = [yprime](double, double v) { return yprime(v); };
  grid.flags.assign(grid.pos.size(), kFlagNone);
  for (int i = 0; i < n_tau; ++i) {
    Vec3L xp = xprime(grid.u_at(i));
    for (int j = 0; j < n_tau; ++j) {
      double metric = 2.0 * inner3(xp, yprime(grid.v_at(j)));
      if (std::fabs(metric) < 1e-10) grid.flags[grid.index(i, j)] |= kFlagDegenerate;
    }
  }
  return grid;
}

double euler_lagrange_residual(const SurfaceGrid& s, double tension) {
  // Canonical momenta (index-lowered components):
  //   p_tau = -T [ h12 phi_sigma - h22 phi_tau ] / sqrt(-det h)
  //   p_sigma = -T [ h12 phi_tau - h11 phi_sigma ] / sqrt(-det h)
  auto momenta = [&](int i, int j, Vec3L* ptau, Vec3L* psigma) {
    Vec3L tu = tangent_u_at(s, i, j);
    Vec3L tv = tangent_v_at(s, i, j);
    Vec3L phi_tau = tu - tv;
    Vec3L phi_sigma = tu + tv;
    double h11 = inner3(phi_tau, phi_tau);
    double h12 = inner3(phi_tau, phi_sigma);
    double h22 = inner3(phi_sigma, phi_sigma);
    double nd = h12 * h12 - h11 * h22;
    if (nd < -1e-9) throw SignatureError("worldsheet is not timelike");
    double root = std::sqrt(std::max(nd, 1e-300));
    *ptau = (phi_sigma * h12 - phi_tau * h22) * (-tension / root);
    *psigma = (phi_tau * h12 - phi_sigma * h11) * (-tension / root);
  };

  auto usable = [&](int i, int j) { return !s.degenerate(i, j); };

  double worst = 0.0;
  double du = s.du(), dv = s.dv();
  for (int i = 2; i + 2 < s.nu; ++i) {
    for (int j = 2; j + 2 < s.nv; ++j) {
      // The momenta stencil spans the 1-ring; skip if any sample is degenerate.
      bool ok = true;
      for (int a = -1; a <= 1 && ok; ++a) {
        for (int b = -1; b <= 1 && ok; ++b) {
          if (!usable(i + a, j + b)) ok = false;
        }
      }
      if (!ok) continue;
      Vec3L ptau_up, psig_up, ptau_dn, psig_dn, ptau_r, psig_r, ptau_l, psig_l;
      // d/dtau = d_u - d_v, d/dsigma = d_u + d_v on the (u,v) lattice.
      momenta(i + 1, j, &ptau_up, &psig_up);
      momenta(i - 1, j, &ptau_dn, &psig_dn);
      momenta(i, j + 1, &ptau_r, &psig_r);
      momenta(i, j - 1, &ptau_l, &psig_l);
      Vec3L ptau_u = (ptau_up - ptau_dn) / (2.0 * du);
      Vec3L ptau_v = (ptau_r - ptau_l) / (2.0 * dv);
      Vec3L psig_u = (psig_up - psig_dn) / (2.0 * du);
      Vec3L psig_v = (psig_r - psig_l) / (2.0 * dv);
      Vec3L res = (ptau_u - ptau_v) + (psig_u + psig_v);
      worst = std::max({worst, std::fabs(res.x1), std::fabs(res.x2), std::fabs(res.x3)});
    }
  }
  return worst;
}

EinsteinHilbert einstein_hilbert_interior(const SurfaceGrid& s, double alpha_prime) {
  EinsteinHilbert out;
  double cell = 0.5 * s.du() * s.dv();  // dtau dsigma
  double sum = 0.0;
  AnalyzerOptions opt;
  opt.richardson = s.has_closures();
  for (int i = 0; i < s.nu; ++i) {
    for (int j = 0; j < s.nv; ++j) {
      if (s.degenerate(i, j)) {
        ++out.skipped;
        continue;
      }
      double k, metric;
      try {
        Vec3L tu = tangent_u_at(s, i, j);
        Vec3L tv = tangent_v_at(s, i, j);
        metric = 2.0 * inner3(tu, tv);
        k = gaussian_curvature(s, i, j, opt);
      } catch (const Error&) {
        ++out.skipped;
        continue;
      }
      sum += trap(i, s.nu) * trap(j, s.nv) * k * std::fabs(metric);
    }
  }
  out.value = sum * cell / (2.0 * 3.14159265358979323846 * alpha_prime);
  return out;
}

}  // namespace lw
