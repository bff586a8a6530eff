#pragma once

#include <vector>

#include "lw/geometry.hpp"
#include "lw/grid.hpp"

namespace lw {

/// String initial data at tau = 0: sampled position and velocity curves over
/// sigma in [sigma0, sigma1]. The conformal-gauge constraints
///   <phi_tau, phi_sigma> = 0 and <phi_tau,phi_tau> + <phi_sigma,phi_sigma> = 0
/// must hold to 1e-8 at the samples.
struct StringState {
  double sigma0 = 0.0;
  double sigma1 = 1.0;
  std::vector<Vec3L> position;
  std::vector<Vec3L> velocity;
  double tension = 1.0 / (2.0 * 3.14159265358979323846);  // alpha' = 1
};

/// Worldsheet coordinates are (x,y) = (tau, sigma) with u = tau + sigma,
/// v = -tau + sigma; du dv = 2 dtau dsigma. All grid reductions below apply
/// that Jacobian in one place.

/// Nambu-Goto action S = -T * Int sqrt(-det h) dtau dsigma over the patch,
/// trapezoid rule over nodes, h_ab from finite-difference tangents.
/// SignatureError when -det h < 0 beyond rounding at a node.
double nambu_goto_action(const SurfaceGrid& s, double tension);

/// Max node-wise Minkowski norm of the finite-difference d'Alembertian
/// (computed as 4 phi_uv in null coordinates).
double wave_residual(const SurfaceGrid& s);

/// d'Alembert evolution of the initial data: X' = (phi_sigma + phi_tau)/2 on
/// u, Y' = (phi_sigma - phi_tau)/2 on v, sheet X(u) + Y(v). The result covers
/// the causal development, returned as the (u,v) square [sigma0, sigma1]^2
/// at resolution n_tau; tau_max must not exceed (sigma1 - sigma0)/2.
/// ConstraintViolation when the initial invariants fail.
SurfaceGrid dalembert_evolve(const StringState& st, double tau_max, int n_tau);

/// Max finite-difference residual of d/dtau (dL/dphi_tau) + d/dsigma (dL/dphi_sigma)
/// with L = -T sqrt(-det h); gauge-independent minimality check.
double euler_lagrange_residual(const SurfaceGrid& s, double tension);

/// Interior Einstein-Hilbert / Gauss-Bonnet term (1 / 2 pi alpha') Int K dA
/// with dA = e^omega dtau dsigma. Degenerate nodes are skipped and counted.
struct EinsteinHilbert {
  double value = 0.0;
  int skipped = 0;
};
EinsteinHilbert einstein_hilbert_interior(const SurfaceGrid& s, double alpha_prime);

}  // namespace lw
