#pragma once

#include <string>
#include <vector>

#include "qvortex/flow.hpp"

namespace qvortex {

/// Uniform rotation of a lone vortex: z0(t) = |z0| exp(i (omega t + phase)).
/// omega = omega1 + omega2, the inner-image and outer-image contributions.
struct OrbitState {
  double radius = 0.0;
  double phase = 0.0;
  double omega = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
};

/// alpha = log_q(|z|^2 / r1^2); 0 at the inner wall, 1/2 at the geometric
/// mean, 1 at the outer wall.
double alpha_parameter(const AnnulusGeometry& geom, Complex z);

/// Conjugate velocity advecting vortex k: its own images (self pole removed)
/// plus the full fields of every other vortex, all in closed q-log form.
/// The vortex moves with dz_k/dt = conj(self_velocity).
Complex self_velocity(const VortexSystem& sys, std::size_t k, const TruncationPolicy& policy = {});

/// Angular frequency of a single vortex of strength kappa at |z0| = radius.
OrbitState orbit_frequency(const AnnulusGeometry& geom, double kappa, double radius,
                           const TruncationPolicy& policy = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<Complex>> positions;  // positions[step][vortex]
  std::vector<double> conserved_radii;          // |z_k(0)|
  bool completed = true;
  std::string diagnostic;  // why integration stopped early, if it did

  /// max over recorded steps of | |z_k(t)| - |z_k(0)| |.
  double radius_drift(std::size_t k) const;
};

/// Classical fixed-step fourth-order Runge-Kutta. The last step is shortened
/// to land on t_end exactly. Stops early, keeping the partial trajectory,
/// if a vortex leaves the open annulus or meets another vortex.
Trajectory integrate(const VortexSystem& sys, double t_end, double dt,
                     const TruncationPolicy& policy = {});

/// Step with |omega| dt <= 0.01 for the fastest vortex (rotation about the
/// origin, or about a neighbour for close pairs).
double default_time_step(const VortexSystem& sys, const TruncationPolicy& policy = {});

struct LimitFlow {
  Complex velocity;  // conjugate velocity at z
  double omega = 0.0;
};

/// q -> infinity with r1 fixed: one cylinder in an unbounded plane.
LimitFlow limit_one_cylinder(double r1, double kappa, Complex z0, Complex z);
/// i kappa [ln(z - z0) - ln(z - r1^2/conj z0) + ln z].
Complex limit_one_cylinder_potential(double r1, double kappa, Complex z0, Complex z);

/// q -> infinity with r2 fixed: the inner cylinder shrinks away, leaving a disk.
LimitFlow limit_one_disk(double r2, double kappa, Complex z0, Complex z);
/// i kappa [ln(z - z0) - ln(z - r2^2/conj z0) + ln(-r2^2/conj z0)].
Complex limit_one_disk_potential(double r2, double kappa, Complex z0, Complex z);

}  // namespace qvortex
