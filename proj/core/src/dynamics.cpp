#include "qvortex/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qvortex {

namespace {

constexpr Complex kI{0.0, 1.0};

// Ln_q(1 - x) for real x in (1, q), where the pole sum converges like q^-n.
double log_q_one_minus(double x, QBase base, const TruncationPolicy& policy) {
  return q_log_polesum(Complex{-x, 0.0}, base, policy).real();
}

std::vector<Complex> velocities(const AnnulusGeometry& geom, const std::vector<Complex>& positions,
                                const std::vector<double>& strengths,
                                const TruncationPolicy& policy) {
  std::vector<Vortex> vs(positions.size());
  for (std::size_t k = 0; k < positions.size(); ++k) vs[k] = {positions[k], strengths[k]};
  const VortexSystem sys(geom, std::move(vs));
  std::vector<Complex> out(positions.size());
  for (std::size_t k = 0; k < positions.size(); ++k) out[k] = std::conj(self_velocity(sys, k, policy));
  return out;
}

void check_limit_point(Complex z, Complex z0, Complex image, const char* who) {
  if (z == z0 || z == image || z == Complex{}) {
    std::ostringstream msg;
    msg << who << ": z = " << z << " is a singular point of the limiting flow";
    throw SingularityError(msg.str(), 0);
  }
}

}  // namespace

double alpha_parameter(const AnnulusGeometry& geom, Complex z) {
  return std::log(std::norm(z) / (geom.r1() * geom.r1())) / std::log(geom.q());
}

Complex self_velocity(const VortexSystem& sys, std::size_t k, const TruncationPolicy& policy) {
  if (k >= sys.size()) throw DomainError("self_velocity: vortex index out of range");
  const auto& geom = sys.geometry();
  const QBase base = geom.base();
  const double q = base.value();
  const Complex zk = sys[k].position;
  const double rho = std::norm(zk);

  // At z = z_k the q-logs of z/z_k and z_k/z coincide and cancel, leaving
  // the two families of images reflected in the cylinders.
  const double outer = log_q_one_minus(rho / (geom.r1() * geom.r1()), base, policy);
  const double inner = log_q_one_minus(geom.r2() * geom.r2() / rho, base, policy);
  Complex total = kI * sys[k].strength * (inner - outer) / (zk * (q - 1.0));

  for (std::size_t j = 0; j < sys.size(); ++j) {
    if (j == k) continue;
    total += induced_velocity_qlog(geom, sys[j], zk, policy).value;
  }
  return total;
}

OrbitState orbit_frequency(const AnnulusGeometry& geom, double kappa, double radius,
                           const TruncationPolicy& policy) {
  if (!(radius > geom.r1() && radius < geom.r2())) {
    std::ostringstream msg;
    msg << "orbit_frequency: radius " << radius << " outside (" << geom.r1() << ", " << geom.r2()
        << ")";
    throw DomainError(msg.str());
  }
  const QBase base = geom.base();
  const double rho = radius * radius;
  const double scale = kappa / (rho * (base.value() - 1.0));
  OrbitState s;
  s.radius = radius;
  s.omega1 = -scale * log_q_one_minus(geom.r2() * geom.r2() / rho, base, policy);
  s.omega2 = scale * log_q_one_minus(rho / (geom.r1() * geom.r1()), base, policy);
  s.omega = s.omega1 + s.omega2;
  return s;
}

double Trajectory::radius_drift(std::size_t k) const {
  double worst = 0.0;
  for (const auto& step : positions) {
    worst = std::max(worst, std::abs(std::abs(step.at(k)) - conserved_radii.at(k)));
  }
  return worst;
}

Trajectory integrate(const VortexSystem& sys, double t_end, double dt,
                     const TruncationPolicy& policy) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("integrate: dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("integrate: t_end must be >= 0");

  const auto& geom = sys.geometry();
  const std::size_t n = sys.size();
  std::vector<Complex> state(n);
  std::vector<double> strengths(n);
  Trajectory traj;
  for (std::size_t k = 0; k < n; ++k) {
    state[k] = sys[k].position;
    strengths[k] = sys[k].strength;
    traj.conserved_radii.push_back(std::abs(state[k]));
  }
  traj.times.push_back(0.0);
  traj.positions.push_back(state);

  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  auto shifted = [&](const std::vector<Complex>& base, const std::vector<Complex>& slope, double h) {
    std::vector<Complex> out(base);
    for (std::size_t k = 0; k < n; ++k) out[k] += h * slope[k];
    return out;
  };

  double t = 0.0;
  for (long i = 1; i <= steps; ++i) {
    const double t_next = i == steps ? t_end : static_cast<double>(i) * dt;
    const double h = t_next - t;
    try {
      const auto k1 = velocities(geom, state, strengths, policy);
      const auto k2 = velocities(geom, shifted(state, k1, h / 2), strengths, policy);
      const auto k3 = velocities(geom, shifted(state, k2, h / 2), strengths, policy);
      const auto k4 = velocities(geom, shifted(state, k3, h), strengths, policy);
      std::vector<Complex> next(state);
      for (std::size_t k = 0; k < n; ++k) {
        next[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
      }
      // Re-validates containment and separation of the new state.
      std::vector<Vortex> check(n);
      for (std::size_t k = 0; k < n; ++k) check[k] = {next[k], strengths[k]};
      static_cast<void>(VortexSystem(geom, std::move(check)));
      state = std::move(next);
    } catch (const DomainError& e) {
      std::ostringstream msg;
      msg << "halted at t = " << t << ": " << e.what();
      traj.completed = false;
      traj.diagnostic = msg.str();
      return traj;
    }
    t = t_next;
    traj.times.push_back(t);
    traj.positions.push_back(state);
  }
  return traj;
}

double default_time_step(const VortexSystem& sys, const TruncationPolicy& policy) {
  double rate = 0.0;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Complex zk = sys[k].position;
    rate = std::max(rate, std::abs(self_velocity(sys, k, policy)) / std::abs(zk));
    for (std::size_t j = 0; j < sys.size(); ++j) {
      if (j != k) rate = std::max(rate, std::abs(sys[j].strength) / std::norm(zk - sys[j].position));
    }
  }
  return rate > 0.0 ? 0.01 / rate : 0.01;
}

LimitFlow limit_one_cylinder(double r1, double kappa, Complex z0, Complex z) {
  if (!(r1 > 0.0) || !(std::abs(z0) > r1)) {
    throw DomainError("limit_one_cylinder: need |z0| > r1 > 0");
  }
  const Complex image = reflect(z0, r1);
  check_limit_point(z, z0, image, "limit_one_cylinder");
  const double rho = std::norm(z0);
  const double r1sq = r1 * r1;
  return {kI * kappa / (z - z0) - kI * kappa / z * image / (z - image),
          kappa * r1sq / (rho * (rho - r1sq))};
}

Complex limit_one_cylinder_potential(double r1, double kappa, Complex z0, Complex z) {
  if (!(r1 > 0.0) || !(std::abs(z0) > r1)) {
    throw DomainError("limit_one_cylinder_potential: need |z0| > r1 > 0");
  }
  const Complex image = reflect(z0, r1);
  check_limit_point(z, z0, image, "limit_one_cylinder_potential");
  return kI * kappa * (std::log(z - z0) - std::log(z - image) + std::log(z));
}

LimitFlow limit_one_disk(double r2, double kappa, Complex z0, Complex z) {
  if (!(r2 > 0.0) || !(std::abs(z0) < r2)) throw DomainError("limit_one_disk: need |z0| < r2");
  const double rho = std::norm(z0);
  const double omega = -kappa / (r2 * r2 - rho);
  if (z0 == Complex{}) {
    // Image at infinity.
    if (z == Complex{}) throw SingularityError("limit_one_disk: z coincides with the vortex", 0);
    return {kI * kappa / z, omega};
  }
  const Complex image = reflect(z0, r2);
  if (z == z0 || z == image) {
    throw SingularityError("limit_one_disk: z is a singular point of the limiting flow", 0);
  }
  return {kI * kappa / (z - z0) - kI * kappa / (z - image), omega};
}

Complex limit_one_disk_potential(double r2, double kappa, Complex z0, Complex z) {
  if (!(r2 > 0.0) || !(std::abs(z0) < r2) || z0 == Complex{}) {
    throw DomainError("limit_one_disk_potential: need 0 < |z0| < r2");
  }
  const Complex image = reflect(z0, r2);
  if (z == z0 || z == image) {
    throw SingularityError("limit_one_disk_potential: z is a singular point", 0);
  }
  return kI * kappa * (std::log(z - z0) - std::log(z - image) + std::log(-image));
}

}  // namespace qvortex
