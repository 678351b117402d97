#include "qvortex/theta.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qvortex {

namespace {

constexpr Complex kI{0.0, 1.0};

// prod_{n>=1} (1 - p^n) with |G - G_N| <= G_N expm1(p^{N+1} / (1-p)).
double euler_product(double p, const TruncationPolicy& policy) {
  double g = 1.0;
  double pn = p;
  double bound = std::numeric_limits<double>::infinity();
  int n = 1;
  for (; n <= policy.max_terms(); ++n) {
    g *= 1.0 - pn;
    pn *= p;
    bound = g * std::expm1(pn / (1.0 - p));
    if (policy.abs_tol() > 0.0 && bound <= policy.abs_tol()) return g;
  }
  if (policy.abs_tol() > 0.0) {
    throw ConvergenceError("ThetaParams: product for G did not reach abs_tol", bound, n - 1);
  }
  return g;
}

Complex theta_prefactor(Complex x, const ThetaParams& params) {
  return 2.0 * params.G() * std::pow(params.q_tilde(), 0.25) * std::sin(x);
}

}  // namespace

ThetaParams::ThetaParams(double q_tilde, const TruncationPolicy& policy) : q_tilde_(q_tilde) {
  if (!(q_tilde > 0.0 && q_tilde < 1.0)) {
    std::ostringstream msg;
    msg << "ThetaParams: q_tilde must lie in (0, 1), got " << q_tilde;
    throw DomainError(msg.str());
  }
  g_ = euler_product(q_tilde * q_tilde, policy);
}

ThetaParams ThetaParams::for_geometry(const AnnulusGeometry& geom, const TruncationPolicy& policy) {
  return ThetaParams(geom.r1() / geom.r2(), policy);
}

Complex theta1(Complex x, const ThetaParams& params, const TruncationPolicy& policy) {
  const double p = params.nome_squared();
  const Complex e_plus = std::exp(2.0 * kI * x);
  const Complex e_minus = 1.0 / e_plus;
  const double spread = std::abs(e_plus) + std::abs(e_minus);
  const Complex prefactor = theta_prefactor(x, params);

  Complex product{1.0, 0.0};
  double pn = p;
  double bound = std::numeric_limits<double>::infinity();
  int n = 1;
  for (; n <= policy.max_terms(); ++n) {
    product *= (1.0 - pn * e_plus) * (1.0 - pn * e_minus);
    pn *= p;
    bound = std::abs(prefactor * product) * std::expm1(pn * spread / (1.0 - p));
    if (policy.abs_tol() > 0.0 && bound <= policy.abs_tol()) return prefactor * product;
  }
  if (policy.abs_tol() > 0.0) {
    throw ConvergenceError("theta1: product did not reach abs_tol", bound, n - 1);
  }
  return prefactor * product;
}

Complex theta1_from_qexp(Complex x, const ThetaParams& params, const TruncationPolicy& policy) {
  const double p = params.nome_squared();
  const UnitBase base = params.base();
  const Complex e_plus = std::exp(2.0 * kI * x);
  const Complex plus = q_exp_star(p * e_plus / (p - 1.0), base, policy);
  const Complex minus = q_exp_star(p / (e_plus * (p - 1.0)), base, policy);
  return theta_prefactor(x, params) * plus * minus;
}

RectangleCoords rectangle_coords(const VortexSystem& sys, Complex z) {
  RectangleCoords rc{to_rectangle(z), {}};
  rc.tau_k.reserve(sys.size());
  for (const auto& v : sys.vortices()) rc.tau_k.push_back(to_rectangle(v.position));
  return rc;
}

double stream_theta(const VortexSystem& sys, Complex z, const TruncationPolicy& policy) {
  const auto& geom = sys.geometry();
  if (std::abs(geom.r2() - 1.0) > 1e-12) {
    throw DomainError("stream_theta: outer radius must be 1; rescale the system first");
  }
  if (!geom.contains_closed(z)) throw DomainError("stream_theta: z lies outside the annulus");
  for (std::size_t k = 0; k < sys.size(); ++k) {
    if (std::abs(z - sys[k].position) <= 1e-12) {
      throw SingularityError("stream_theta: z coincides with a vortex", k);
    }
  }

  const ThetaParams params = ThetaParams::for_geometry(geom, policy);
  const RectangleCoords rc = rectangle_coords(sys, z);
  double psi = 0.0;
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Complex u = 0.5 * kI * (rc.tau - rc.tau_k[k]);
    const Complex v = 0.5 * kI * (rc.tau + std::conj(rc.tau_k[k]));
    const double num = std::abs(theta1(u, params, policy));
    const double den = std::abs(theta1(v, params, policy));
    if (num == 0.0 || den == 0.0) {
      throw PoleError("stream_theta: theta function vanishes at an image position", 0);
    }
    psi += sys[k].strength * (std::log(num) - std::log(den));
  }
  return psi;
}

RescaledSystem rescale_to_unit_outer(const VortexSystem& sys) {
  const auto& geom = sys.geometry();
  const double scale = 1.0 / geom.r2();
  std::vector<Vortex> scaled;
  scaled.reserve(sys.size());
  for (const auto& v : sys.vortices()) scaled.push_back({v.position * scale, v.strength});
  return {VortexSystem(AnnulusGeometry(geom.r1() * scale, 1.0), std::move(scaled)), scale};
}

}  // namespace qvortex
