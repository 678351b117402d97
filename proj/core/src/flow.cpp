#include "qvortex/flow.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace qvortex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Complex kI{0.0, 1.0};

// Points closer than this (relative to r2) to a vortex or image are singular.
constexpr double kSingularRelTol = 1e-12;

void check_in_closed_annulus(const AnnulusGeometry& geom, Complex z, const char* who) {
  if (!geom.contains_closed(z)) {
    std::ostringstream msg;
    msg << who << ": z = " << z << " (|z| = " << std::abs(z) << ") lies outside the annulus "
        << geom.r1() << " <= |z| <= " << geom.r2();
    throw DomainError(msg.str());
  }
}

void check_not_on_vortex(const VortexSystem& sys, Complex z, const char* who) {
  const double tol = kSingularRelTol * sys.geometry().r2();
  for (std::size_t k = 0; k < sys.size(); ++k) {
    if (std::abs(z - sys[k].position) <= tol) {
      std::ostringstream msg;
      msg << who << ": z = " << z << " coincides with vortex " << k;
      throw SingularityError(msg.str(), k);
    }
  }
}

// sum_{n > order} rho^{n+1}
double geometric_tail(double rho, int order) {
  if (!(rho < 1.0)) return kInf;
  return std::pow(rho, order + 2) / (1.0 - rho);
}

// Bound on the dropped shells |n| > n_range of one paired lattice; a = z_k,
// b = r1^2 / conj z_k.
double lattice_tail(Complex a, Complex b, Complex z, double q, int n_range) {
  const double gap = std::abs(a - b);
  const double near = std::min(std::abs(a), std::abs(b));
  const double far = std::max(std::abs(a), std::abs(b));
  const double zr = std::abs(z);
  const double geometric = q / (q - 1.0);

  const double q_out = std::pow(q, n_range + 1);
  const double outward_gap = near * q_out - zr;
  const double inward_gap = zr - far / q_out;
  if (!(outward_gap > 0.0) || !(inward_gap > 0.0)) return kInf;
  const double outward = gap * q_out / (outward_gap * outward_gap) * geometric;
  const double inward = gap / q_out / (inward_gap * inward_gap) * geometric;
  return outward + inward;
}

}  // namespace

VortexSystem::VortexSystem(AnnulusGeometry geom, std::vector<Vortex> vortices)
    : geom_(geom), vortices_(std::move(vortices)) {
  if (vortices_.empty()) throw DomainError("VortexSystem: at least one vortex is required");
  for (const auto& v : vortices_) validate_vortex(v, geom_);
  const double tol = kSingularRelTol * geom_.r2();
  for (std::size_t i = 0; i < vortices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vortices_.size(); ++j) {
      if (std::abs(vortices_[i].position - vortices_[j].position) <= tol) {
        std::ostringstream msg;
        msg << "VortexSystem: vortices " << i << " and " << j << " coincide";
        throw DomainError(msg.str());
      }
    }
  }
}

std::string_view to_string(Representation rep) {
  switch (rep) {
    case Representation::laurent: return "laurent";
    case Representation::images: return "images";
    case Representation::qlog: return "qlog";
  }
  return "unknown";
}

std::optional<Representation> parse_representation(std::string_view name) {
  if (name == "laurent") return Representation::laurent;
  if (name == "images") return Representation::images;
  if (name == "qlog") return Representation::qlog;
  return std::nullopt;
}

LaurentCoefficients laurent_coefficients(const VortexSystem& sys, int order) {
  if (order < 0) throw DomainError("laurent_coefficients: order must be >= 0");
  const auto& geom = sys.geometry();
  const double q = geom.q();
  const double r1sq = geom.r1() * geom.r1();
  const double r2sq = geom.r2() * geom.r2();

  LaurentCoefficients c;
  c.a.assign(order + 1, Complex{});
  c.b.assign(order + 1, Complex{});
  for (const auto& v : sys.vortices()) {
    const Complex zk = v.position;
    const Complex coef = -kI * v.strength;
    // Closed formulas rewritten with ratios below one so no power overflows:
    //   a_n     = -i k [(1/(z_k q))^{n+1} - (conj z_k / r2^2)^{n+1}] / (1 - q^{-(n+1)})
    //   b_{n+2} = -i k (r1^2/conj z_k)^{n+1} (1 - (|z_k|^2/r2^2)^{n+1}) / (1 - q^{-(n+1)})
    const Complex inner_ratio = 1.0 / (zk * q);
    const Complex outer_ratio = std::conj(zk) / r2sq;
    const Complex image_ratio = r1sq / std::conj(zk);
    const double modulus_ratio = std::norm(zk) / r2sq;
    Complex inner_pow = inner_ratio;
    Complex outer_pow = outer_ratio;
    Complex image_pow = image_ratio;
    double modulus_pow = modulus_ratio;
    double q_inv_pow = 1.0 / q;
    for (int n = 0; n <= order; ++n) {
      const double denom = 1.0 - q_inv_pow;
      c.a[n] += coef * (inner_pow - outer_pow) / denom;
      c.b[n] += coef * image_pow * (1.0 - modulus_pow) / denom;
      inner_pow *= inner_ratio;
      outer_pow *= outer_ratio;
      image_pow *= image_ratio;
      modulus_pow *= modulus_ratio;
      q_inv_pow /= q;
    }
  }
  return c;
}

Estimate velocity_laurent_bounded(const VortexSystem& sys, const LaurentCoefficients& coeffs,
                                  Complex z) {
  const auto& geom = sys.geometry();
  check_in_closed_annulus(geom, z, "velocity_laurent");
  check_not_on_vortex(sys, z, "velocity_laurent");

  Complex direct{};
  for (const auto& v : sys.vortices()) direct += kI * v.strength / (z - v.position);

  // Horner in z for the Taylor part and in 1/z for the principal part.
  const int order = coeffs.order();
  const Complex w = 1.0 / z;
  Complex taylor{};
  Complex principal{};
  for (int n = order; n >= 0; --n) {
    taylor = taylor * z + coeffs.a[n];
    principal = (principal + coeffs.b[n]) * w;
  }
  principal *= w;  // b_{n+2} / z^{n+2}

  const double q = geom.q();
  const double zr = std::abs(z);
  const double r1sq = geom.r1() * geom.r1();
  const double r2sq = geom.r2() * geom.r2();
  double bound = 0.0;
  for (const auto& v : sys.vortices()) {
    const double zkr = std::abs(v.position);
    const double tails = geometric_tail(zr / (zkr * q), order) +
                         geometric_tail(zr * zkr / r2sq, order) +
                         geometric_tail(r1sq / (zkr * zr), order);
    bound += std::abs(v.strength) * tails / (zr * (1.0 - 1.0 / q));
  }
  return {direct + taylor + principal, bound};
}

Complex velocity_laurent(const VortexSystem& sys, const LaurentCoefficients& coeffs, Complex z) {
  return velocity_laurent_bounded(sys, coeffs, z).value;
}

Complex lattice_sum(const VortexSystem& sys, Complex z, int n_range) {
  if (n_range < 0) throw DomainError("lattice_sum: n_range must be >= 0");
  const auto& geom = sys.geometry();
  const double q = geom.q();
  const double tol = kSingularRelTol * geom.r2();

  Complex total{};
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Complex a = sys[k].position;
    const Complex b = reflect(a, geom.r1());
    // 1/(z - a s) - 1/(z - b s) = (a - b) s / ((z - a s)(z - b s)) with s = q^n;
    // the product form keeps the far shells free of cancellation.
    auto pair = [&](int n) {
      const double s = std::pow(q, n);
      const Complex da = z - a * s;
      const Complex db = z - b * s;
      if (std::abs(da) <= tol || std::abs(db) <= tol) {
        if (n == 0 && std::abs(da) <= tol) {
          throw SingularityError("lattice_sum: z coincides with a vortex", k);
        }
        std::ostringstream msg;
        msg << "lattice_sum: z = " << z << " lies on an image of vortex " << k
            << " at shell n = " << n;
        throw PoleError(msg.str(), n);
      }
      return (a - b) * s / (da * db);
    };
    Complex acc{};
    for (int m = n_range; m >= 1; --m) acc += pair(-m) + pair(m);
    acc += pair(0);
    total += kI * sys[k].strength * acc;
  }
  return total;
}

Estimate velocity_images_bounded(const VortexSystem& sys, Complex z, int n_range) {
  check_in_closed_annulus(sys.geometry(), z, "velocity_images");
  check_not_on_vortex(sys, z, "velocity_images");
  Complex centre{};
  double bound = 0.0;
  const double q = sys.geometry().q();
  for (const auto& v : sys.vortices()) {
    centre += kI * v.strength / z;
    bound += std::abs(v.strength) *
             lattice_tail(v.position, reflect(v.position, sys.geometry().r1()), z, q, n_range);
  }
  return {lattice_sum(sys, z, n_range) + centre, bound};
}

Complex velocity_images(const VortexSystem& sys, Complex z, int n_range) {
  return velocity_images_bounded(sys, z, n_range).value;
}

Estimate induced_velocity_qlog(const AnnulusGeometry& geom, const Vortex& vortex, Complex z,
                               const TruncationPolicy& policy) {
  const Complex zk = vortex.position;
  if (std::abs(z - zk) <= kSingularRelTol * geom.r2()) {
    throw SingularityError("induced_velocity_qlog: z coincides with the vortex", 0);
  }
  const QBase base = geom.base();
  const double q = base.value();
  const double r1sq = geom.r1() * geom.r1();
  const double r2sq = geom.r2() * geom.r2();
  const Complex zk_bar = std::conj(zk);

  const SeriesValue l1 = q_log_adaptive(z / zk, base, policy);
  const SeriesValue l2 = q_log_adaptive(z * zk_bar / r1sq, base, policy);
  const SeriesValue l3 = q_log_adaptive(r2sq / (z * zk_bar), base, policy);
  const SeriesValue l4 = q_log_adaptive(zk / z, base, policy);

  const Complex images = (l1.value - l2.value + l3.value - l4.value) / (z * (q - 1.0));
  const double bound = std::abs(vortex.strength) *
                       (l1.remainder_bound + l2.remainder_bound + l3.remainder_bound +
                        l4.remainder_bound) /
                       (std::abs(z) * (q - 1.0));
  return {kI * vortex.strength * (1.0 / (z - zk) + images), bound};
}

Estimate velocity_qlog_bounded(const VortexSystem& sys, Complex z, const TruncationPolicy& policy) {
  check_in_closed_annulus(sys.geometry(), z, "velocity_qlog");
  check_not_on_vortex(sys, z, "velocity_qlog");
  Estimate total;
  for (const auto& v : sys.vortices()) {
    const Estimate e = induced_velocity_qlog(sys.geometry(), v, z, policy);
    total.value += e.value;
    total.error_bound += e.error_bound;
  }
  return total;
}

Complex velocity_qlog(const VortexSystem& sys, Complex z, const TruncationPolicy& policy) {
  return velocity_qlog_bounded(sys, z, policy).value;
}

Complex potential(const VortexSystem& sys, Complex z, const TruncationPolicy& policy) {
  const auto& geom = sys.geometry();
  check_in_closed_annulus(geom, z, "potential");
  check_not_on_vortex(sys, z, "potential");
  const QBase base = geom.base();
  const double one_minus_q = 1.0 - base.value();
  const double r1sq = geom.r1() * geom.r1();
  const double r2sq = geom.r2() * geom.r2();

  Complex total{};
  for (const auto& v : sys.vortices()) {
    const Complex zk = v.position;
    const Complex zk_bar = std::conj(zk);
    auto log_eq = [&](Complex w) { return std::log(q_exp(w, base, policy)); };
    const Complex images = log_eq(z / (one_minus_q * zk)) + log_eq(zk / (one_minus_q * z)) -
                           log_eq(z * zk_bar / (one_minus_q * r1sq)) -
                           log_eq(r2sq / (one_minus_q * z * zk_bar));
    total += kI * v.strength * (std::log(z - zk) + images);
  }
  return total;
}

double stream_function(const VortexSystem& sys, Complex z, const TruncationPolicy& policy) {
  return potential(sys, z, policy).imag();
}

FlowEvaluator::FlowEvaluator(VortexSystem sys, Representation rep, FlowSettings settings)
    : sys_(std::move(sys)), rep_(rep), settings_(settings) {
  if (rep_ == Representation::laurent) coeffs_ = laurent_coefficients(sys_, settings_.laurent_order);
}

Estimate FlowEvaluator::velocity_bounded(Complex z) const {
  switch (rep_) {
    case Representation::laurent: return velocity_laurent_bounded(sys_, coeffs_, z);
    case Representation::images:
      return velocity_images_bounded(sys_, z, settings_.truncation.image_pairs());
    case Representation::qlog: return velocity_qlog_bounded(sys_, z, settings_.truncation);
  }
  throw DomainError("FlowEvaluator: unknown representation");
}

Complex FlowEvaluator::velocity(Complex z) const { return velocity_bounded(z).value; }

FieldSample FlowEvaluator::sample(Complex z) const {
  FieldSample s;
  s.z = z;
  s.velocity_conj = velocity(z);
  s.potential = potential(sys_, z, settings_.truncation);
  s.stream = s.potential.imag();
  return s;
}

BoundaryResidual boundary_residual(const VortexSystem& sys, Representation rep,
                                   int samples_per_circle, const FlowSettings& settings) {
  if (samples_per_circle < 4) throw DomainError("boundary_residual: need >= 4 samples per circle");
  const FlowEvaluator eval(sys, rep, settings);
  BoundaryResidual out;
  auto sweep = [&](double radius, double& worst) {
    for (int j = 0; j < samples_per_circle; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / samples_per_circle;
      const Complex z = std::polar(radius, theta);
      try {
        worst = std::max(worst, std::abs(normal_velocity(eval.velocity(z), z)));
      } catch (const SingularityError&) {
        ++out.skipped;
      } catch (const PoleError&) {
        ++out.skipped;
      }
    }
  };
  sweep(sys.geometry().r1(), out.max_inner);
  sweep(sys.geometry().r2(), out.max_outer);
  return out;
}

}  // namespace qvortex
