#pragma once

// First Jacobi theta function and the stream function it produces after the
// conformal map tau = -ln z of the annulus onto a rectangle.
//
// With the outer radius scaled to one, the nome is q_tilde = r1 and
// q_tilde^2 = 1/q. Theta_1(x) vanishes on the image lattice, so
//
//   Psi(z) = sum_k kappa_k ln | Theta_1(i(tau - tau_k)/2) / Theta_1(i(tau + conj tau_k)/2) |
//
// is the stream function of the annulus flow.

#include <vector>

#include "qvortex/flow.hpp"
#include "qvortex/qcalc.hpp"

namespace qvortex {

class ThetaParams {
 public:
  /// 0 < q_tilde < 1. G = prod_{n>=1}(1 - q_tilde^{2n}) is computed once here.
  explicit ThetaParams(double q_tilde, const TruncationPolicy& policy = {});
  /// q_tilde = r1 / r2 of the geometry.
  static ThetaParams for_geometry(const AnnulusGeometry& geom, const TruncationPolicy& policy = {});

  double q_tilde() const noexcept { return q_tilde_; }
  double nome_squared() const noexcept { return q_tilde_ * q_tilde_; }
  UnitBase base() const { return UnitBase(nome_squared()); }
  double G() const noexcept { return g_; }

 private:
  double q_tilde_;
  double g_;
};

/// Product form 2 G q~^{1/4} sin x prod_{n>=1}(1 - q~^{2n} e^{2ix})(1 - q~^{2n} e^{-2ix}).
Complex theta1(Complex x, const ThetaParams& params, const TruncationPolicy& policy = {});

/// Same function composed from two E*_{q~^2} series:
/// 2 G q~^{1/4} sin x E*(q~^2 e^{2ix}/(q~^2-1)) E*(q~^2 e^{-2ix}/(q~^2-1)).
Complex theta1_from_qexp(Complex x, const ThetaParams& params, const TruncationPolicy& policy = {});

/// tau = -ln z (principal branch) and back.
inline Complex to_rectangle(Complex z) { return -std::log(z); }
inline Complex from_rectangle(Complex tau) { return std::exp(-tau); }

struct RectangleCoords {
  Complex tau;
  std::vector<Complex> tau_k;
};

RectangleCoords rectangle_coords(const VortexSystem& sys, Complex z);

/// Stream function from the theta ratio. Requires r2 == 1 (see
/// rescale_to_unit_outer); z inside the closed annulus and off every vortex.
double stream_theta(const VortexSystem& sys, Complex z, const TruncationPolicy& policy = {});

struct RescaledSystem {
  VortexSystem system;
  double scale;  // 1 / r2 of the original
};

/// Similar system with r2 = 1; positions and radii multiplied by 1/r2,
/// strengths and q unchanged.
RescaledSystem rescale_to_unit_outer(const VortexSystem& sys);

}  // namespace qvortex
