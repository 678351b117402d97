#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qvortex/flow.hpp"

namespace qvortex::testing {

/// Deterministic sunflower layout of `count` points in |z| < radius.
inline std::vector<Complex> disk_grid(double radius, int count) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Complex> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double r = radius * std::sqrt((i + 0.5) / count);
    pts.push_back(std::polar(r, golden * i));
  }
  return pts;
}

/// Points on |z| = r1 * q^(alpha / 2) for each alpha, `angles` per ring, with
/// the angular grid offset by `phase`.
inline std::vector<Complex> annulus_grid(const AnnulusGeometry& geom,
                                         const std::vector<double>& alphas, int angles,
                                         double phase = 0.3) {
  std::vector<Complex> pts;
  for (double alpha : alphas) {
    const double r = geom.r1() * std::pow(geom.q(), alpha / 2.0);
    for (int j = 0; j < angles; ++j) {
      pts.push_back(std::polar(r, phase + 2.0 * std::numbers::pi * j / angles));
    }
  }
  return pts;
}

inline AnnulusGeometry geometry_for_q(double q, double r1 = 1.0) {
  return AnnulusGeometry(r1, r1 * std::sqrt(q));
}

/// Single vortex of unit strength on the ray at angle `angle`, at fraction
/// alpha of the annulus in log-radius.
inline VortexSystem single_vortex(const AnnulusGeometry& geom, double alpha, double angle = 0.0,
                                  double kappa = 1.0) {
  const double r = geom.r1() * std::pow(geom.q(), alpha / 2.0);
  return VortexSystem(geom, {Vortex{std::polar(r, angle), kappa}});
}

}  // namespace qvortex::testing
