#pragma once

// Flow of N point vortices in the annulus, in three independent forms:
//
//   laurent  - Laurent series about the origin with explicitly solved
//              coefficients (the reference representation),
//   images   - the doubly infinite lattice of image vortices, summed in
//              +/- pairs shell by shell,
//   qlog     - the closed form in four q-logarithms per vortex.
//
// Every velocity here is the conjugate velocity Vbar = u1 - i u2 = dF/dz.
// The solution is the one with no net circulation around the inner
// cylinder (Laurent coefficient b_1 = 0).

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qvortex/images.hpp"
#include "qvortex/qcalc.hpp"

namespace qvortex {

class VortexSystem {
 public:
  /// Validates every vortex and rejects coincident positions.
  VortexSystem(AnnulusGeometry geom, std::vector<Vortex> vortices);

  const AnnulusGeometry& geometry() const noexcept { return geom_; }
  std::span<const Vortex> vortices() const noexcept { return vortices_; }
  const Vortex& operator[](std::size_t k) const { return vortices_.at(k); }
  std::size_t size() const noexcept { return vortices_.size(); }

 private:
  AnnulusGeometry geom_;
  std::vector<Vortex> vortices_;
};

/// Value plus a rigorous bound on its truncation error.
struct Estimate {
  Complex value;
  double error_bound = 0.0;
};

enum class Representation { laurent, images, qlog };

std::string_view to_string(Representation rep);
std::optional<Representation> parse_representation(std::string_view name);

struct FlowSettings {
  TruncationPolicy truncation;
  int laurent_order = 60;
};

/// a_n (n = 0..M) and b_{n+2} (n = 0..M). b_1 is identically zero.
struct LaurentCoefficients {
  std::vector<Complex> a;
  std::vector<Complex> b;  // b[n] holds b_{n+2}

  int order() const noexcept { return static_cast<int>(a.size()) - 1; }
  static constexpr Complex b1() noexcept { return {}; }
};

LaurentCoefficients laurent_coefficients(const VortexSystem& sys, int order);

Complex velocity_laurent(const VortexSystem& sys, const LaurentCoefficients& coeffs, Complex z);
/// Bound covers the Laurent terms beyond the stored order.
Estimate velocity_laurent_bounded(const VortexSystem& sys, const LaurentCoefficients& coeffs,
                                  Complex z);

/// The paired lattice sum  sum_k i kappa_k sum_{|n|<=n_range}
/// [1/(z - z_k q^n) - 1/(z - (r1^2/conj z_k) q^n)]  with nothing else added.
Complex lattice_sum(const VortexSystem& sys, Complex z, int n_range);

/// lattice_sum plus the centre image i kappa_k / z of every vortex. Summed in
/// pairs, the lattice leaves the circulation of the first inner image
/// uncancelled around the inner cylinder; the centre image restores b_1 = 0,
/// which is what the Laurent and q-log forms describe.
Complex velocity_images(const VortexSystem& sys, Complex z, int n_range);
Estimate velocity_images_bounded(const VortexSystem& sys, Complex z, int n_range);

Complex velocity_qlog(const VortexSystem& sys, Complex z, const TruncationPolicy& policy);
Estimate velocity_qlog_bounded(const VortexSystem& sys, Complex z, const TruncationPolicy& policy);

/// Closed-form field of one vortex (with all its images) at z.
Estimate induced_velocity_qlog(const AnnulusGeometry& geom, const Vortex& vortex, Complex z,
                               const TruncationPolicy& policy);

/// Complex potential F(z) built from Jackson q-exponentials; principal
/// branch per logarithm. Only Im F and dF/dz are meaningful: Re F carries
/// branch-dependent additive constants.
Complex potential(const VortexSystem& sys, Complex z, const TruncationPolicy& policy);

/// Im F(z).
double stream_function(const VortexSystem& sys, Complex z, const TruncationPolicy& policy);

struct FieldSample {
  Complex z;
  Complex velocity_conj;
  Complex potential;
  double stream = 0.0;
};

/// Evaluates one representation, caching the Laurent coefficients.
class FlowEvaluator {
 public:
  FlowEvaluator(VortexSystem sys, Representation rep, FlowSettings settings = {});

  const VortexSystem& system() const noexcept { return sys_; }
  Representation representation() const noexcept { return rep_; }
  const FlowSettings& settings() const noexcept { return settings_; }

  Complex velocity(Complex z) const;
  Estimate velocity_bounded(Complex z) const;
  FieldSample sample(Complex z) const;

 private:
  VortexSystem sys_;
  Representation rep_;
  FlowSettings settings_;
  LaurentCoefficients coeffs_;
};

/// Radial (normal) velocity Re(Vbar z) / |z|.
inline double normal_velocity(Complex velocity_conj, Complex z) {
  return (velocity_conj * z).real() / std::abs(z);
}

struct BoundaryResidual {
  double max_inner = 0.0;
  double max_outer = 0.0;
  int skipped = 0;  // samples dropped because they fell on a singularity
};

/// Largest normal velocity over `samples_per_circle` equally spaced points on
/// each cylinder.
BoundaryResidual boundary_residual(const VortexSystem& sys, Representation rep,
                                   int samples_per_circle, const FlowSettings& settings = {});

}  // namespace qvortex
