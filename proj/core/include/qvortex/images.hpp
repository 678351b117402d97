#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "qvortex/qcalc.hpp"

namespace qvortex {

/// The region r1 <= |z| <= r2 between two coaxial cylinders.
class AnnulusGeometry {
 public:
  AnnulusGeometry(double r1, double r2);

  double r1() const noexcept { return r1_; }
  double r2() const noexcept { return r2_; }
  /// q = r2^2 / r1^2.
  double q() const noexcept { return (r2_ * r2_) / (r1_ * r1_); }
  QBase base() const { return QBase(q()); }
  /// sqrt(r1 r2), where a lone vortex stays at rest.
  double geometric_mean_radius() const noexcept;

  /// Strictly between the cylinders.
  bool contains(Complex z) const noexcept;
  /// Between the cylinders or on them, with relative slack `rel_slack`.
  bool contains_closed(Complex z, double rel_slack = 1e-12) const noexcept;

  bool operator==(const AnnulusGeometry&) const = default;

 private:
  double r1_;
  double r2_;
};

/// A point vortex. strength is kappa = circulation / 2 pi; the conjugate
/// velocity it induces in free space is i kappa / (z - position).
struct Vortex {
  Complex position;
  double strength = 1.0;

  bool operator==(const Vortex&) const = default;
};

/// Throws DomainError unless the vortex is strictly inside the annulus with a
/// finite strength.
void validate_vortex(const Vortex& vortex, const AnnulusGeometry& geom);

/// Inversion in the circle |z| = radius: radius^2 / conj(z).
inline Complex reflect(Complex z, double radius) {
  return radius * radius / std::conj(z);
}

enum class CascadeFamily { inner_first, outer_first };
enum class Cylinder { inner, outer };

std::string_view to_string(CascadeFamily family);

struct ImageVortex {
  Complex position;
  int strength_sign = -1;  // multiplies the parent strength; (-1)^generation
  int generation = 1;
  CascadeFamily family = CascadeFamily::inner_first;

  /// Cylinder whose inversion produced this image.
  Cylinder reflected_in() const noexcept;
  /// Index n of the lattice point this image occupies: z0 q^n when
  /// strength_sign is +1, (r1^2 / conj z0) q^n when it is -1.
  int lattice_index() const noexcept;
};

struct ImageSet {
  Vortex parent;
  std::vector<ImageVortex> images;  // by generation, inner-first family first
  int depth = 0;
};

/// Both alternating reflection cascades, `depth` generations each, built by
/// repeated inversion (no closed forms).
ImageSet cascade(const Vortex& parent, const AnnulusGeometry& geom, int depth);

/// Outermost lattice shell |n| reached by a cascade of the given depth. A
/// cascade of depth 2m+1 plus its parent is exactly lattice_images(m) with the
/// negative image at n = m+1 added.
constexpr int shells_for_depth(int depth) { return (depth + 1) / 2; }

struct LatticeImage {
  Complex position;
  int strength_sign = 1;
  int index = 0;  // n in z0 q^n or (r1^2/conj z0) q^n
  bool is_parent = false;
};

/// z0 q^n (sign +1) and (r1^2 / conj z0) q^n (sign -1) for |n| <= n_range.
///
/// Ordering: shell 0 first (the parent, flagged, then its partner at the
/// inverse point), then for m = 1..n_range the pair at n = -m followed by the
/// pair at n = +m, positive entry before negative within each pair.
std::vector<LatticeImage> lattice_images(const Vortex& parent, const AnnulusGeometry& geom,
                                         int n_range);

}  // namespace qvortex
