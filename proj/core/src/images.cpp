#include "qvortex/images.hpp"

#include <cmath>
#include <sstream>

namespace qvortex {

AnnulusGeometry::AnnulusGeometry(double r1, double r2) : r1_(r1), r2_(r2) {
  if (!std::isfinite(r1) || !std::isfinite(r2) || !(r1 > 0.0) || !(r2 > r1)) {
    std::ostringstream msg;
    msg << "AnnulusGeometry: need 0 < r1 < r2, got r1 = " << r1 << ", r2 = " << r2;
    throw DomainError(msg.str());
  }
  // Also rejects annuli so thin that q - 1 is lost to rounding.
  static_cast<void>(base());
}

double AnnulusGeometry::geometric_mean_radius() const noexcept { return std::sqrt(r1_ * r2_); }

bool AnnulusGeometry::contains(Complex z) const noexcept {
  const double r = std::abs(z);
  return r > r1_ && r < r2_;
}

bool AnnulusGeometry::contains_closed(Complex z, double rel_slack) const noexcept {
  const double r = std::abs(z);
  return r >= r1_ * (1.0 - rel_slack) && r <= r2_ * (1.0 + rel_slack);
}

void validate_vortex(const Vortex& vortex, const AnnulusGeometry& geom) {
  if (!std::isfinite(vortex.strength)) throw DomainError("vortex strength must be finite");
  if (!std::isfinite(vortex.position.real()) || !std::isfinite(vortex.position.imag()) ||
      !geom.contains(vortex.position)) {
    std::ostringstream msg;
    msg << "vortex at " << vortex.position << " (|z| = " << std::abs(vortex.position)
        << ") is not strictly inside the annulus " << geom.r1() << " < |z| < " << geom.r2();
    throw DomainError(msg.str());
  }
}

std::string_view to_string(CascadeFamily family) {
  return family == CascadeFamily::inner_first ? "inner-first" : "outer-first";
}

Cylinder ImageVortex::reflected_in() const noexcept {
  const bool odd = generation % 2 == 1;
  if (family == CascadeFamily::inner_first) return odd ? Cylinder::inner : Cylinder::outer;
  return odd ? Cylinder::outer : Cylinder::inner;
}

int ImageVortex::lattice_index() const noexcept {
  const int g = generation;
  if (family == CascadeFamily::inner_first) {
    // r1^2/conj z0 * q^{-(g-1)/2} for odd g, z0 q^{g/2} for even g.
    return g % 2 == 1 ? -(g - 1) / 2 : g / 2;
  }
  // r1^2/conj z0 * q^{(g+1)/2} for odd g, z0 q^{-g/2} for even g.
  return g % 2 == 1 ? (g + 1) / 2 : -g / 2;
}

ImageSet cascade(const Vortex& parent, const AnnulusGeometry& geom, int depth) {
  validate_vortex(parent, geom);
  if (depth < 1) throw DomainError("cascade: depth must be >= 1");

  ImageSet set{parent, {}, depth};
  set.images.reserve(2 * static_cast<std::size_t>(depth));
  Complex inner_first = parent.position;
  Complex outer_first = parent.position;
  int sign = 1;
  for (int g = 1; g <= depth; ++g) {
    sign = -sign;
    const bool odd = g % 2 == 1;
    inner_first = reflect(inner_first, odd ? geom.r1() : geom.r2());
    outer_first = reflect(outer_first, odd ? geom.r2() : geom.r1());
    set.images.push_back({inner_first, sign, g, CascadeFamily::inner_first});
    set.images.push_back({outer_first, sign, g, CascadeFamily::outer_first});
  }
  return set;
}

std::vector<LatticeImage> lattice_images(const Vortex& parent, const AnnulusGeometry& geom,
                                         int n_range) {
  if (n_range < 0) throw DomainError("lattice_images: n_range must be >= 0");
  const double q = geom.q();
  const Complex positive = parent.position;
  const Complex negative = reflect(parent.position, geom.r1());

  std::vector<LatticeImage> out;
  out.reserve(2 * (2 * static_cast<std::size_t>(n_range) + 1));
  out.push_back({positive, +1, 0, true});
  out.push_back({negative, -1, 0, false});
  for (int m = 1; m <= n_range; ++m) {
    for (const int n : {-m, m}) {
      const double scale = std::pow(q, n);
      out.push_back({positive * scale, +1, n, false});
      out.push_back({negative * scale, -1, n, false});
    }
  }
  return out;
}

}  // namespace qvortex
