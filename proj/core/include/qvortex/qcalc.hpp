#pragma once

// q-numbers, the q-logarithm and Jackson's q-exponentials.
//
// Conventions used throughout the library:
//   [n]        = (q^n - 1) / (q - 1)
//   Ln_q(1-x)  = -sum_{n>=1} x^n / [n]                 (|x| < q, q > 1)
//   Ln_q(1+z)  = (q-1) sum_{n>=1} z / (q^n + z)         (pole-sum form)
//   E_q(z)     = sum_{n>=0} z^n / [n]!                  (entire for q > 1)
//   E*_q(z)    = sum_{n>=0} q^{n(n-1)/2} z^n / [n]!
//
// q_log() takes the series variable x and returns Ln_q(1 - x).
// q_log_polesum() takes z and returns Ln_q(1 + z). Mixing the two up flips
// the sign of the argument, so call sites should name which one they mean.

#include <complex>
#include <concepts>
#include <functional>

#include "qvortex/errors.hpp"

namespace qvortex {

using Complex = std::complex<double>;

/// Deformation parameter q > 1. Values within 1e-9 of 1 are rejected: the
/// q-numbers lose all precision to cancellation there.
class QBase {
 public:
  static constexpr double kMinimumExcess = 1e-9;

  explicit QBase(double q);

  double value() const noexcept { return q_; }
  /// 1/q, the base used by the theta-function representation.
  double reciprocal() const noexcept { return 1.0 / q_; }

 private:
  double q_;
};

/// Base p with 0 < p < 1. E*_p is entire for these bases and has the
/// product form prod_{k>=0} (1 + z p^k (1-p)).
class UnitBase {
 public:
  explicit UnitBase(double p);
  static UnitBase reciprocal_of(QBase base) { return UnitBase(base.reciprocal()); }

  double value() const noexcept { return p_; }

 private:
  double p_;
};

/// Cutoffs for every infinite sum and product in the library.
///
/// max_terms caps a single series; abs_tol is the target absolute bound on
/// the omitted tail (0 means "sum exactly max_terms terms, no bound check");
/// image_pairs is the number of image shells per direction for lattice sums.
class TruncationPolicy {
 public:
  TruncationPolicy() = default;
  TruncationPolicy(int max_terms, double abs_tol, int image_pairs);

  int max_terms() const noexcept { return max_terms_; }
  double abs_tol() const noexcept { return abs_tol_; }
  int image_pairs() const noexcept { return image_pairs_; }

  TruncationPolicy with_max_terms(int n) const { return {n, abs_tol_, image_pairs_}; }
  TruncationPolicy with_abs_tol(double t) const { return {max_terms_, t, image_pairs_}; }
  TruncationPolicy with_image_pairs(int n) const { return {max_terms_, abs_tol_, n}; }

  bool operator==(const TruncationPolicy&) const = default;

 private:
  int max_terms_ = 200;
  double abs_tol_ = 1e-12;
  int image_pairs_ = 40;
};

/// A truncated series together with a rigorous bound on what was dropped.
struct SeriesValue {
  Complex value;
  double remainder_bound = 0.0;
  int terms = 0;
};

double q_number(int n, QBase base);

/// [1][2]...[n]; throws RangeError once the product overflows double.
double q_factorial(int n, QBase base);

/// Jackson derivative (f(qz) - f(z)) / ((q-1) z). Throws DomainError at z = 0.
template <typename F>
  requires std::invocable<F&, Complex>
Complex q_derivative(F&& f, Complex z, QBase base) {
  if (z == Complex{}) throw DomainError("q_derivative: undefined at z = 0");
  const double q = base.value();
  return (std::invoke(f, q * z) - std::invoke(f, z)) / ((q - 1.0) * z);
}

/// Ln_q(1 - x) by its power series. Requires |x| < q.
Complex q_log(Complex x, QBase base, const TruncationPolicy& policy);
SeriesValue q_log_bounded(Complex x, QBase base, const TruncationPolicy& policy);

/// Ln_q(1 + z) by the pole sum. Requires |z| < q and z away from -q^n.
Complex q_log_polesum(Complex z, QBase base, const TruncationPolicy& policy);
SeriesValue q_log_polesum_bounded(Complex z, QBase base, const TruncationPolicy& policy);

/// Ln_q(1 - x), using the power series for |x| <= 1 and the pole sum
/// otherwise. The pole sum decays like q^-n independent of x, which keeps
/// arguments near |x| -> q cheap.
SeriesValue q_log_adaptive(Complex x, QBase base, const TruncationPolicy& policy);

/// First n_terms of the pole sum for Ln_q(1 + z) and a bound on |value - Ln_q(1+z)|.
SeriesValue q_log_truncated(Complex z, QBase base, int n_terms);

Complex q_exp(Complex z, QBase base, const TruncationPolicy& policy);

/// E*_q for q > 1; only defined for |z| < 1.
Complex q_exp_star(Complex z, QBase base, const TruncationPolicy& policy);
/// E*_p for 0 < p < 1; entire.
Complex q_exp_star(Complex z, UnitBase base, const TruncationPolicy& policy);

/// E*_p(z) = prod_{k>=0} (1 + z p^k (1-p)).
Complex q_exp_star_product(Complex z, UnitBase base, const TruncationPolicy& policy);

/// H(q) = sum 1/[n] = -Ln_q(0).
double q_harmonic(QBase base, const TruncationPolicy& policy);
/// Partial sum H_N(q) = sum_{n=1}^{N} 1/[n].
double q_harmonic_number(int n, QBase base);

}  // namespace qvortex
