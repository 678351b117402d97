#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qvortex {

/// Argument outside the domain where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument sits on (or within tolerance of) a pole of a series or product.
/// `index()` is the lattice index n of the offending pole, e.g. z = -q^n.
class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, int index)
      : DomainError(what), index_(index) {}

  int index() const noexcept { return index_; }

 private:
  int index_;
};

/// Evaluation point coincides with a point vortex.
class SingularityError : public DomainError {
 public:
  SingularityError(const std::string& what, std::size_t vortex)
      : DomainError(what), vortex_(vortex) {}

  std::size_t vortex() const noexcept { return vortex_; }

 private:
  std::size_t vortex_;
};

/// A real result does not fit in double.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Truncation policy exhausted before the requested tail bound was met.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_bound, int terms)
      : std::runtime_error(what), achieved_bound_(achieved_bound), terms_(terms) {}

  double achieved_bound() const noexcept { return achieved_bound_; }
  int terms() const noexcept { return terms_; }

 private:
  double achieved_bound_;
  int terms_;
};

}  // namespace qvortex
