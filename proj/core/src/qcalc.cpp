#include "qvortex/qcalc.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace qvortex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative distance to -q^n below which the pole sum refuses to evaluate.
constexpr double kPoleProximity = 1e-9;

[[noreturn]] void throw_unconverged(const char* what, double bound, int terms) {
  std::ostringstream msg;
  msg << what << ": tail bound " << bound << " after " << terms << " terms exceeds abs_tol";
  throw ConvergenceError(msg.str(), bound, terms);
}

// Returns the result, or throws if a positive abs_tol was requested and not met.
SeriesValue finish(const char* what, Complex value, double bound, int terms,
                   const TruncationPolicy& policy) {
  if (policy.abs_tol() > 0.0 && !(bound <= policy.abs_tol())) {
    throw_unconverged(what, bound, terms);
  }
  return {value, bound, terms};
}

void check_pole_proximity(Complex z, double q) {
  const double mag = std::abs(z);
  double qn = q;
  for (int n = 1; qn * (1.0 - kPoleProximity) <= mag; ++n, qn *= q) {
    if (std::abs(z + qn) < kPoleProximity * qn) {
      std::ostringstream msg;
      msg << "q-log pole sum: argument " << z << " lies on the pole -q^" << n;
      throw PoleError(msg.str(), n);
    }
  }
}

// E*_b for any real base b > 0, b != 1. Consecutive terms satisfy
// t_{n+1} / t_n = z * b^n / [n+1]_b, and that factor decreases with n for both
// b < 1 and b > 1, so the current ratio bounds every later one.
Complex exp_star_series(Complex z, double b, const TruncationPolicy& policy) {
  const bool above_one = b > 1.0;
  // b^-n for b > 1, b^n for b < 1; both shrink so nothing overflows.
  double decay = 1.0;
  auto step_factor = [&]() {
    return above_one ? (b - 1.0) / (b - decay) : (1.0 - b) * decay / (1.0 - decay * b);
  };
  auto advance = [&]() { decay = above_one ? decay / b : decay * b; };

  Complex term{1.0, 0.0};
  Complex sum{};
  double bound = kInf;
  int n = 0;
  for (; n < policy.max_terms(); ++n) {
    sum += term;
    term *= z * step_factor();  // t_{n+1}
    advance();
    const double ratio = std::abs(z) * step_factor();
    bound = ratio < 1.0 ? std::abs(term) / (1.0 - ratio) : kInf;
    if (policy.abs_tol() > 0.0 && bound <= policy.abs_tol()) return sum;
  }
  return finish("q_exp_star", sum, bound, n, policy).value;
}

}  // namespace

QBase::QBase(double q) : q_(q) {
  if (!std::isfinite(q) || !(q > 1.0 + kMinimumExcess)) {
    std::ostringstream msg;
    msg << "QBase: q must be finite and exceed 1 + " << kMinimumExcess << ", got " << q;
    throw DomainError(msg.str());
  }
}

UnitBase::UnitBase(double p) : p_(p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "UnitBase: base must lie in (0, 1), got " << p;
    throw DomainError(msg.str());
  }
}

TruncationPolicy::TruncationPolicy(int max_terms, double abs_tol, int image_pairs)
    : max_terms_(max_terms), abs_tol_(abs_tol), image_pairs_(image_pairs) {
  if (max_terms < 1) throw DomainError("TruncationPolicy: max_terms must be >= 1");
  if (image_pairs < 1) throw DomainError("TruncationPolicy: image_pairs must be >= 1");
  if (!std::isfinite(abs_tol) || abs_tol < 0.0) {
    throw DomainError("TruncationPolicy: abs_tol must be finite and >= 0");
  }
}

double q_number(int n, QBase base) {
  if (n < 0) throw DomainError("q_number: n must be >= 0");
  const double q = base.value();
  return (std::pow(q, n) - 1.0) / (q - 1.0);
}

double q_factorial(int n, QBase base) {
  if (n < 0) throw DomainError("q_factorial: n must be >= 0");
  const double q = base.value();
  double product = 1.0;
  double bracket = 0.0;
  for (int k = 1; k <= n; ++k) {
    bracket = q * bracket + 1.0;  // [k] = q[k-1] + 1
    product *= bracket;
    if (!std::isfinite(product)) {
      std::ostringstream msg;
      msg << "q_factorial: [" << n << "]! overflows double (at k = " << k << ")";
      throw RangeError(msg.str());
    }
  }
  return product;
}

SeriesValue q_log_bounded(Complex x, QBase base, const TruncationPolicy& policy) {
  const double q = base.value();
  const double mag = std::abs(x);
  if (!(mag < q)) {
    std::ostringstream msg;
    msg << "q_log: |x| = " << mag << " must be below q = " << q;
    throw DomainError(msg.str());
  }
  if (mag == 0.0) return {};

  // t_n = x^n/[n]; t_{n+1} = t_n * x / (q + 1/[n]) since [n+1] = q[n] + 1.
  const double limit_ratio = mag / q;
  Complex term = x;
  double inv_bracket = 1.0;
  Complex sum{};
  double bound = kInf;
  int n = 1;
  for (; n <= policy.max_terms(); ++n) {
    sum -= term;
    term *= x / (q + inv_bracket);
    inv_bracket /= (q + inv_bracket);
    bound = std::abs(term) / (1.0 - limit_ratio);
    if (policy.abs_tol() > 0.0 && bound <= policy.abs_tol()) return {sum, bound, n};
  }
  return finish("q_log", sum, bound, n - 1, policy);
}

Complex q_log(Complex x, QBase base, const TruncationPolicy& policy) {
  return q_log_bounded(x, base, policy).value;
}

SeriesValue q_log_polesum_bounded(Complex z, QBase base, const TruncationPolicy& policy) {
  const double q = base.value();
  check_pole_proximity(z, q);
  const double mag = std::abs(z);
  if (!(mag < q)) {
    std::ostringstream msg;
    msg << "q_log_polesum: |z| = " << mag << " must be below q = " << q;
    throw DomainError(msg.str());
  }
  if (mag == 0.0) return {};

  // Tail after N terms: (q-1) sum_{n>N} |z|/(q^n - |z|) <= q|z| / (q^{N+1} - |z|).
  Complex sum{};
  double qn = q;
  double bound = kInf;
  int n = 1;
  for (; n <= policy.max_terms(); ++n) {
    sum += z / (qn + z);
    qn *= q;
    bound = q * mag / (qn - mag);
    if (policy.abs_tol() > 0.0 && bound <= policy.abs_tol()) {
      return {(q - 1.0) * sum, bound, n};
    }
  }
  return finish("q_log_polesum", (q - 1.0) * sum, bound, n - 1, policy);
}

Complex q_log_polesum(Complex z, QBase base, const TruncationPolicy& policy) {
  return q_log_polesum_bounded(z, base, policy).value;
}

SeriesValue q_log_adaptive(Complex x, QBase base, const TruncationPolicy& policy) {
  if (std::abs(x) <= 1.0) return q_log_bounded(x, base, policy);
  return q_log_polesum_bounded(-x, base, policy);
}

SeriesValue q_log_truncated(Complex z, QBase base, int n_terms) {
  if (n_terms < 1) throw DomainError("q_log_truncated: n_terms must be >= 1");
  const double q = base.value();
  check_pole_proximity(z, q);
  const double mag = std::abs(z);
  if (!(mag < q)) throw DomainError("q_log_truncated: |z| must be below q");
  if (mag == 0.0) return {{}, 0.0, n_terms};

  Complex sum{};
  double qn = q;
  for (int n = 1; n <= n_terms; ++n, qn *= q) sum += z / (qn + z);
  return {(q - 1.0) * sum, q * mag / (qn - mag), n_terms};
}

Complex q_exp(Complex z, QBase base, const TruncationPolicy& policy) {
  const double q = base.value();
  const double mag = std::abs(z);
  Complex term{1.0, 0.0};
  Complex sum{};
  double bracket = 1.0;  // [n+1] while summing t_n
  double bound = kInf;
  int n = 0;
  for (; n < policy.max_terms(); ++n) {
    sum += term;
    term *= z / bracket;           // t_{n+1} = t_n z / [n+1]
    bracket = q * bracket + 1.0;   // [n+2]
    const double ratio = mag / bracket;
    bound = ratio < 1.0 ? std::abs(term) / (1.0 - ratio) : kInf;
    if (policy.abs_tol() > 0.0 && bound <= policy.abs_tol()) return sum;
  }
  return finish("q_exp", sum, bound, n, policy).value;
}

Complex q_exp_star(Complex z, QBase base, const TruncationPolicy& policy) {
  if (!(std::abs(z) < 1.0)) {
    std::ostringstream msg;
    msg << "q_exp_star: series for q > 1 needs |z| < 1, got |z| = " << std::abs(z);
    throw DomainError(msg.str());
  }
  return exp_star_series(z, base.value(), policy);
}

Complex q_exp_star(Complex z, UnitBase base, const TruncationPolicy& policy) {
  return exp_star_series(z, base.value(), policy);
}

Complex q_exp_star_product(Complex z, UnitBase base, const TruncationPolicy& policy) {
  const double p = base.value();
  // |prod_{k>=K}(1 + a_k) - 1| <= exp(sum_{k>=K} |a_k|) - 1 with sum |a_k| = |z| p^K.
  Complex product{1.0, 0.0};
  double pk = 1.0;
  double bound = kInf;
  int k = 0;
  for (; k < policy.max_terms(); ++k) {
    product *= 1.0 + z * pk * (1.0 - p);
    pk *= p;
    bound = std::abs(product) * std::expm1(std::abs(z) * pk);
    if (policy.abs_tol() > 0.0 && bound <= policy.abs_tol()) return product;
  }
  return finish("q_exp_star_product", product, bound, k, policy).value;
}

double q_harmonic(QBase base, const TruncationPolicy& policy) {
  return -q_log_bounded(Complex{1.0, 0.0}, base, policy).value.real();
}

double q_harmonic_number(int n, QBase base) {
  if (n < 0) throw DomainError("q_harmonic_number: n must be >= 0");
  const double q = base.value();
  double sum = 0.0;
  double bracket = 0.0;
  for (int k = 1; k <= n; ++k) {
    bracket = q * bracket + 1.0;
    sum += 1.0 / bracket;
  }
  return sum;
}

}  // namespace qvortex
