#include "bskernel/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bskernel/errors.hpp"

namespace bskernel {

namespace {

// Below this argument both ln_gamma and digamma recur upward before using
// their asymptotic series. At x = 15 the last retained Stirling term is
// below 1e-17 relative.
constexpr double kStirlingFloor = 15.0;
constexpr double kDigammaFloor = 10.0;

// Stirling correction sum_k B_{2k} / (2k (2k-1) x^{2k-1}), k = 1..7.
double stirling_correction(double x) {
  static constexpr std::array<double, 7> kCoef = {
      1.0 / 12.0,          -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0, -691.0 / 360360.0,   1.0 / 156.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (auto it = kCoef.rbegin(); it != kCoef.rend(); ++it) acc = acc * inv2 + *it;
  return acc * inv;
}

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << fn << ": argument must be a finite positive real, got " << x;
    throw DomainError(os.str());
  }
}

void require_series_domain(Order order, cdouble z, const char* fn) {
  if (!(order.nu > -1.0) || !std::isfinite(order.nu)) {
    std::ostringstream os;
    os << fn << ": order must satisfy nu > -1, got " << order.nu;
    throw DomainError(os.str());
  }
  if (!(std::abs(z) <= 2.0 + 1e-12)) {
    std::ostringstream os;
    os << fn << ": |z| must be at most 2, got " << std::abs(z);
    throw DomainError(os.str());
  }
}

// Sums t_0 + t_1 + ... where t_{n+1} = t_n * w / ((n + a)(n + b)).
// With a, b > 0 the ratio |w| / ((n+a)(n+b)) decreases in n, so once it is
// below one the remaining tail is bounded by a geometric series.
cdouble sum_hypergeometric_tail(cdouble t0, cdouble w, double a, double b,
                                const SeriesControl& ctl, const char* fn) {
  ctl.validate();
  cdouble sum = t0;
  cdouble term = t0;
  const double aw = std::abs(w);
  for (std::size_t n = 0; n + 1 < ctl.max_terms; ++n) {
    const double denom = (static_cast<double>(n) + a) * (static_cast<double>(n) + b);
    const double q = aw / denom;
    term *= w / denom;
    if (q < 1.0 && std::abs(term) < ctl.tail_tolerance) return sum;
    sum += term;
  }
  std::ostringstream os;
  os << fn << ": series did not meet tail tolerance " << ctl.tail_tolerance << " within "
     << ctl.max_terms << " terms";
  throw NonConvergenceError(os.str(), std::abs(term));
}

}  // namespace

void SeriesControl::validate() const {
  if (max_terms < 1) throw InputError("SeriesControl: max_terms must be at least 1");
  if (!(tail_tolerance > 0.0)) throw InputError("SeriesControl: tail_tolerance must be positive");
}

double ln_gamma(double x) {
  require_positive(x, "ln_gamma");
  if (x == 1.0 || x == 2.0) return 0.0;
  // ln Gamma(x) = ln Gamma(x + k) - ln(x (x+1) ... (x+k-1)); the product
  // stays below 15^15 so it cannot overflow.
  double shift = 1.0;
  while (x < kStirlingFloor) {
    shift *= x;
    x += 1.0;
  }
  const double half_ln_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (x - 0.5) * std::log(x) - x + half_ln_two_pi + stirling_correction(x) - std::log(shift);
}

double gamma(double x) {
  require_positive(x, "gamma");
  const double lg = ln_gamma(x);
  if (lg > std::log(std::numeric_limits<double>::max())) {
    std::ostringstream os;
    os << "gamma: Gamma(" << x << ") overflows double precision";
    throw OverflowError(os.str());
  }
  return std::exp(lg);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double acc = 0.0;
  while (x < kDigammaFloor) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum_k B_{2k} / (2k x^{2k})
  static constexpr std::array<double, 7> kCoef = {
      1.0 / 12.0,   -1.0 / 120.0,       1.0 / 252.0, -1.0 / 240.0,
      1.0 / 132.0, -691.0 / 32760.0,    1.0 / 12.0,
  };
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  for (auto it = kCoef.rbegin(); it != kCoef.rend(); ++it) series = series * inv2 + *it;
  return acc + std::log(x) - 0.5 / x - series * inv2;
}

double ln_gamma_ratio(double x, double y) {
  require_positive(x, "ln_gamma_ratio");
  require_positive(y, "ln_gamma_ratio");
  if (x == y) return 0.0;
  const double d = x - y;
  // ln(Gamma(x)/Gamma(y)) = ln(Gamma(x+k)/Gamma(y+k)) - sum_i ln((x+i)/(y+i))
  double correction = 0.0;
  while (std::min(x, y) < kStirlingFloor) {
    correction += std::log1p(d / y);
    x += 1.0;
    y += 1.0;
  }
  // (x - 1/2) ln x - (y - 1/2) ln y - d, rearranged around ln(x/y).
  return (x - 0.5) * std::log1p(d / y) + d * (std::log(y) - 1.0) +
         (stirling_correction(x) - stirling_correction(y)) - correction;
}

cdouble modified_bessel_i(Order order, cdouble z, const SeriesControl& ctl) {
  require_series_domain(order, z, "modified_bessel_i");
  const cdouble half = 0.5 * z;
  const cdouble t0 = std::exp(-ln_gamma(order.nu + 1.0));
  return sum_hypergeometric_tail(t0, half * half, 1.0, order.nu + 1.0, ctl, "modified_bessel_i");
}

cdouble modified_struve_l(Order order, cdouble z, const SeriesControl& ctl) {
  require_series_domain(order, z, "modified_struve_l");
  const cdouble half = 0.5 * z;
  const cdouble t0 = half * std::exp(-ln_gamma(order.nu + 1.5) - ln_gamma(1.5));
  return sum_hypergeometric_tail(t0, half * half, 1.5, order.nu + 1.5, ctl, "modified_struve_l");
}

cdouble scaled_modified_bessel_i(Order order, cdouble z, const SeriesControl& ctl) {
  require_series_domain(order, z, "scaled_modified_bessel_i");
  const cdouble half = 0.5 * z;
  return sum_hypergeometric_tail(1.0, half * half, 1.0, order.nu + 1.0, ctl,
                                 "scaled_modified_bessel_i");
}

cdouble scaled_modified_struve_l(Order order, cdouble z, const SeriesControl& ctl) {
  require_series_domain(order, z, "scaled_modified_struve_l");
  const cdouble half = 0.5 * z;
  // Gamma(3/2) = sqrt(pi)/2
  const double lead =
      std::exp(ln_gamma_ratio(order.nu + 1.0, order.nu + 1.5)) * 2.0 / std::sqrt(std::numbers::pi);
  return sum_hypergeometric_tail(half * lead, half * half, 1.5, order.nu + 1.5, ctl,
                                 "scaled_modified_struve_l");
}

}  // namespace bskernel
