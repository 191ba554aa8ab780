#pragma once

#include <complex>
#include <cstddef>

namespace bskernel {

using cdouble = std::complex<double>;

// Real order parameter of the kernel family. Validation against the kernel
// domain (nu > -1/2) happens at the kernel boundary, not here.
struct Order {
  double nu;
};

// Truncation policy for the power series in this library.
struct SeriesControl {
  std::size_t max_terms = 200;
  double tail_tolerance = 1e-16;

  void validate() const;
};

// ln Gamma(x) for x > 0. Stirling series after upward recurrence to x >= 15.
double ln_gamma(double x);

// Gamma(x) for x > 0; throws OverflowError instead of returning inf.
double gamma(double x);

// d/dx ln Gamma(x) for x > 0.
double digamma(double x);

// ln(Gamma(x) / Gamma(y)) for x, y > 0, evaluated without forming the two
// large logarithms separately, so the result keeps relative accuracy when
// x and y are close and large.
double ln_gamma_ratio(double x, double y);

// Prefactor-free modified Bessel series
//   sum_{n>=0} (z/2)^{2n} / (n! Gamma(nu+n+1)),
// i.e. I_nu(z) / (z/2)^nu. Requires nu > -1 and |z| <= 2.
cdouble modified_bessel_i(Order order, cdouble z, const SeriesControl& ctl = {});

// Prefactor-free modified Struve series
//   sum_{n>=0} (z/2)^{2n+1} / (Gamma(n+nu+3/2) Gamma(n+3/2)),
// i.e. L_nu(z) / (z/2)^nu. Requires nu > -1 and |z| <= 2.
cdouble modified_struve_l(Order order, cdouble z, const SeriesControl& ctl = {});

// Gamma(nu+1) times the series above. The leading term is O(1) for every
// nu, so an absolute tail tolerance means the same thing at nu = 0 and
// nu = 50; the kernel's bessel_sum route uses these.
cdouble scaled_modified_bessel_i(Order order, cdouble z, const SeriesControl& ctl = {});
cdouble scaled_modified_struve_l(Order order, cdouble z, const SeriesControl& ctl = {});

}  // namespace bskernel
