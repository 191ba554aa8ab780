#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "bskernel/errors.hpp"
#include "bskernel/special_functions.hpp"
#include "doctest.h"

using namespace bskernel;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("ln_gamma exact points and known values") {
  CHECK(ln_gamma(1.0) == 0.0);
  CHECK(ln_gamma(2.0) == 0.0);
  CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-15));
  CHECK(ln_gamma(1e-3) == doctest::Approx(6.90717888538385366).epsilon(1e-14));
  CHECK(bskernel::gamma(170.5) == doctest::Approx(5.56209241455999961e+305).epsilon(1e-12));
  CHECK_THROWS_AS(bskernel::gamma(172.0), OverflowError);
  CHECK_THROWS_AS(ln_gamma(0.0), DomainError);
  CHECK_THROWS_AS(ln_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(digamma(0.0), DomainError);
}

TEST_CASE("ln_gamma against boost on a log grid") {
  for (int k = 0; k <= 200; ++k) {
    const double x = std::pow(10.0, -3.0 + 8.0 * k / 200.0);
    const double want = boost::math::lgamma(x);
    // lnGamma has roots at 1 and 2, so the comparison is relative with an absolute floor.
    CHECK(std::abs(ln_gamma(x) - want) <= 1e-13 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("Legendre duplication formula") {
  const double half_ln_pi = 0.5 * std::log(std::numbers::pi);
  for (int k = 0; k < 100; ++k) {
    const double x = std::pow(10.0, -2.0 + 5.0 * k / 99.0);
    const double lhs = ln_gamma(x) + ln_gamma(x + 0.5);
    const double rhs = (1.0 - 2.0 * x) * std::log(2.0) + half_ln_pi + ln_gamma(2.0 * x);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("gamma recurrence") {
  for (double x = 0.05; x < 150.0; x *= 1.37) {
    CHECK(rel_err(ln_gamma(x + 1.0), std::log(x) + ln_gamma(x)) <= 1e-12);
  }
}

TEST_CASE("digamma values, recurrence and monotonicity") {
  CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-15));
  CHECK(digamma(0.5) == doctest::Approx(-1.9635100260214235).epsilon(1e-15));
  CHECK(digamma(1e-3) == doctest::Approx(-1000.5755719318103).epsilon(1e-14));
  for (double x = 0.01; x < 100.0; x *= 1.21) {
    CHECK(digamma(x) == doctest::Approx(boost::math::digamma(x)).epsilon(1e-13));
    CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-12 * std::max(1.0, 1.0 / x));
  }
  double prev = digamma(1e-3);
  for (int k = 1; k <= 10000; ++k) {
    const double v = digamma(0.01 * k);
    CHECK_MESSAGE(v > prev, "x = " << 0.01 * k);
    prev = v;
  }
}

TEST_CASE("ln_gamma_ratio keeps accuracy for close large arguments") {
  CHECK(ln_gamma_ratio(100.5, 100.25) == doctest::Approx(1.1509808300133866).epsilon(1e-14));
  CHECK(ln_gamma_ratio(1e6 + 0.5, 1e6) == doctest::Approx(6.9077551539821371).epsilon(1e-14));
  CHECK(ln_gamma_ratio(3.0, 3.0) == 0.0);
  for (double x = 0.1; x < 50.0; x *= 1.5) {
    for (double y = 0.1; y < 50.0; y *= 1.7) {
      CHECK(std::abs(ln_gamma_ratio(x, y) - (boost::math::lgamma(x) - boost::math::lgamma(y))) <= 1e-12);
    }
  }
}

TEST_CASE("modified Bessel series matches boost") {
  for (double nu : {0.0, 0.5, 1.0, 2.5, 7.0}) {
    for (double x : {0.05, 0.3, 1.0, 1.9}) {
      const double want = boost::math::cyl_bessel_i(nu, x) / std::pow(x / 2.0, nu);
      CHECK(modified_bessel_i(Order{nu}, x).real() == doctest::Approx(want).epsilon(1e-13));
    }
  }
  CHECK(modified_bessel_i(Order{0.0}, 1.0).real() == doctest::Approx(1.266065877752008).epsilon(1e-15));
}

TEST_CASE("modified Struve series against reference values") {
  CHECK(modified_struve_l(Order{0.0}, 1.0).real() == doctest::Approx(0.7102431859378909).epsilon(1e-14));
  CHECK(modified_struve_l(Order{0.5}, 0.7).real() == doctest::Approx(0.41132484291776231).epsilon(1e-14));
  const cdouble l = modified_struve_l(Order{2.5}, cdouble(0.3, 0.8));
  CHECK(l.real() == doctest::Approx(0.026093117561747314).epsilon(1e-13));
  CHECK(l.imag() == doctest::Approx(0.074057911103193814).epsilon(1e-13));
  CHECK(modified_bessel_i(Order{0.5}, 0.7).real() == doctest::Approx(1.2228143509341764).epsilon(1e-14));
}

TEST_CASE("series positivity and conjugate symmetry") {
  for (double nu : {-0.9, -0.3, 0.0, 1.5, 12.0}) {
    for (double x = 0.0; x <= 2.0; x += 0.25) {
      CHECK(modified_bessel_i(Order{nu}, x).real() > 0.0);
      if (x > 0.0) CHECK(modified_struve_l(Order{nu}, x).real() > 0.0);
    }
    for (const cdouble z : {cdouble(0.4, 0.9), cdouble(-1.2, 0.5), cdouble(0.0, -1.7)}) {
      CHECK(modified_bessel_i(Order{nu}, std::conj(z)) == std::conj(modified_bessel_i(Order{nu}, z)));
      CHECK(modified_struve_l(Order{nu}, std::conj(z)) == std::conj(modified_struve_l(Order{nu}, z)));
    }
  }
}

TEST_CASE("series domain and control validation") {
  CHECK_THROWS_AS(modified_bessel_i(Order{-1.0}, 0.5), DomainError);
  CHECK_THROWS_AS(modified_struve_l(Order{0.0}, 2.5), DomainError);
  SeriesControl bad;
  bad.max_terms = 0;
  CHECK_THROWS_AS(modified_bessel_i(Order{0.0}, 0.5, bad), InputError);
  SeriesControl short_run;
  short_run.max_terms = 2;
  CHECK_THROWS_AS(modified_bessel_i(Order{0.0}, 1.5, short_run), NonConvergenceError);
}
