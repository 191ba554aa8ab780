#include "bskernel/threshold_solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bskernel/errors.hpp"
#include "parallel.hpp"

namespace bskernel {

RootBracket RootBracket::make(double lo, double hi, const std::function<double(double)>& f,
                              double width_target) {
  if (!(lo < hi)) throw BracketError("bracket requires lo < hi");
  RootBracket b{lo, hi, f(lo), f(hi), width_target};
  if (std::abs(b.f_lo) <= 1e-15 || std::abs(b.f_hi) <= 1e-15) {
    throw BracketError("bracket endpoint coincides with a root; widen or shift the bracket");
  }
  if (std::signbit(b.f_lo) == std::signbit(b.f_hi)) {
    std::ostringstream os;
    os.precision(10);
    os << "no sign change on [" << lo << ", " << hi << "]: f(lo) = " << b.f_lo
       << ", f(hi) = " << b.f_hi;
    throw BracketError(os.str());
  }
  return b;
}

double nu0_objective(double nu) {
  if (!(nu > -1.0)) throw DomainError("nu0_objective: requires nu > -1");
  return 0.5 * std::log(std::numbers::pi) + ln_gamma_ratio(nu + 1.5, nu + 1.0) - std::log(8.0);
}

RootBracket nu0_bracket(double lo, double hi, double tol) {
  return RootBracket::make(lo, hi, nu0_objective, tol);
}

RootEnclosure bisect(const std::function<double(double)>& f, const RootBracket& bracket,
                     double tol) {
  if (!(tol >= kMinRootTolerance)) {
    std::ostringstream os;
    os << "root tolerance must be at least " << kMinRootTolerance << ", got " << tol;
    throw InputError(os.str());
  }
  if (!(bracket.lo < bracket.hi) || std::signbit(bracket.f_lo) == std::signbit(bracket.f_hi)) {
    throw BracketError("invalid bracket: endpoints must straddle a sign change");
  }
  RootEnclosure e{0.0, bracket.lo, bracket.hi, 0};
  const bool lo_negative = std::signbit(bracket.f_lo);
  while (e.hi - e.lo > tol) {
    const double mid = 0.5 * (e.lo + e.hi);
    if (mid <= e.lo || mid >= e.hi) break;  // interval at machine resolution
    const double fm = f(mid);
    ++e.iterations;
    if (fm == 0.0) {
      e.lo = e.hi = mid;
      break;
    }
    if (std::signbit(fm) == lo_negative) {
      e.lo = mid;
    } else {
      e.hi = mid;
    }
  }
  e.root = 0.5 * (e.lo + e.hi);
  return e;
}

double find_nu0(const RootBracket& bracket, double tol) {
  return bisect(nu0_objective, bracket, tol).root;
}

std::vector<double> nu_lattice(double nu_min, double nu_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InputError("scan step must be positive");
  if (!(nu_min < nu_max)) throw InputError("scan range requires nu_min < nu_max");
  const auto count = static_cast<std::size_t>(std::floor((nu_max - nu_min) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(nu_min + static_cast<double>(k) * step);
  return out;
}

std::vector<ScanRow> scan_nu(double nu_min, double nu_max, double step, const DiskGrid& grid,
                             int n_max, const ScanOptions& options) {
  if (!(nu_min > -0.5)) throw DomainError("scan range must satisfy nu_min > -1/2");
  if (n_max < 4) throw InputError("scan needs n_max >= 4 for the coefficient certificates");
  const std::vector<double> nus = nu_lattice(nu_min, nu_max, step);
  std::vector<ScanRow> rows(nus.size());
  detail::parallel_for(nus.size(), options.threads, [&](std::size_t i) {
    ScanRow& row = rows[i];
    row.nu = nus[i];
    try {
      const Order order{row.nu};
      const CoefficientTable table = coefficient_table(order, n_max);
      row.acharya = certify_acharya(table).passed;
      row.ms_two_six = certify_ms_two_six(table).passed;
      row.cc_odd = certify_cc_odd(table).passed;
      row.numeric_margin =
          margin_scan(order, Property::starlike_lambda, 0.0, 0.0, grid, Subject::f_equals_zB)
              .extremal_margin;
    } catch (const std::exception& e) {
      row.numeric_margin = std::numeric_limits<double>::quiet_NaN();
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace bskernel
