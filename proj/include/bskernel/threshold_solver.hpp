#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bskernel/geometric_analysis.hpp"

namespace bskernel {

// Interval with a sign change of a scalar function.
struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
  double width_target = 1e-10;

  // Evaluates f at both ends; throws BracketError unless lo < hi and the
  // endpoint values have strictly opposite signs (|f| > 1e-15).
  static RootBracket make(double lo, double hi, const std::function<double(double)>& f,
                          double width_target);
};

// ln(sqrt(pi) Gamma(nu + 3/2)) - ln(8 Gamma(nu + 1)). Strictly increasing on
// (-1, inf); its root is where a_2 = 1/8, the head condition of the
// odd-starlike close-to-convexity certificate.
double nu0_objective(double nu);

inline constexpr double kMinRootTolerance = 1e-12;

RootBracket nu0_bracket(double lo, double hi, double tol);

// Bisection on nu0_objective down to an interval of width <= tol; returns
// the midpoint. Throws InputError for tol < 1e-12.
double find_nu0(const RootBracket& bracket, double tol);

// Bisection result with its final enclosure.
struct RootEnclosure {
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int iterations = 0;
};

RootEnclosure bisect(const std::function<double(double)>& f, const RootBracket& bracket,
                     double tol);

struct ScanRow {
  double nu = 0.0;
  bool acharya = false;
  bool ms_two_six = false;
  bool cc_odd = false;
  // starlike (lambda = 0) margin of z B_nu on the scan grid; NaN when the
  // row failed.
  double numeric_margin = 0.0;
  std::optional<std::string> error;
};

// nu_k = nu_min + k * step for every k with nu_k <= nu_max (1e-9 step slack).
std::vector<double> nu_lattice(double nu_min, double nu_max, double step);

std::vector<ScanRow> scan_nu(double nu_min, double nu_max, double step, const DiskGrid& grid,
                             int n_max, const ScanOptions& options = {});

}  // namespace bskernel
