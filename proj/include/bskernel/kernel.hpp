#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bskernel/special_functions.hpp"

namespace bskernel {

// Largest |z| accepted by the kernel evaluators (closed unit disk plus slack).
inline constexpr double kDiskRadiusLimit = 1.0 + 1e-9;

enum class EvalMethod { series, quadrature, bessel_sum };

std::string_view to_string(EvalMethod method);
std::optional<EvalMethod> parse_eval_method(std::string_view text);

// Throws DomainError unless nu > -1/2.
void require_kernel_order(Order order);

// Gauss-Legendre rule mapped affinely from (-1, 1) onto (0, 1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

// Orders 1..256 are supported; anything else throws InputError.
QuadratureRule make_quadrature(int order);

// n-th Taylor coefficient of B_nu,
//   Gamma(nu+1) Gamma((n+1)/2) / (sqrt(pi) n! Gamma(n/2 + nu + 1)),
// evaluated in log space.
double bs_coefficient(Order order, int n);
double log_bs_coefficient(Order order, int n);

// Coefficients a_n (n >= 1) of f(z) = z B_nu(z), held as ln a_n.
//
// A table is either backed by a kernel order, in which case ratios
// a_n / a_m are re-derived from gamma ratios (no cancellation between large
// logarithms), or by explicit positive values, which tests use as fixtures.
class CoefficientTable {
 public:
  static CoefficientTable for_order(Order order, int n_max);
  // values[0] is a_1.
  static CoefficientTable from_values(std::span<const double> values);

  std::optional<double> nu() const { return nu_; }
  int size() const { return static_cast<int>(log_a_.size()); }

  // 1-based, 1 <= n <= size().
  double log_a(int n) const;
  double a(int n) const;

  // ln(a_n / a_m).
  double log_ratio(int n, int m) const;

 private:
  CoefficientTable() = default;

  std::optional<double> nu_;
  std::vector<double> log_a_;
};

CoefficientTable coefficient_table(Order order, int n_max);

struct KernelJet {
  cdouble value;
  cdouble d1;
  cdouble d2;
};

// Taylor coefficients of B_nu precomputed to the series tolerance, for
// repeated evaluation on a grid. Immutable once built.
class KernelSeries {
 public:
  explicit KernelSeries(Order order, const SeriesControl& ctl = {});

  double nu() const { return nu_; }
  std::size_t terms() const { return coef_.size(); }
  std::span<const double> coefficients() const { return coef_; }

  cdouble value(cdouble z) const;
  KernelJet jet(cdouble z) const;
  // Bound on the magnitude of the discarded tail at z.
  double tail_bound(cdouble z) const;

 private:
  double nu_;
  std::vector<double> coef_;
};

struct KernelEvaluation {
  cdouble value;
  EvalMethod method = EvalMethod::series;
  std::size_t terms = 0;      // series terms summed (series, bessel_sum)
  int quadrature_order = 0;   // quadrature only
  double tail_bound = 0.0;    // series only
  // Quadrature below nu = 1/2 integrates an endpoint singularity and is
  // only trusted to 1e-6.
  bool loose_tolerance = false;
};

inline constexpr int kDefaultQuadratureOrder = 128;

KernelEvaluation bs_evaluate(Order order, cdouble z, EvalMethod method,
                             const SeriesControl& ctl = {});
cdouble bs_eval(Order order, cdouble z, EvalMethod method = EvalMethod::series,
                const SeriesControl& ctl = {});

// derivative_order must be 1 or 2.
cdouble bs_derivative(Order order, cdouble z, int derivative_order, const SeriesControl& ctl = {});

// |z B'_nu(z) - 2 nu (B_{nu-1}(z) - B_nu(z))|, nu > 1/2.
double recurrence_residual(Order order, cdouble z);

// |B_nu(z) - Gamma(nu+1) (core_I(z) + core_L(z))|, nu > 0. The core series
// carry no (z/2)^nu prefactor, so both sides are single-valued on the disk.
double prop1_residual(Order order, cdouble z);

// M = 2 Gamma(nu+1) / (sqrt(pi) Gamma(nu+1/2)), the inhomogeneity of the
// kernel ODE.
double ode_constant(Order order);

// |z^2 B'' + (2nu+1) z B' - z^2 B - z M| for 0 < |z| <= 1.
double ode_residual(Order order, cdouble z);

// Same with the -z B term instead of -z^2 B. Not an identity; kept so the
// tests can show it fails.
double ode_residual_printed_form(Order order, cdouble z);

}  // namespace bskernel
