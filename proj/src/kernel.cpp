#include "bskernel/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bskernel/errors.hpp"

namespace bskernel {

namespace {

const double kHalfLnPi = 0.5 * std::log(std::numbers::pi);

void require_disk(cdouble z, const char* fn) {
  if (!(std::abs(z) <= kDiskRadiusLimit)) {
    std::ostringstream os;
    os << fn << ": |z| must not exceed 1 (got " << std::abs(z) << ")";
    throw DomainError(os.str());
  }
}

// Quadrature route. With alpha = nu - 1/2 and the substitution 1 - t = s^m,
//   int_0^1 (1-t^2)^alpha e^{zt} dt
//     = int_0^1 m s^{m(alpha+1)-1} (2 - s^m)^alpha e^{z(1 - s^m)} ds.
// The endpoint factor (1-t)^alpha becomes s^{m(alpha+1)-1}; m is the
// smallest integer pushing that exponent to at least 7, after which the
// Gauss-Legendre error from the s = 0 endpoint is negligible.
cdouble integrate_kernel(Order order, cdouble z, const QuadratureRule& rule) {
  const double alpha = order.nu - 0.5;
  const double m = std::max(1.0, std::ceil(8.0 / (alpha + 1.0)));
  const double power = m * (alpha + 1.0) - 1.0;
  const double log_prefactor = std::log(2.0) - kHalfLnPi +
                               ln_gamma_ratio(order.nu + 1.0, order.nu + 0.5) + std::log(m);
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double s = rule.nodes[i];
    const double sm = std::pow(s, m);
    const double log_weight = log_prefactor + power * std::log(s) + alpha * std::log(2.0 - sm);
    acc += rule.weights[i] * std::exp(log_weight + z * (1.0 - sm));
  }
  return acc;
}

}  // namespace

std::string_view to_string(EvalMethod method) {
  switch (method) {
    case EvalMethod::series:
      return "series";
    case EvalMethod::quadrature:
      return "quadrature";
    case EvalMethod::bessel_sum:
      return "bessel_sum";
  }
  return "unknown";
}

std::optional<EvalMethod> parse_eval_method(std::string_view text) {
  if (text == "series") return EvalMethod::series;
  if (text == "quadrature") return EvalMethod::quadrature;
  if (text == "bessel_sum" || text == "bessel-sum") return EvalMethod::bessel_sum;
  return std::nullopt;
}

void require_kernel_order(Order order) {
  if (!(order.nu > -0.5) || !std::isfinite(order.nu)) {
    std::ostringstream os;
    os << "kernel order must satisfy nu > -1/2, got nu = " << order.nu;
    throw DomainError(os.str());
  }
}

QuadratureRule make_quadrature(int order) {
  if (order < 1 || order > 256) {
    throw InputError("make_quadrature: order must be in [1, 256], got " + std::to_string(order));
  }
  const int n = order;
  QuadratureRule rule;
  rule.order = n;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from the Tricomi initial guesses; roots come
  // in +/- pairs so only the upper half is solved.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // (x+1)/2 for the upper root, (1-x)/2 for its mirror.
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 0.5 * w;
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[i] = 0.5 * w;
  }
  return rule;
}

double log_bs_coefficient(Order order, int n) {
  require_kernel_order(order);
  if (n < 0) throw DomainError("bs_coefficient: index must be non-negative");
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  // Gamma((n+1)/2) / (sqrt(pi) Gamma(n+1)) * Gamma(nu+1) / Gamma(n/2+nu+1)
  return ln_gamma_ratio(order.nu + 1.0, 0.5 * nd + order.nu + 1.0) +
         ln_gamma_ratio(0.5 * (nd + 1.0), nd + 1.0) - kHalfLnPi;
}

double bs_coefficient(Order order, int n) { return std::exp(log_bs_coefficient(order, n)); }

CoefficientTable CoefficientTable::for_order(Order order, int n_max) {
  require_kernel_order(order);
  if (n_max < 1) throw InputError("coefficient_table: n_max must be at least 1");
  CoefficientTable table;
  table.nu_ = order.nu;
  table.log_a_.resize(n_max);
  table.log_a_[0] = 0.0;
  for (int n = 2; n <= n_max; ++n) table.log_a_[n - 1] = log_bs_coefficient(order, n - 1);
  return table;
}

CoefficientTable CoefficientTable::from_values(std::span<const double> values) {
  if (values.empty()) throw InputError("coefficient table needs at least one value");
  CoefficientTable table;
  table.log_a_.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InputError("coefficient table values must be finite and positive");
    }
    table.log_a_.push_back(std::log(v));
  }
  return table;
}

double CoefficientTable::log_a(int n) const {
  if (n < 1 || n > size()) {
    throw InputError("coefficient index " + std::to_string(n) + " outside table of size " +
                     std::to_string(size()));
  }
  return log_a_[n - 1];
}

double CoefficientTable::a(int n) const { return std::exp(log_a(n)); }

double CoefficientTable::log_ratio(int n, int m) const {
  if (!nu_) return log_a(n) - log_a(m);
  log_a(n);
  log_a(m);
  if (n == m) return 0.0;
  // a_n = Gamma(nu+1) Gamma(n/2) / (sqrt(pi) Gamma(n) Gamma((n+1)/2 + nu))
  const double nd = n;
  const double md = m;
  const double nu = *nu_;
  return ln_gamma_ratio(0.5 * nd, 0.5 * md) - ln_gamma_ratio(nd, md) -
         ln_gamma_ratio(0.5 * (nd + 1.0) + nu, 0.5 * (md + 1.0) + nu);
}

CoefficientTable coefficient_table(Order order, int n_max) {
  return CoefficientTable::for_order(order, n_max);
}

KernelSeries::KernelSeries(Order order, const SeriesControl& ctl) : nu_(order.nu) {
  require_kernel_order(order);
  ctl.validate();
  // Keep adding coefficients until two consecutive ones are negligible
  // even after two differentiations on |z| <= 1.
  int small_run = 0;
  for (std::size_t n = 0;; ++n) {
    if (n >= ctl.max_terms) {
      throw NonConvergenceError("KernelSeries: coefficients did not decay below tail tolerance",
                                coef_.empty() ? 0.0 : coef_.back());
    }
    const double c = bs_coefficient(order, static_cast<int>(n));
    coef_.push_back(c);
    const double nd = static_cast<double>(n);
    small_run = (n >= 2 && c * nd * nd < ctl.tail_tolerance) ? small_run + 1 : 0;
    if (small_run == 2) break;
  }
}

cdouble KernelSeries::value(cdouble z) const {
  cdouble v = 0.0;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) v = v * z + *it;
  return v;
}

KernelJet KernelSeries::jet(cdouble z) const {
  cdouble v = 0.0;
  cdouble d1 = 0.0;
  cdouble half_d2 = 0.0;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) {
    half_d2 = half_d2 * z + d1;
    d1 = d1 * z + v;
    v = v * z + *it;
  }
  return {v, d1, 2.0 * half_d2};
}

double KernelSeries::tail_bound(cdouble z) const {
  const int n = static_cast<int>(coef_.size());
  const double r = std::abs(z);
  const double c0 = bs_coefficient(Order{nu_}, n);
  const double c1 = bs_coefficient(Order{nu_}, n + 1);
  const double q = r * r / ((n + 2.0) * (n + 2.0 + 2.0 * nu_));
  return (c0 * std::pow(r, n) + c1 * std::pow(r, n + 1)) / (1.0 - q);
}

KernelEvaluation bs_evaluate(Order order, cdouble z, EvalMethod method, const SeriesControl& ctl) {
  require_kernel_order(order);
  require_disk(z, "bs_eval");
  KernelEvaluation out;
  out.method = method;
  switch (method) {
    case EvalMethod::series: {
      const KernelSeries series(order, ctl);
      out.value = series.value(z);
      out.terms = series.terms();
      out.tail_bound = series.tail_bound(z);
      break;
    }
    case EvalMethod::quadrature: {
      const QuadratureRule rule = make_quadrature(kDefaultQuadratureOrder);
      out.value = integrate_kernel(order, z, rule);
      out.quadrature_order = rule.order;
      out.loose_tolerance = order.nu < 0.5;
      break;
    }
    case EvalMethod::bessel_sum:
      out.value = scaled_modified_bessel_i(order, z, ctl) + scaled_modified_struve_l(order, z, ctl);
      break;
  }
  return out;
}

cdouble bs_eval(Order order, cdouble z, EvalMethod method, const SeriesControl& ctl) {
  return bs_evaluate(order, z, method, ctl).value;
}

cdouble bs_derivative(Order order, cdouble z, int derivative_order, const SeriesControl& ctl) {
  require_kernel_order(order);
  require_disk(z, "bs_derivative");
  if (derivative_order != 1 && derivative_order != 2) {
    throw InputError("bs_derivative: derivative order must be 1 or 2");
  }
  const KernelJet j = KernelSeries(order, ctl).jet(z);
  return derivative_order == 1 ? j.d1 : j.d2;
}

double recurrence_residual(Order order, cdouble z) {
  if (!(order.nu > 0.5)) {
    std::ostringstream os;
    os << "recurrence_residual: requires nu > 1/2 so that nu - 1 > -1/2, got " << order.nu;
    throw DomainError(os.str());
  }
  require_disk(z, "recurrence_residual");
  const KernelJet j = KernelSeries(order).jet(z);
  const cdouble lower = KernelSeries(Order{order.nu - 1.0}).value(z);
  return std::abs(z * j.d1 - 2.0 * order.nu * (lower - j.value));
}

double prop1_residual(Order order, cdouble z) {
  if (!(order.nu > 0.0)) {
    std::ostringstream os;
    os << "prop1_residual: requires nu > 0, got " << order.nu;
    throw DomainError(os.str());
  }
  require_disk(z, "prop1_residual");
  const cdouble lhs = KernelSeries(order).value(z);
  const cdouble rhs = scaled_modified_bessel_i(order, z) + scaled_modified_struve_l(order, z);
  return std::abs(lhs - rhs);
}

double ode_constant(Order order) {
  require_kernel_order(order);
  return 2.0 * std::exp(ln_gamma_ratio(order.nu + 1.0, order.nu + 0.5) - kHalfLnPi);
}

namespace {

double ode_residual_impl(Order order, cdouble z, bool printed_form, const char* fn) {
  require_kernel_order(order);
  require_disk(z, fn);
  if (z == cdouble(0.0)) {
    throw DomainError(std::string(fn) + ": z = 0 is excluded (the identity degenerates to 0 = 0)");
  }
  const KernelJet j = KernelSeries(order).jet(z);
  const double m = ode_constant(order);
  const cdouble zero_order = printed_form ? z * j.value : z * z * j.value;
  return std::abs(z * z * j.d2 + (2.0 * order.nu + 1.0) * z * j.d1 - zero_order - z * m);
}

}  // namespace

double ode_residual(Order order, cdouble z) { return ode_residual_impl(order, z, false, "ode_residual"); }

double ode_residual_printed_form(Order order, cdouble z) {
  return ode_residual_impl(order, z, true, "ode_residual_printed_form");
}

}  // namespace bskernel
