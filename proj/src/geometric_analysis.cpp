#include "bskernel/geometric_analysis.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <sstream>

#include "bskernel/errors.hpp"
#include "parallel.hpp"

namespace bskernel {

namespace {

std::string point_text(cdouble z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// z f'/f, with the limit 1 at a simple zero in the origin.
cdouble starlike_ratio(const FunctionJet& j, cdouble z) {
  if (std::abs(j.f) < kPoleProximity) {
    if (z == cdouble(0.0) && std::abs(j.df) >= kPoleProximity) return 1.0;
    throw PoleProximityError("|f(z)| below " + std::to_string(kPoleProximity) + " at z = " +
                                 point_text(z),
                             z);
  }
  return z * j.df / j.f;
}

// z f''/f'
cdouble convex_ratio(const FunctionJet& j, cdouble z) {
  if (std::abs(j.df) < kPoleProximity) {
    throw PoleProximityError("|f'(z)| below " + std::to_string(kPoleProximity) + " at z = " +
                                 point_text(z),
                             z);
  }
  return z * j.d2f / j.df;
}

std::string normalize_token(std::string_view text) {
  std::string s(text);
  for (char& c : s) {
    if (c == '-') c = '_';
  }
  return s;
}

}  // namespace

AnalyticFunction identity_function() {
  return [](cdouble z) { return FunctionJet{z, 1.0, 0.0}; };
}

AnalyticFunction koebe_half_function() {
  return [](cdouble z) {
    const cdouble w = 1.0 / (1.0 - z);
    return FunctionJet{z * w, w * w, 2.0 * w * w * w};
  };
}

AnalyticFunction normalized_kernel_function(Order order) {
  auto series = std::make_shared<const KernelSeries>(order);
  return [series](cdouble z) {
    const KernelJet b = series->jet(z);
    return FunctionJet{z * b.value, b.value + z * b.d1, 2.0 * b.d1 + z * b.d2};
  };
}

AnalyticFunction shifted_kernel_function(Order order) {
  auto series = std::make_shared<const KernelSeries>(order);
  const double scale = 1.0 / bs_coefficient(order, 1);
  return [series, scale](cdouble z) {
    const KernelJet b = series->jet(z);
    return FunctionJet{scale * (b.value - 1.0), scale * b.d1, scale * b.d2};
  };
}

std::string_view to_string(StarlikeTarget target) {
  switch (target) {
    case StarlikeTarget::identity:
      return "identity";
    case StarlikeTarget::koebe_half:
      return "koebe_half";
    case StarlikeTarget::odd:
      return "odd";
  }
  return "unknown";
}

double functional_starlike(const AnalyticFunction& f, cdouble z) {
  return starlike_ratio(f(z), z).real();
}

double functional_s1(const AnalyticFunction& f, cdouble z) {
  return std::abs(starlike_ratio(f(z), z) - 1.0);
}

double functional_ctc(const AnalyticFunction& f, StarlikeTarget target, cdouble z) {
  const cdouble df = f(z).df;
  switch (target) {
    case StarlikeTarget::identity:
      return df.real();
    case StarlikeTarget::koebe_half:
      return ((1.0 - z) * df).real();
    case StarlikeTarget::odd:
      return ((1.0 - z * z) * df).real();
  }
  return 0.0;
}

double functional_convex(const AnalyticFunction& f, cdouble z) {
  return (1.0 + convex_ratio(f(z), z)).real();
}

double functional_owa_srivastava(const AnalyticFunction& f, double beta, cdouble z) {
  if (!(beta >= 0.0)) throw DomainError("owa_srivastava: beta must be non-negative");
  const FunctionJet j = f(z);
  const double s1 = std::abs(starlike_ratio(j, z) - 1.0);
  if (beta == 0.0) return s1;
  const double curvature = std::abs(convex_ratio(j, z));
  if (beta == 1.0) return curvature;
  // std::pow(0, 0) == 1, which is the convention wanted here.
  return std::pow(s1, 1.0 - beta) * std::pow(curvature, beta);
}

double owa_srivastava_threshold(double lambda, double beta) {
  return std::pow(1.0 - lambda, 1.0 - 2.0 * beta) *
         std::pow(1.0 - 1.5 * lambda + lambda * lambda, beta);
}

// ---------------------------------------------------------------------------

DiskGrid::DiskGrid(std::vector<double> radii, int angles_per_radius)
    : radii_(std::move(radii)), angles_(angles_per_radius) {
  if (radii_.empty()) throw InputError("DiskGrid: at least one radius is required");
  if (angles_ < 8) throw InputError("DiskGrid: at least 8 angles per radius are required");
  double previous = 0.0;
  for (double r : radii_) {
    if (!(r > previous)) throw InputError("DiskGrid: radii must be positive and strictly increasing");
    previous = r;
  }
  if (radii_.back() > 1.0 - 1e-6) {
    throw InputError("DiskGrid: radii must stay inside the open disk (max 1 - 1e-6)");
  }
}

DiskGrid DiskGrid::default_grid() {
  return DiskGrid({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999}, 1024);
}

DiskGrid DiskGrid::boundary_dense(int radius_count, int angles_per_radius, double radius_max) {
  if (radius_count < 1) throw InputError("DiskGrid: radius count must be positive");
  if (!(radius_max > 0.0 && radius_max <= 1.0 - 1e-6)) {
    throw InputError("DiskGrid: radius_max must lie in (0, 1 - 1e-6]");
  }
  std::vector<double> radii;
  radii.reserve(radius_count);
  for (int k = 1; k <= radius_count; ++k) {
    radii.push_back(k == radius_count
                        ? radius_max
                        : radius_max * std::sin(0.5 * std::numbers::pi * k / radius_count));
  }
  return DiskGrid(std::move(radii), angles_per_radius);
}

DiskGrid DiskGrid::from_spec(std::string_view spec, double radius_max) {
  const auto x = spec.find('x');
  int radii = 0;
  int angles = 0;
  auto parse = [](std::string_view s, int& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };
  if (x == std::string_view::npos || !parse(spec.substr(0, x), radii) ||
      !parse(spec.substr(x + 1), angles)) {
    throw InputError("grid spec must look like RADIIxANGLES, e.g. 12x1024; got '" +
                     std::string(spec) + "'");
  }
  return boundary_dense(radii, angles, radius_max);
}

double DiskGrid::angle(int j) const { return 2.0 * std::numbers::pi * j / angles_; }

cdouble DiskGrid::point(std::size_t radius_index, int angle_index) const {
  return std::polar(radii_[radius_index], angle(angle_index));
}

std::string DiskGrid::descriptor() const {
  std::ostringstream os;
  os.precision(17);
  os << radii_.size() << "x" << angles_ << " r=[" << radii_.front() << ", " << radii_.back()
     << "]";
  return os.str();
}

std::string_view to_string(Property property) {
  switch (property) {
    case Property::starlike_lambda:
      return "starlike_lambda";
    case Property::s1_lambda:
      return "s1_lambda";
    case Property::ctc_identity:
      return "ctc_identity";
    case Property::ctc_koebe_half:
      return "ctc_koebe_half";
    case Property::ctc_odd:
      return "ctc_odd";
    case Property::convex_lambda:
      return "convex_lambda";
    case Property::owa_srivastava:
      return "owa_srivastava";
  }
  return "unknown";
}

std::optional<Property> parse_property(std::string_view text) {
  const std::string s = normalize_token(text);
  if (s == "starlike" || s == "starlike_lambda") return Property::starlike_lambda;
  if (s == "s1" || s == "s1_lambda") return Property::s1_lambda;
  if (s == "ctc_identity") return Property::ctc_identity;
  if (s == "ctc_koebe_half") return Property::ctc_koebe_half;
  if (s == "ctc_odd") return Property::ctc_odd;
  if (s == "convex" || s == "convex_lambda") return Property::convex_lambda;
  if (s == "owa" || s == "owa_srivastava") return Property::owa_srivastava;
  return std::nullopt;
}

bool is_owa_family(Property property) {
  return property == Property::s1_lambda || property == Property::owa_srivastava;
}

std::string_view to_string(Subject subject) {
  return subject == Subject::f_equals_zB ? "zB" : "h";
}

unsigned threads_from_environment() {
  const char* env = std::getenv("BS_THREADS");
  if (env == nullptr) return 1;
  const std::string_view s(env);
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) return 1;
  return value;
}

MarginReport margin_scan(const AnalyticFunction& f, Property property, double lambda, double beta,
                         const DiskGrid& grid, const ScanOptions& options) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw DomainError("margin_scan: lambda must lie in [0, 1)");
  if (is_owa_family(property) && lambda > 0.5) {
    throw DomainError("margin_scan: lambda must lie in [0, 1/2] for " +
                      std::string(to_string(property)));
  }
  if (!(beta >= 0.0)) throw DomainError("margin_scan: beta must be non-negative");

  const bool upper = property == Property::s1_lambda || property == Property::owa_srivastava;
  const double threshold = !upper                          ? lambda
                           : property == Property::s1_lambda ? 1.0 - lambda
                                                             : owa_srivastava_threshold(lambda, beta);
  auto point_margin = [&](cdouble z) -> double {
    switch (property) {
      case Property::starlike_lambda:
        return functional_starlike(f, z) - lambda;
      case Property::s1_lambda:
        return threshold - functional_s1(f, z);
      case Property::ctc_identity:
        return functional_ctc(f, StarlikeTarget::identity, z) - lambda;
      case Property::ctc_koebe_half:
        return functional_ctc(f, StarlikeTarget::koebe_half, z) - lambda;
      case Property::ctc_odd:
        return functional_ctc(f, StarlikeTarget::odd, z) - lambda;
      case Property::convex_lambda:
        return functional_convex(f, z) - lambda;
      case Property::owa_srivastava:
        return threshold - functional_owa_srivastava(f, beta, z);
    }
    return 0.0;
  };

  const std::size_t angles = static_cast<std::size_t>(grid.angles_per_radius());
  std::vector<double> margins(grid.size());
  detail::parallel_for(grid.size(), options.threads, [&](std::size_t i) {
    margins[i] = point_margin(grid.point(i / angles, static_cast<int>(i % angles)));
  });

  // Serial reduction in (radius, angle) order: ties resolve to the
  // lexicographically first point regardless of thread count.
  std::size_t best = 0;
  for (std::size_t i = 1; i < margins.size(); ++i) {
    if (margins[i] < margins[best]) best = i;
  }
  MarginReport report{};
  report.property = property;
  report.lambda = lambda;
  report.beta = beta;
  report.extremal_margin = margins[best];
  report.threshold = threshold;
  report.upper_bound = upper;
  report.extremal_value = upper ? threshold - margins[best] : margins[best] + threshold;
  report.argmin_radius = grid.radii()[best / angles];
  report.argmin_angle = grid.angle(static_cast<int>(best % angles));
  report.argmin_point = grid.point(best / angles, static_cast<int>(best % angles));
  report.grid = grid.descriptor();
  return report;
}

MarginReport margin_scan(Order order, Property property, double lambda, double beta,
                         const DiskGrid& grid, Subject subject, const ScanOptions& options) {
  const AnalyticFunction f = subject == Subject::f_equals_zB ? normalized_kernel_function(order)
                                                             : shifted_kernel_function(order);
  return margin_scan(f, property, lambda, beta, grid, options);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Lemma lemma) {
  switch (lemma) {
    case Lemma::acharya:
      return "acharya";
    case Lemma::ms_two_six:
      return "ms_two_six";
    case Lemma::ms_cc_odd:
      return "cc_odd";
  }
  return "unknown";
}

std::optional<Lemma> parse_lemma(std::string_view text) {
  const std::string s = normalize_token(text);
  if (s == "acharya") return Lemma::acharya;
  if (s == "ms_two_six" || s == "ms") return Lemma::ms_two_six;
  if (s == "cc_odd" || s == "ms_cc_odd") return Lemma::ms_cc_odd;
  return std::nullopt;
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::satisfied:
      return "satisfied";
    case CheckStatus::boundary:
      return "boundary";
    case CheckStatus::violated:
      return "violated";
  }
  return "unknown";
}

CheckStatus classify_margin(double log_margin) {
  if (std::isnan(log_margin) || log_margin < -kCertificateTolerance) return CheckStatus::violated;
  if (log_margin <= kCertificateTolerance) return CheckStatus::boundary;
  return CheckStatus::satisfied;
}

std::vector<double> CertificateReport::margins() const {
  std::vector<double> out;
  out.reserve(checks.size());
  for (const auto& c : checks) out.push_back(c.margin);
  return out;
}

bool CertificateReport::has_boundary() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::boundary) return true;
  }
  return false;
}

namespace {

class ReportBuilder {
 public:
  explicit ReportBuilder(Lemma lemma) { report_.lemma = lemma; }

  void add(int n, std::string condition, double margin) {
    const CheckStatus status = classify_margin(margin);
    if (status == CheckStatus::violated && !report_.first_violation) report_.first_violation = n;
    report_.checks.push_back({n, std::move(condition), margin, status});
  }

  CertificateReport finish(int n_checked) {
    report_.n_checked = n_checked;
    report_.passed = !report_.first_violation.has_value();
    return std::move(report_);
  }

 private:
  CertificateReport report_;
};

void require_length(const CoefficientTable& table, int minimum, Lemma lemma) {
  if (table.size() < minimum) {
    throw InputError(std::string(to_string(lemma)) + " certificate needs at least " +
                     std::to_string(minimum) + " coefficients, table has " +
                     std::to_string(table.size()));
  }
}

void require_unit_lead(const CoefficientTable& table, Lemma lemma) {
  if (std::abs(table.log_a(1)) > 1e-15) {
    throw InputError(std::string(to_string(lemma)) + " certificate requires a_1 = 1");
  }
}

}  // namespace

CertificateReport certify_acharya(const CoefficientTable& table) {
  require_length(table, 4, Lemma::acharya);
  require_unit_lead(table, Lemma::acharya);
  const int n_max = table.size();
  ReportBuilder b(Lemma::acharya);
  for (int n = 1; n <= n_max - 1; ++n) {
    const double nd = n;
    b.add(n, "n a_n >= (n+1) a_{n+1}", table.log_ratio(n, n + 1) - std::log1p(1.0 / nd));
    if (n >= 2 && n <= n_max - 2) {
      // (n a_n + (n+2) a_{n+2}) / (2 (n+1) a_{n+1})
      const double ratio = (nd * std::exp(table.log_ratio(n, n + 1)) +
                            (nd + 2.0) * std::exp(table.log_ratio(n + 2, n + 1))) /
                           (2.0 * (nd + 1.0));
      b.add(n, "n a_n - 2(n+1) a_{n+1} + (n+2) a_{n+2} >= 0", std::log(ratio));
    }
  }
  return b.finish(n_max - 2);
}

CertificateReport certify_ms_two_six(const CoefficientTable& table) {
  require_length(table, 4, Lemma::ms_two_six);
  const int n_max = table.size();
  ReportBuilder b(Lemma::ms_two_six);
  b.add(1, "a_1 >= 2 a_2", table.log_ratio(1, 2) - std::log(2.0));
  b.add(2, "2 a_2 >= 6 a_3", table.log_ratio(2, 3) - std::log(3.0));
  for (int n = 3; n <= n_max - 1; ++n) {
    const double nd = n;
    b.add(n, "n(n-2) a_n >= (n-1)(n+1) a_{n+1}",
          table.log_ratio(n, n + 1) + std::log(nd * (nd - 2.0) / ((nd - 1.0) * (nd + 1.0))));
  }
  return b.finish(n_max - 1);
}

CertificateReport certify_cc_odd(const CoefficientTable& table) {
  require_length(table, 3, Lemma::ms_cc_odd);
  require_unit_lead(table, Lemma::ms_cc_odd);
  const int n_max = table.size();
  ReportBuilder b(Lemma::ms_cc_odd);
  b.add(1, "a_1 >= 8 a_2", table.log_ratio(1, 2) - std::log(8.0));
  for (int n = 2; n <= n_max - 1; ++n) {
    const double nd = n;
    b.add(n, "(n-1) a_n >= (n+1) a_{n+1}",
          table.log_ratio(n, n + 1) + std::log((nd - 1.0) / (nd + 1.0)));
  }
  return b.finish(n_max - 1);
}

CertificateReport certify(Lemma lemma, const CoefficientTable& table) {
  switch (lemma) {
    case Lemma::acharya:
      return certify_acharya(table);
    case Lemma::ms_two_six:
      return certify_ms_two_six(table);
    case Lemma::ms_cc_odd:
      return certify_cc_odd(table);
  }
  throw InputError("unknown lemma");
}

std::vector<CertificateCheck> ratio_bound_checks(const CoefficientTable& table) {
  std::vector<CertificateCheck> out;
  for (int n = 1; n + 1 <= table.size(); ++n) {
    const double margin = table.log_ratio(n, n + 1) - std::log(n + 1.0);
    out.push_back({n, "a_n / a_{n+1} >= n + 1", margin, classify_margin(margin)});
  }
  return out;
}

}  // namespace bskernel
