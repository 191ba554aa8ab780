#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bskernel/kernel.hpp"

namespace bskernel {

// Value and first two derivatives of an analytic function at a point.
struct FunctionJet {
  cdouble f;
  cdouble df;
  cdouble d2f;
};

using AnalyticFunction = std::function<FunctionJet(cdouble)>;

// Fixtures with closed forms.
AnalyticFunction identity_function();    // f(z) = z
AnalyticFunction koebe_half_function();  // f(z) = z / (1 - z)

// f(z) = z B_nu(z), normalized so that f(0) = 0 and f'(0) = 1.
AnalyticFunction normalized_kernel_function(Order order);

// h(z) = (B_nu(z) - 1) / B_nu'(0), the normalized shift of B_nu. Every ratio
// functional of h (zh'/h, zh''/h') equals the corresponding one built from
// B_nu directly, since the affine map cancels.
AnalyticFunction shifted_kernel_function(Order order);

// Absolute values below this count as zero when a functional divides by f
// or f'.
inline constexpr double kPoleProximity = 1e-14;

enum class StarlikeTarget { identity, koebe_half, odd };

std::string_view to_string(StarlikeTarget target);

// Re(z f'(z) / f(z)). At z = 0 the removable singularity takes its limit.
double functional_starlike(const AnalyticFunction& f, cdouble z);

// |z f'(z) / f(z) - 1|.
double functional_s1(const AnalyticFunction& f, cdouble z);

// Re(z f'(z) / g(z)) for g in {z, z/(1-z), z/(1-z^2)}, i.e. Re f', Re (1-z) f',
// Re (1-z^2) f'.
double functional_ctc(const AnalyticFunction& f, StarlikeTarget target, cdouble z);

// Re(1 + z f''(z) / f'(z)).
double functional_convex(const AnalyticFunction& f, cdouble z);

// |zf'/f - 1|^{1-beta} |zf''/f'|^beta, with 0^0 = 1. At beta = 0 the second
// factor is never evaluated and the result is exactly functional_s1; at
// beta = 1 it is exactly |zf''/f'|.
double functional_owa_srivastava(const AnalyticFunction& f, double beta, cdouble z);

// (1-lambda)^{1-2 beta} (1 - 3 lambda/2 + lambda^2)^beta.
double owa_srivastava_threshold(double lambda, double beta);

// Polar sampling lattice of the open unit disk; the origin is never a
// sample point.
class DiskGrid {
 public:
  DiskGrid(std::vector<double> radii, int angles_per_radius);

  // Radii {0.1, ..., 0.9, 0.99, 0.999}, 1024 angles.
  static DiskGrid default_grid();

  // Radii r_k = radius_max * sin(pi k / (2 count)), k = 1..count. The sine
  // spacing crowds radii toward radius_max, where extrema tend to sit.
  static DiskGrid boundary_dense(int radius_count, int angles_per_radius, double radius_max);

  // Parses "RxA" (radius count by angle count).
  static DiskGrid from_spec(std::string_view spec, double radius_max);

  const std::vector<double>& radii() const { return radii_; }
  int angles_per_radius() const { return angles_; }
  std::size_t size() const { return radii_.size() * static_cast<std::size_t>(angles_); }

  double angle(int j) const;
  cdouble point(std::size_t radius_index, int angle_index) const;

  std::string descriptor() const;

 private:
  std::vector<double> radii_;
  int angles_;
};

enum class Property {
  starlike_lambda,
  s1_lambda,
  ctc_identity,
  ctc_koebe_half,
  ctc_odd,
  convex_lambda,
  owa_srivastava,
};

std::string_view to_string(Property property);
std::optional<Property> parse_property(std::string_view text);

// Whether the property's threshold comes from the Owa-Srivastava lemma
// (lambda restricted to [0, 1/2]).
bool is_owa_family(Property property);

enum class Subject { f_equals_zB, h_normalized_B };

std::string_view to_string(Subject subject);

struct MarginReport {
  Property property;
  double lambda = 0.0;
  double beta = 0.0;
  // Minimum over the grid of (functional - lambda) for lower-bound
  // properties, or (threshold - functional) for upper-bound ones. The
  // property holds on the grid iff this is positive.
  double extremal_margin = 0.0;
  // The property's bound (lambda, or the upper threshold) and the grid
  // infimum / supremum of the functional that produced extremal_margin.
  double threshold = 0.0;
  double extremal_value = 0.0;
  bool upper_bound = false;
  cdouble argmin_point;
  double argmin_radius = 0.0;
  double argmin_angle = 0.0;
  std::string grid;

  bool holds_on_grid() const { return extremal_margin > 0.0; }

  // Sampled extrema can miss the true ones.
  static constexpr std::string_view kEvidenceLabel = "numerical evidence on grid";
};

struct ScanOptions {
  unsigned threads = 1;
};

// Reads BS_THREADS; falls back to 1 when unset or invalid.
unsigned threads_from_environment();

MarginReport margin_scan(const AnalyticFunction& f, Property property, double lambda, double beta,
                         const DiskGrid& grid, const ScanOptions& options = {});

MarginReport margin_scan(Order order, Property property, double lambda, double beta,
                         const DiskGrid& grid, Subject subject, const ScanOptions& options = {});

// ---------------------------------------------------------------------------
// Coefficient certificates.
//
// Each inequality LHS >= RHS is checked as ln(LHS / RHS) >= 0 from
// CoefficientTable::log_ratio. A log margin within kCertificateTolerance of
// zero is an equality at working precision: it satisfies the non-strict
// inequality but is flagged as `boundary` so callers can see it.

inline constexpr double kCertificateTolerance = 1e-12;

enum class Lemma { acharya, ms_two_six, ms_cc_odd };

std::string_view to_string(Lemma lemma);
std::optional<Lemma> parse_lemma(std::string_view text);

enum class CheckStatus { satisfied, boundary, violated };

std::string_view to_string(CheckStatus status);

struct CertificateCheck {
  int n = 0;
  std::string condition;
  double margin = 0.0;  // ln(LHS / RHS)
  CheckStatus status = CheckStatus::satisfied;
};

struct CertificateReport {
  Lemma lemma;
  int n_checked = 0;
  bool passed = false;
  std::optional<int> first_violation;
  std::vector<CertificateCheck> checks;

  std::vector<double> margins() const;
  bool has_boundary() const;
};

CheckStatus classify_margin(double log_margin);

// Delta a_n = n a_n - (n+1) a_{n+1} >= 0 for 1 <= n <= N-1 and
// Delta^2 a_n = n a_n - 2(n+1) a_{n+1} + (n+2) a_{n+2} >= 0 for 2 <= n <= N-2.
// Requires a_1 = 1 and N >= 4.
CertificateReport certify_acharya(const CoefficientTable& table);

// a_1 >= 2 a_2 >= 6 a_3 and n(n-2) a_n >= (n-1)(n+1) a_{n+1} for
// 3 <= n <= N-1. Requires N >= 4.
CertificateReport certify_ms_two_six(const CoefficientTable& table);

// a_1 >= 8 a_2 and (n-1) a_n >= (n+1) a_{n+1} for 2 <= n <= N-1. Requires
// a_1 = 1 and N >= 3.
CertificateReport certify_cc_odd(const CoefficientTable& table);

CertificateReport certify(Lemma lemma, const CoefficientTable& table);

// ln(a_n / a_{n+1}) - ln(n+1) for 1 <= n <= N-1, i.e. the slack in
// a_n / a_{n+1} >= n + 1, classified like certificate margins.
std::vector<CertificateCheck> ratio_bound_checks(const CoefficientTable& table);

}  // namespace bskernel
