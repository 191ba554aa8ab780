#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bskernel/complex_literal.hpp"
#include "bskernel/errors.hpp"
#include "bskernel/geometric_analysis.hpp"
#include "bskernel/kernel.hpp"
#include "bskernel/threshold_solver.hpp"

namespace bskernel::cli {

namespace {

using nlohmann::ordered_json;

constexpr std::size_t kHumanCheckRows = 12;

struct EvalArgs {
  double nu = 0.0;
  std::string z;
  std::string method = "series";
};

struct CertifyArgs {
  double nu = 0.0;
  std::string lemma;
  int n_max = 200;
};

struct MarginArgs {
  std::optional<double> nu;
  std::string property;
  double lambda = 0.0;
  double beta = 0.0;
  std::optional<double> radius_max;
  std::optional<std::string> grid;
  std::string subject = "zB";
  std::optional<std::string> fixture;
};

struct Nu0Args {
  double tol = 1e-10;
  double lo = 0.0;
  double hi = 30.0;
};

struct ScanArgs {
  double nu_min = 0.0;
  double nu_max = 0.0;
  double step = 0.0;
  int n_max = 200;
  std::optional<std::string> grid;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) { return format_real(x); }

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

void emit_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

ordered_json json_real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

// ---------------------------------------------------------------------------

int cmd_eval(const EvalArgs& args, const std::string& format, std::ostream& out) {
  const auto method = parse_eval_method(args.method);
  if (!method) throw UsageError("unknown method '" + args.method + "'");
  const cdouble z = parse_complex(args.z);
  const KernelEvaluation ev = bs_evaluate(Order{args.nu}, z, *method);

  if (format == "json") {
    ordered_json j;
    j["schema"] = "bskernel.eval/1";
    j["nu"] = args.nu;
    j["z"] = format_complex(z);
    j["method"] = std::string(to_string(ev.method));
    j["value"] = {{"re", ev.value.real()}, {"im", ev.value.imag()}};
    j["terms"] = ev.terms;
    j["quadrature_order"] = ev.quadrature_order;
    j["tail_bound"] = ev.tail_bound;
    j["loose_tolerance"] = ev.loose_tolerance;
    emit_json(out, j);
  } else if (format == "csv") {
    out << "nu,z,method,value_re,value_im,terms,quadrature_order,tail_bound\n";
    out << fmt(args.nu) << "," << format_complex(z) << "," << to_string(ev.method) << ","
        << fmt(ev.value.real()) << "," << fmt(ev.value.imag()) << "," << ev.terms << ","
        << ev.quadrature_order << "," << fmt(ev.tail_bound) << "\n";
  } else {
    out << "B_nu(z) = " << format_complex(ev.value) << "\n";
    out << "nu      = " << fmt(args.nu) << "\n";
    out << "z       = " << format_complex(z) << "\n";
    out << "method  = " << to_string(ev.method) << "\n";
    switch (ev.method) {
      case EvalMethod::series:
        out << "terms   = " << ev.terms << "\n";
        out << "tail    <= " << fmt(ev.tail_bound) << "\n";
        break;
      case EvalMethod::quadrature:
        out << "gauss-legendre order = " << ev.quadrature_order << "\n";
        if (ev.loose_tolerance) {
          out << "note: nu < 1/2, the integrand is singular at t = 1; trust to ~1e-6 only\n";
        }
        break;
      case EvalMethod::bessel_sum:
        out << "route   = Gamma(nu+1) (I_nu + L_nu) without the (z/2)^nu prefactor\n";
        break;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_certify(const CertifyArgs& args, const std::string& format, std::ostream& out) {
  const auto lemma = parse_lemma(args.lemma);
  if (!lemma) throw UsageError("unknown lemma '" + args.lemma + "'");
  if (args.n_max < 4) throw UsageError("--n-max must be at least 4");
  const CoefficientTable table = coefficient_table(Order{args.nu}, args.n_max);
  const CertificateReport report = certify(*lemma, table);

  std::vector<int> boundary;
  for (const auto& c : report.checks) {
    if (c.status == CheckStatus::boundary) boundary.push_back(c.n);
  }

  if (format == "json") {
    ordered_json j;
    j["schema"] = "bskernel.certify/1";
    j["nu"] = args.nu;
    j["lemma"] = std::string(to_string(report.lemma));
    j["n_max"] = args.n_max;
    j["n_checked"] = report.n_checked;
    j["passed"] = report.passed;
    j["first_violation"] =
        report.first_violation ? ordered_json(*report.first_violation) : ordered_json(nullptr);
    j["boundary_indices"] = boundary;
    j["tolerance"] = kCertificateTolerance;
    ordered_json checks = ordered_json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"n", c.n},
                        {"condition", c.condition},
                        {"margin", json_real(c.margin)},
                        {"status", std::string(to_string(c.status))}});
    }
    j["checks"] = std::move(checks);
    emit_json(out, j);
  } else if (format == "csv") {
    out << "n,condition,margin,status\n";
    for (const auto& c : report.checks) {
      out << c.n << ",\"" << c.condition << "\"," << fmt(c.margin) << "," << to_string(c.status)
          << "\n";
    }
  } else {
    out << "certificate " << to_string(report.lemma) << " for nu = " << fmt(args.nu) << " ("
        << args.n_max << " coefficients, n_checked = " << report.n_checked << ")\n";
    out << "result: " << (report.passed ? "PASS" : "FAIL") << "\n";
    out << "first violation: "
        << (report.first_violation ? std::to_string(*report.first_violation) : "none") << "\n";
    if (!boundary.empty()) {
      out << "equalities within " << fmt(kCertificateTolerance) << " (non-strict, counted as held):";
      for (int n : boundary) out << " n=" << n;
      out << "\n";
    }
    out << "log margins ln(LHS/RHS), first " << kHumanCheckRows
        << " checks plus every violated or boundary check:\n";
    std::size_t shown = 0;
    for (const auto& c : report.checks) {
      const bool notable = c.status != CheckStatus::satisfied;
      if (shown >= kHumanCheckRows && !notable) continue;
      out << "  n=" << std::setw(4) << c.n << "  " << std::left << std::setw(46) << c.condition
          << std::right << " " << std::setw(24) << fmt(c.margin) << "  " << to_string(c.status)
          << "\n";
      ++shown;
    }
  }
  return report.passed ? kExitOk : kExitPropertyFails;
}

// ---------------------------------------------------------------------------

int cmd_margin(const MarginArgs& args, const std::string& format, std::ostream& out) {
  const auto property = parse_property(args.property);
  if (!property) throw UsageError("unknown property '" + args.property + "'");

  DiskGrid grid = DiskGrid::default_grid();
  const double radius_max = args.radius_max.value_or(0.999);
  if (args.grid) {
    grid = DiskGrid::from_spec(*args.grid, radius_max);
  } else if (args.radius_max) {
    grid = DiskGrid::boundary_dense(11, 1024, radius_max);
  }

  AnalyticFunction f;
  std::string subject_label;
  if (args.fixture) {
    if (*args.fixture == "identity") {
      f = identity_function();
    } else if (*args.fixture == "koebe-half" || *args.fixture == "koebe_half") {
      f = koebe_half_function();
    } else {
      throw UsageError("unknown fixture '" + *args.fixture + "'");
    }
    subject_label = "fixture:" + *args.fixture;
  } else {
    if (!args.nu) throw UsageError("--nu is required unless --fixture is given");
    const Order order{*args.nu};
    if (args.subject == "zB") {
      f = normalized_kernel_function(order);
    } else if (args.subject == "h") {
      f = shifted_kernel_function(order);
    } else {
      throw UsageError("unknown subject '" + args.subject + "' (expected zB or h)");
    }
    subject_label = args.subject;
  }

  const MarginReport r = margin_scan(f, *property, args.lambda, args.beta, grid,
                                     ScanOptions{threads_from_environment()});

  if (format == "json") {
    ordered_json j;
    j["schema"] = "bskernel.margin/1";
    j["label"] = std::string(MarginReport::kEvidenceLabel);
    j["subject"] = subject_label;
    j["nu"] = args.fixture || !args.nu ? ordered_json(nullptr) : ordered_json(*args.nu);
    j["property"] = std::string(to_string(r.property));
    j["lambda"] = r.lambda;
    j["beta"] = r.beta;
    j["bound"] = r.upper_bound ? "upper" : "lower";
    j["threshold"] = r.threshold;
    j["extremal_value"] = r.extremal_value;
    j["extremal_margin"] = r.extremal_margin;
    j["holds_on_grid"] = r.holds_on_grid();
    j["argmin"] = {{"re", r.argmin_point.real()},
                   {"im", r.argmin_point.imag()},
                   {"radius", r.argmin_radius},
                   {"angle", r.argmin_angle}};
    j["grid"] = r.grid;
    emit_json(out, j);
  } else if (format == "csv") {
    out << "subject,nu,property,lambda,beta,threshold,extremal_value,extremal_margin,argmin_re,"
           "argmin_im,grid\n";
    out << subject_label << "," << (args.nu && !args.fixture ? fmt(*args.nu) : "") << ","
        << to_string(r.property) << "," << fmt(r.lambda) << "," << fmt(r.beta) << ","
        << fmt(r.threshold) << "," << fmt(r.extremal_value) << "," << fmt(r.extremal_margin)
        << "," << fmt(r.argmin_point.real()) << "," << fmt(r.argmin_point.imag()) << ",\""
        << r.grid << "\"\n";
  } else {
    out << "[" << MarginReport::kEvidenceLabel << ", not a proof]\n";
    out << "subject   = " << subject_label;
    if (args.nu && !args.fixture) out << " (nu = " << fmt(*args.nu) << ")";
    out << "\n";
    out << "property  = " << to_string(r.property) << "  lambda = " << fmt(r.lambda);
    if (r.property == Property::owa_srivastava) out << "  beta = " << fmt(r.beta);
    out << "\n";
    out << (r.upper_bound ? "sup" : "inf") << " of functional = " << fmt(r.extremal_value)
        << (r.upper_bound ? "  (must stay below " : "  (must stay above ") << fmt(r.threshold)
        << ")\n";
    out << "extremal margin = " << fmt(r.extremal_margin) << "\n";
    out << "attained at z = " << format_complex(r.argmin_point) << " (r = " << fmt(r.argmin_radius)
        << ", theta = " << fmt(r.argmin_angle) << ")\n";
    out << "grid = " << r.grid << "\n";
    out << "holds on grid: " << (r.holds_on_grid() ? "yes" : "no") << "\n";
  }
  return r.holds_on_grid() ? kExitOk : kExitPropertyFails;
}

// ---------------------------------------------------------------------------

int cmd_nu0(const Nu0Args& args, const std::string& format, std::ostream& out) {
  if (!(args.tol >= kMinRootTolerance)) {
    throw UsageError("--tol must be at least " + fmt(kMinRootTolerance));
  }
  const RootBracket bracket = nu0_bracket(args.lo, args.hi, args.tol);
  const RootEnclosure e = bisect(nu0_objective, bracket, args.tol);
  const double residual = nu0_objective(e.root);

  if (format == "json") {
    ordered_json j;
    j["schema"] = "bskernel.nu0/1";
    j["root"] = e.root;
    j["lo"] = e.lo;
    j["hi"] = e.hi;
    j["objective_at_root"] = residual;
    j["iterations"] = e.iterations;
    j["tol"] = args.tol;
    j["initial_bracket"] = {args.lo, args.hi};
    emit_json(out, j);
  } else if (format == "csv") {
    out << "root,lo,hi,objective_at_root,iterations,tol\n";
    out << fmt(e.root) << "," << fmt(e.lo) << "," << fmt(e.hi) << "," << fmt(residual) << ","
        << e.iterations << "," << fmt(args.tol) << "\n";
  } else {
    out << "nu0 = " << fmt(e.root) << "\n";
    out << "enclosure = [" << fmt(e.lo) << ", " << fmt(e.hi) << "] after " << e.iterations
        << " bisections of [" << fmt(args.lo) << ", " << fmt(args.hi) << "]\n";
    out << "objective ln(sqrt(pi) Gamma(nu+3/2) / (8 Gamma(nu+1))) at root = " << fmt(residual)
        << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct Transition {
  std::string column;
  double nu_before;
  double nu_after;
  std::string from;
  std::string to;
};

std::vector<Transition> find_transitions(const std::vector<ScanRow>& rows) {
  std::vector<Transition> out;
  auto margin_sign = [](const ScanRow& r) -> std::string {
    if (r.error) return "error";
    return r.numeric_margin > 0.0 ? "positive" : "non-positive";
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const ScanRow& a = rows[i - 1];
    const ScanRow& b = rows[i];
    if (a.error || b.error) continue;
    if (a.acharya != b.acharya) {
      out.push_back({"acharya", a.nu, b.nu, fmt_bool(a.acharya), fmt_bool(b.acharya)});
    }
    if (a.ms_two_six != b.ms_two_six) {
      out.push_back({"ms_two_six", a.nu, b.nu, fmt_bool(a.ms_two_six), fmt_bool(b.ms_two_six)});
    }
    if (a.cc_odd != b.cc_odd) {
      out.push_back({"cc_odd", a.nu, b.nu, fmt_bool(a.cc_odd), fmt_bool(b.cc_odd)});
    }
    if (margin_sign(a) != margin_sign(b)) {
      out.push_back({"starlike_margin", a.nu, b.nu, margin_sign(a), margin_sign(b)});
    }
  }
  return out;
}

int cmd_scan(const ScanArgs& args, const std::string& format, std::ostream& out) {
  if (!(args.step > 0.0)) throw UsageError("--step must be positive");
  if (!(args.nu_min < args.nu_max)) throw UsageError("--nu-min must be below --nu-max");
  if (args.n_max < 4) throw UsageError("--n-max must be at least 4");
  if (!(args.nu_min > -0.5)) {
    throw DomainError("scan range must satisfy nu > -1/2, got --nu-min " + fmt(args.nu_min));
  }
  const DiskGrid grid = args.grid ? DiskGrid::from_spec(*args.grid, 0.999) : DiskGrid::default_grid();
  const std::vector<ScanRow> rows = scan_nu(args.nu_min, args.nu_max, args.step, grid, args.n_max,
                                            ScanOptions{threads_from_environment()});
  const std::vector<Transition> transitions = find_transitions(rows);

  if (format == "json") {
    ordered_json j;
    j["schema"] = "bskernel.scan/1";
    j["label"] = std::string(MarginReport::kEvidenceLabel);
    j["n_max"] = args.n_max;
    j["grid"] = grid.descriptor();
    ordered_json jrows = ordered_json::array();
    for (const auto& r : rows) {
      jrows.push_back({{"nu", r.nu},
                       {"acharya", r.acharya},
                       {"ms_two_six", r.ms_two_six},
                       {"cc_odd", r.cc_odd},
                       {"starlike_margin", json_real(r.numeric_margin)},
                       {"error", r.error ? ordered_json(*r.error) : ordered_json(nullptr)}});
    }
    j["rows"] = std::move(jrows);
    ordered_json jt = ordered_json::array();
    for (const auto& t : transitions) {
      jt.push_back({{"column", t.column},
                    {"nu_before", t.nu_before},
                    {"nu_after", t.nu_after},
                    {"from", t.from},
                    {"to", t.to}});
    }
    j["transitions"] = std::move(jt);
    emit_json(out, j);
  } else if (format == "csv") {
    out << "nu,acharya,ms_two_six,cc_odd,starlike_margin\n";
    for (const auto& r : rows) {
      out << fmt(r.nu) << "," << fmt_bool(r.acharya) << "," << fmt_bool(r.ms_two_six) << ","
          << fmt_bool(r.cc_odd) << "," << fmt(r.numeric_margin) << "\n";
    }
  } else {
    out << "[" << MarginReport::kEvidenceLabel << "; certificates use " << args.n_max
        << " coefficients; grid " << grid.descriptor() << "]\n";
    out << std::setw(24) << "nu" << std::setw(9) << "acharya" << std::setw(12) << "ms_two_six"
        << std::setw(8) << "cc_odd" << std::setw(26) << "starlike_margin" << "\n";
    for (const auto& r : rows) {
      out << std::setw(24) << fmt(r.nu) << std::setw(9) << fmt_bool(r.acharya) << std::setw(12)
          << fmt_bool(r.ms_two_six) << std::setw(8) << fmt_bool(r.cc_odd) << std::setw(26)
          << fmt(r.numeric_margin);
      if (r.error) out << "  error: " << *r.error;
      out << "\n";
    }
    if (transitions.empty()) {
      out << "no column changes value across the scanned lattice\n";
    }
    for (const auto& t : transitions) {
      out << t.column << " changes " << t.from << " -> " << t.to << " between nu = "
          << fmt(t.nu_before) << " and nu = " << fmt(t.nu_after) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bessel-Struve kernel evaluation and univalence certificates", "bskernel"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string format = "human";
  auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"human", "json", "csv"}))
        ->capture_default_str();
  };

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate B_nu(z)");
  eval_cmd->add_option("--nu", eval.nu, "Order nu > -1/2")->required();
  eval_cmd->add_option("--z", eval.z, "Complex argument, e.g. 0.5-0.25i")->required();
  eval_cmd->add_option("--method", eval.method, "series | quadrature | bessel_sum")
      ->capture_default_str();
  add_format(eval_cmd);

  CertifyArgs certify_args;
  CLI::App* certify_cmd = app.add_subcommand("certify", "Check a coefficient lemma for z B_nu");
  certify_cmd->add_option("--nu", certify_args.nu, "Order nu > -1/2")->required();
  certify_cmd->add_option("--lemma", certify_args.lemma, "acharya | ms-two-six | cc-odd")->required();
  certify_cmd->add_option("--n-max", certify_args.n_max, "Number of coefficients a_1..a_N")
      ->capture_default_str();
  add_format(certify_cmd);

  MarginArgs margin;
  CLI::App* margin_cmd = app.add_subcommand("margin", "Grid margin of a geometric functional");
  margin_cmd->add_option("--nu", margin.nu, "Order nu > -1/2");
  margin_cmd
      ->add_option("--property", margin.property,
                   "starlike | s1 | ctc-identity | ctc-koebe-half | ctc-odd | convex | owa")
      ->required();
  margin_cmd->add_option("--lambda", margin.lambda, "Order lambda of the class")
      ->capture_default_str();
  margin_cmd->add_option("--beta", margin.beta, "Exponent beta (owa only)")->capture_default_str();
  margin_cmd->add_option("--radius-max", margin.radius_max, "Outermost grid radius (default 0.999)");
  margin_cmd->add_option("--grid", margin.grid, "RADIIxANGLES, e.g. 12x1024");
  margin_cmd->add_option("--subject", margin.subject, "zB (f = z B_nu) | h (normalized B_nu - 1)")
      ->capture_default_str();
  margin_cmd->add_option("--fixture", margin.fixture, "identity | koebe-half instead of a kernel");
  add_format(margin_cmd);

  Nu0Args nu0;
  CLI::App* nu0_cmd = app.add_subcommand("nu0", "Bisect the close-to-convexity threshold nu0");
  nu0_cmd->add_option("--tol", nu0.tol, "Final bracket width (>= 1e-12)")->capture_default_str();
  nu0_cmd->add_option("--lo", nu0.lo, "Initial bracket lower end")->capture_default_str();
  nu0_cmd->add_option("--hi", nu0.hi, "Initial bracket upper end")->capture_default_str();
  add_format(nu0_cmd);

  ScanArgs scan;
  CLI::App* scan_cmd = app.add_subcommand("scan", "Certificates and starlike margin over a nu lattice");
  scan_cmd->add_option("--nu-min", scan.nu_min, "First nu")->required();
  scan_cmd->add_option("--nu-max", scan.nu_max, "Last nu (inclusive)")->required();
  scan_cmd->add_option("--step", scan.step, "Lattice step")->required();
  scan_cmd->add_option("--n-max", scan.n_max, "Coefficients per certificate")->capture_default_str();
  scan_cmd->add_option("--grid", scan.grid, "RADIIxANGLES margin grid (default: built-in grid)");
  add_format(scan_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) return cmd_eval(eval, format, out);
    if (certify_cmd->parsed()) return cmd_certify(certify_args, format, out);
    if (margin_cmd->parsed()) return cmd_margin(margin, format, out);
    if (nu0_cmd->parsed()) return cmd_nu0(nu0, format, out);
    if (scan_cmd->parsed()) return cmd_scan(scan, format, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BracketError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    // Non-convergence, pole proximity and overflow are all failures of the
    // mathematical preconditions rather than of the command line.
    err << "domain error: " << e.what() << "\n";
    return kExitDomain;
  }
  err << "usage error: no subcommand\n";
  return kExitUsage;
}

}  // namespace bskernel::cli
