// degamma command-line frontend: eval, poles, table, beta, verify.
//
// Exit codes: 0 success, 1 failed verification, 2 numeric error, 64 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "degamma/classical_gamma.hpp"
#include "degamma/degenerate.hpp"
#include "degamma/io.hpp"
#include "degamma/products.hpp"
#include "degamma/quadrature.hpp"
#include "degamma/verify.hpp"
#include "report_json.hpp"

namespace {

using namespace degamma;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_numeric = 2;
constexpr int exit_usage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, EvalMethod> gamma_methods = {
    {"closed-form", EvalMethod::ClosedForm}, {"direct-integral", EvalMethod::DirectIntegral},
    {"hankel", EvalMethod::Hankel},          {"hankel-reflected", EvalMethod::Hankel},
    {"weierstrass", EvalMethod::WeierstrassProduct}, {"euler-limit", EvalMethod::EulerLimit},
};

double default_tolerance() {
  const char* env = std::getenv("DEGAMMA_DEFAULT_TOL");
  if (env == nullptr || *env == '\0') return 1e-10;
  const auto v = detail::parse_double(env);
  if (!v || !(*v > 0.0)) throw UsageError(std::string("DEGAMMA_DEFAULT_TOL is not a positive number: ") + env);
  return *v;
}

Complex require_complex(const std::string& text, const char* flag) {
  const auto z = parse_complex(text);
  if (!z) throw UsageError(std::string(flag) + ": cannot parse complex literal '" + text + "'");
  return *z;
}

DegenerateParameter require_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw UsageError("--lambda must lie in (0, 1)");
  return DegenerateParameter(lambda);
}

// Shared evaluation options for eval and table.
struct EvalOptions {
  std::string method = "closed-form";
  std::optional<double> tol;
  std::int64_t n_terms = default_product_terms;
  double delta = QuadratureSpec{}.hankel_radius;
  std::string format = "json";

  void add_to(CLI::App& cmd) {
    cmd.add_option("--method", method, "closed-form | direct-integral | hankel | hankel-reflected | weierstrass | euler-limit")
        ->check(CLI::IsMember({"closed-form", "direct-integral", "hankel", "hankel-reflected", "weierstrass", "euler-limit"}));
    cmd.add_option("--tol", tol, "relative tolerance (quadrature; also enforced on product tail bounds when given)");
    cmd.add_option("--n-terms", n_terms, "product truncation")->check(CLI::PositiveNumber);
    cmd.add_option("--delta", delta, "Hankel circle radius");
    cmd.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  }

  QuadratureSpec quadrature() const {
    QuadratureSpec q;
    q.rel_tolerance = tol ? *tol : default_tolerance();
    q.hankel_radius = delta;
    return q;
  }

  ProductSpec products() const {
    ProductSpec p;
    p.n_terms = n_terms;
    if (tol) p.rel_tolerance = *tol;
    return p;
  }

  OutputFormat output_format() const { return format == "csv" ? OutputFormat::Csv : OutputFormat::JsonLines; }

  EvalResult evaluate(Complex s, const DegenerateParameter& p) const {
    if (method == "closed-form") return degenerate_gamma(s, p);
    if (method == "direct-integral") return direct_integral_gamma(s, p, quadrature());
    if (method == "hankel") return hankel_gamma(s, p, quadrature());
    if (method == "hankel-reflected") return hankel_gamma_reflected(s, p, quadrature());
    if (method == "weierstrass") return weierstrass_gamma(s, p, products());
    return euler_limit_gamma(s, p, products());
  }
};

int cmd_eval(const std::string& s_text, double lambda, const EvalOptions& opt) {
  const Complex s = require_complex(s_text, "--s");
  const auto p = require_lambda(lambda);
  opt.quadrature().validate();
  const EvalResult r = opt.evaluate(s, p);
  if (r.overflow) throw OverflowError("value overflows double range (log|value| = " + std::to_string(r.log_value.real()) + ")");
  RecordWriter writer(std::cout, opt.output_format());
  auto rec = make_record(s, lambda, r);
  if (opt.method == "hankel-reflected") rec.method = "hankel-reflected";
  writer.write(rec);
  writer.finish();
  if (!r.note.empty()) std::cerr << "note: " << r.note << '\n';
  return exit_ok;
}

int cmd_poles(double lambda, std::int64_t n_max, const std::string& format) {
  const auto p = require_lambda(lambda);
  if (n_max < 0) throw UsageError("--n-max must be >= 0");
  RecordWriter writer(std::cout, format == "csv" ? OutputFormat::Csv : OutputFormat::JsonLines);
  for (const auto& pole : poles(p, n_max)) {
    writer.write({pole.location.real(), pole.location.imag(), lambda, pole.residue.real(), pole.residue.imag(), 0.0,
                  to_string(EvalMethod::ClosedForm), to_string(EvalStatus::AtPole)});
  }
  writer.finish();
  return exit_ok;
}

// Table cells never abort the sweep: poles and failed preconditions become records.
OutputRecord table_cell(Complex s, double lambda, const EvalOptions& opt) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  OutputRecord rec{s.real(), s.imag(), lambda, nan, nan, nan, opt.method, "skipped"};
  try {
    const DegenerateParameter p(lambda);
    if (degenerate_gamma(s, p).status == EvalStatus::AtPole) {
      rec.status = "pole";
      return rec;
    }
    const EvalResult r = opt.evaluate(s, p);
    rec = make_record(s, lambda, r);
    rec.method = opt.method;
    if (r.status == EvalStatus::AtPole) {
      rec.value_re = rec.value_im = rec.abs_error = nan;
    } else if (r.overflow) {
      rec.value_re = rec.value_im = rec.abs_error = nan;
      rec.status = "skipped";
    }
  } catch (const PoleError&) {
    rec.status = "pole";
  } catch (const NumericError&) {
  }
  return rec;
}

int cmd_table(const std::optional<std::string>& s_text, const std::optional<std::string>& s_re_range, double s_im,
              const std::string& lambda_text, const EvalOptions& opt) {
  const auto lambda_range = parse_range(lambda_text);
  const bool lambda_sweep = lambda_text.find(':') != std::string::npos;
  if (lambda_sweep && !lambda_range) throw UsageError("--lambda: malformed range '" + lambda_text + "' (want a:b:step)");
  const bool s_sweep = s_re_range.has_value();
  if (lambda_sweep == s_sweep) throw UsageError("table needs exactly one range: --s-re a:b:step or --lambda a:b:step");
  if (s_sweep && s_text) throw UsageError("--s and --s-re are mutually exclusive");
  if (!s_sweep && !s_text) throw UsageError("table needs --s when sweeping lambda");
  opt.quadrature().validate();

  RecordWriter writer(std::cout, opt.output_format());
  if (s_sweep) {
    const auto range = parse_range(*s_re_range);
    if (!range) throw UsageError("--s-re: malformed range '" + *s_re_range + "' (want a:b:step)");
    const auto lambda = detail::parse_double(lambda_text);
    if (!lambda) throw UsageError("--lambda: not a number '" + lambda_text + "'");
    require_lambda(*lambda);
    for (std::int64_t i = 0; i < range->count(); ++i) writer.write(table_cell({range->at(i), s_im}, *lambda, opt));
  } else {
    const Complex s = require_complex(*s_text, "--s");
    if (!(lambda_range->start > 0.0 && lambda_range->at(lambda_range->count() - 1) < 1.0)) {
      throw UsageError("--lambda range must stay inside (0, 1)");
    }
    for (std::int64_t i = 0; i < lambda_range->count(); ++i) writer.write(table_cell(s, lambda_range->at(i), opt));
  }
  writer.finish();
  return exit_ok;
}

int cmd_beta(const std::string& a_text, const std::string& b_text, double lambda, const std::string& method,
             std::int64_t n_terms, const std::string& format) {
  const Complex a = require_complex(a_text, "--alpha");
  const Complex b = require_complex(b_text, "--beta");
  const auto p = require_lambda(lambda);
  EvalResult r;
  if (method == "ratio") {
    r = degenerate_beta(a, b, p);
  } else if (method == "classical-mixed") {
    r = degenerate_beta_classical(a, b, p);
  } else {
    ProductSpec spec;
    spec.n_terms = n_terms;
    r = degenerate_beta_product(a, b, p, spec);
  }
  if (r.overflow) throw OverflowError("value overflows double range");
  auto rec = make_record(a, lambda, r);
  rec.method = method;
  RecordWriter writer(std::cout, format == "csv" ? OutputFormat::Csv : OutputFormat::JsonLines);
  writer.write(rec);
  writer.finish();
  if (!r.note.empty()) std::cerr << "note: " << r.note << '\n';
  return exit_ok;
}

int cmd_verify(std::uint64_t seed, std::int64_t samples, double lambda_lo, double lambda_hi,
               const std::string& report_path, const std::optional<std::string>& fault) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  if (!(lambda_lo > 0.0 && lambda_hi < 1.0 && lambda_lo <= lambda_hi)) {
    throw UsageError("--lambda-min/--lambda-max must satisfy 0 < min <= max < 1");
  }
  SuiteOptions options;
  options.perturbed_check = fault;
  if (fault) {
    auto names = identity_roster();
    for (const char* path : {"direct-integral", "hankel", "hankel-reflected", "weierstrass", "euler-limit"}) {
      names.push_back(path);
    }
    if (std::find(names.begin(), names.end(), *fault) == names.end()) {
      throw UsageError("--inject-fault: unknown check or path '" + *fault + "'");
    }
  }

  auto reports = run_identity_suite(seed, samples, {lambda_lo, lambda_hi}, options);
  reports.push_back(run_cross_path_scan(ScanGrid{}, DegenerateParameter(0.5), options));
  for (auto& r : run_limit_checks()) reports.push_back(std::move(r));
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& x, const CheckReport& y) { return x.check_name < y.check_name; });

  bool all_passed = true;
  nlohmann::json doc = {{"seed", seed},
                        {"samples", samples},
                        {"lambda_range", {lambda_lo, lambda_hi}},
                        {"reports", nlohmann::json::array()}};
  for (const auto& r : reports) {
    all_passed = all_passed && r.passed;
    doc["reports"].push_back(cli::report_json(r));
    std::printf("%s %-26s samples=%-5lld max_rel_err=%.3g\n", r.passed ? "PASS" : "FAIL", r.check_name.c_str(),
                static_cast<long long>(r.sample_count), r.max_rel_err);
  }
  doc["passed"] = all_passed;
  std::ofstream out(report_path);
  if (!out) throw UsageError("cannot write report to " + report_path);
  out << doc.dump(2) << '\n';
  if (!all_passed) {
    for (const auto& r : reports) {
      if (!r.passed) std::cerr << "failed check: " << r.check_name << '\n';
    }
  }
  return all_passed ? exit_ok : exit_verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degenerate gamma and beta functions on the complex plane"};
  app.require_subcommand(1);

  double lambda = 0.0;
  std::string s_text;
  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "evaluate Gamma_lambda(s)");
  eval->add_option("--lambda", lambda, "degeneracy parameter in (0, 1)")->required();
  eval->add_option("--s", s_text, "complex argument: a, bi, a+bi or a-bi")->required()->allow_extra_args(false);
  eval_opt.add_to(*eval);

  double poles_lambda = 0.0;
  std::int64_t n_max = 0;
  std::string poles_format = "json";
  auto* poles_cmd = app.add_subcommand("poles", "list poles and residues");
  poles_cmd->add_option("--lambda", poles_lambda, "degeneracy parameter in (0, 1)")->required();
  poles_cmd->add_option("--n-max", n_max, "largest pole index in each family")->required();
  poles_cmd->add_option("--format", poles_format)->check(CLI::IsMember({"json", "csv"}));

  std::optional<std::string> table_s, table_s_re;
  double table_s_im = 0.0;
  std::string table_lambda;
  EvalOptions table_opt;
  auto* table = app.add_subcommand("table", "sweep Re(s) or lambda");
  table->add_option("--s", table_s, "fixed complex argument (with a lambda range)");
  table->add_option("--s-re", table_s_re, "range a:b:step for Re(s)");
  table->add_option("--s-im", table_s_im, "Im(s) for an --s-re sweep");
  table->add_option("--lambda", table_lambda, "value or range a:b:step")->required();
  table_opt.add_to(*table);

  std::string alpha_text, beta_text, beta_method = "ratio", beta_format = "json";
  double beta_lambda = 0.0;
  std::int64_t beta_terms = default_product_terms;
  auto* beta_cmd = app.add_subcommand("beta", "evaluate B_lambda(alpha, beta)");
  beta_cmd->add_option("--alpha", alpha_text)->required();
  beta_cmd->add_option("--beta", beta_text)->required();
  beta_cmd->add_option("--lambda", beta_lambda)->required();
  beta_cmd->add_option("--method", beta_method)->check(CLI::IsMember({"ratio", "classical-mixed", "product"}));
  beta_cmd->add_option("--n-terms", beta_terms)->check(CLI::PositiveNumber);
  beta_cmd->add_option("--format", beta_format)->check(CLI::IsMember({"json", "csv"}));

  std::uint64_t seed = 0;
  std::int64_t samples = 100;
  double lambda_lo = 0.1, lambda_hi = 0.9;
  std::string report_path = "verify_report.json";
  std::optional<std::string> fault;
  auto* verify = app.add_subcommand("verify", "run the identity suite, path scan and limit checks");
  verify->add_option("--seed", seed);
  verify->add_option("--samples", samples);
  verify->add_option("--lambda-min", lambda_lo);
  verify->add_option("--lambda-max", lambda_hi);
  verify->add_option("--report-path", report_path);
  verify->add_option("--inject-fault", fault, "multiply the named check or path by 1+1e-6");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*eval) return cmd_eval(s_text, lambda, eval_opt);
    if (*poles_cmd) return cmd_poles(poles_lambda, n_max, poles_format);
    if (*table) return cmd_table(table_s, table_s_re, table_s_im, table_lambda, table_opt);
    if (*beta_cmd) return cmd_beta(alpha_text, beta_text, beta_lambda, beta_method, beta_terms, beta_format);
    if (*verify) return cmd_verify(seed, samples, lambda_lo, lambda_hi, report_path, fault);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_numeric;
  }
  return exit_usage;
}
