#pragma once

// Cross-representation consistency harness.
//
// Every identity check samples its own region with a seeded generator, rejects
// draws within 0.05 of a pole, and records relative deviations from the
// reference path (the closed form unless stated otherwise).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "classical_gamma.hpp"
#include "degenerate.hpp"
#include "errors.hpp"
#include "products.hpp"
#include "quadrature.hpp"

namespace degamma {

struct CheckFailure {
  Complex s;
  double lambda = 0.0;
  std::string path;
  Complex observed;
  Complex expected;
  double rel_err = 0.0;
};

struct PathSummary {
  std::int64_t evaluated = 0;
  std::int64_t skipped = 0;  ///< precondition failed at a grid point
  double max_rel_dev = 0.0;
  double tolerance = 0.0;
};

struct CheckReport {
  std::string check_name;
  std::int64_t sample_count = 0;
  std::int64_t rejected_draws = 0;
  double max_rel_err = 0.0;
  double tolerance = 0.0;
  std::int64_t failure_count = 0;
  std::vector<CheckFailure> failures;  ///< first max_recorded_failures entries
  bool passed = true;
  std::map<std::string, PathSummary> paths;  ///< per-path detail (cross-path scan only)
  std::string note;

  static constexpr std::size_t max_recorded_failures = 20;

  void record(double rel_err, double tol, CheckFailure failure) {
    ++sample_count;
    if (std::isnan(rel_err)) rel_err = std::numeric_limits<double>::infinity();
    max_rel_err = std::max(max_rel_err, rel_err);
    if (rel_err <= tol) return;
    failure.rel_err = rel_err;
    ++failure_count;
    passed = false;
    if (failures.size() < max_recorded_failures) failures.push_back(std::move(failure));
  }
};

struct LambdaRange {
  double lo = 0.1;
  double hi = 0.9;
};

struct SuiteOptions {
  /// Per check name: candidate (s, lambda) pairs tried before any random draw (rejection still applies).
  std::map<std::string, std::vector<std::pair<Complex, double>>> forced_draws;
  /// Test hook: multiply the checked path of this check by (1 + perturbation).
  std::optional<std::string> perturbed_check;
  double perturbation = 1e-6;
  std::int64_t product_terms = default_product_terms;
};

/// Check names emitted by run_identity_suite, in emission order (sorted).
inline std::vector<std::string> identity_roster() {
  std::vector<std::string> names = {
      "beta_classical_mixed",     // B_lambda = B(a,b) Gamma(w-a) Gamma(w-b) / (Gamma(w) Gamma(w-a-b))
      "beta_integer",             // B_lambda(m,n) via generalized falling factorials
      "beta_product",             // B_lambda Weierstrass-type product
      "closed_form_beta",         // Gamma_lambda(s) = lambda^{-s} B(s, w-s)
      "difference_equation",      // Gamma_lambda(s+1) = s/(1-lambda(s+1)) Gamma_lambda(s)
      "direct_integral",          // defining integral on the strip
      "euler_limit",              // Euler limit formula
      "hankel_continuation",      // contour representation for -2 < Re(s) < 0
      "hankel_contour",           // contour from -infinity
      "hankel_contour_reflected", // contour from +infinity
      "integer_values",           // Gamma_lambda(k) = Gamma(k)/(1)_{k+1,lambda}
      "lambda_shift_k0",
      "lambda_shift_k1",
      "lambda_shift_k2",
      "residues_nonpositive",
      "residues_shifted",
      "sine_product",
      "symmetry",                 // lambda^s Gamma_lambda(s) = lambda^{w-s} Gamma_lambda(w-s)
      "weierstrass_forms_agree",
      "weierstrass_power_form",
  };
  return names;
}

namespace detail {

inline double rel_diff(Complex observed, Complex expected) {
  const double scale = std::abs(expected);
  return scale == 0.0 ? std::abs(observed) : std::abs(observed - expected) / scale;
}

/// |log a - log b| with the imaginary difference wrapped into (-pi, pi].
inline double log_space_diff(Complex la, Complex lb) {
  const Complex d = la - lb;
  const double im = std::remainder(d.imag(), 2.0 * std::numbers::pi);
  return std::abs(Complex(d.real(), im));
}

/// Shortest distance from s to any pole of Gamma_lambda.
inline double pole_distance(Complex s, double lambda) {
  return nearest_pole(s, DegenerateParameter(lambda)).distance;
}

inline constexpr double rejection_radius = 0.05;

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t stream, const std::string& check, const SuiteOptions& options)
      : rng_(seed * 0x9E3779B97F4A7C15ULL + stream) {
    if (auto it = options.forced_draws.find(check); it != options.forced_draws.end()) forced_ = it->second;
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  /// Draws (s, lambda) until accept(s, lambda) holds; forced candidates come first.
  template <class Draw, class Accept>
  std::pair<Complex, double> draw(Draw&& make, Accept&& accept, std::int64_t& rejected) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
      std::pair<Complex, double> candidate;
      if (forced_index_ < forced_.size()) {
        candidate = forced_[forced_index_++];
      } else {
        candidate = make(*this);
      }
      if (accept(candidate.first, candidate.second)) return candidate;
      ++rejected;
    }
    throw ConvergenceError("sampler could not find an admissible draw");
  }

 private:
  std::mt19937_64 rng_;
  std::vector<std::pair<Complex, double>> forced_;
  std::size_t forced_index_ = 0;
};

struct SuiteContext {
  std::uint64_t seed;
  std::int64_t samples;
  LambdaRange range;
  const SuiteOptions& options;

  Complex maybe_perturb(const std::string& check, Complex v) const {
    if (options.perturbed_check && *options.perturbed_check == check) return v * (1.0 + options.perturbation);
    return v;
  }
};

using CheckBody = std::function<void(const SuiteContext&, Sampler&, CheckReport&)>;

inline CheckReport run_check(const SuiteContext& ctx, std::uint64_t stream, const std::string& name, double tol,
                             const CheckBody& body) {
  CheckReport report;
  report.check_name = name;
  report.tolerance = tol;
  Sampler sampler(ctx.seed, stream, name, ctx.options);
  body(ctx, sampler, report);
  return report;
}

/// Default rectangle for identity sampling: Re in [-2.5, w - 1.5], |Im| <= 5.
inline std::pair<Complex, double> draw_rectangle(Sampler& g, LambdaRange range) {
  const double lambda = g.uniform(range.lo, range.hi);
  const double w = 1.0 / lambda;
  return {Complex(g.uniform(-2.5, w - 1.5), g.uniform(-5.0, 5.0)), lambda};
}

inline bool away_from_integers(Complex s, double radius) { return distance_to_integer(s) >= radius; }

inline bool lambda_away_from_reciprocals(double lambda, std::int64_t j_max, double radius) {
  for (std::int64_t j = 2; j <= j_max; ++j) {
    if (std::abs(lambda - 1.0 / static_cast<double>(j)) < radius) return false;
  }
  return true;
}

}  // namespace detail

/// Runs every identity check; reports are sorted by check_name.
inline std::vector<CheckReport> run_identity_suite(std::uint64_t seed, std::int64_t samples, LambdaRange range,
                                                   const SuiteOptions& options = {}) {
  if (samples < 1) throw DomainError("run_identity_suite needs samples >= 1");
  if (!(range.lo > 0.0 && range.hi < 1.0 && range.lo <= range.hi)) {
    throw ParameterRangeError("lambda range must lie inside (0, 1)");
  }
  using namespace detail;
  const SuiteContext ctx{seed, samples, range, options};
  constexpr double rr = rejection_radius;
  std::vector<CheckReport> reports;
  std::uint64_t stream = 0;

  auto rect_accept = [](Complex s, double lambda) {
    return lambda > 0.0 && lambda < 1.0 && pole_distance(s, lambda) >= rr && pole_distance(s + 1.0, lambda) >= rr;
  };

  reports.push_back(run_check(ctx, stream++, "difference_equation", 1e-10, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw([&](Sampler& gg) { return draw_rectangle(gg, c.range); }, rect_accept,
                                rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex lhs = degenerate_gamma(s + 1.0, p).value;
      const Complex rhs = c.maybe_perturb(rep.check_name, difference_step(s, p) * degenerate_gamma(s, p).value);
      rep.record(rel_diff(rhs, lhs), rep.tolerance, {s, lambda, "difference_step", rhs, lhs});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "symmetry", 1e-10, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw([&](Sampler& gg) { return draw_rectangle(gg, c.range); }, rect_accept,
                                rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex partner = symmetry_partner(s, p);
      const Complex lhs = s * p.log_lambda() + degenerate_gamma(s, p).log_value;
      Complex rhs = partner * p.log_lambda() + degenerate_gamma(partner, p).log_value;
      rhs += std::log(c.maybe_perturb(rep.check_name, Complex(1.0, 0.0)));
      rep.record(log_space_diff(rhs, lhs), rep.tolerance, {s, lambda, "symmetry_partner", rhs, lhs});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "closed_form_beta", 1e-10, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw([&](Sampler& gg) { return draw_rectangle(gg, c.range); }, rect_accept,
                                rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex expected = degenerate_gamma(s, p).value;
      const Complex observed = c.maybe_perturb(
          rep.check_name, std::exp(-s * p.log_lambda() + log_beta(s, symmetry_partner(s, p))));
      rep.record(rel_diff(observed, expected), rep.tolerance, {s, lambda, "classical_beta", observed, expected});
    }
  }));

  for (std::int64_t k = 0; k <= 2; ++k) {
    const std::string name = "lambda_shift_k" + std::to_string(k);
    reports.push_back(run_check(ctx, stream++, name, 1e-10, [&, k](auto& c, auto& g, auto& rep) {
      // The shifted parameter lambda/(1-(k+1)lambda) stays in (0,1) only for lambda < 1/(k+2).
      const double hi = std::min(c.range.hi, 1.0 / static_cast<double>(k + 2) - 0.01);
      if (hi <= c.range.lo) {
        rep.note = "lambda range has no overlap with (0, 1/(k+2)); not applicable";
        return;
      }
      const double kk = static_cast<double>(k);
      auto make = [&](Sampler& gg) {
        const double lambda = gg.uniform(c.range.lo, hi);
        const double upper = (1.0 - lambda) / lambda;
        return std::pair{Complex(gg.uniform(kk + 0.05, upper - 0.05), gg.uniform(-5.0, 5.0)), lambda};
      };
      auto accept = [&](Complex s, double lambda) {
        const double upper = (1.0 - lambda) / lambda;
        if (!(s.real() > kk && s.real() < upper)) return false;
        const double shifted = lambda / (1.0 - (kk + 1.0) * lambda);
        return pole_distance(s + 1.0, lambda) >= rr && pole_distance(s - kk, shifted) >= rr;
      };
      for (std::int64_t i = 0; i < c.samples; ++i) {
        auto [s, lambda] = g.draw(make, accept, rep.rejected_draws);
        const DegenerateParameter p(lambda);
        const auto shift = lambda_shift_recurrence(s, k, p);
        const Complex expected = degenerate_gamma(s + 1.0, p).value;
        const Complex observed = c.maybe_perturb(
            rep.check_name,
            shift.factor * degenerate_gamma(shift.shifted_arg, DegenerateParameter(shift.shifted_lambda)).value);
        rep.record(rel_diff(observed, expected), rep.tolerance, {s, lambda, "lambda_shift", observed, expected});
      }
    }));
  }

  reports.push_back(run_check(ctx, stream++, "integer_values", 1e-12, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      const std::int64_t k = g.integer(1, 10);
      auto [s, lambda] = g.draw(
          [&](Sampler& gg) { return std::pair{Complex(static_cast<double>(k), 0.0), gg.uniform(c.range.lo, c.range.hi)}; },
          [&](Complex, double lam) { return lambda_away_from_reciprocals(lam, k, 0.01); }, rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex expected = degenerate_gamma_integer(k, p).value;
      const Complex observed = c.maybe_perturb(rep.check_name, degenerate_gamma(s, p).value);
      rep.record(rel_diff(observed, expected), rep.tolerance, {s, lambda, "closed_form", observed, expected});
    }
  }));

  auto regular_draw = [](Sampler& g, LambdaRange range) {
    const double lambda = g.uniform(range.lo, range.hi);
    const double w = 1.0 / lambda;
    return std::pair{Complex(g.uniform(-1.5, w + 1.5), g.uniform(-3.0, 3.0)), lambda};
  };
  auto regular_accept = [](Complex s, double lambda) { return pole_distance(s, lambda) >= rr; };
  ProductSpec product_spec;
  product_spec.n_terms = options.product_terms;

  // The product checks pass when the closed form lies inside the path's own error estimate.
  reports.push_back(run_check(ctx, stream++, "weierstrass_power_form", 0.0, [&](auto& c, auto& g, auto& rep) {
    rep.note = "tolerance is each sample's reported abs_error_estimate";
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw([&](Sampler& gg) { return regular_draw(gg, c.range); }, regular_accept,
                                rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex expected = degenerate_gamma(s, p).value;
      const auto r = weierstrass_gamma(s, p, product_spec);
      const Complex observed = c.maybe_perturb(rep.check_name, r.value);
      const double rel = rel_diff(observed, expected);
      rep.record(rel, r.abs_error_estimate / std::abs(expected), {s, lambda, "weierstrass", observed, expected});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "weierstrass_forms_agree", 1e-12, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw([&](Sampler& gg) { return regular_draw(gg, c.range); }, regular_accept,
                                rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex expected = weierstrass_gamma(s, p, product_spec, WeierstrassForm::PowerFactors).value;
      const Complex observed = c.maybe_perturb(
          rep.check_name, weierstrass_gamma(s, p, product_spec, WeierstrassForm::EulerConstant).value);
      rep.record(rel_diff(observed, expected), rep.tolerance, {s, lambda, "weierstrass_euler_constant", observed, expected});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "euler_limit", 0.0, [&](auto& c, auto& g, auto& rep) {
    rep.note = "tolerance is each sample's reported abs_error_estimate";
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw([&](Sampler& gg) { return regular_draw(gg, c.range); }, regular_accept,
                                rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex expected = degenerate_gamma(s, p).value;
      const auto r = euler_limit_gamma(s, p, product_spec);
      const Complex observed = c.maybe_perturb(rep.check_name, r.value);
      rep.record(rel_diff(observed, expected), r.abs_error_estimate / std::abs(expected),
                 {s, lambda, "euler_limit", observed, expected});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "sine_product", 0.0, [&](auto& c, auto& g, auto& rep) {
    rep.note = "tolerance is 2|z|^2/N + 1e-12, twice the leading truncation term";
    const double n = static_cast<double>(product_spec.n_terms);
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [z, unused] = g.draw(
          [&](Sampler& gg) { return std::pair{Complex(gg.uniform(-3.0, 3.0), gg.uniform(-1.0, 1.0)), 0.5}; },
          [&](Complex zz, double) { return away_from_integers(zz, rr); }, rep.rejected_draws);
      const Complex expected = z * reflection_product(z);
      const Complex observed = c.maybe_perturb(rep.check_name, sine_product(z, product_spec.n_terms));
      rep.record(rel_diff(observed, expected), 2.0 * std::norm(z) / n + 1e-12, {z, 1.0, "sine_product", observed, expected});
    }
  }));

  auto beta_make = [](Sampler& g, LambdaRange range) {
    const double lambda = g.uniform(range.lo, range.hi);
    const double w = 1.0 / lambda;
    return std::pair{Complex(g.uniform(-1.5, w / 2), g.uniform(-2.0, 2.0)), lambda};
  };
  // alpha is the drawn s; beta is derived deterministically from it so one draw fixes the pair.
  auto beta_partner = [](Complex a, double lambda) { return Complex(0.5 / lambda - 0.5 * a.real() - 0.3, -0.5 * a.imag() + 0.7); };
  auto beta_accept = [&](Complex a, double lambda) {
    const Complex b = beta_partner(a, lambda);
    return pole_distance(a, lambda) >= rr && pole_distance(b, lambda) >= rr && pole_distance(a + b, lambda) >= rr;
  };

  reports.push_back(run_check(ctx, stream++, "beta_classical_mixed", 1e-11, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [a, lambda] = g.draw([&](Sampler& gg) { return beta_make(gg, c.range); }, beta_accept, rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex b = beta_partner(a, lambda);
      const Complex expected = degenerate_beta(a, b, p).value;
      const Complex observed = c.maybe_perturb(rep.check_name, degenerate_beta_classical(a, b, p).value);
      rep.record(rel_diff(observed, expected), rep.tolerance, {a, lambda, "classical_mixed", observed, expected});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "beta_product", 0.0, [&](auto& c, auto& g, auto& rep) {
    rep.note = "tolerance is each sample's reported abs_error_estimate";
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [a, lambda] = g.draw([&](Sampler& gg) { return beta_make(gg, c.range); }, beta_accept, rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex b = beta_partner(a, lambda);
      const Complex expected = degenerate_beta(a, b, p).value;
      const auto r = degenerate_beta_product(a, b, p, product_spec);
      const Complex observed = c.maybe_perturb(rep.check_name, r.value);
      rep.record(rel_diff(observed, expected), r.abs_error_estimate / std::abs(expected),
                 {a, lambda, "beta_product", observed, expected});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "beta_integer", 1e-10, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      const std::int64_t m = g.integer(1, 5);
      const std::int64_t n = g.integer(1, 5);
      auto [a, lambda] = g.draw(
          [&](Sampler& gg) { return std::pair{Complex(static_cast<double>(m), 0.0), gg.uniform(c.range.lo, c.range.hi)}; },
          [&](Complex, double lam) {
            const double w = 1.0 / lam;
            return lambda_away_from_reciprocals(lam, m + n, 0.01) &&
                   pole_distance(Complex(static_cast<double>(m + n), 0.0), lam) >= rr && w > 0.0;
          },
          rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex b(static_cast<double>(n), 0.0);
      const Complex expected = degenerate_beta(a, b, p).value;
      const Complex observed = c.maybe_perturb(rep.check_name, Complex(degenerate_beta_integer(m, n, p), 0.0));
      rep.record(rel_diff(observed, expected), rep.tolerance, {a, lambda, "integer_formula", observed, expected});
    }
  }));

  for (auto family : {PoleFamily::NonPositive, PoleFamily::ShiftedByInvLambda}) {
    const std::string name = family == PoleFamily::NonPositive ? "residues_nonpositive" : "residues_shifted";
    reports.push_back(run_check(ctx, stream++, name, 1e-6, [&, family](auto& c, auto& g, auto& rep) {
      for (std::int64_t i = 0; i < c.samples; ++i) {
        const std::int64_t n = g.integer(0, 5);
        // Pole spacing of the two families must exceed the probe radius comfortably.
        auto [unused, lambda] = g.draw(
            [&](Sampler& gg) { return std::pair{Complex(0.0, 0.0), gg.uniform(c.range.lo, c.range.hi)}; },
            [&](Complex, double) { return true; }, rep.rejected_draws);
        const DegenerateParameter p(lambda);
        const PoleInfo pole = detail::make_pole(family, n, p);
        constexpr double radius = 1e-4;
        Complex limit{0.0, 0.0};
        for (int q = 0; q < 4; ++q) {
          const Complex offset = std::polar(radius, q * std::numbers::pi / 2 + 0.3);
          limit += offset * degenerate_gamma(pole.location + offset, p).value;
        }
        limit = c.maybe_perturb(rep.check_name, limit / 4.0);
        rep.record(rel_diff(limit, pole.residue), rep.tolerance, {pole.location, lambda, "numerical_residue", limit, pole.residue});
      }
    }));
  }

  auto hankel_spec = QuadratureSpec{};
  reports.push_back(run_check(ctx, stream++, "hankel_contour", 1e-7, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw(
          [&](Sampler& gg) {
            const double lambda = gg.uniform(c.range.lo, c.range.hi);
            return std::pair{Complex(gg.uniform(0.1, 1.0 / lambda - 0.5), gg.uniform(-3.0, 3.0)), lambda};
          },
          [&](Complex s, double lambda) { return away_from_integers(s, rr) && pole_distance(s, lambda) >= rr; },
          rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex expected = degenerate_gamma(s, p).value;
      const Complex observed = c.maybe_perturb(rep.check_name, hankel_gamma(s, p, hankel_spec).value);
      rep.record(rel_diff(observed, expected), rep.tolerance, {s, lambda, "hankel", observed, expected});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "hankel_contour_reflected", 1e-10, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw(
          [&](Sampler& gg) {
            const double lambda = gg.uniform(c.range.lo, c.range.hi);
            return std::pair{Complex(gg.uniform(0.1, 1.0 / lambda - 0.5), gg.uniform(-3.0, 3.0)), lambda};
          },
          [&](Complex s, double lambda) { return away_from_integers(s, rr) && pole_distance(s, lambda) >= rr; },
          rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex expected = hankel_gamma(s, p, hankel_spec).value;
      const Complex observed = c.maybe_perturb(rep.check_name, hankel_gamma_reflected(s, p, hankel_spec).value);
      rep.record(rel_diff(observed, expected), rep.tolerance, {s, lambda, "hankel_reflected", observed, expected});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "hankel_continuation", 1e-6, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw(
          [&](Sampler& gg) {
            return std::pair{Complex(gg.uniform(-2.0, 0.0), gg.uniform(-3.0, 3.0)), gg.uniform(c.range.lo, c.range.hi)};
          },
          [&](Complex s, double lambda) { return away_from_integers(s, rr) && pole_distance(s, lambda) >= rr; },
          rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex expected = degenerate_gamma(s, p).value;
      const Complex observed = c.maybe_perturb(rep.check_name, hankel_gamma(s, p, hankel_spec).value);
      rep.record(rel_diff(observed, expected), rep.tolerance, {s, lambda, "hankel", observed, expected});
    }
  }));

  reports.push_back(run_check(ctx, stream++, "direct_integral", 1e-10, [&](auto& c, auto& g, auto& rep) {
    for (std::int64_t i = 0; i < c.samples; ++i) {
      auto [s, lambda] = g.draw(
          [&](Sampler& gg) {
            const double lambda = gg.uniform(c.range.lo, c.range.hi);
            return std::pair{Complex(gg.uniform(0.1, 1.0 / lambda - 0.1), gg.uniform(-3.0, 3.0)), lambda};
          },
          [&](Complex s, double lambda) { return pole_distance(s, lambda) >= rr; }, rep.rejected_draws);
      const DegenerateParameter p(lambda);
      const Complex expected = degenerate_gamma(s, p).value;
      const auto r = direct_integral_gamma(s, p, hankel_spec);
      const Complex observed = c.maybe_perturb(rep.check_name, r.value);
      const double tol = std::max(rep.tolerance, 10.0 * r.abs_error_estimate / std::abs(expected));
      rep.record(rel_diff(observed, expected), tol, {s, lambda, "direct_integral", observed, expected});
    }
  }));

  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.check_name < b.check_name; });
  return reports;
}

struct ScanGrid {
  double re_min = 0.2;
  double re_max = 1.8;
  double re_step = 0.4;
  std::vector<double> im_values{0.0};

  std::vector<Complex> points() const {
    if (!(re_step > 0.0) || re_max < re_min || im_values.empty()) return {};
    const auto count = static_cast<std::int64_t>(std::floor((re_max - re_min) / re_step + 1e-9)) + 1;
    std::vector<Complex> out;
    for (double im : im_values) {
      for (std::int64_t i = 0; i < count; ++i) out.emplace_back(re_min + static_cast<double>(i) * re_step, im);
    }
    return out;
  }
};

/// Evaluates every path at each grid point where its preconditions hold and
/// compares it against the closed form.
inline CheckReport run_cross_path_scan(const ScanGrid& grid, const DegenerateParameter& p,
                                       const SuiteOptions& options = {}) {
  CheckReport report;
  report.check_name = "cross_path_scan";
  const auto points = grid.points();
  if (points.empty()) throw DomainError("run_cross_path_scan needs a non-empty grid");

  ProductSpec product_spec;
  product_spec.n_terms = options.product_terms;
  const QuadratureSpec quad_spec{};
  struct Path {
    std::string name;
    double tol;
    std::function<EvalResult(Complex)> eval;
  };
  const std::vector<Path> paths = {
      {"direct-integral", 1e-10, [&](Complex s) { return direct_integral_gamma(s, p, quad_spec); }},
      {"hankel", 1e-7, [&](Complex s) { return hankel_gamma(s, p, quad_spec); }},
      {"hankel-reflected", 1e-7, [&](Complex s) { return hankel_gamma_reflected(s, p, quad_spec); }},
      {"weierstrass", 1e-4, [&](Complex s) { return weierstrass_gamma(s, p, product_spec); }},
      {"euler-limit", 1e-4, [&](Complex s) { return euler_limit_gamma(s, p, product_spec); }},
  };
  for (const auto& path : paths) report.paths[path.name].tolerance = path.tol;

  for (const Complex s : points) {
    const auto ref = degenerate_gamma(s, p);
    if (ref.status == EvalStatus::AtPole || ref.overflow) {
      for (const auto& path : paths) ++report.paths[path.name].skipped;
      continue;
    }
    for (const auto& path : paths) {
      auto& summary = report.paths[path.name];
      Complex observed;
      try {
        observed = path.eval(s).value;
      } catch (const NumericError&) {
        ++summary.skipped;
        continue;
      }
      if (options.perturbed_check && *options.perturbed_check == path.name) observed *= 1.0 + options.perturbation;
      ++summary.evaluated;
      const double rel = detail::rel_diff(observed, ref.value);
      summary.max_rel_dev = std::max(summary.max_rel_dev, rel);
      report.record(rel, path.tol, {s, p.lambda(), path.name, observed, ref.value});
    }
  }
  return report;
}

/// lambda -> 0 (Gamma_lambda -> Gamma, e_lambda -> exp) and lambda -> 1 (Gamma_lambda -> pi/sin) limits.
inline std::vector<CheckReport> run_limit_checks() {
  std::vector<CheckReport> reports;

  auto monotone_check = [](CheckReport& rep, const std::vector<double>& errors, Complex s, double lambda) {
    for (std::size_t i = 1; i < errors.size(); ++i) {
      if (!(errors[i] < errors[i - 1])) {
        rep.passed = false;
        ++rep.failure_count;
        rep.failures.push_back({s, lambda, "monotone_decrease", Complex(errors[i], 0), Complex(errors[i - 1], 0), errors[i]});
      }
    }
  };

  {
    CheckReport rep;
    rep.check_name = "lambda_to_one";
    rep.tolerance = 1e-3;
    const std::vector<double> lambdas = {1.0 - 1e-2, 1.0 - 1e-4, 1.0 - 1e-6};
    for (Complex z : {Complex(0.3, 0.0), Complex(0.5, 0.5), Complex(0.5, 0.0)}) {
      const Complex expected = reflection_product(z);
      std::vector<double> errors;
      for (double lambda : lambdas) {
        const Complex v = degenerate_gamma(z, DegenerateParameter(lambda)).value;
        errors.push_back(detail::rel_diff(v, expected));
      }
      rep.record(errors.back(), rep.tolerance, {z, lambdas.back(), "closed_form", Complex(errors.back(), 0), expected});
      monotone_check(rep, errors, z, lambdas.back());
    }
    reports.push_back(std::move(rep));
  }
  {
    CheckReport rep;
    rep.check_name = "lambda_to_zero";
    rep.tolerance = 1e-4;
    const std::vector<double> lambdas = {1e-2, 1e-4, 1e-6};
    for (Complex s : {Complex(0.5, 0.0), Complex(1.5, 0.0), Complex(2.5, 0.0), Complex(1.0, 1.0)}) {
      const Complex expected = gamma(s);
      std::vector<double> errors;
      for (double lambda : lambdas) {
        errors.push_back(detail::rel_diff(degenerate_gamma(s, DegenerateParameter(lambda)).value, expected));
      }
      rep.record(errors.back(), rep.tolerance, {s, lambdas.back(), "closed_form", Complex(errors.back(), 0), expected});
      monotone_check(rep, errors, s, lambdas.back());
    }
    reports.push_back(std::move(rep));
  }
  {
    CheckReport rep;
    rep.check_name = "degenerate_exp_to_exp";
    rep.tolerance = 1e-6;
    const std::vector<double> lambdas = {1e-2, 1e-4, 1e-6, 1e-8};
    for (auto [x, t] : {std::pair{Complex(1, 0), Complex(1, 0)}, std::pair{Complex(2, 0), Complex(-0.5, 0)},
                        std::pair{Complex(0.5, 1), Complex(1.5, -0.5)}}) {
      const Complex expected = std::exp(x * t);
      std::vector<double> errors;
      for (double lambda : lambdas) errors.push_back(detail::rel_diff(degenerate_exp(x, t, lambda), expected));
      rep.record(errors.back(), rep.tolerance, {t, lambdas.back(), "degenerate_exp", Complex(errors.back(), 0), expected});
      monotone_check(rep, errors, t, lambdas.back());
    }
    reports.push_back(std::move(rep));
  }
  std::sort(reports.begin(), reports.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.check_name < b.check_name; });
  return reports;
}

}  // namespace degamma
