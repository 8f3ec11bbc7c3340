#pragma once

// Integral representations of Gamma_lambda:
//  * the defining integral on the strip 0 < Re(s) < 1/lambda, split at t = 1;
//  * the Hankel contour (and its z -> -z mirror), valid off the integers for Re(s) < 1/lambda.
// Both run on a tanh-sinh (double-exponential) rule over (0, 1).

#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>

#include "classical_gamma.hpp"
#include "degenerate.hpp"
#include "errors.hpp"

namespace degamma {

struct QuadratureSpec {
  double rel_tolerance = 1e-12;
  int max_level = 12;          ///< number of step halvings after the initial h = 1/2
  double hankel_radius = 0.5;  ///< delta, radius of the circle around the origin
  double hankel_cutoff = 10.0; ///< lower bound for R; the tail bound may push R further out

  void validate() const {
    if (!(rel_tolerance >= 1e-14)) throw DomainError("QuadratureSpec.rel_tolerance must be >= 1e-14");
    if (max_level < 1) throw DomainError("QuadratureSpec.max_level must be >= 1");
    if (!(hankel_radius > 0.0 && hankel_radius < 1.0)) {
      throw DomainError("QuadratureSpec.hankel_radius must lie in (0, 1)");
    }
    if (!(hankel_cutoff > 0.0)) throw DomainError("QuadratureSpec.hankel_cutoff must be positive");
  }
};

/// Margin kept from both edges of the strip 0 < Re(s) < 1/lambda.
inline constexpr double strip_margin = 0.01;

struct QuadratureResult {
  Complex value;
  double err = 0.0;  ///< last inter-level difference
  int levels = 0;
  long evaluations = 0;
};

namespace detail {

/// tanh-sinh abscissa x(t) = 1/(1 + exp(-pi sinh t)) and its complement, both to full relative accuracy.
struct DeNode {
  double x;
  double xc;
  double weight;
};

inline DeNode de_node(double t) {
  const double u = std::numbers::pi * std::sinh(t);
  const double x = 1.0 / (1.0 + std::exp(-u));
  const double xc = 1.0 / (1.0 + std::exp(u));
  return {x, xc, std::numbers::pi * std::cosh(t) * x * xc};
}

// pi sinh(t) = 700 keeps both x and 1 - x above the double underflow threshold.
inline const double de_t_max = std::asinh(700.0 / std::numbers::pi);

template <class F>
Complex call_integrand(F& f, const DeNode& node) {
  if constexpr (std::is_invocable_v<F&, double, double>) {
    return Complex(f(node.x, node.xc));
  } else {
    return Complex(f(node.x));
  }
}

}  // namespace detail

/// Integrates f over (0, 1). f may take (x) or (x, 1 - x); the second form lets
/// integrands singular at x = 1 see the complement without cancellation.
template <class F>
QuadratureResult de_quadrature(F&& f, const QuadratureSpec& spec) {
  spec.validate();
  QuadratureResult out;
  double h = 0.5;
  Complex sum{0.0, 0.0};
  double l1 = 0.0;

  auto accumulate = [&](double t) {
    const auto node = detail::de_node(t);
    if (node.weight == 0.0) return;
    const Complex term = detail::call_integrand(f, node) * node.weight;
    ++out.evaluations;
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
      throw ConvergenceError("de_quadrature: integrand is not finite at x = " + std::to_string(node.x));
    }
    sum += term;
    l1 += std::abs(term);
  };

  const int k_max = static_cast<int>(detail::de_t_max / h);
  for (int k = -k_max; k <= k_max; ++k) accumulate(k * h);
  Complex estimate = sum * h;

  for (int level = 1; level <= spec.max_level; ++level) {
    h /= 2;
    const int kk = static_cast<int>(detail::de_t_max / h);
    for (int k = -kk + ((kk % 2 == 0) ? 1 : 0); k <= kk; k += 2) accumulate(k * h);
    const Complex next = sum * h;
    out.err = std::abs(next - estimate);
    out.levels = level;
    estimate = next;
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * l1 * h;
    if (level >= 3 && (out.err <= spec.rel_tolerance * std::abs(estimate) || out.err <= floor)) {
      out.value = estimate;
      return out;
    }
  }
  throw ConvergenceError("de_quadrature: no convergence to " + std::to_string(spec.rel_tolerance) + " after " +
                         std::to_string(spec.max_level) + " levels (last difference " +
                         std::to_string(out.err) + ")");
}

/// Gamma_lambda(s) = int_0^inf (1 + lambda t)^{-1/lambda} t^{s-1} dt on the strip.
/// [0, 1] is integrated directly; [1, inf) becomes int_0^1 u^{1/lambda-s-1} (u + lambda)^{-1/lambda} du.
inline EvalResult direct_integral_gamma(Complex s, const DegenerateParameter& p, const QuadratureSpec& spec) {
  spec.validate();
  const double w = p.inv_lambda();
  if (!(s.real() >= strip_margin && s.real() <= w - strip_margin)) {
    throw StripError("outside strip 0<Re(s)<1/lambda of the defining integral (Re(s) = " +
                     std::to_string(s.real()) + ", 1/lambda = " + std::to_string(w) + ")");
  }
  const double lam = p.lambda();
  const Complex near_exp = s - 1.0;
  auto head = [&](double t) { return std::exp(near_exp * std::log(t) - w * std::log1p(lam * t)); };
  const Complex far_exp = w - s - 1.0;
  auto tail = [&](double u) { return std::exp(far_exp * std::log(u) - w * std::log(u + lam)); };

  const auto a = de_quadrature(head, spec);
  const auto b = de_quadrature(tail, spec);
  EvalResult r;
  r.method = EvalMethod::DirectIntegral;
  r.value = a.value + b.value;
  r.log_value = std::log(r.value);
  r.abs_error_estimate = a.err + b.err + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
  return r;
}

namespace detail {

inline void check_hankel_argument(Complex s, const DegenerateParameter& p) {
  if (distance_to_integer(s) < pole_tolerance) {
    throw IntegerArgumentError("the Hankel representation has the factor 1/sin(pi s), which is singular at the integer " +
                               std::to_string(std::nearbyint(s.real())));
  }
  if (!(s.real() <= p.inv_lambda() - strip_margin)) {
    throw StripError("the contour tails need Re(s) < 1/lambda (Re(s) = " + std::to_string(s.real()) + ")");
  }
}

/// Cut-off R making int_R^inf t^{Re s - 1 - 1/lambda} dt fall below the tolerance.
inline double hankel_cutoff(Complex s, double w, const QuadratureSpec& spec) {
  const double gap = w - s.real();
  const double bound = std::pow(spec.rel_tolerance * gap, -1.0 / gap);
  return std::max({10.0, spec.hankel_cutoff, bound});
}

/// J = int_delta^R t^{s-1} (1+t)^{-1/lambda} dt, the straight edges of the contour.
inline QuadratureResult hankel_edges(Complex s, double w, const QuadratureSpec& spec) {
  const double delta = spec.hankel_radius;
  const Complex e1 = s - 1.0;
  auto inner = [&](double x) {
    const double t = delta + (1.0 - delta) * x;
    return (1.0 - delta) * std::exp(e1 * std::log(t) - w * std::log1p(t));
  };
  // t = 1/u on [1, R]: u^{w-s-1} (1+u)^{-w} on [1/R, 1]
  const double r_cut = hankel_cutoff(s, w, spec);
  const double u_min = (std::isfinite(r_cut) && r_cut < 1e300) ? 1.0 / r_cut : 0.0;
  const Complex e2 = w - s - 1.0;
  auto outer = [&](double x) {
    const double u = u_min + (1.0 - u_min) * x;
    return (1.0 - u_min) * std::exp(e2 * std::log(u) - w * std::log1p(u));
  };
  const auto a = de_quadrature(inner, spec);
  const auto b = de_quadrature(outer, spec);
  return {a.value + b.value, a.err + b.err, std::max(a.levels, b.levels), a.evaluations + b.evaluations};
}

inline EvalResult finish_hankel(Complex scaled, double scaled_err, Complex s, const DegenerateParameter& p) {
  // scaled = lambda^s Gamma_lambda(s)
  const Complex lambda_pow = std::exp(-s * p.log_lambda());
  EvalResult r;
  r.method = EvalMethod::Hankel;
  r.value = lambda_pow * scaled;
  r.log_value = std::log(r.value);
  r.abs_error_estimate = std::abs(lambda_pow) * scaled_err + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
  return r;
}

}  // namespace detail

/// lambda^s Gamma_lambda(s) = 1/(2 i sin(pi s)) times the integral of z^{s-1} (1-z)^{-1/lambda}
/// over the contour from -infinity around the origin (radius delta) and back.
inline EvalResult hankel_gamma(Complex s, const DegenerateParameter& p, const QuadratureSpec& spec) {
  spec.validate();
  detail::check_hankel_argument(s, p);
  const double w = p.inv_lambda();
  const double delta = spec.hankel_radius;
  const auto edges = detail::hankel_edges(s, w, spec);

  // z = delta e^{i theta}, theta in (-pi, pi): i delta^s e^{i s theta} (1 - delta e^{i theta})^{-w}
  const Complex delta_s = std::exp(s * std::log(delta));
  const Complex i{0.0, 1.0};
  auto circle_integrand = [&](double x) {
    const double theta = std::numbers::pi * (2.0 * x - 1.0);
    const Complex z = std::polar(delta, theta);
    return 2.0 * std::numbers::pi * i * delta_s * std::exp(i * s * theta - w * std::log(1.0 - z));
  };
  const auto circle = de_quadrature(circle_integrand, spec);

  const Complex upper_phase = std::exp(i * std::numbers::pi * s);   // edge above the cut
  const Complex lower_phase = std::exp(-i * std::numbers::pi * s);  // edge below the cut
  const Complex contour = (upper_phase - lower_phase) * edges.value + circle.value;
  const Complex prefactor = 1.0 / (2.0 * i * detail::sin_pi(s));
  const double err = std::abs(upper_phase - lower_phase) * edges.err * std::abs(prefactor) + circle.err * std::abs(prefactor);
  return detail::finish_hankel(prefactor * contour, err, s, p);
}

/// The mirrored contour: lambda^s Gamma_lambda(s) = i/(2 sin(pi s)) times the integral of
/// (-z)^{s-1} (1+z)^{-1/lambda} from +infinity around the origin and back.
inline EvalResult hankel_gamma_reflected(Complex s, const DegenerateParameter& p, const QuadratureSpec& spec) {
  spec.validate();
  detail::check_hankel_argument(s, p);
  const double w = p.inv_lambda();
  const double delta = spec.hankel_radius;
  const auto edges = detail::hankel_edges(s, w, spec);

  // z = delta e^{i theta}, theta in (0, 2 pi); -z = delta e^{i(theta - pi)} stays on the principal branch.
  const Complex i{0.0, 1.0};
  const Complex e1 = s - 1.0;
  const double log_delta = std::log(delta);
  auto circle_integrand = [&](double x) {
    const double theta = 2.0 * std::numbers::pi * x;
    const Complex z = std::polar(delta, theta);
    const Complex log_minus_z{log_delta, theta - std::numbers::pi};
    return 2.0 * std::numbers::pi * std::exp(e1 * log_minus_z - w * std::log(1.0 + z)) * i * z;
  };
  const auto circle = de_quadrature(circle_integrand, spec);

  // Inward along arg(-z) = -pi, outward along arg(-z) = +pi.
  const Complex inward_phase = std::exp(-i * std::numbers::pi * e1);
  const Complex outward_phase = std::exp(i * std::numbers::pi * e1);
  const Complex contour = (outward_phase - inward_phase) * edges.value + circle.value;
  const Complex prefactor = i / (2.0 * detail::sin_pi(s));
  const double err = std::abs(outward_phase - inward_phase) * edges.err * std::abs(prefactor) + circle.err * std::abs(prefactor);
  return detail::finish_hankel(prefactor * contour, err, s, p);
}

}  // namespace degamma
