#pragma once

// Truncated infinite-product representations of Gamma_lambda and B_lambda.
//
// All partial products are accumulated as sums of logs in long double.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "classical_gamma.hpp"
#include "degenerate.hpp"
#include "errors.hpp"

namespace degamma {

inline constexpr std::int64_t default_product_terms = 100000;

struct ProductSpec {
  std::int64_t n_terms = default_product_terms;
  bool use_tail_correction = false;
  /// When set, a tail bound above this relative tolerance raises ConvergenceError.
  std::optional<double> rel_tolerance;
};

/// Which displayed form of the Weierstrass-type product to evaluate.
enum class WeierstrassForm {
  PowerFactors,     ///< prod (1+1/n)^{1/lambda} (1+z/n)^{-1} (1+(1/lambda-z)/n)^{-1}
  EulerConstant,    ///< e^{-gamma/lambda} prod e^{1/(n lambda)} (1+z/n)^{-1} (1+(1/lambda-z)/n)^{-1}
};

namespace detail {

inline void validate(const ProductSpec& spec) {
  if (spec.n_terms < 1) throw DomainError("ProductSpec.n_terms must be >= 1");
}

inline void check_not_degenerate_pole(Complex z, const DegenerateParameter& p) {
  const auto np = nearest_pole(z, p);
  if (np.distance < pole_tolerance) {
    const auto info = make_pole(np.family, np.index, p);
    throw PoleError("z = " + std::to_string(info.location.real()) + " is a pole of Gamma_lambda");
  }
}

/// Constant C with |log of the n-th factor| <= C/n^2 once n >= 2 max(|z|, |1/lambda - z|, 1).
inline double weierstrass_tail_constant(Complex z, double w) {
  const Complex zc = w - z;
  return std::norm(z) + std::norm(zc) + w;
}

inline std::int64_t weierstrass_bound_start(Complex z, double w) {
  return static_cast<std::int64_t>(std::ceil(2.0 * std::max({std::abs(z), std::abs(w - z), 1.0})));
}

/// Leading-order sum over n > N of the factor logs, c/(N + 1/2) with c the 1/n^2 coefficient.
inline WideComplex weierstrass_tail_estimate(WideComplex z, Wide w, std::int64_t n) {
  const WideComplex zc = w - z;
  const WideComplex c = (z * z + zc * zc - w) / Wide(2);
  return c / (static_cast<Wide>(n) + Wide(0.5));
}

inline void check_tolerance(const ProductSpec& spec, double rel_bound, const char* what) {
  if (spec.rel_tolerance && !(rel_bound <= *spec.rel_tolerance)) {
    throw ConvergenceError(std::string(what) + ": tail bound " + std::to_string(rel_bound) +
                           " exceeds requested tolerance at n_terms = " + std::to_string(spec.n_terms));
  }
}

}  // namespace detail

/// Gamma_lambda(z) from the Weierstrass-type product truncated at spec.n_terms factors.
///
/// The EulerConstant form pairs e^{-gamma/lambda} with the truncated prod e^{1/(n lambda)}
/// by using the partial constant H_N - log(N+1); with that pairing both forms are the
/// same finite expression and agree to rounding.
inline EvalResult weierstrass_gamma(Complex z, const DegenerateParameter& p, const ProductSpec& spec,
                                    WeierstrassForm form = WeierstrassForm::PowerFactors) {
  detail::validate(spec);
  detail::check_not_degenerate_pole(z, p);
  using W = detail::Wide;
  using WC = detail::WideComplex;
  const W w = p.inv_lambda_wide();
  const WC wz = detail::widen(z);
  const WC zc = w - wz;

  WC log_sum{0, 0};
  if (form == WeierstrassForm::PowerFactors) {
    for (std::int64_t n = 1; n <= spec.n_terms; ++n) {
      const W nn = static_cast<W>(n);
      // (1 + z/n)(1 + (w - z)/n) = 1 + w/n + z(w - z)/n^2
      log_sum += w * std::log1p(W(1) / nn) - detail::log1p(w / nn + wz * zc / (nn * nn));
    }
  } else {
    W harmonic = 0;
    for (std::int64_t n = 1; n <= spec.n_terms; ++n) {
      const W nn = static_cast<W>(n);
      harmonic += W(1) / nn;
      log_sum += w / nn - detail::log1p(wz / nn) - detail::log1p(zc / nn);
    }
    const W partial_gamma = harmonic - std::log(static_cast<W>(spec.n_terms) + 1);
    log_sum -= w * partial_gamma;
  }
  if (spec.use_tail_correction) log_sum += detail::weierstrass_tail_estimate(wz, w, spec.n_terms);

  const WC log_prefactor = -wz * p.log_lambda_wide() - std::log(wz) - std::log(zc) -
                           detail::log_gamma_principal(WC(w, 0));
  const WC lv = log_prefactor + log_sum;

  EvalResult r;
  r.method = EvalMethod::WeierstrassProduct;
  detail::finish_result(r, lv, z.imag() == 0.0, static_cast<double>(std::abs(log_prefactor)));

  const double wd = p.inv_lambda();
  double rel_bound = std::numeric_limits<double>::infinity();
  if (spec.n_terms >= detail::weierstrass_bound_start(z, wd)) {
    const double c = detail::weierstrass_tail_constant(z, wd);
    rel_bound = std::expm1(c / static_cast<double>(spec.n_terms));
  }
  if (!r.overflow) r.abs_error_estimate += rel_bound * std::abs(r.value);
  detail::check_tolerance(spec, rel_bound, "weierstrass_gamma");
  return r;
}

namespace detail {

/// log of lambda^{-z}/Gamma(1/lambda) * n^{1/lambda} ((n-1)!)^2 / prod_{k<n} (z+k)(1/lambda-z+k).
inline WideComplex euler_limit_log(WideComplex z, const DegenerateParameter& p, std::int64_t n) {
  const Wide w = p.inv_lambda_wide();
  const WideComplex zc = w - z;
  const Wide nn = static_cast<Wide>(n);
  WideComplex denom{0, 0};
  for (std::int64_t k = 0; k < n; ++k) {
    const Wide kk = static_cast<Wide>(k);
    denom += std::log((z + kk) * (zc + kk));
  }
  const Wide log_factorial = log_gamma_principal(WideComplex(nn, 0)).real();
  return -z * p.log_lambda_wide() - log_gamma_principal(WideComplex(w, 0)) + w * std::log(nn) +
         Wide(2) * log_factorial - denom;
}

}  // namespace detail

/// Gamma_lambda(z) from the Euler limit formula evaluated at n = spec.n_terms.
/// The error estimate is twice the change from n/2 to n, the O(1/n) Richardson proxy.
inline EvalResult euler_limit_gamma(Complex z, const DegenerateParameter& p, const ProductSpec& spec) {
  detail::validate(spec);
  if (spec.n_terms < 2) throw DomainError("euler_limit_gamma needs n_terms >= 2");
  detail::check_not_degenerate_pole(z, p);
  const auto wz = detail::widen(z);
  const auto lv = detail::euler_limit_log(wz, p, spec.n_terms);
  const auto lv_half = detail::euler_limit_log(wz, p, spec.n_terms / 2);

  EvalResult r;
  r.method = EvalMethod::EulerLimit;
  if (lv.real() > 1e6) throw OverflowError("euler_limit_gamma: log-space accumulation out of range");
  detail::finish_result(r, lv, z.imag() == 0.0, static_cast<double>(std::abs(lv)));
  if (!r.overflow) {
    const Complex half = detail::exp_log_value(lv_half, z.imag() == 0.0);
    const double rel_change = std::abs(r.value - half) / std::abs(r.value);
    r.abs_error_estimate += 2.0 * std::abs(r.value - half);
    detail::check_tolerance(spec, 2.0 * rel_change, "euler_limit_gamma");
  }
  return r;
}

/// Partial product prod_{n<=N} (1 - z^2/n^2)^{-1}, which tends to pi z / sin(pi z).
inline Complex sine_product(Complex z, std::int64_t n_terms) {
  if (n_terms < 1) throw DomainError("sine_product needs n_terms >= 1");
  if (z != Complex(0.0, 0.0) && detail::distance_to_integer(z) < pole_tolerance) {
    throw PoleError("sine_product has a pole at the integer " + std::to_string(std::nearbyint(z.real())));
  }
  using W = detail::Wide;
  const detail::WideComplex z2 = detail::widen(z) * detail::widen(z);
  detail::WideComplex log_sum{0, 0};
  for (std::int64_t n = 1; n <= n_terms; ++n) {
    const W nn = static_cast<W>(n);
    log_sum -= detail::log1p(-z2 / (nn * nn));
  }
  return detail::narrow(std::exp(log_sum));
}

/// B_lambda(a, b) from the Weierstrass-type product with e^{-gamma/lambda} prefactor.
inline EvalResult degenerate_beta_product(Complex a, Complex b, const DegenerateParameter& p,
                                          const ProductSpec& spec) {
  detail::validate(spec);
  EvalResult r;
  r.method = EvalMethod::WeierstrassProduct;
  if (detail::beta_sum_at_pole(a, b, p, r)) return r;

  using W = detail::Wide;
  using WC = detail::WideComplex;
  const W w = p.inv_lambda_wide();
  const WC wa = detail::widen(a), wb = detail::widen(b), wab = wa + wb;
  const WC up[2] = {wab, w - wab};
  const WC down[4] = {wa, w - wa, wb, w - wb};

  WC log_sum{0, 0};
  for (std::int64_t n = 1; n <= spec.n_terms; ++n) {
    const W nn = static_cast<W>(n);
    WC term{w / nn, 0};
    for (const auto& u : up) term += detail::log1p(u / nn);
    for (const auto& d : down) term -= detail::log1p(d / nn);
    log_sum += term;
  }
  // 1/n^2 coefficient of the factor log: (sum over up of u^2 - sum over down of d^2) / 2 with sign flip.
  WC c{0, 0};
  for (const auto& d : down) c += d * d;
  for (const auto& u : up) c -= u * u;
  c /= W(2);
  if (spec.use_tail_correction) log_sum += c / (static_cast<W>(spec.n_terms) + W(0.5));

  WC log_prefactor = -w * static_cast<W>(euler_gamma) - detail::log_gamma_principal(WC(w, 0));
  for (const auto& u : up) log_prefactor += std::log(u);
  for (const auto& d : down) log_prefactor -= std::log(d);
  detail::finish_result(r, log_prefactor + log_sum, a.imag() == 0.0 && b.imag() == 0.0,
                        static_cast<double>(std::abs(log_prefactor)));

  // Each factor log is c/n^2 + O(1/n^3); bound the tail by twice the leading term.
  double bound_const = 0.0;
  for (const auto& u : up) bound_const += static_cast<double>(std::norm(u));
  for (const auto& d : down) bound_const += static_cast<double>(std::norm(d));
  double rel_bound = std::numeric_limits<double>::infinity();
  double reach = 1.0;
  for (const auto& d : down) reach = std::max(reach, static_cast<double>(std::abs(d)));
  for (const auto& u : up) reach = std::max(reach, static_cast<double>(std::abs(u)));
  if (static_cast<double>(spec.n_terms) >= 2.0 * reach) {
    rel_bound = std::expm1(bound_const / static_cast<double>(spec.n_terms));
  }
  if (!r.overflow) r.abs_error_estimate += rel_bound * std::abs(r.value);
  detail::check_tolerance(spec, rel_bound, "degenerate_beta_product");
  return r;
}

}  // namespace degamma
