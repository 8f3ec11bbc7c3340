#pragma once

// Degenerate gamma and beta functions through the closed form
//
//   Gamma_lambda(s) = lambda^{-s} Gamma(s) Gamma(1/lambda - s) / Gamma(1/lambda),
//
// meromorphic on C with simple poles at s = -n and s = 1/lambda + n.
// Everything is evaluated in log space and exponentiated once.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "classical_gamma.hpp"
#include "errors.hpp"

namespace degamma {

/// Distance below which an evaluation is flagged as NearPole.
inline constexpr double near_pole_band = 1e-4;

/// lambda in (0, 1), with 1/lambda and log(lambda) cached.
class DegenerateParameter {
 public:
  explicit DegenerateParameter(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
      throw ParameterRangeError("lambda must lie in the open interval (0, 1), got " + std::to_string(lambda));
    }
    inv_lambda_wide_ = 1.0L / static_cast<long double>(lambda);
    log_lambda_wide_ = std::log(static_cast<long double>(lambda));
  }

  double lambda() const noexcept { return lambda_; }
  double inv_lambda() const noexcept { return static_cast<double>(inv_lambda_wide_); }
  double log_lambda() const noexcept { return static_cast<double>(log_lambda_wide_); }

  long double inv_lambda_wide() const noexcept { return inv_lambda_wide_; }
  long double log_lambda_wide() const noexcept { return log_lambda_wide_; }

 private:
  double lambda_;
  long double inv_lambda_wide_;
  long double log_lambda_wide_;
};

enum class PoleFamily { NonPositive, ShiftedByInvLambda };

struct PoleInfo {
  PoleFamily family = PoleFamily::NonPositive;
  std::int64_t index = 0;
  Complex location;
  Complex residue;
  double log_abs_residue = 0.0;  ///< survives when residue itself overflows
};

enum class EvalMethod { ClosedForm, DirectIntegral, Hankel, WeierstrassProduct, EulerLimit };
enum class EvalStatus { Regular, NearPole, AtPole };

inline const char* to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::ClosedForm: return "closed-form";
    case EvalMethod::DirectIntegral: return "direct-integral";
    case EvalMethod::Hankel: return "hankel";
    case EvalMethod::WeierstrassProduct: return "weierstrass";
    case EvalMethod::EulerLimit: return "euler-limit";
  }
  return "unknown";
}

inline const char* to_string(EvalStatus s) {
  switch (s) {
    case EvalStatus::Regular: return "regular";
    case EvalStatus::NearPole: return "near-pole";
    case EvalStatus::AtPole: return "pole";
  }
  return "unknown";
}

struct EvalResult {
  Complex value{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  double abs_error_estimate = 0.0;
  EvalMethod method = EvalMethod::ClosedForm;
  EvalStatus status = EvalStatus::Regular;
  std::optional<PoleInfo> pole;  ///< set for NearPole and AtPole
  Complex log_value{0.0, 0.0};   ///< log of value (imaginary part modulo 2 pi)
  bool overflow = false;         ///< value not representable; log_value still valid
  std::string note;
};

/// (x)_{n,lambda} = x (x - lambda) ... (x - (n-1) lambda), with (x)_{0,lambda} = 1.
struct GeneralizedFallingFactorial {
  Complex x;
  std::int64_t n = 0;
  double lambda = 0.0;
  Complex value{1.0, 0.0};

  static GeneralizedFallingFactorial evaluate(Complex x, std::int64_t n, double lambda) {
    if (n < 0) throw DomainError("falling factorial needs n >= 0");
    std::complex<long double> acc{1.0L, 0.0L};
    const std::complex<long double> wx{x.real(), x.imag()};
    for (std::int64_t j = 0; j < n; ++j) acc *= wx - static_cast<long double>(j) * lambda;
    return {x, n, lambda, detail::narrow(acc)};
  }
};

inline Complex falling_factorial(Complex x, std::int64_t n, double lambda) {
  return GeneralizedFallingFactorial::evaluate(x, n, lambda).value;
}

/// e_lambda^x(t) = (1 + lambda t)^{x/lambda}, principal branch; any nonzero real lambda.
inline Complex degenerate_exp(Complex x, Complex t, double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw DomainError("degenerate_exp needs a finite nonzero lambda");
  const std::complex<long double> u = detail::widen(t) * static_cast<long double>(lambda);
  if (std::abs(1.0L + u) < pole_tolerance) throw BranchPointError("1 + lambda t vanishes");
  const auto exponent = detail::widen(x) / static_cast<long double>(lambda) * detail::log1p(u);
  return detail::narrow(std::exp(exponent));
}

/// log_lambda(t) = (t^lambda - 1) / lambda, principal branch; any nonzero real lambda.
inline Complex degenerate_log(Complex t, double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) throw DomainError("degenerate_log needs a finite nonzero lambda");
  if (std::abs(t) < pole_tolerance) throw DomainError("degenerate_log is undefined at t = 0");
  const auto u = static_cast<long double>(lambda) * std::log(detail::widen(t));
  // expm1 for complex u: e^a (cos b + i sin b) - 1
  const long double a = u.real(), b = u.imag();
  const long double half_sin = std::sin(b / 2);
  const std::complex<long double> em1{std::expm1(a) * std::cos(b) - 2.0L * half_sin * half_sin,
                                      std::exp(a) * std::sin(b)};
  return detail::narrow(em1 / static_cast<long double>(lambda));
}

namespace detail {

struct NearestPole {
  PoleFamily family;
  std::int64_t index;
  double distance;
};

inline NearestPole nearest_pole(Complex s, const DegenerateParameter& p) {
  std::int64_t n = 0;
  const double d_nonpos = distance_to_nonpositive_integer(s, n);
  const long double w = p.inv_lambda_wide();
  const long double k = std::nearbyint(static_cast<long double>(s.real()) - w);
  const std::int64_t m = k < 0 ? 0 : static_cast<std::int64_t>(k);
  const double d_shift = static_cast<double>(std::abs(widen(s) - (w + static_cast<long double>(m))));
  if (d_nonpos <= d_shift) return {PoleFamily::NonPositive, n, d_nonpos};
  return {PoleFamily::ShiftedByInvLambda, m, d_shift};
}

inline Wide real_log_gamma(Wide x) { return log_gamma_principal(WideComplex(x, 0)).real(); }

inline PoleInfo make_pole(PoleFamily family, std::int64_t n, const DegenerateParameter& p) {
  const Wide w = p.inv_lambda_wide();
  const Wide nn = static_cast<Wide>(n);
  const Wide common = real_log_gamma(w + nn) - real_log_gamma(nn + 1) - real_log_gamma(w);
  PoleInfo info;
  info.family = family;
  info.index = n;
  Wide log_abs = 0;
  bool negative = false;
  if (family == PoleFamily::NonPositive) {
    info.location = Complex(0.0 - static_cast<double>(n), 0.0);  // +0 rather than -0 at n = 0
    log_abs = nn * p.log_lambda_wide() + common;
    negative = (n % 2) == 1;
  } else {
    info.location = Complex(static_cast<double>(w + nn), 0.0);
    log_abs = -(nn + w) * p.log_lambda_wide() + common;
    negative = (n % 2) == 0;
  }
  info.log_abs_residue = static_cast<double>(log_abs);
  const double mag = static_cast<double>(std::exp(log_abs));
  info.residue = Complex(negative ? -mag : mag, 0.0);
  return info;
}

struct LogSum {
  WideComplex value;
  double term_magnitude;  ///< sum of |terms|, drives the rounding estimate
};

/// log Gamma_lambda(s) (imaginary part modulo 2 pi); caller guarantees s is not a pole.
inline LogSum log_degenerate_gamma_terms(Complex s, const DegenerateParameter& p) {
  const WideComplex ws = widen(s);
  const Wide w = p.inv_lambda_wide();
  const WideComplex t0 = -ws * p.log_lambda_wide();
  const WideComplex t1 = log_gamma_principal(ws);
  const WideComplex t2 = log_gamma_principal(w - ws);
  const WideComplex t3 = log_gamma_principal(WideComplex(w, 0));
  return {t0 + t1 + t2 - t3, static_cast<double>(std::abs(t0) + std::abs(t1) + std::abs(t2) + std::abs(t3))};
}

inline WideComplex log_degenerate_gamma(Complex s, const DegenerateParameter& p) {
  return log_degenerate_gamma_terms(s, p).value;
}

/// Rounding-level error bound for a log-space sum whose terms have the given total magnitude.
inline double log_space_error(double term_magnitude, double value_abs) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double eps_wide = std::numeric_limits<long double>::epsilon();
  return value_abs * (4.0 * eps + 16.0 * eps_wide * (1.0 + term_magnitude));
}

inline void finish_result(EvalResult& r, WideComplex log_value, bool real_axis, double term_magnitude) {
  r.log_value = narrow(log_value);
  if (log_value.real() > overflow_log_threshold) {
    r.overflow = true;
    r.abs_error_estimate = std::numeric_limits<double>::infinity();
    return;
  }
  r.value = exp_log_value(log_value, real_axis);
  r.abs_error_estimate = log_space_error(term_magnitude, std::abs(r.value));
}

inline void apply_near_pole(EvalResult& r, const NearestPole& np, const DegenerateParameter& p) {
  if (np.distance >= near_pole_band) return;
  r.status = EvalStatus::NearPole;
  r.pole = make_pole(np.family, np.index, p);
  r.abs_error_estimate *= near_pole_band / np.distance;
}

}  // namespace detail

inline EvalResult degenerate_gamma(Complex s, const DegenerateParameter& p) {
  EvalResult r;
  r.method = EvalMethod::ClosedForm;
  const auto np = detail::nearest_pole(s, p);
  if (np.distance < pole_tolerance) {
    r.status = EvalStatus::AtPole;
    r.pole = detail::make_pole(np.family, np.index, p);
    r.abs_error_estimate = 0.0;
    return r;
  }
  const auto terms = detail::log_degenerate_gamma_terms(s, p);
  detail::finish_result(r, terms.value, s.imag() == 0.0, terms.term_magnitude);
  detail::apply_near_pole(r, np, p);
  return r;
}

/// Exact value at a positive integer: Gamma_lambda(k) = (k-1)! / (1)_{k+1,lambda}.
struct IntegerValue {
  Complex value;
  double factorial = 1.0;                    ///< (k-1)!
  GeneralizedFallingFactorial denominator;   ///< (1)_{k+1,lambda}
};

inline IntegerValue degenerate_gamma_integer(std::int64_t k, const DegenerateParameter& p) {
  if (k < 1) throw DomainError("degenerate_gamma_integer needs k >= 1");
  for (std::int64_t j = 2; j <= k; ++j) {
    if (std::abs(p.lambda() - 1.0 / static_cast<double>(j)) < pole_tolerance) {
      throw SingularParameterError("(1)_{k+1,lambda} vanishes: lambda = 1/" + std::to_string(j) +
                                   " and k = " + std::to_string(k));
    }
  }
  if (k > 171) throw OverflowError("(k-1)! exceeds double range");
  long double fact = 1.0L;
  for (std::int64_t j = 2; j < k; ++j) fact *= static_cast<long double>(j);
  IntegerValue out;
  out.factorial = static_cast<double>(fact);
  out.denominator = GeneralizedFallingFactorial::evaluate(Complex(1.0, 0.0), k + 1, p.lambda());
  long double denom = 1.0L;
  for (std::int64_t j = 0; j <= k; ++j) denom *= 1.0L - static_cast<long double>(j) * p.lambda();
  out.value = Complex(static_cast<double>(fact / denom), 0.0);
  return out;
}

/// The factor s / (1 - lambda (s + 1)) with Gamma_lambda(s+1) = factor * Gamma_lambda(s).
inline Complex difference_step(Complex s, const DegenerateParameter& p) {
  const Complex denom = 1.0 - p.lambda() * (s + 1.0);
  if (std::abs(denom) < pole_tolerance) {
    throw PoleError("s + 1 = 1/lambda is a pole of Gamma_lambda(s + 1)");
  }
  return s / denom;
}

struct LambdaShift {
  Complex factor;
  double shifted_lambda = 0.0;
  Complex shifted_arg;
};

/// Gamma_lambda(s+1) = factor * Gamma_{lambda/(1-(k+1)lambda)}(s-k), valid for
/// k < Re(s) < (1-lambda)/lambda. The shifted parameter stays below 1 only when lambda < 1/(k+2).
inline LambdaShift lambda_shift_recurrence(Complex s, std::int64_t k, const DegenerateParameter& p) {
  if (k < 0) throw DomainError("lambda_shift_recurrence needs k >= 0");
  using W = long double;
  const W lam = p.lambda();
  const W kk = static_cast<W>(k);
  if (lam * (kk + 2) >= 1.0L) {
    throw ParameterRangeError("lambda_shift_recurrence needs lambda < 1/(k+2) = " +
                              std::to_string(static_cast<double>(1.0L / (kk + 2))) +
                              " so the shifted parameter stays in (0, 1)");
  }
  const double upper = static_cast<double>((1.0L - lam) / lam);
  if (!(s.real() > static_cast<double>(k) && s.real() < upper)) {
    throw StripError("lambda_shift_recurrence needs " + std::to_string(k) + " < Re(s) < (1-lambda)/lambda = " +
                     std::to_string(upper));
  }
  const detail::WideComplex ws = detail::widen(s);
  detail::WideComplex log_factor{0, 0};
  for (std::int64_t j = 0; j <= k; ++j) log_factor += std::log(ws - static_cast<W>(j));
  for (std::int64_t j = 1; j <= k; ++j) log_factor -= std::log1p(-static_cast<W>(j) * lam);
  log_factor -= (ws - kk + 1.0L) * std::log1p(-(kk + 1) * lam);
  LambdaShift out;
  out.factor = detail::narrow(std::exp(log_factor));
  out.shifted_lambda = static_cast<double>(lam / (1.0L - (kk + 1) * lam));
  out.shifted_arg = s - static_cast<double>(k);
  return out;
}

/// The 2(n_max + 1) poles {-n} and {1/lambda + n}, n = 0..n_max, with residues.
inline std::vector<PoleInfo> poles(const DegenerateParameter& p, std::int64_t n_max) {
  if (n_max < 0) throw DomainError("poles needs n_max >= 0");
  std::vector<PoleInfo> out;
  out.reserve(static_cast<std::size_t>(2 * (n_max + 1)));
  for (auto family : {PoleFamily::NonPositive, PoleFamily::ShiftedByInvLambda}) {
    for (std::int64_t n = 0; n <= n_max; ++n) out.push_back(detail::make_pole(family, n, p));
  }
  return out;
}

/// 1/lambda - s: lambda^s Gamma_lambda(s) = lambda^{1/lambda - s} Gamma_lambda(1/lambda - s).
inline Complex symmetry_partner(Complex s, const DegenerateParameter& p) {
  return detail::narrow(p.inv_lambda_wide() - detail::widen(s));
}

namespace detail {

inline void check_beta_argument(Complex v, const char* name, const DegenerateParameter& p) {
  const auto np = nearest_pole(v, p);
  if (np.distance < pole_tolerance) {
    const auto pole = make_pole(np.family, np.index, p);
    throw PoleError(std::string(name) + " is at the pole " + std::to_string(pole.location.real()) +
                    " of Gamma_lambda");
  }
}

/// Shared pole handling for the beta paths; returns true when a+b is a pole (B_lambda = 0).
inline bool beta_sum_at_pole(Complex a, Complex b, const DegenerateParameter& p, EvalResult& r) {
  check_beta_argument(a, "alpha", p);
  check_beta_argument(b, "beta", p);
  const auto np = nearest_pole(a + b, p);
  if (np.distance >= pole_tolerance) return false;
  r.value = Complex(0.0, 0.0);
  r.log_value = Complex(-std::numeric_limits<double>::infinity(), 0.0);
  r.abs_error_estimate = 0.0;
  r.note = "alpha+beta is a pole of Gamma_lambda; B_lambda taken as its limit 0";
  return true;
}

inline NearestPole closest_of(std::initializer_list<NearestPole> list) {
  return *std::min_element(list.begin(), list.end(),
                           [](const NearestPole& x, const NearestPole& y) { return x.distance < y.distance; });
}

}  // namespace detail

/// B_lambda(a, b) = Gamma_lambda(a) Gamma_lambda(b) / Gamma_lambda(a + b), in log space.
inline EvalResult degenerate_beta(Complex a, Complex b, const DegenerateParameter& p) {
  EvalResult r;
  r.method = EvalMethod::ClosedForm;
  if (detail::beta_sum_at_pole(a, b, p, r)) return r;
  const auto la = detail::log_degenerate_gamma_terms(a, p);
  const auto lb = detail::log_degenerate_gamma_terms(b, p);
  const auto lab = detail::log_degenerate_gamma_terms(a + b, p);
  detail::finish_result(r, la.value + lb.value - lab.value, a.imag() == 0.0 && b.imag() == 0.0,
                        la.term_magnitude + lb.term_magnitude + lab.term_magnitude);
  detail::apply_near_pole(r, detail::closest_of({detail::nearest_pole(a, p), detail::nearest_pole(b, p),
                                                 detail::nearest_pole(a + b, p)}),
                          p);
  return r;
}

/// B_lambda(a, b) = B(a, b) Gamma(1/lambda - a) Gamma(1/lambda - b) / (Gamma(1/lambda) Gamma(1/lambda - a - b)).
inline EvalResult degenerate_beta_classical(Complex a, Complex b, const DegenerateParameter& p) {
  EvalResult r;
  r.method = EvalMethod::ClosedForm;
  if (detail::beta_sum_at_pole(a, b, p, r)) return r;
  using detail::log_gamma_principal, detail::widen;
  const detail::Wide w = p.inv_lambda_wide();
  const auto lbeta = widen(log_beta(a, b));
  const auto lv = lbeta + log_gamma_principal(w - widen(a)) + log_gamma_principal(w - widen(b)) -
                  log_gamma_principal(detail::WideComplex(w, 0)) - log_gamma_principal(w - widen(a + b));
  const double magnitude = std::abs(detail::narrow(lbeta)) + 4.0 * std::abs(std::lgamma(p.inv_lambda())) +
                           std::abs(a) + std::abs(b);
  detail::finish_result(r, lv, a.imag() == 0.0 && b.imag() == 0.0, magnitude);
  return r;
}

/// B_lambda(m, n) = (1)_{m+n+1,lambda} / ((1)_{m+1,lambda} (1)_{n+1,lambda}) * B(m, n) at positive integers.
inline double degenerate_beta_integer(std::int64_t m, std::int64_t n, const DegenerateParameter& p) {
  if (m < 1 || n < 1) throw DomainError("degenerate_beta_integer needs positive integers");
  for (std::int64_t j = 2; j <= m + n; ++j) {
    if (std::abs(p.lambda() - 1.0 / static_cast<double>(j)) < pole_tolerance) {
      throw SingularParameterError("lambda = 1/" + std::to_string(j) + " makes a falling factorial vanish");
    }
  }
  auto ff = [&](std::int64_t len) {
    long double acc = 1.0L;
    for (std::int64_t j = 0; j < len; ++j) acc *= 1.0L - static_cast<long double>(j) * p.lambda();
    return acc;
  };
  // B(m, n) = (m-1)! (n-1)! / (m+n-1)!
  long double classical = 1.0L;
  for (std::int64_t j = 1; j < n; ++j) classical *= static_cast<long double>(j) / static_cast<long double>(m + j);
  classical /= static_cast<long double>(m);
  return static_cast<double>(ff(m + n + 1) / (ff(m + 1) * ff(n + 1)) * classical);
}

}  // namespace degamma
