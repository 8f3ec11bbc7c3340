#pragma once

// Complex gamma, log-gamma and beta kernel.
//
// log-gamma is the principal branch (analytic off the negative real axis):
// Stirling's series with upward recurrence for Re(z) >= 1/2 and the
// reflection formula below that. The internal evaluation runs in long double
// so that |log Gamma| ~ 700 still leaves ~1e-16 relative accuracy in Gamma.

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace degamma {

using Complex = std::complex<double>;

/// Radius around a pole inside which evaluation raises instead of returning a huge value.
inline constexpr double pole_tolerance = 1e-8;
/// exp() of anything above this is not representable as a double.
inline constexpr double overflow_log_threshold = 709.0;
inline constexpr double euler_gamma = 0.5772156649015329;

struct LogGammaResult {
  double log_abs = 0.0;  ///< log |Gamma(z)|
  double arg = 0.0;      ///< imaginary part of log Gamma(z); 0 or pi on the real axis

  Complex as_complex() const { return {log_abs, arg}; }
};

namespace detail {

using Wide = long double;
using WideComplex = std::complex<Wide>;

template <std::floating_point T>
inline constexpr T pi = std::numbers::pi_v<T>;

/// sin(pi x) with exact argument reduction, so integers give exactly 0.
template <std::floating_point T>
T sin_pi(T x) {
  T r = std::remainder(x, T(2));  // r in [-1, 1]
  if (r > T(0.5)) r = T(1) - r;
  if (r < T(-0.5)) r = T(-1) - r;
  return std::sin(pi<T> * r);
}

template <std::floating_point T>
T cos_pi(T x) {
  T r = std::fabs(std::remainder(x, T(2)));  // r in [0, 1]
  if (r == T(0.5)) return T(0);
  return r < T(0.5) ? std::cos(pi<T> * r) : -std::cos(pi<T> * (T(1) - r));
}

template <std::floating_point T>
std::complex<T> sin_pi(std::complex<T> z) {
  const T x = z.real(), y = z.imag();
  return {sin_pi(x) * std::cosh(pi<T> * y), cos_pi(x) * std::sinh(pi<T> * y)};
}

/// log(1 + u) without cancellation for small |u|.
template <std::floating_point T>
std::complex<T> log1p(std::complex<T> u) {
  const T a = u.real(), b = u.imag();
  return {T(0.5) * std::log1p(a * (T(2) + a) + b * b), std::atan2(b, T(1) + a)};
}

/// Distance from z to the nearest element of {0, -1, -2, ...}; writes that element's index.
inline double distance_to_nonpositive_integer(Complex z, std::int64_t& n) {
  const double k = std::nearbyint(-z.real());
  n = k < 0 ? 0 : static_cast<std::int64_t>(k);
  return std::abs(z + static_cast<double>(n));
}

inline double distance_to_integer(Complex z) {
  return std::abs(z - std::nearbyint(z.real()));
}

// B_{2k} / (2k (2k-1)), k = 1..9
inline constexpr long double stirling_coefficients[] = {
    1.0L / 12.0L,        -1.0L / 360.0L,    1.0L / 1260.0L,
    -1.0L / 1680.0L,     1.0L / 1188.0L,    -691.0L / 360360.0L,
    1.0L / 156.0L,       -3617.0L / 122400.0L, 43867.0L / 244188.0L};

/// Principal log-gamma for Re(z) >= 1/2.
template <std::floating_point T>
std::complex<T> log_gamma_right(std::complex<T> z) {
  constexpr T min_modulus = 15;
  std::complex<T> shift{0, 0};
  while (std::abs(z) < min_modulus) {
    shift += std::log(z);
    z += T(1);
  }
  const std::complex<T> inv = T(1) / z;
  const std::complex<T> inv2 = inv * inv;
  std::complex<T> series{0, 0};
  std::complex<T> power = inv;
  for (long double c : stirling_coefficients) {
    series += static_cast<T>(c) * power;
    power *= inv2;
  }
  const T half_log_two_pi = T(0.5) * std::log(T(2) * pi<T>);
  return (z - T(0.5)) * std::log(z) - z + half_log_two_pi + series - shift;
}

/// Principal log-gamma on C minus the poles. On the real axis the imaginary
/// part is 0 for Gamma > 0 and pi for Gamma < 0.
template <std::floating_point T>
std::complex<T> log_gamma_principal(std::complex<T> z) {
  if (z.real() >= T(0.5)) return log_gamma_right(z);
  const T x = z.real();
  if (z.imag() == T(0)) {
    const T s = sin_pi(x);
    const T log_abs = std::log(pi<T>) - std::log(std::fabs(s)) - log_gamma_right(std::complex<T>(T(1) - x, 0)).real();
    return {log_abs, s < 0 ? pi<T> : T(0)};
  }
  if (z.imag() < T(0)) return std::conj(log_gamma_principal(std::conj(z)));

  // Upper half plane: log Gamma(z) = log pi - S(z) - log Gamma(1 - z), where
  // S(z) = -i pi z + log(1 - e^{2 pi i z}) - log 2 + i pi/2 is the branch of
  // log sin(pi z) that is analytic for Im z > 0 (and real at z = 1/2).
  const T y = z.imag();
  const T decay = std::exp(-T(2) * pi<T> * y);
  const T sin_x = sin_pi(x);
  // 1 - e^{2 pi i z} computed componentwise without cancellation.
  const T re = -std::expm1(-T(2) * pi<T> * y) + decay * T(2) * sin_x * sin_x;
  const T im = -decay * sin_pi(T(2) * x);
  const std::complex<T> log_sin = std::complex<T>(pi<T> * y, -pi<T> * x) + std::log(std::complex<T>(re, im)) -
                                  std::log(T(2)) + std::complex<T>(0, pi<T> / 2);
  return std::log(pi<T>) - log_sin - log_gamma_right(T(1) - z);
}

inline void check_not_gamma_pole(Complex z, const char* what) {
  if (z.real() > 0.5) return;
  std::int64_t n = 0;
  if (distance_to_nonpositive_integer(z, n) < pole_tolerance) {
    throw PoleError(std::string(what) + " is at the pole -" + std::to_string(n) + " of Gamma");
  }
}

inline WideComplex widen(Complex z) { return {z.real(), z.imag()}; }
inline Complex narrow(WideComplex z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// exp of a wide log value; real-axis inputs keep an exactly real result.
inline Complex exp_log_value(WideComplex log_value, bool real_axis) {
  if (log_value.real() > overflow_log_threshold) {
    throw OverflowError("value exceeds double range (log |value| = " +
                        std::to_string(static_cast<double>(log_value.real())) + ")");
  }
  const Wide mag = std::exp(log_value.real());
  if (real_axis) {
    const Wide c = std::cos(log_value.imag());
    return {static_cast<double>(c < 0 ? -mag : mag), 0.0};
  }
  return narrow(std::polar(mag, log_value.imag()));
}

}  // namespace detail

inline LogGammaResult log_gamma(Complex z) {
  detail::check_not_gamma_pole(z, "argument");
  const auto lg = detail::log_gamma_principal(detail::widen(z));
  return {static_cast<double>(lg.real()), static_cast<double>(lg.imag())};
}

inline Complex gamma(Complex z) {
  detail::check_not_gamma_pole(z, "argument");
  return detail::exp_log_value(detail::log_gamma_principal(detail::widen(z)), z.imag() == 0.0);
}

/// log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b), modulo 2 pi i.
inline Complex log_beta(Complex a, Complex b) {
  detail::check_not_gamma_pole(a, "a");
  detail::check_not_gamma_pole(b, "b");
  detail::check_not_gamma_pole(a + b, "a+b");
  using detail::log_gamma_principal, detail::widen;
  return detail::narrow(log_gamma_principal(widen(a)) + log_gamma_principal(widen(b)) -
                        log_gamma_principal(widen(a + b)));
}

inline Complex beta(Complex a, Complex b) {
  detail::check_not_gamma_pole(a, "a");
  detail::check_not_gamma_pole(b, "b");
  detail::check_not_gamma_pole(a + b, "a+b");
  using detail::log_gamma_principal, detail::widen;
  const auto lb = log_gamma_principal(widen(a)) + log_gamma_principal(widen(b)) - log_gamma_principal(widen(a + b));
  return detail::exp_log_value(lb, a.imag() == 0.0 && b.imag() == 0.0);
}

/// Gamma(z) Gamma(1 - z) = pi / sin(pi z), evaluated directly.
inline Complex reflection_product(Complex z) {
  if (detail::distance_to_integer(z) < pole_tolerance) {
    throw PoleError("reflection product has a pole at the integer " + std::to_string(std::nearbyint(z.real())));
  }
  return std::numbers::pi / detail::sin_pi(z);
}

/// Partial product of B(a,b) = (a+b)/(ab) prod_n (1+(a+b)/n) / ((1+a/n)(1+b/n)).
/// Each factor equals 1 - ab/((n+a)(n+b)), accumulated as a sum of logs.
inline Complex beta_product(Complex a, Complex b, std::int64_t n_terms) {
  if (n_terms < 1) throw DomainError("beta_product needs n_terms >= 1");
  std::int64_t idx = 0;
  for (auto [v, name] : {std::pair{a, "a"}, std::pair{b, "b"}, std::pair{a + b, "a+b"}}) {
    if (detail::distance_to_nonpositive_integer(v, idx) < pole_tolerance) {
      throw PoleError(std::string("beta_product: ") + name + " is at the pole -" + std::to_string(idx));
    }
  }
  using W = detail::Wide;
  const detail::WideComplex wa = detail::widen(a), wb = detail::widen(b), ab = wa * wb;
  detail::WideComplex log_sum{0, 0};
  for (std::int64_t n = 1; n <= n_terms; ++n) {
    const W nn = static_cast<W>(n);
    log_sum += detail::log1p(-ab / ((nn + wa) * (nn + wb)));
  }
  const detail::WideComplex prefactor = (wa + wb) / ab;
  return detail::narrow(prefactor * std::exp(log_sum));
}

}  // namespace degamma
