#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "degamma/products.hpp"
#include "test_support.hpp"

using namespace degamma;
using degamma::testing::near_rel;

namespace {

ProductSpec terms(std::int64_t n) {
  ProductSpec spec;
  spec.n_terms = n;
  return spec;
}

}  // namespace

TEST(Weierstrass, Examples) {
  const DegenerateParameter half(0.5);
  EXPECT_NEAR(std::abs(weierstrass_gamma(1.0, half, terms(1000000)).value - 2.0), 0.0, 1e-5);
  EXPECT_NEAR(std::abs(weierstrass_gamma(0.5, half, terms(1000000)).value - std::sqrt(2.0) * std::numbers::pi / 2), 0.0, 1e-5);
  const DegenerateParameter p(0.3);
  const Complex z(1, 2);
  EXPECT_TRUE(near_rel(weierstrass_gamma(z, p, terms(1000000)).value, degenerate_gamma(z, p).value, 1e-5));
  ProductSpec corrected = terms(1000000);
  corrected.use_tail_correction = true;
  const auto r = weierstrass_gamma(z, p, corrected);
  EXPECT_TRUE(near_rel(r.value, degenerate_gamma(z, p).value, 1e-6));
  EXPECT_EQ(r.method, EvalMethod::WeierstrassProduct);
}

TEST(Weierstrass, FormsAgreeAtEqualN) {
  for (auto [z, lambda] : {std::pair{Complex(1, 2), 0.3}, std::pair{Complex(-1.3, 0.4), 0.05}, std::pair{Complex(0.5, 0), 0.9}}) {
    const DegenerateParameter p(lambda);
    for (std::int64_t n : {10, 1000, 100000}) {
      const auto a = weierstrass_gamma(z, p, terms(n), WeierstrassForm::PowerFactors).value;
      const auto b = weierstrass_gamma(z, p, terms(n), WeierstrassForm::EulerConstant).value;
      EXPECT_TRUE(near_rel(b, a, 1e-12)) << z << " " << lambda << " " << n;
    }
  }
}

TEST(Weierstrass, EstimateBoundsError) {
  for (auto [z, lambda] : {std::pair{Complex(1, 2), 0.3}, std::pair{Complex(-1.3, 0.4), 0.6}, std::pair{Complex(2.5, -1), 0.2}}) {
    const DegenerateParameter p(lambda);
    const auto r = weierstrass_gamma(z, p, terms(100000));
    EXPECT_LE(std::abs(r.value - degenerate_gamma(z, p).value), r.abs_error_estimate) << z;
  }
}

TEST(Weierstrass, TailCorrectionHelps) {
  const DegenerateParameter p(0.3);
  const Complex z(1, 2);
  const Complex exact = degenerate_gamma(z, p).value;
  ProductSpec corrected = terms(10000);
  corrected.use_tail_correction = true;
  const double plain_err = std::abs(weierstrass_gamma(z, p, terms(10000)).value - exact);
  const double corrected_err = std::abs(weierstrass_gamma(z, p, corrected).value - exact);
  EXPECT_LT(corrected_err, 1e-3 * plain_err);
}

TEST(Weierstrass, ShortTruncationHasNoBound) {
  const auto r = weierstrass_gamma({3, 1}, DegenerateParameter(0.1), terms(5));
  EXPECT_TRUE(std::isinf(r.abs_error_estimate));
}

TEST(Weierstrass, Errors) {
  const DegenerateParameter p(0.5);
  EXPECT_THROW(weierstrass_gamma(0.0, p, terms(100)), PoleError);
  EXPECT_THROW(weierstrass_gamma(2.0, p, terms(100)), PoleError);
  EXPECT_THROW(weierstrass_gamma(-3.0, p, terms(100)), PoleError);
  EXPECT_THROW(weierstrass_gamma(1.0, p, terms(0)), DomainError);
  ProductSpec strict = terms(1000);
  strict.rel_tolerance = 1e-10;
  EXPECT_THROW(weierstrass_gamma(1.0, p, strict), ConvergenceError);
  strict.rel_tolerance = 1e-1;
  EXPECT_NO_THROW(weierstrass_gamma(1.0, p, strict));
}

TEST(Weierstrass, ConvergenceSlopeIsFirstOrder) {
  const DegenerateParameter p(0.3);
  const Complex z(1, 2);
  const Complex exact = degenerate_gamma(z, p).value;
  std::vector<double> log_n, log_err;
  for (std::int64_t n : {1000, 10000, 100000, 1000000}) {
    log_n.push_back(std::log(static_cast<double>(n)));
    log_err.push_back(std::log(std::abs(weierstrass_gamma(z, p, terms(n)).value - exact)));
  }
  for (std::size_t i = 1; i < log_n.size(); ++i) EXPECT_LT(log_err[i], log_err[i - 1]);
  const double slope = (log_err.back() - log_err.front()) / (log_n.back() - log_n.front());
  EXPECT_GE(slope, -1.3);
  EXPECT_LE(slope, -0.7);
}

TEST(EulerLimit, Examples) {
  EXPECT_NEAR(std::abs(euler_limit_gamma(1.0, DegenerateParameter(0.5), terms(100000)).value - 2.0), 0.0, 1e-4);
  EXPECT_NEAR(std::abs(euler_limit_gamma(2.0, DegenerateParameter(0.25), terms(100000)).value - 8.0 / 3.0), 0.0, 1e-3);
  const auto full = euler_limit_gamma({0.5, 1}, DegenerateParameter(0.5), terms(100000));
  const auto half = euler_limit_gamma({0.5, 1}, DegenerateParameter(0.5), terms(50000));
  EXPECT_TRUE(near_rel(full.value, half.value, 1e-4));
  EXPECT_EQ(full.method, EvalMethod::EulerLimit);
}

TEST(EulerLimit, EstimateBoundsError) {
  for (auto [z, lambda] : {std::pair{Complex(0.5, 1), 0.5}, std::pair{Complex(-1.3, 0.4), 0.6}, std::pair{Complex(2.5, -1), 0.2}}) {
    const DegenerateParameter p(lambda);
    const auto r = euler_limit_gamma(z, p, terms(100000));
    EXPECT_LE(std::abs(r.value - degenerate_gamma(z, p).value), r.abs_error_estimate) << z;
  }
}

TEST(EulerLimit, Errors) {
  EXPECT_THROW(euler_limit_gamma(-2.0, DegenerateParameter(0.5), terms(100)), PoleError);
  EXPECT_THROW(euler_limit_gamma(0.5, DegenerateParameter(0.5), terms(1)), DomainError);
}

TEST(SineProduct, Examples) {
  EXPECT_NEAR(std::abs(sine_product(0.5, 1000000) - std::numbers::pi / 2), 0.0, 1e-5);
  EXPECT_EQ(sine_product(0.0, 10), Complex(1.0, 0.0));
  EXPECT_NEAR(std::abs(sine_product(0.25, 1000000) - std::numbers::pi * std::sqrt(2.0) / 4), 0.0, 1e-5);
  EXPECT_THROW(sine_product(2.0, 10), PoleError);
  EXPECT_THROW(sine_product(-1.0, 10), PoleError);
  EXPECT_THROW(sine_product(0.5, 0), DomainError);
}

TEST(SineProduct, ErrorConstantStableAcrossN) {
  // |partial - pi z / sin(pi z)| * N settles to a z-dependent constant.
  for (Complex z : {Complex(0.5, 0), Complex(1.3, 0.7), Complex(-2.2, -0.4)}) {
    const Complex exact = z * reflection_product(z);
    std::vector<double> c;
    for (std::int64_t n : {1000, 10000, 100000}) c.push_back(std::abs(sine_product(z, n) - exact) * static_cast<double>(n));
    EXPECT_NEAR(c[2] / c[1], 1.0, 0.05) << z;
    EXPECT_NEAR(c[1] / c[0], 1.0, 0.05) << z;
  }
}

TEST(BetaProduct, Examples) {
  const auto unit = degenerate_beta_product(1.0, 1.0, DegenerateParameter(0.25), terms(1000000));
  EXPECT_NEAR(std::abs(unit.value - 2.0 / 3.0), 0.0, 1e-4);
  const auto integer = degenerate_beta_product(2.0, 1.0, DegenerateParameter(0.1), terms(1000000));
  EXPECT_NEAR(std::abs(integer.value - 7.0 / 18.0), 0.0, 1e-4);
  const DegenerateParameter quarter(0.25);
  EXPECT_TRUE(near_rel(degenerate_beta_product(0.5, 0.5, quarter, terms(1000000)).value,
                       degenerate_beta(0.5, 0.5, quarter).value, 1e-4));
}

TEST(BetaProduct, EstimateBoundsError) {
  const DegenerateParameter p(0.4);
  const Complex a(0.6, 0.5), b(1.1, -0.2);
  const auto r = degenerate_beta_product(a, b, p, terms(100000));
  EXPECT_LE(std::abs(r.value - degenerate_beta(a, b, p).value), r.abs_error_estimate);
}

TEST(BetaProduct, Errors) {
  const DegenerateParameter p(0.25);
  EXPECT_THROW(degenerate_beta_product(0.0, 1.0, p, terms(100)), PoleError);
  EXPECT_THROW(degenerate_beta_product(1.0, 4.0, p, terms(100)), PoleError);
  EXPECT_THROW(degenerate_beta_product(1.0, 1.0, p, terms(0)), DomainError);
  ProductSpec strict = terms(100);
  strict.rel_tolerance = 1e-12;
  EXPECT_THROW(degenerate_beta_product(1.0, 1.0, p, strict), ConvergenceError);
}
