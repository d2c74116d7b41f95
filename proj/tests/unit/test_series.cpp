#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "slag/errors.hpp"
#include "slag/precision.hpp"
#include "slag/series.hpp"

using namespace slag;
using slag::testing::max_abs;
using slag::testing::random_poly;

TEST(TaylorPoly, ConstantAndVariable) {
  const TaylorPoly c = TaylorPoly::constant(2.5, 4);
  EXPECT_EQ(c.degree_cap(), 4);
  EXPECT_DOUBLE_EQ(c(3.0), 2.5);
  const TaylorPoly x = TaylorPoly::variable(4);
  EXPECT_DOUBLE_EQ(x(0.7), 0.7);
}

TEST(TaylorPoly, MismatchedCapsAreShapeErrors) {
  EXPECT_THROW(TaylorPoly(3) + TaylorPoly(4), ShapeError);
  EXPECT_THROW(poly_mul(TaylorPoly(3), TaylorPoly(4)), ShapeError);
}

TEST(TaylorPoly, ProductTruncatesAtCap) {
  TaylorPoly a(3), b(3);
  a[1] = 1.0;
  a[2] = 2.0;
  b[2] = 1.0;
  b[3] = 5.0;
  const TaylorPoly p = poly_mul(a, b);
  EXPECT_DOUBLE_EQ(p[3], 1.0);
  EXPECT_DOUBLE_EQ(p[2], 0.0);
}

TEST(TaylorPoly, ReciprocalTimesSelfIsOne) {
  std::mt19937_64 rng(11);
  TaylorPoly a = random_poly(rng, 20);
  a[0] = 1.5;
  const TaylorPoly r = poly_mul(a, poly_reciprocal(a));
  EXPECT_NEAR(r[0], 1.0, 1e-15);
  for (int d = 1; d <= 20; ++d) EXPECT_NEAR(r[d], 0.0, 1e-11) << d;
}

TEST(TaylorPoly, ReciprocalOfZeroConstantThrows) {
  EXPECT_THROW(poly_reciprocal(TaylorPoly::variable(5)), SingularDivisionError);
}

TEST(TaylorPoly, DerivativeAndAntiderivative) {
  std::mt19937_64 rng(3);
  TaylorPoly a = random_poly(rng, 12);
  a[0] = 0.0;
  const TaylorPoly back = poly_antiderivative(poly_derivative(a));
  for (int d = 0; d < 12; ++d) EXPECT_NEAR(back[d], a[d], 1e-15);
  EXPECT_DOUBLE_EQ(poly_derivative(a)[12], 0.0);
}

TEST(TaylorPoly, ComposeWithSineSeriesMatchesPointwise) {
  const int D = 20;
  TaylorPoly sin_series(D), exp_series(D);
  double fact = 1.0;
  for (int d = 0; d <= D; ++d) {
    if (d > 0) fact *= d;
    exp_series[d] = 1.0 / fact;
    if (d % 2 == 1) sin_series[d] = ((d / 2) % 2 == 0 ? 1.0 : -1.0) / fact;
  }
  const TaylorPoly c = poly_compose(exp_series, sin_series);
  EXPECT_NEAR(c(0.3), std::exp(std::sin(0.3)), 1e-14);
}

TEST(TaylorPoly, ComposeNeedsVanishingInner) {
  EXPECT_THROW(poly_compose(TaylorPoly(4), TaylorPoly::constant(1.0, 4)), CompositionDomainError);
}

TEST(TaylorPoly, RevertIsCompositionalInverse) {
  std::mt19937_64 rng(5);
  TaylorPoly a = random_poly(rng, 16, 0.5);
  a[0] = 0.0;
  a[1] = 1.3;
  const TaylorPoly id = poly_compose(a, poly_revert(a));
  EXPECT_NEAR(id[1], 1.0, 1e-14);
  for (int d = 2; d <= 16; ++d) EXPECT_NEAR(id[d], 0.0, 1e-10) << d;
}

TEST(TaylorPoly, RevertNeedsInvertibleLinearTerm) {
  TaylorPoly a(4);
  a[2] = 1.0;
  EXPECT_THROW(poly_revert(a), SingularDivisionError);
}

TEST(TaylorPoly, TaylorShiftReproducesValues) {
  std::mt19937_64 rng(9);
  const TaylorPoly a = random_poly(rng, 10);
  const TaylorPoly b = poly_taylor_shift(a, 0.4);
  for (double h : {-0.3, 0.0, 0.2}) EXPECT_NEAR(b(h), a(0.4 + h), 1e-13);
}

TEST(AnalyticCompose, ArctanAndTanMatchLibm) {
  TaylorPoly inner(24);
  inner[1] = 0.5;
  inner[2] = 0.25;
  const double t = 0.2;
  EXPECT_NEAR(analytic_compose(Kernel::Arctan, inner)(t), std::atan(inner(t)), 1e-15);
  EXPECT_NEAR(analytic_compose(Kernel::Tan, inner)(t), std::tan(inner(t)), 1e-15);
}

TEST(AnalyticCompose, TanOfArctanIsIdentity) {
  std::mt19937_64 rng(21);
  TaylorPoly inner = random_poly(rng, 18, 0.7);
  inner[0] = 0.0;
  const TaylorPoly round = analytic_compose(Kernel::Tan, analytic_compose(Kernel::Arctan, inner));
  EXPECT_LT(max_abs(round - inner), 1e-12);
}

TEST(ComplexSeries, IntegerPowerMatchesRepeatedProduct) {
  std::mt19937_64 rng(4);
  const ComplexSeries z{random_poly(rng, 10), random_poly(rng, 10)};
  const ComplexSeries p5 = complex_int_pow(z, 5);
  ComplexSeries q = ComplexSeries::one(10);
  for (int i = 0; i < 5; ++i) q = q * z;
  EXPECT_LT(max_abs(p5.re - q.re), 1e-10);
  EXPECT_LT(max_abs(p5.im - q.im), 1e-10);
}

TEST(SigmaExpansion, PartialsMatchFiniteDifferences) {
  std::mt19937_64 rng(17);
  std::vector<TaylorPoly> terms;
  for (int k = 0; k <= 4; ++k) terms.push_back(random_poly(rng, 12, 0.5));
  const SigmaExpansion phi(3, terms);
  const double t = 0.13, s = 0.21, h = 1e-5;
  const auto val = [&](double tt, double ss) { return sigma_eval_with_partials(phi, tt, ss).phi; };
  const SigmaPartials<double> p = sigma_eval_with_partials(phi, t, s);
  EXPECT_NEAR(p.phi_t, (val(t + h, s) - val(t - h, s)) / (2 * h), 1e-8);
  EXPECT_NEAR(p.phi_s, (val(t, s + h) - val(t, s - h)) / (2 * h), 1e-8);
  EXPECT_NEAR(p.phi_ss, (val(t, s + h) - 2 * val(t, s) + val(t, s - h)) / (h * h), 1e-4);
  EXPECT_NEAR(p.phi_s_over_s, p.phi_s / s, 1e-13);
}

TEST(SigmaExpansion, EvenInSigma) {
  std::mt19937_64 rng(23);
  std::vector<TaylorPoly> terms;
  for (int k = 0; k <= 3; ++k) terms.push_back(random_poly(rng, 8));
  const SigmaExpansion phi(2, terms);
  const auto a = sigma_eval_with_partials(phi, 0.2, 0.3);
  const auto b = sigma_eval_with_partials(phi, 0.2, -0.3);
  EXPECT_DOUBLE_EQ(a.phi, b.phi);
  EXPECT_DOUBLE_EQ(a.phi_s, -b.phi_s);
  EXPECT_DOUBLE_EQ(a.phi_s_over_s, b.phi_s_over_s);
}

TEST(SigmaExpansion, RejectsMixedCaps) {
  EXPECT_THROW(SigmaExpansion(2, {TaylorPoly(4), TaylorPoly(5)}), ShapeError);
  EXPECT_THROW(SigmaExpansion(1, {TaylorPoly(4)}), ShapeError);
}

TEST(Quad, TemplatedArithmeticCarriesExtraDigits) {
  BasicTaylorPoly<Quad> a(4);
  a[0] = Quad(1);
  a[1] = Quad(1) / Quad(3);
  const BasicTaylorPoly<Quad> r = poly_mul(a, poly_reciprocal(a));
  EXPECT_LT(static_cast<double>(abs(r[1])), 1e-30);
}

TEST(Precision, ParsesNames) {
  EXPECT_EQ(parse_precision("double"), Precision::Double);
  EXPECT_EQ(parse_precision("extended"), Precision::Extended);
  EXPECT_EQ(parse_precision(""), Precision::Double);
  EXPECT_THROW(parse_precision("half"), InvalidArgument);
}
