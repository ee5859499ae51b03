#include <gtest/gtest.h>

#include "harmonic/fullgroup.hpp"
#include "support.hpp"

using namespace harmonic;

TEST(ScaleTransform, GaussianInLogScale) {
  // h(t) = e^{-(log t)²/2} on dt/t is e^{-u²/2} on du: transform √(2π) e^{-η²/2}.
  const GridAxis u = log_scale_axis({-8, 8, 128});
  SampledFunction h = SampledFunction::zeros({u});
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = std::exp(-u.nodes[j] * u.nodes[j] / 2);
  const SampledFunction H = scale_fourier(h, -1);
  for (std::size_t k = 0; k < H.size(); ++k) {
    const double eta = H.axis(0).nodes[k];
    EXPECT_NEAR(std::abs(H[k] - std::sqrt(kTwoPi) * std::exp(-eta * eta / 2)), 0.0, 1e-10);
  }
  EXPECT_LT(testgen::rel(norm_squared(h), norm_squared(H)), 1e-8);
  EXPECT_LT(testgen::rel(norm_squared(h), std::sqrt(kPi)), 1e-12);
}

TEST(ScaleTransform, RejectsLinearAxis) {
  const SampledFunction h = SampledFunction::zeros({build_axis({"x", AxisKind::LinearReal, -1, 1, 8})});
  EXPECT_THROW(scale_fourier(h, -1), std::invalid_argument);
}

TEST(GLPoint, RoundTripBothComponents) {
  auto rng = testgen::engine(61);
  for (int trial = 0; trial < 50; ++trial) {
    const bool neg = trial % 2;
    const Matrix m = 0.6 * testgen::unimodular(rng, 2, neg);
    const GLPoint p = gl_point_from_matrix(m);
    EXPECT_EQ(p.sign, neg ? Sign::Minus : Sign::Plus);
    EXPECT_LT((p.matrix() - m).norm(), 1e-10 * m.norm());
  }
}

TEST(GLPlus, PlancherelWithScaleAxis) {
  const SLChart chart = make_glplus_chart(2, {-6, 6, 32}, {-3, 3, 16}, 8, 3, {-5, 5, 32});
  const GFunction F = [](const Matrix& g) {
    // (ggᵀ)₀₁/det is the N coordinate; penalizing it keeps the x tails
    // inside the box even where a is small. Still right K-invariant.
    const double d = g.determinant();
    const double c = (g * g.transpose())(0, 1) / d;
    return cplx(std::exp(-(g.squaredNorm() - 2 * std::sqrt(d)) - std::log(d) * std::log(d) - c * c), 0.0);
  };
  const SampledFunction f = sample_on_chart(F, chart);
  EXPECT_LT(testgen::rel(norm_squared(f), glplus_fourier(f, chart).hs_norm_squared()), 1e-10);
  EXPECT_THROW(glplus_fourier(f, make_sl_chart(2, {-6, 6, 32}, {-3, 3, 16}, 8, 3)), std::invalid_argument);
}

TEST(GLMinus, PullBackAndSymmetricExtension) {
  const GFunction fp = [](const Matrix& g) { return cplx(g(0, 0), g(1, 0)); };
  const GFunction fm = symmetric_extension(fp);
  Matrix a(2, 2);
  a << 1, 2, 3, 4;  // det -2
  // f-(A) = f+(τA), τ flips the first row.
  EXPECT_EQ(fm(a), cplx(-1, 3));
  EXPECT_EQ(pull_back_minus(fm)(a), fp(a));
}

TEST(GL, FactorTwoForSymmetricExtension) {
  const SLChart chart = make_glplus_chart(2, {-6, 6, 24}, {-3, 3, 12}, 8, 3, {-5, 5, 24});
  const GFunction F = [](const Matrix& g) { return cplx(std::exp(-g.squaredNorm()), 0.0); };
  EXPECT_LT(factor_two_check(F, chart).rel_error, 1e-12);
}
