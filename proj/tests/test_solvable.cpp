#include <gtest/gtest.h>

#include "harmonic/solvable.hpp"
#include "support.hpp"

using namespace harmonic;

namespace {

SPoint random_point(std::mt19937_64& rng, int n) {
  return {NCoordinates(n, testgen::normals(rng, static_cast<std::size_t>(n_dimension(n)))),
          APoint(n, testgen::normals(rng, static_cast<std::size_t>(n - 1), 0.5))};
}

double coord_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double g = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) g = std::max(g, std::abs(a[i] - b[i]) / (1 + std::abs(a[i])));
  return g;
}

SampledFunction separable_gaussian(const std::vector<GridAxis>& axes, std::size_t d, double wx, double wt) {
  SampledFunction f = SampledFunction::zeros(axes);
  std::vector<double> p(f.rank());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.coordinates(i, p);
    double e = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double w = k < d ? wx : wt;
      e += p[k] * p[k] / (2 * w * w);
    }
    f[i] = std::exp(-e);
  }
  return f;
}

}  // namespace

TEST(SGroup, EmbeddingIsHomomorphism) {
  auto rng = testgen::engine(31);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 200; ++trial) {
      const SPoint p = random_point(rng, n);
      const SPoint q = random_point(rng, n);
      const Matrix lhs = s_embed(s_compose(p, q));
      const Matrix rhs = s_embed(p) * s_embed(q);
      EXPECT_LT((lhs - rhs).norm(), 1e-12 * s_embed(p).norm() * s_embed(q).norm());
    }
  }
}

TEST(SGroup, RhoIsConjugationAndAnAction) {
  auto rng = testgen::engine(32);
  for (int n : {2, 3, 4}) {
    const auto d = static_cast<std::size_t>(n_dimension(n));
    for (int trial = 0; trial < 100; ++trial) {
      const APoint a(n, testgen::normals(rng, static_cast<std::size_t>(n - 1), 0.5));
      const APoint b(n, testgen::normals(rng, static_cast<std::size_t>(n - 1), 0.5));
      const NCoordinates x(n, testgen::normals(rng, d));
      const Matrix conj = a.matrix() * n_embed(x) * a.matrix().inverse();
      EXPECT_LT(coord_gap(rho_action(a, x).coords, n_extract(conj).coords), 1e-12);
      EXPECT_LT(coord_gap(rho_action(a_compose(a, b), x).coords, rho_action(a, rho_action(b, x)).coords), 1e-12);
    }
  }
}

TEST(SGroup, RhoJacobianIsDeterminantOfTheLinearMap) {
  auto rng = testgen::engine(33);
  for (int n : {2, 3}) {
    const int d = n_dimension(n);
    const APoint a(n, testgen::normals(rng, static_cast<std::size_t>(n - 1), 0.5));
    Matrix m(d, d);
    for (int k = 0; k < d; ++k) {
      std::vector<double> e(static_cast<std::size_t>(d), 0.0);
      e[static_cast<std::size_t>(k)] = 1.0;
      const auto col = rho_action(a, NCoordinates(n, e)).coords;
      for (int i = 0; i < d; ++i) m(i, k) = col[static_cast<std::size_t>(i)];
    }
    EXPECT_NEAR(rho_jacobian(a), m.determinant(), 1e-12 * m.determinant());
  }
}

TEST(HGroup, AxiomsAndSubgroup) {
  auto rng = testgen::engine(34);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 200; ++trial) {
      const HPoint p = random_h_point(n, rng);
      const HPoint q = random_h_point(n, rng);
      const HPoint r = random_h_point(n, rng);
      const HPoint l = h_compose(h_compose(p, q), r);
      const HPoint rr = h_compose(p, h_compose(q, r));
      EXPECT_LT(coord_gap(l.x.coords, rr.x.coords), 1e-12);
      EXPECT_LT(coord_gap(l.a.t, rr.a.t), 1e-12);
      EXPECT_LT(coord_gap(l.b.t, rr.b.t), 1e-12);
      const HPoint e = h_compose(p, h_inverse(p));
      for (double v : e.x.coords) EXPECT_NEAR(v, 0.0, 1e-11);

      const SPoint s = random_point(rng, n);
      const SPoint u = random_point(rng, n);
      const HPoint lhs = s_to_h(s_compose(s, u));
      const HPoint rhs = h_compose(s_to_h(s), s_to_h(u));
      EXPECT_LT(coord_gap(lhs.x.coords, rhs.x.coords), 1e-12);
      EXPECT_LT(coord_gap(lhs.b.t, rhs.b.t), 1e-12);
      EXPECT_LT(coord_gap(lhs.a.t, rhs.a.t), 1e-12);
    }
  }
}

TEST(SFourier, SeparableGaussianFactorizes) {
  const double wx = 0.8, wt = 0.6;
  const SampledFunction f = separable_gaussian(s_axes(2, -10, 10, 128, -6, 6, 96), 1, wx, wt);
  const SampledFunction F = s_fourier(f, -1);
  std::vector<double> p(2);
  double worst = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    F.coordinates(i, p);
    const double exact = kTwoPi * wx * wt * std::exp(-(wx * wx * p[0] * p[0] + wt * wt * p[1] * p[1]) / 2);
    worst = std::max(worst, std::abs(F[i] - exact));
  }
  EXPECT_LT(worst / (kTwoPi * wx * wt), 1e-8);
}

TEST(SFourier, Plancherel) {
  const SampledFunction f = separable_gaussian(s_axes(2, -10, 10, 256, -6, 6, 128), 1, 0.7, 0.7);
  EXPECT_LT(testgen::rel(norm_squared(f), norm_squared(s_fourier(f, -1))), 1e-4);
}

TEST(InvariantExtension, RestrictsToFAtZeroB) {
  const auto axes = s_axes(2, -6, 6, 97, -3, 3, 49);
  const SampledFunction f = separable_gaussian(axes, 1, 1.0, 0.5);
  const InvariantExtension ext(f, InterpolationOrder::Cubic);
  // f̃(x, a, b) = f(ρ(a)x, a + b); on nodes with a = 0 this is f itself.
  const double zero = 0.0;
  for (std::size_t ix = 20; ix < 77; ix += 7) {
    const double x = axes[0].nodes[ix];
    const double b = axes[1].nodes[30];
    bool clipped = false;
    const cplx v = ext(&x, &zero, &b, clipped);
    EXPECT_FALSE(clipped);
    EXPECT_NEAR(v.real(), std::exp(-x * x / 2 - b * b / 0.5), 1e-12);
  }
}

TEST(ExtensionConvolution, GroupEqualsCommutative) {
  const auto axes = s_axes(2, -10, 10, 256, -6, 6, 128);
  const SampledFunction f = separable_gaussian(axes, 1, 0.7, 0.7);
  const SampledFunction g = separable_gaussian(axes, 1, 0.4, 0.4);
  ExtensionCheckOptions opt;
  opt.pointwise_samples = 50;
  opt.mu = {0.0};
  opt.lambda = {0.0};
  const ExtensionCheckResult r = extension_check(g, f, opt);
  EXPECT_LT(r.pointwise_deviation, 1e-4);
}

TEST(ExtensionConvolution, ZeroFunctionGivesZero) {
  const auto axes = s_axes(2, -4, 4, 32, -2, 2, 16);
  const SampledFunction zero = SampledFunction::zeros(axes);
  const SampledFunction g = separable_gaussian(axes, 1, 0.5, 0.5);
  ExtensionCheckOptions opt;
  opt.pointwise_samples = 5;
  const ExtensionCheckResult r = extension_check(g, zero, opt);
  EXPECT_EQ(r.pointwise_deviation, 0.0);
  EXPECT_EQ(r.spectral_deviation, 0.0);
}
