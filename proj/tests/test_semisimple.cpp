#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "harmonic/semisimple.hpp"
#include "support.hpp"

using namespace harmonic;

namespace {

SLChart small_chart() { return make_sl_chart(2, {-8, 8, 96}, {-3, 3, 48}, 16, 7); }
// Odd counts put the identity on a node.
SLChart odd_chart() { return make_sl_chart(2, {-8, 8, 97}, {-3, 3, 49}, 16, 7); }

// exp(-(|g|²-2)) integrated over SL(2) by hand: with g = a(t) n(x) k,
// |g|² = e^{2t}(1+x²) + e^{-2t}, the x integral is √π e^{-t}, leaving a 1-D
// integral done here by a fine trapezoid sum.
double gaussian_haar_integral() {
  const int N = 200001;
  const double lo = -8, hi = 8, h = (hi - lo) / (N - 1);
  double s = 0.0;
  for (int i = 0; i < N; ++i) {
    const double t = lo + i * h;
    const double v = std::sqrt(kPi) * std::exp(-t) * std::exp(-(std::exp(2 * t) + std::exp(-2 * t) - 2));
    s += (i == 0 || i == N - 1 ? 0.5 : 1.0) * v;
  }
  return s * h;
}

}  // namespace

TEST(GPoint, RoundTripInEveryOrder) {
  auto rng = testgen::engine(51);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix g = testgen::unimodular(rng, n);
      for (auto o : {FactorOrder::KAN, FactorOrder::KNA, FactorOrder::ANK, FactorOrder::NAK}) {
        const GPoint p = g_point_from_matrix(g, o);
        EXPECT_LT((g_matrix(p) - g).norm(), 1e-10 * g.norm());
        for (auto o2 : {FactorOrder::KAN, FactorOrder::ANK}) {
          EXPECT_LT((g_matrix(convert_order(p, o2)) - g).norm(), 1e-9 * g.norm() * g.norm());
        }
      }
    }
  }
}

TEST(GPoint, HaarDensities) {
  const double t = 0.3;
  EXPECT_DOUBLE_EQ(haar_density(FactorOrder::ANK, 2, &t), 1.0);
  EXPECT_DOUBLE_EQ(haar_density(FactorOrder::KNA, 2, &t), 1.0);
  EXPECT_NEAR(haar_density(FactorOrder::KAN, 2, &t), std::exp(2 * t), 1e-14);
  EXPECT_NEAR(haar_density(FactorOrder::NAK, 2, &t), std::exp(-2 * t), 1e-14);
}

TEST(Chart, CoordinatesRoundTrip) {
  const SLChart chart = small_chart();
  auto rng = testgen::engine(52);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix g = testgen::unimodular(rng, 2);
    const auto c = chart_coordinates(chart, g);
    EXPECT_LT((g_matrix(g_point(chart, chart_point(chart, c), FactorOrder::ANK)) - g).norm(), 1e-10 * g.norm());
  }
}

TEST(Haar, MatchesClosedFormInEveryOrder) {
  const SLChart chart = small_chart();
  const GFunction F = matrix_gaussian(1.0);
  const double exact = gaussian_haar_integral();
  for (auto o : {FactorOrder::ANK, FactorOrder::KAN, FactorOrder::KNA, FactorOrder::NAK}) {
    const cplx v = haar_integrate(sample_on_chart(F, chart, o), chart, o);
    EXPECT_LT(testgen::rel(exact, v.real()), 1e-6) << to_string(o);
  }
}

TEST(SLFourier, PlancherelAndIdentityPoint) {
  const SLChart chart = odd_chart();
  const GFunction F = matrix_gaussian(1.0, 0.25);
  const SampledFunction f = sample_on_chart(F, chart);
  const SpectralTable t = sl_fourier(f, chart);
  EXPECT_LT(testgen::rel(norm_squared(f), t.hs_norm_squared()), 1e-10);
  const cplx fe = F(Matrix::Identity(2, 2));
  EXPECT_LT(std::abs(sl_invert_at_identity(t) - fe), 1e-10);
}

TEST(SLFourier, GridSynthesisRoundTrip) {
  const SLChart chart = small_chart();
  const SampledFunction f = sample_on_chart(matrix_gaussian(0.7, 0.5), chart);
  const SampledFunction back = sl_invert_grid(sl_fourier(f, chart), chart);
  // Interior nodes come back exactly; trapezoid end nodes come back halved.
  std::vector<std::size_t> idx(f.rank());
  double worst = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.unravel(i, idx);
    bool on_edge = false;
    for (std::size_t a = 0; a < f.rank(); ++a) {
      if (!f.axis(a).compact() && (idx[a] == 0 || idx[a] + 1 == static_cast<std::size_t>(f.axis(a).count))) on_edge = true;
    }
    (on_edge ? edge : worst) = std::max(on_edge ? edge : worst, std::abs(back[i] - f[i]));
  }
  EXPECT_LT(worst, 1e-12);
  EXPECT_GT(edge, 0.0);
}

TEST(SLFourier, CsvRoundTrip) {
  const SLChart chart = make_sl_chart(2, {-4, 4, 16}, {-2, 2, 8}, 8, 3);
  const SpectralTable t = sl_fourier(sample_on_chart(matrix_gaussian(1.0, 0.3), chart), chart);
  std::stringstream csv;
  write_csv(csv, t);
  const SpectralTable back = read_spectral_table(summary(t), csv);
  ASSERT_EQ(back.values.size(), t.values.size());
  for (std::size_t i = 0; i < t.values.size(); ++i) EXPECT_LT(std::abs(back.values[i] - t.values[i]), 1e-14);
}

TEST(Involution, TwiceConvergesToIdentity) {
  // f ↦ f* ↦ f** only differs from f by cubic interpolation error, so
  // halving the step should cut the L2 gap by about 16.
  double gap[2];
  for (int s : {1, 2}) {
    const SLChart chart = make_sl_chart(2, {-8, 8, 96 * s}, {-3, 3, 48 * s}, 16, 7);
    const SampledFunction f = sample_on_chart(matrix_gaussian(0.8), chart);
    const SampledFunction twice = involution(involution(f, chart), chart);
    gap[s - 1] = std::sqrt(norm_squared(linear_combination(1.0, twice, -1.0, f)) / norm_squared(f));
  }
  EXPECT_LT(gap[1], gap[0] / 8);
  EXPECT_LT(gap[1], 1e-4);
}

TEST(Upsilon, RestrictsToFAndIsRightInvariant) {
  const SLChart chart = small_chart();
  const GFunction F = matrix_gaussian(0.8, 0.3);
  const SampledFunction f = sample_on_chart(F, chart);
  const UpsilonExtension ext(f, chart, InterpolationOrder::Cubic);
  auto rng = testgen::engine(53);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix g = g_matrix(GPoint{SO2Element{ang(rng)}, APoint(2, {0.3 * std::sin(trial)}),
                                     NCoordinates(2, {std::cos(trial)}), FactorOrder::ANK});
    const KElement h = SO2Element{ang(rng)};
    const KElement k1 = SO2Element{ang(rng)};
    EXPECT_LT(std::abs(ext(g, SO2Element{0.0}) - F(g)), 5e-3);
    EXPECT_LT(std::abs(ext(g * rotation_matrix(h), k_compose(k_inverse(h), k1)) - ext(g, k1)), 1e-12);
  }
}

TEST(OrderConsistency, MatrixGaussian) {
  const OrderConsistency oc = order_consistency(matrix_gaussian(1.0, 0.25), make_sl_chart(2, {-10, 10, 256}, {-6, 6, 128}, 16, 7));
  EXPECT_LT(oc.rel_error(), 1e-6);
}
