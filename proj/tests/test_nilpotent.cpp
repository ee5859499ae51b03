#include <gtest/gtest.h>

#include <omp.h>

#include "harmonic/nilpotent.hpp"
#include "support.hpp"

using namespace harmonic;

namespace {

// Gaussian in every coordinate, width w, sampled directly (not through
// make_test_function).
SampledFunction gaussian(const std::vector<GridAxis>& axes, double w) {
  SampledFunction f = SampledFunction::zeros(axes);
  std::vector<double> p(f.rank());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.coordinates(i, p);
    double r2 = 0.0;
    for (double x : p) r2 += x * x;
    f[i] = std::exp(-r2 / (2 * w * w));
  }
  return f;
}

}  // namespace

TEST(NGroup, ComposeMatchesMatrixProduct) {
  auto rng = testgen::engine(21);
  for (int m : {2, 3, 4, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix u = testgen::unipotent(rng, m);
      const Matrix v = testgen::unipotent(rng, m);
      const NCoordinates xy = n_compose(n_extract(u), n_extract(v));
      const Matrix uv = u * v;
      const auto entries = n_entries(m);
      for (std::size_t k = 0; k < entries.size(); ++k) {
        EXPECT_NEAR(xy.coords[k], uv(entries[k].first, entries[k].second), 1e-12 * (1 + std::abs(uv(entries[k].first, entries[k].second))));
      }
    }
  }
}

TEST(NGroup, Axioms) {
  auto rng = testgen::engine(22);
  for (int m : {2, 3, 4}) {
    const int d = n_dimension(m);
    for (int trial = 0; trial < 300; ++trial) {
      const NCoordinates x(m, testgen::normals(rng, d));
      const NCoordinates y(m, testgen::normals(rng, d));
      const NCoordinates z(m, testgen::normals(rng, d));
      const auto l = n_compose(n_compose(x, y), z).coords;
      const auto r = n_compose(x, n_compose(y, z)).coords;
      const auto e = n_compose(x, n_inverse(x)).coords;
      for (int k = 0; k < d; ++k) {
        EXPECT_NEAR(l[k], r[k], 1e-12 * (1 + std::abs(l[k])));
        EXPECT_NEAR(e[k], 0.0, 1e-12 * (1 + std::abs(x.coords[k])));
      }
    }
  }
}

TEST(NGroup, CoordinateOrderIsBySuperdiagonal) {
  const auto e = n_entries(3);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[0], std::make_pair(0, 1));
  EXPECT_EQ(e[1], std::make_pair(1, 2));
  EXPECT_EQ(e[2], std::make_pair(0, 2));
  EXPECT_EQ(n_axis_name(0, 2), "x13");
}

TEST(NFourier, GaussianMatchesClosedForm) {
  // ∫ e^{-x²/(2w²)} e^{-iξx} dx = √(2π) w e^{-w²ξ²/2}.
  const double w = 1.3;
  const SampledFunction f = gaussian(n_axes(2, -12, 12, 256), w);
  const SampledFunction F = n_fourier(f, -1);
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double xi = F.axis(0).nodes[k];
    EXPECT_NEAR(std::abs(F[k] - std::sqrt(kTwoPi) * w * std::exp(-w * w * xi * xi / 2)), 0.0, 1e-10);
  }
}

TEST(NFourier, PlancherelOnM3Grid) {
  // ‖f‖² for the unit Gaussian is π^{3/2}.
  const SampledFunction f = gaussian(n_axes(3, -5.5, 5.5, 64), 1.0);
  const double lhs = norm_squared(f);
  EXPECT_LT(testgen::rel(lhs, std::pow(kPi, 1.5)), 1e-6);
  EXPECT_LT(testgen::rel(lhs, norm_squared(n_fourier(f, -1))), 1e-6);
}

TEST(NFourier, RoundTrip) {
  auto rng = testgen::engine(23);
  SampledFunction f = gaussian(n_axes(2, -8, 8, 64), 0.9);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= cplx(1.0, 0.2 * (static_cast<double>(rng() % 7) - 3));
  const SampledFunction back = n_fourier(n_fourier(f, -1), +1);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LT(std::abs(back[i] - f[i]), 1e-12);
}

TEST(NFourier, SerialReferenceAgrees) {
  const SampledFunction f = gaussian(n_axes(3, -4, 4, 24), 1.0);
  const SampledFunction a = n_fourier(f, -1, Execution::Serial);
  const SampledFunction b = n_fourier(f, -1, Execution::Parallel);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-13);
}

TEST(NFourier, ThreadCountDoesNotChangeBits) {
  const SampledFunction f = gaussian(n_axes(2, -8, 8, 300), 1.0);
  const SampledFunction g = gaussian(n_axes(3, -4, 4, 20), 0.8);
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
  const SampledFunction a = n_fourier(f, -1), c = n_fourier(g, -1);
  omp_set_num_threads(4);
  const SampledFunction b = n_fourier(f, -1), d = n_fourier(g, -1);
  omp_set_num_threads(threads);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i], d[i]);
}

TEST(NConvolve, M2IsOrdinaryConvolution) {
  // Gaussians of widths a, b convolve to √(2π) ab/s · e^{-x²/(2s²)}, s² = a²+b².
  const double a = 0.6, b = 0.9;
  const auto axes = n_axes(2, -10, 10, 201);
  const SampledFunction g = gaussian(axes, a);
  const SampledFunction f = gaussian(axes, b);
  const SampledFunction h = n_convolve(g, f);
  const double s2 = a * a + b * b;
  for (std::size_t i = 0; i < h.size(); i += 5) {
    const double x = h.axis(0).nodes[i];
    if (std::abs(x) > 6) continue;
    const double exact = std::sqrt(kTwoPi) * a * b / std::sqrt(s2) * std::exp(-x * x / (2 * s2));
    EXPECT_NEAR(h[i].real(), exact, 1e-8);
  }
}

TEST(NConvolve, DeltaApproxIsNearIdentity) {
  const auto axes = n_axes(3, -4, 4, 33);
  TestFunctionSpec d;
  d.kind = TestFunctionKind::DeltaApprox;
  d.width = 0.15;
  const SampledFunction delta = make_test_function(d, axes);
  const SampledFunction f = gaussian(axes, 1.0);
  const SampledFunction h = n_convolve(delta, f);
  std::vector<double> p(3);
  for (std::size_t i = 0; i < h.size(); i += 97) {
    h.coordinates(i, p);
    if (std::abs(p[0]) > 2 || std::abs(p[1]) > 2 || std::abs(p[2]) > 2) continue;
    EXPECT_NEAR(h[i].real(), f[i].real(), 0.05);
  }
}

TEST(NTranslate, MatchesClosedForm) {
  auto rng = testgen::engine(24);
  const SampledFunction f = gaussian(n_axes(3, -6, 6, 49), 1.2);
  const NCoordinates y(3, testgen::normals(rng, 3, 0.5));
  const SampledFunction t = n_left_translate(f, y);
  std::vector<double> p(3);
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); i += 31) {
    t.coordinates(i, p);
    if (std::abs(p[0]) > 3 || std::abs(p[1]) > 3 || std::abs(p[2]) > 3) continue;
    const auto yx = n_compose(y, NCoordinates(3, p)).coords;
    const double exact = std::exp(-(yx[0] * yx[0] + yx[1] * yx[1] + yx[2] * yx[2]) / (2 * 1.44));
    worst = std::max(worst, std::abs(t[i].real() - exact));
  }
  EXPECT_LT(worst, 2e-3);
}
