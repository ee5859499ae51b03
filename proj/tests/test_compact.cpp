#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "harmonic/compact.hpp"
#include "harmonic/wigner.hpp"
#include "support.hpp"

using namespace harmonic;

TEST(Wigner, SmallDClosedFormsForL1) {
  for (double b : {0.0, 0.3, 1.1, 2.0, 3.0}) {
    const double c = std::cos(b), s = std::sin(b);
    EXPECT_NEAR(wigner_small_d(1, 0, 0, b), c, 1e-14);
    EXPECT_NEAR(wigner_small_d(1, 1, 1, b), (1 + c) / 2, 1e-14);
    EXPECT_NEAR(wigner_small_d(1, 1, -1, b), (1 - c) / 2, 1e-14);
    EXPECT_NEAR(wigner_small_d(1, 1, 0, b), -s / std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(wigner_small_d(1, 0, 1, b), s / std::sqrt(2.0), 1e-14);
  }
}

TEST(Wigner, SmallDMatrixIsOrthogonal) {
  for (int l = 0; l <= 12; ++l) {
    const Matrix d = wigner_small_d_matrix(l, 0.77);
    // Frobenius norm over (2l+1)² entries; rounding grows with l.
    EXPECT_LT((d * d.transpose() - Matrix::Identity(2 * l + 1, 2 * l + 1)).norm(), 1e-13 * (2 * l + 1) * (2 * l + 1));
  }
}

TEST(Wigner, DIsARepresentation) {
  auto rng = testgen::engine(41);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  std::uniform_real_distribution<double> beta(0.0, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const KElement x = SO3Element{ang(rng), beta(rng), ang(rng)};
    const KElement y = SO3Element{ang(rng), beta(rng), ang(rng)};
    // The Euler angles really parameterize rotations.
    EXPECT_LT((rotation_matrix(k_compose(x, y)) - rotation_matrix(x) * rotation_matrix(y)).norm(), 1e-12);
    for (int l : {1, 2, 5}) {
      const IrrepLabel lab{KGroup::SO3, l};
      const CMatrix lhs = irrep_matrix(lab, k_compose(x, y));
      const CMatrix rhs = irrep_matrix(lab, x) * irrep_matrix(lab, y);
      EXPECT_LT((lhs - rhs).norm(), 1e-11);
    }
  }
}

TEST(Wigner, TraceIsCharacter) {
  const double a = 0.4, b = 1.2, g = 2.2;
  const double omega = zyz_rotation_angle(a, b, g);
  // Rotation angle oracle: tr R = 1 + 2 cos ω.
  const Matrix r = rotation_matrix(SO3Element{a, b, g});
  EXPECT_NEAR(std::cos(omega), (r.trace() - 1) / 2, 1e-12);
  for (int l = 0; l <= 6; ++l) {
    EXPECT_NEAR(wigner_D_matrix(l, a, b, g).trace().real(), so3_character(l, omega), 1e-11);
  }
}

TEST(PeterWeyl, CosineHasNormOneHalf) {
  TestFunctionSpec s;
  s.kind = TestFunctionKind::TrigPolynomial;
  s.trig_coefficients = {{1, 0.5}, {-1, 0.5}};
  const SampledFunction f = make_test_function(s, k_axes(KGroup::SO2, 64));
  const PeterWeylCoefficients c = peter_weyl_transform(f, KGroup::SO2, 16);
  EXPECT_NEAR(norm_squared(f), 0.5, 1e-12);
  EXPECT_NEAR(c.hs_norm_squared(), 0.5, 1e-12);
  EXPECT_NEAR(std::abs(c.blocks.at({KGroup::SO2, 1})(0, 0)), 0.5, 1e-12);
}

TEST(PeterWeyl, SO2RandomTrigPolynomialsRoundTrip) {
  auto rng = testgen::engine(42);
  for (int trial = 0; trial < 20; ++trial) {
    TestFunctionSpec s;
    s.kind = TestFunctionKind::TrigPolynomial;
    const auto re = testgen::normals(rng, 33), im = testgen::normals(rng, 33);
    double expect = 0.0;
    for (int m = -16; m <= 16; ++m) {
      const cplx c{re[static_cast<std::size_t>(m + 16)], im[static_cast<std::size_t>(m + 16)]};
      s.trig_coefficients[m] = c;
      expect += std::norm(c);
    }
    const SampledFunction f = make_test_function(s, k_axes(KGroup::SO2, 64));
    const PeterWeylCoefficients c = peter_weyl_transform(f, KGroup::SO2, 16);
    EXPECT_LT(testgen::rel(expect, c.hs_norm_squared()), 1e-10);
    EXPECT_LT(testgen::rel(norm_squared(f), c.hs_norm_squared()), 1e-10);
    std::vector<double> th(1);
    for (std::size_t i = 0; i < f.size(); i += 5) {
      f.coordinates(i, th);
      EXPECT_LT(std::abs(peter_weyl_invert(c, SO2Element{th[0]}) - f[i]), 1e-10);
    }
  }
}

TEST(PeterWeyl, SO3QuadratureIsExactOnProducts) {
  // ∫ D^l_{mn} conj(D^l'_{m'n'}) dk = δ/(2l+1) for l, l' within the band.
  const auto nodes = haar_quadrature(KGroup::SO3, 4);
  double total = 0.0;
  for (const auto& q : nodes) total += q.weight;
  EXPECT_NEAR(total, 1.0, 1e-13);
  for (int l = 0; l <= 2; ++l) {
    for (int lp = 0; lp <= 2; ++lp) {
      cplx s{};
      for (const auto& q : nodes) {
        const CMatrix a = irrep_matrix({KGroup::SO3, l}, q.element);
        const CMatrix b = irrep_matrix({KGroup::SO3, lp}, q.element);
        s += q.weight * a(0, std::min(1, 2 * l)) * std::conj(b(0, std::min(1, 2 * lp)));
      }
      EXPECT_NEAR(std::abs(s), l == lp ? 1.0 / (2 * l + 1) : 0.0, 1e-12);
    }
  }
}

TEST(PeterWeyl, SO3WignerPolynomialPlancherelAndInversion) {
  auto rng = testgen::engine(43);
  TestFunctionSpec s;
  s.kind = TestFunctionKind::WignerPolynomial;
  double expect = 0.0;
  for (int l = 0; l <= 8; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (int mp = -l; mp <= l; ++mp) {
        const auto v = testgen::normals(rng, 2);
        s.wigner_terms.push_back({l, m, mp, {v[0], v[1]}});
        // ‖D^l_{m,mp}‖² = 1/(2l+1); distinct entries are orthogonal.
        expect += (v[0] * v[0] + v[1] * v[1]) / (2 * l + 1);
      }
    }
  }
  const SampledFunction f = make_test_function(s, k_axes(KGroup::SO3, 8));
  const PeterWeylCoefficients c = peter_weyl_transform(f, KGroup::SO3, 8);
  EXPECT_LT(testgen::rel(expect, norm_squared(f)), 1e-8);
  EXPECT_LT(testgen::rel(expect, c.hs_norm_squared()), 1e-8);
  std::vector<double> ang(3);
  for (std::size_t i = 0; i < f.size(); i += 41) {
    f.coordinates(i, ang);
    EXPECT_LT(std::abs(peter_weyl_invert(c, k_element_at(KGroup::SO3, ang)) - f[i]), 1e-8);
  }
}

TEST(PeterWeyl, AliasingRaisesBandWarning) {
  TestFunctionSpec s;
  s.kind = TestFunctionKind::TrigPolynomial;
  s.trig_coefficients = {{20, 1.0}};
  // On 24 angles e^{20iθ} is indistinguishable from e^{-4iθ}.
  const SampledFunction f = make_test_function(s, k_axes(KGroup::SO2, 24));
  const PeterWeylCoefficients c = peter_weyl_transform(f, KGroup::SO2, 8, 20);
  EXPECT_TRUE(c.band_warning);
  EXPECT_GT(c.hs_norm_squared(), 0.5);
  // 32 angles push the alias to -12, outside the band: no warning.
  EXPECT_FALSE(peter_weyl_transform(make_test_function(s, k_axes(KGroup::SO2, 32)), KGroup::SO2, 8, 20).band_warning);
}

TEST(PeterWeyl, JsonRoundTrip) {
  TestFunctionSpec s;
  s.kind = TestFunctionKind::WignerPolynomial;
  s.wigner_terms = {{1, 1, 0, {0.5, -0.25}}, {2, -1, 2, {1.0, 0.0}}};
  const PeterWeylCoefficients c = peter_weyl_transform(make_test_function(s, k_axes(KGroup::SO3, 3)), KGroup::SO3, 3);
  const PeterWeylCoefficients back = peter_weyl_from_json(to_json(c));
  EXPECT_EQ(back.band, c.band);
  for (const auto& [lab, m] : c.blocks) EXPECT_LT((back.blocks.at(lab) - m).norm(), 1e-15);
}
