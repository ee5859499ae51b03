#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "harmonic/group_core.hpp"
#include "support.hpp"

using namespace harmonic;

namespace {

// Classical Gram-Schmidt on the columns: g = Q R, R upper with positive
// diagonal. Independent of the Householder path the library uses.
std::pair<Matrix, Matrix> gram_schmidt(const Matrix& g) {
  const int n = static_cast<int>(g.rows());
  Matrix q = Matrix::Zero(n, n);
  Matrix r = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    Vector v = g.col(j);
    for (int i = 0; i < j; ++i) {
      r(i, j) = q.col(i).dot(g.col(j));
      v -= r(i, j) * q.col(i);
    }
    r(j, j) = v.norm();
    q.col(j) = v / r(j, j);
  }
  return {q, r};
}

}  // namespace

TEST(Iwasawa, MatchesGramSchmidt) {
  auto rng = testgen::engine(11);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix g = testgen::unimodular(rng, n);
      const auto [q, r] = gram_schmidt(g);
      const IwasawaFactors f = iwasawa_decompose(g);
      EXPECT_LT((f.k - q).norm(), 1e-9);
      const Matrix a = r.diagonal().asDiagonal();
      EXPECT_LT((f.a - a).norm(), 1e-9);
      EXPECT_LT((f.n_part - a.inverse() * r).norm(), 1e-8 * std::max(1.0, r.norm()));
    }
  }
}

TEST(Iwasawa, ReconstructsAndSatisfiesInvariantsInEveryOrder) {
  auto rng = testgen::engine(12);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 300; ++trial) {
      const Matrix g = testgen::unimodular(rng, n);
      for (auto o : {FactorOrder::KAN, FactorOrder::KNA, FactorOrder::ANK, FactorOrder::NAK}) {
        const IwasawaFactors f = factorize(g, o);
        EXPECT_LT((compose(f, o) - g).norm(), 1e-12 * std::max(1.0, g.norm() * g.norm()));
        EXPECT_LT(iwasawa_invariant_residual(f), 1e-12);
        EXPECT_NEAR(f.k.determinant(), 1.0, 1e-12);
        EXPECT_NEAR(f.a.determinant(), 1.0, 1e-12);
      }
    }
  }
}

TEST(Iwasawa, IdentityFactorsAreIdentity) {
  const IwasawaFactors f = iwasawa_decompose(Matrix::Identity(3, 3));
  EXPECT_LT((f.k - Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_LT((f.a - Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_LT((f.n_part - Matrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(Iwasawa, ConvertOrderKeepsElement) {
  auto rng = testgen::engine(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix g = testgen::unimodular(rng, 3);
    const IwasawaFactors kan = factorize(g, FactorOrder::KAN);
    for (auto o : {FactorOrder::KNA, FactorOrder::ANK, FactorOrder::NAK}) {
      EXPECT_LT((compose(convert_order(kan, FactorOrder::KAN, o), o) - g).norm(), 1e-10 * g.norm());
    }
  }
}

TEST(Iwasawa, RejectsBadInput) {
  EXPECT_THROW(iwasawa_decompose(Matrix::Zero(2, 2)), std::invalid_argument);
  EXPECT_THROW(iwasawa_decompose(Matrix::Ones(2, 3)), std::invalid_argument);
  EXPECT_THROW(iwasawa_decompose(2.0 * Matrix::Identity(2, 2)), std::domain_error);
}

TEST(GLMinus, NaiveLawCounterexampleEntries) {
  // A = B = C = swap, I- = diag(-1, 1): A(BC) = I- P I-, (AB)C = P.
  Matrix p(2, 2);
  p << 0, 1, 1, 0;
  const Matrix left = glminus_product(p, glminus_product(p, p, GLMinusLaw::Naive), GLMinusLaw::Naive);
  const Matrix right = glminus_product(glminus_product(p, p, GLMinusLaw::Naive), p, GLMinusLaw::Naive);
  Matrix expect_left(2, 2);
  expect_left << 0, -1, -1, 0;
  EXPECT_EQ(left, expect_left);
  EXPECT_EQ(right, p);
  EXPECT_GE((left - right).norm(), 1.0);
}

TEST(GLMinus, NaiveLawIsAssociativeOnScalars) {
  auto rng = testgen::engine(14);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix a(1, 1), b(1, 1), c(1, 1);
    a << -u(rng);
    b << -u(rng);
    c << -u(rng);
    const Matrix l = glminus_product(a, glminus_product(b, c, GLMinusLaw::Naive), GLMinusLaw::Naive);
    const Matrix r = glminus_product(glminus_product(a, b, GLMinusLaw::Naive), c, GLMinusLaw::Naive);
    EXPECT_NEAR(l(0, 0), r(0, 0), 1e-12 * std::abs(l(0, 0)));
  }
}

TEST(GLMinus, TransportedLawIsPullbackThroughTau) {
  auto rng = testgen::engine(15);
  for (int n : {1, 2, 3}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Matrix a = testgen::unimodular(rng, n, true);
      const Matrix b = testgen::unimodular(rng, n, true);
      const Matrix ab = glminus_product(a, b, GLMinusLaw::Transported);
      EXPECT_LT(ab.determinant(), 0.0);
      // τ(A∙B) = τ(A)τ(B) with τ(X) = I- X.
      EXPECT_LT((tau(ab) - tau(a) * tau(b)).norm(), 1e-12 * a.norm() * b.norm());
      const Matrix inv = glminus_inverse(a);
      EXPECT_LT((glminus_product(a, inv, GLMinusLaw::Transported) - sign_matrix(n)).norm(), 1e-10 * a.norm() * inv.norm());
    }
  }
}

TEST(GLSplit, ReconstructsBothComponents) {
  auto rng = testgen::engine(16);
  for (int trial = 0; trial < 100; ++trial) {
    const bool neg = trial % 2 == 1;
    const Matrix g = 1.7 * testgen::unimodular(rng, 3, neg);
    const ScaleSplit s = gl_split(g);
    EXPECT_NEAR(s.t, 1.7, 1e-12);
    EXPECT_EQ(s.sign, neg ? Sign::Minus : Sign::Plus);
    EXPECT_NEAR(s.s.determinant(), 1.0, 1e-10);
    EXPECT_LT((s.reconstruct() - g).norm(), 1e-12 * g.norm());
  }
}

TEST(MatrixJson, RoundTrip) {
  auto rng = testgen::engine(17);
  const Matrix m = testgen::normal_matrix(rng, 3);
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse("[[1,2],[3]]")), std::invalid_argument);
}
