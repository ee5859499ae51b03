#include "harmonic/group_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace harmonic {

Matrix sign_matrix(int n) {
  if (n < 1) throw std::invalid_argument("sign_matrix: n must be positive");
  Matrix m = Matrix::Identity(n, n);
  m(0, 0) = -1.0;
  return m;
}

Matrix tau(const Matrix& x) {
  Matrix out = x;
  out.row(0) *= -1.0;
  return out;
}

double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

void require_invertible(const Matrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0) {
    throw std::invalid_argument("matrix must be square and non-empty");
  }
  if (!(std::abs(g.determinant()) >= kSingularGuard)) {
    throw std::invalid_argument("matrix is singular (|det| < 1e-12)");
  }
}

std::string_view to_string(FactorOrder order) {
  switch (order) {
    case FactorOrder::KAN: return "kan";
    case FactorOrder::KNA: return "kna";
    case FactorOrder::ANK: return "ank";
    case FactorOrder::NAK: return "nak";
  }
  return "?";
}

FactorOrder parse_factor_order(std::string_view text) {
  if (text == "kan") return FactorOrder::KAN;
  if (text == "kna") return FactorOrder::KNA;
  if (text == "ank") return FactorOrder::ANK;
  if (text == "nak") return FactorOrder::NAK;
  throw std::invalid_argument("unknown factor order '" + std::string(text) + "'");
}

IwasawaFactors iwasawa_decompose(const Matrix& g) {
  require_invertible(g);
  const double det = g.determinant();
  if (std::abs(det - 1.0) > kUnitDetTolerance) {
    throw std::domain_error("iwasawa_decompose: det g must be 1 (got " + std::to_string(det) + ")");
  }
  const auto n = g.rows();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) {
      q.col(i) *= -1.0;
      r.row(i) *= -1.0;
    }
  }
  IwasawaFactors f;
  f.k = q;
  f.a = Matrix::Zero(n, n);
  f.n_part = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    f.a(i, i) = r(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) f.n_part(i, j) = r(i, j) / r(i, i);
  }
  return f;
}

Matrix conjugate_unipotent(const Matrix& a, const Matrix& n) {
  Matrix out = n;
  for (Eigen::Index i = 0; i < n.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < n.cols(); ++j) out(i, j) = n(i, j) * a(i, i) / a(j, j);
  }
  return out;
}

namespace {

Matrix diag_inverse(const Matrix& a) {
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, i) = 1.0 / a(i, i);
  return out;
}

// Inverse of a unipotent upper-triangular matrix by back substitution, exact
// zeros below the diagonal.
Matrix unipotent_inverse(const Matrix& n) {
  const auto m = n.rows();
  Matrix out = Matrix::Identity(m, m);
  for (Eigen::Index gap = 1; gap < m; ++gap) {
    for (Eigen::Index i = 0; i + gap < m; ++i) {
      const Eigen::Index j = i + gap;
      double v = -n(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) v -= n(i, k) * out(k, j);
      out(i, j) = v;
    }
  }
  return out;
}

}  // namespace

IwasawaFactors factorize(const Matrix& g, FactorOrder order) {
  switch (order) {
    case FactorOrder::KAN: return iwasawa_decompose(g);
    case FactorOrder::KNA: {
      // k·a·n = k·(a n a⁻¹)·a
      IwasawaFactors f = iwasawa_decompose(g);
      f.n_part = conjugate_unipotent(f.a, f.n_part);
      return f;
    }
    case FactorOrder::NAK: {
      // g⁻¹ = k₀ a₀ n₀  =>  g = n₀⁻¹ a₀⁻¹ k₀ᵀ
      const IwasawaFactors inv = iwasawa_decompose(g.inverse());
      return {inv.k.transpose(), diag_inverse(inv.a), unipotent_inverse(inv.n_part)};
    }
    case FactorOrder::ANK: {
      // n a k = a (a⁻¹ n a) k
      IwasawaFactors f = factorize(g, FactorOrder::NAK);
      f.n_part = conjugate_unipotent(diag_inverse(f.a), f.n_part);
      return f;
    }
  }
  throw std::invalid_argument("factorize: unknown order");
}

Matrix compose(const IwasawaFactors& f, FactorOrder order) {
  switch (order) {
    case FactorOrder::KAN: return f.k * f.a * f.n_part;
    case FactorOrder::KNA: return f.k * f.n_part * f.a;
    case FactorOrder::ANK: return f.a * f.n_part * f.k;
    case FactorOrder::NAK: return f.n_part * f.a * f.k;
  }
  throw std::invalid_argument("compose: unknown order");
}

IwasawaFactors convert_order(const IwasawaFactors& f, FactorOrder from, FactorOrder to) {
  if (from == to) return f;
  const bool k_first_from = from == FactorOrder::KAN || from == FactorOrder::KNA;
  const bool k_first_to = to == FactorOrder::KAN || to == FactorOrder::KNA;
  if (k_first_from == k_first_to) {
    // Only the a/n order differs: n a = a (a⁻¹ n a), a n = (a n a⁻¹) a.
    IwasawaFactors out = f;
    const bool a_before_n = from == FactorOrder::KAN || from == FactorOrder::ANK;
    out.n_part = a_before_n ? conjugate_unipotent(f.a, f.n_part)
                            : conjugate_unipotent(diag_inverse(f.a), f.n_part);
    return out;
  }
  return factorize(compose(f, from), to);
}

double iwasawa_invariant_residual(const IwasawaFactors& f) {
  const auto n = f.k.rows();
  double r = (f.k.transpose() * f.k - Matrix::Identity(n, n)).norm();
  r = std::max(r, std::abs(f.k.determinant() - 1.0));
  double prod = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && f.a(i, j) != 0.0) r = std::max(r, std::abs(f.a(i, j)));
      if (i > j && f.n_part(i, j) != 0.0) r = std::max(r, 1.0);  // must be exactly zero
    }
    if (!(f.a(i, i) > 0.0)) r = std::max(r, 1.0);
    if (f.n_part(i, i) != 1.0) r = std::max(r, std::abs(f.n_part(i, i) - 1.0));
    prod *= f.a(i, i);
  }
  return std::max(r, std::abs(prod - 1.0));
}

std::string_view to_string(GLMinusLaw law) {
  return law == GLMinusLaw::Naive ? "glminus-naive" : "glminus-transported";
}

namespace {

void require_negative_det(const Matrix& a, const char* what) {
  require_invertible(a);
  if (!(a.determinant() < 0.0)) {
    throw std::invalid_argument(std::string(what) + ": operand must have negative determinant");
  }
}

}  // namespace

Matrix glminus_product(const Matrix& a, const Matrix& b, GLMinusLaw law) {
  require_negative_det(a, "glminus_product");
  require_negative_det(b, "glminus_product");
  if (a.rows() != b.rows()) throw std::invalid_argument("glminus_product: size mismatch");
  if (law == GLMinusLaw::Naive) return tau(a * b);
  return a * tau(b);
}

Matrix glminus_inverse(const Matrix& a) {
  require_negative_det(a, "glminus_inverse");
  const Matrix s = sign_matrix(static_cast<int>(a.rows()));
  return s * a.inverse() * s;
}

Matrix ScaleSplit::reconstruct() const {
  Matrix g = t * s;
  return sign == Sign::Plus ? g : tau(g);
}

ScaleSplit gl_split(const Matrix& g) {
  require_invertible(g);
  const double det = g.determinant();
  const auto n = static_cast<double>(g.rows());
  ScaleSplit out;
  out.sign = det > 0.0 ? Sign::Plus : Sign::Minus;
  out.t = std::pow(std::abs(det), 1.0 / n);
  out.s = (out.sign == Sign::Plus ? g : tau(g)) / out.t;
  return out;
}

Matrix random_unimodular(int n, std::mt19937_64& rng, Sign sign) {
  std::normal_distribution<double> normal(0.0, 1.0);
  while (true) {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
    }
    const double det = g.determinant();
    if (std::abs(det) < 1e-3) continue;
    g /= std::pow(std::abs(det), 1.0 / n);
    if ((det > 0.0) != (sign == Sign::Plus)) g.row(0) *= -1.0;
    return g;
  }
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON must be an array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  Matrix m(n, cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix JSON rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

}  // namespace harmonic
