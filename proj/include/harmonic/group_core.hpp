#pragma once

// Matrix-level structure of SL(n,R), GL+(n,R) and GL-(n,R): Iwasawa
// factorization in the four factor orders, the SL x R+* scale split, and the
// two candidate group laws on the negative-determinant component.

#include <random>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "harmonic/types.hpp"

namespace harmonic {

inline constexpr double kSingularGuard = 1e-12;
inline constexpr double kUnitDetTolerance = 1e-9;

// I⁻ = diag(-1, 1, ..., 1).
Matrix sign_matrix(int n);

// τ(X) = I⁻·X, the bijection GL- -> GL+.
Matrix tau(const Matrix& x);

double frobenius_distance(const Matrix& a, const Matrix& b);

// Throws std::invalid_argument unless `g` is square with |det g| >= 1e-12.
void require_invertible(const Matrix& g);

enum class FactorOrder { KAN, KNA, ANK, NAK };

std::string_view to_string(FactorOrder order);
FactorOrder parse_factor_order(std::string_view text);

// k: rotation, a: positive diagonal with unit determinant, n_part: unipotent
// upper triangular. Which product they form depends on the FactorOrder they
// were produced for; `iwasawa_decompose` always means k·a·n.
struct IwasawaFactors {
  Matrix k;
  Matrix a;
  Matrix n_part;
};

// g = k·a·n via QR with the triangular diagonal forced positive.
// Requires det g = 1 within 1e-9.
IwasawaFactors iwasawa_decompose(const Matrix& g);

IwasawaFactors factorize(const Matrix& g, FactorOrder order);
Matrix compose(const IwasawaFactors& f, FactorOrder order);

// Re-express the same group element in another factor order.
IwasawaFactors convert_order(const IwasawaFactors& f, FactorOrder from, FactorOrder to);

// a·n·a⁻¹ for diagonal a.
Matrix conjugate_unipotent(const Matrix& a, const Matrix& n);

// Residuals of the IwasawaFactors invariants (max over all of them).
double iwasawa_invariant_residual(const IwasawaFactors& f);

enum class GLMinusLaw { Naive, Transported };

std::string_view to_string(GLMinusLaw law);

// Naive law: I⁻·A·B. Transported law: A·I⁻·B, the pullback of matrix
// multiplication on GL+ through τ. Both require det A < 0 and det B < 0.
Matrix glminus_product(const Matrix& a, const Matrix& b, GLMinusLaw law);

// Inverse under the transported law: I⁻·A⁻¹·I⁻.
Matrix glminus_inverse(const Matrix& a);

enum class Sign { Plus, Minus };

struct ScaleSplit {
  Matrix s;
  double t = 1.0;
  Sign sign = Sign::Plus;

  Matrix reconstruct() const;
};

// g = t·s (sign +) or g = I⁻·(t·s) (sign -), det s = 1, t = |det g|^{1/n}.
ScaleSplit gl_split(const Matrix& g);

// Standard normal entries rescaled to |det| = 1; the sign of det is forced to
// `sign` by flipping the first row.
Matrix random_unimodular(int n, std::mt19937_64& rng, Sign sign = Sign::Plus);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace harmonic
