#pragma once

// Peter–Weyl analysis on K = SO(2) and SO(3) with Haar mass 1.
// SO(2) irreps are the characters e^{ikθ}; SO(3) irreps are Wigner D-matrices
// in the ZYZ convention. Tf(γ) = ∫ f(x) γ(x)† dx, f(x) = Σ d_γ tr[Tf(γ) γ(x)].

#include <map>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "harmonic/function_spaces.hpp"

namespace harmonic {

enum class KGroup { SO2, SO3 };

std::string_view to_string(KGroup group);
KGroup parse_k_group(std::string_view text);

struct IrrepLabel {
  KGroup group = KGroup::SO2;
  int index = 0;  // k ∈ Z for SO(2), ℓ ≥ 0 for SO(3)

  int dim() const { return group == KGroup::SO2 ? 1 : 2 * index + 1; }
  auto operator<=>(const IrrepLabel&) const = default;
};

struct SO2Element {
  double theta = 0.0;
};

struct SO3Element {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

using KElement = std::variant<SO2Element, SO3Element>;

KGroup group_of(const KElement& x);
Matrix rotation_matrix(const KElement& x);
// Inverse of rotation_matrix for the given group; angles wrapped into range.
KElement k_element_from_rotation(KGroup group, const Matrix& r);
KElement k_compose(const KElement& x, const KElement& y);
KElement k_inverse(const KElement& x);

CMatrix irrep_matrix(const IrrepLabel& label, const KElement& x);

// All labels with band ≤ L: k ∈ [-L, L] for SO(2), ℓ ∈ [0, L] for SO(3).
std::vector<IrrepLabel> irrep_labels(KGroup group, int band);

struct KQuadratureNode {
  KElement element;
  double weight = 0.0;
};

// Exact for products of irrep entries of combined band ≤ 2B, weights sum to 1.
// SO(2): 4B+1 uniform angles. SO(3): 2B+1 uniform α and γ, B+1 Gauss–Legendre β.
std::vector<KQuadratureNode> haar_quadrature(KGroup group, int band);

// Haar-normalized chart axes: SO(2) "theta" with `count` angles; SO(3)
// "alpha", "beta", "gamma" with counts (2B+1, B+1, 2B+1) for band B = count.
std::vector<GridAxis> k_axes(KGroup group, int count);
// Quadrature band supported by k_axes(group, count).
int k_axes_band(KGroup group, std::span<const GridAxis> axes);

// Chart element at the given angles (1 or 3 of them).
KElement k_element_at(KGroup group, std::span<const double> angles);

struct PeterWeylCoefficients {
  KGroup group = KGroup::SO2;
  int band = 0;
  std::map<IrrepLabel, CMatrix> blocks;
  bool band_warning = false;

  double hs_norm_squared() const;  // Σ d_γ ‖c(γ)‖²_HS
};

// Flattened PW basis on a set of K nodes. Row e enumerates (γ, i, j) in label
// order; forward(e, x) = w_x conj(γ(x)_{ji}), synthesis(x, e) = d_γ γ(x)_{ji}.
struct PeterWeylBasis {
  KGroup group = KGroup::SO2;
  std::vector<IrrepLabel> labels;
  std::vector<std::size_t> offsets;  // first row of each label
  CMatrix forward;
  CMatrix synthesis;
  std::size_t entries() const { return static_cast<std::size_t>(forward.rows()); }
};

// Basis over the product grid of K axes (`axes` are the K axes of a chart,
// row-major with the last axis fastest).
PeterWeylBasis peter_weyl_basis(KGroup group, std::span<const GridAxis> axes, int band);

// `f` has only K axes. `declared_band` is the band of f when known (0 = unknown).
PeterWeylCoefficients peter_weyl_transform(const SampledFunction& f, KGroup group, int band,
                                           int declared_band = 0,
                                           Execution exec = Execution::Parallel);

cplx peter_weyl_invert(const PeterWeylCoefficients& c, const KElement& x);
// f(x⁻¹) = Σ d_γ tr[c(γ) γ(x)†].
cplx peter_weyl_invert_at_inverse(const PeterWeylCoefficients& c, const KElement& x);
// f(e) = Σ d_γ tr[c(γ)].
cplx peter_weyl_at_identity(const PeterWeylCoefficients& c);

nlohmann::json to_json(const PeterWeylCoefficients& c);
PeterWeylCoefficients peter_weyl_from_json(const nlohmann::json& j);

}  // namespace harmonic
