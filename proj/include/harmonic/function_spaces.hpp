#pragma once

// Tensor grids, quadrature, per-axis quadrature DFTs and closed-form test
// functions. Everything above this layer samples functions on a product of
// GridAxis objects and integrates them with the per-node weights.

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harmonic/types.hpp"

namespace harmonic {

enum class AxisKind { LinearReal, LogScale, Angle, EulerBeta, Frequency };
enum class QuadratureRule { Trapezoid, Midpoint };
enum class SpectralSymbol { Xi, Lambda, Eta, Mu, Nu };

std::string_view to_string(AxisKind kind);
std::string_view to_string(SpectralSymbol symbol);
std::string_view to_string(QuadratureRule rule);
AxisKind parse_axis_kind(std::string_view text);
QuadratureRule parse_quadrature_rule(std::string_view text);

struct AxisSpec {
  std::string name;
  AxisKind kind = AxisKind::LinearReal;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  QuadratureRule rule = QuadratureRule::Trapezoid;
  // Angle / euler-beta axes only: rescale so the axis carries Haar mass 1.
  bool haar_normalized = false;
};

// Frequency grid dual to a uniform spatial axis.
struct SpectralAxis {
  SpectralSymbol symbol = SpectralSymbol::Xi;
  double measure_normalizer = 1.0 / kTwoPi;  // dξ/(2π) per scalar dimension
  AxisSpec dual;
};

struct GridAxis {
  std::string name;
  AxisKind kind = AxisKind::LinearReal;
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  QuadratureRule rule = QuadratureRule::Trapezoid;
  std::vector<double> nodes;
  std::vector<double> weights;
  // Multiplies every weight when integrating (Haar mass, spectral 1/(2π)).
  double measure_normalizer = 1.0;
  std::optional<SpectralAxis> spectral;

  bool periodic() const { return kind == AxisKind::Angle; }
  bool compact() const { return kind == AxisKind::Angle || kind == AxisKind::EulerBeta; }
  bool uniform() const { return kind != AxisKind::EulerBeta; }
  double step() const;
  double weight(std::size_t j) const { return weights[j] * measure_normalizer; }
};

GridAxis build_axis(const AxisSpec& spec);
std::vector<GridAxis> build_grid(std::span<const AxisSpec> specs);

// Frequency grid dual to `spatial`: spacing 2π/(count·h), centred on zero.
GridAxis frequency_axis(const GridAxis& spatial, SpectralSymbol symbol);

struct FunctionMetadata {
  std::string provenance;
  bool decay_warning = false;
  double boundary_max = 0.0;
};

// Complex samples on a tensor grid, row-major with the last axis fastest.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(std::vector<GridAxis> axes, std::vector<cplx> values);

  static SampledFunction zeros(std::vector<GridAxis> axes);

  const std::vector<GridAxis>& axes() const { return axes_; }
  const GridAxis& axis(std::size_t i) const { return axes_.at(i); }
  std::size_t rank() const { return axes_.size(); }
  std::size_t size() const { return values_.size(); }
  std::size_t extent(std::size_t i) const { return static_cast<std::size_t>(axes_.at(i).count); }
  std::size_t stride(std::size_t i) const { return strides_.at(i); }
  std::vector<std::size_t> shape() const;

  std::optional<std::size_t> find_axis(std::string_view name) const;
  std::size_t axis_index(std::string_view name) const;

  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  cplx operator[](std::size_t flat) const { return values_[flat]; }
  cplx& operator[](std::size_t flat) { return values_[flat]; }
  cplx at(std::span<const std::size_t> index) const;

  // Splits a flat offset into per-axis indices.
  void unravel(std::size_t flat, std::span<std::size_t> index) const;
  // Node coordinates of a flat offset, one per axis.
  void coordinates(std::size_t flat, std::span<double> point) const;

  FunctionMetadata metadata;

 private:
  std::vector<GridAxis> axes_;
  std::vector<cplx> values_;
  std::vector<std::size_t> strides_;
};

bool same_grid(const SampledFunction& f, const SampledFunction& g, double tol = 1e-12);

// Σ values · Π axis weights (including measure normalizers).
cplx integrate(const SampledFunction& f, Execution exec = Execution::Parallel);
// ∫ |f|² with the same quadrature.
double norm_squared(const SampledFunction& f, Execution exec = Execution::Parallel);

// Quadrature DFT along one axis: Σ_j w_j f(x_j) e^{sign·i·ξ·x_j}. Applied to
// a frequency axis it returns to the dual spatial grid using dξ/(2π).
SampledFunction dft_axis(const SampledFunction& f, std::string_view axis, int sign,
                         SpectralSymbol symbol = SpectralSymbol::Xi,
                         Execution exec = Execution::Parallel);
SampledFunction dft_axis(const SampledFunction& f, std::size_t axis, int sign,
                         SpectralSymbol symbol = SpectralSymbol::Xi,
                         Execution exec = Execution::Parallel);

// The axis dft_axis maps `src` to: its frequency grid, or back to the spatial
// grid for a frequency axis.
GridAxis dual_axis(const GridAxis& src, SpectralSymbol symbol = SpectralSymbol::Xi);

// kernel(k, j) = w_j e^{sign·i·y_k·x_j} from `src` nodes x to `dst` nodes y.
CMatrix dft_matrix(const GridAxis& src, const GridAxis& dst, int sign);

// The quadrature Fourier sum over every axis of `f`, evaluated at an
// arbitrary (off-grid) frequency vector with one entry per axis.
cplx fourier_at(const SampledFunction& f, std::span<const double> freqs, int sign = -1);

SampledFunction outer_product(const SampledFunction& a, const SampledFunction& b);
SampledFunction linear_combination(cplx alpha, const SampledFunction& f, cplx beta,
                                   const SampledFunction& g);
SampledFunction abs_squared(const SampledFunction& f);

void write_csv(std::ostream& out, const SampledFunction& f);

// ---------------------------------------------------------------------------
// Test functions

enum class TestFunctionKind { Gaussian, Bump, TrigPolynomial, WignerPolynomial, DeltaApprox };

std::string_view to_string(TestFunctionKind kind);
TestFunctionKind parse_test_function_kind(std::string_view text);

struct WignerTerm {
  int l = 0;
  int m = 0;
  int mp = 0;
  cplx coefficient{1.0, 0.0};
};

struct TestFunctionSpec {
  TestFunctionKind kind = TestFunctionKind::Gaussian;
  // One entry per noncompact axis; missing entries are zero. For compact
  // axes, `center` is not used except by the SO(2) delta approximation.
  std::vector<double> center;
  double width = 1.0;
  std::map<int, cplx> trig_coefficients;
  std::vector<WignerTerm> wigner_terms;
  int band = 0;
  bool strict = false;
};

// Absolute sup over boundary nodes of noncompact axes below which a test
// function counts as decayed.
inline constexpr double kDecayThreshold = 1e-12;

SampledFunction make_test_function(const TestFunctionSpec& spec, std::vector<GridAxis> axes);
std::string describe(const TestFunctionSpec& spec);

}  // namespace harmonic
