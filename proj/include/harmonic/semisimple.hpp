#pragma once

// Harmonic analysis on G = SL(n,R) through its Iwasawa chart.
//
// A chart function stores samples on (N axes, A log axes, K axes), optionally
// preceded by a log-scale axis for GL+. The group element at chart coordinates
// (x, t, k) is read as a(t)·n(x)·k, the factor order whose Haar density is 1,
// so quadrature in chart coordinates is Haar integration and the combined
// transform inverts at f(a n k).

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "harmonic/compact.hpp"
#include "harmonic/group_core.hpp"
#include "harmonic/interpolation.hpp"
#include "harmonic/solvable.hpp"

namespace harmonic {

struct GPoint {
  KElement k = SO2Element{};
  APoint a;
  NCoordinates x;
  FactorOrder order = FactorOrder::ANK;
};

Matrix g_matrix(const GPoint& p);
GPoint g_point_from_matrix(const Matrix& g, FactorOrder order);
// Same group element, other factor order. Within the k-first or k-last pair
// this is n ↦ a n a⁻¹ (or its inverse); across pairs it re-factorizes.
GPoint convert_order(const GPoint& p, FactorOrder to);

// Density of Haar measure against da dn dk in each factor order:
// ank, kna → 1; kan → a^{2ρ}; nak → a^{-2ρ}.
double haar_density(FactorOrder order, int n, const double* t);
double haar_density(FactorOrder order, const APoint& a);

struct SLChart {
  int n = 2;
  KGroup group = KGroup::SO2;
  int band = 16;  // L_max of the K transform
  bool has_scale = false;
  std::vector<GridAxis> axes;  // [u], N, A, K

  std::size_t scale_axes() const { return has_scale ? 1 : 0; }
  std::size_t d() const { return static_cast<std::size_t>(n * (n - 1) / 2); }
  std::size_t noncompact_axes() const { return scale_axes() + d() + static_cast<std::size_t>(n - 1); }
  std::size_t k_rank() const { return axes.size() - noncompact_axes(); }
  std::span<const GridAxis> k_axes_span() const {
    return std::span<const GridAxis>(axes).subspan(noncompact_axes());
  }
  std::size_t size() const;
};

struct AxisRange {
  double lo = -1.0;
  double hi = 1.0;
  int count = 2;
};

// K count: number of angles for SO(2), quadrature band for SO(3).
SLChart make_sl_chart(int n, AxisRange n_axis, AxisRange a_axis, int k_count, int band,
                      QuadratureRule rule = QuadratureRule::Trapezoid);
SLChart make_glplus_chart(int n, AxisRange n_axis, AxisRange a_axis, int k_count, int band,
                          AxisRange scale_axis, QuadratureRule rule = QuadratureRule::Trapezoid);

// Chart coordinates of a node: (x..., t..., angles...) without the scale.
struct ChartPoint {
  double u = 0.0;
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> angles;
};

ChartPoint chart_point(const SLChart& chart, std::span<const double> coords);
// SL part read in `order`.
GPoint g_point(const SLChart& chart, const ChartPoint& p, FactorOrder order);
// Chart coordinates (u omitted) of an SL matrix, read in ank order.
std::vector<double> chart_coordinates(const SLChart& chart, const Matrix& g);

using GFunction = std::function<cplx(const Matrix&)>;

// Samples F at every node, reading the chart in `order`.
SampledFunction sample_on_chart(const GFunction& F, const SLChart& chart,
                                FactorOrder order = FactorOrder::ANK);

// Σ w f · density(order, a): ∫_G f when f holds samples of F read in `order`.
cplx haar_integrate(const SampledFunction& f, const SLChart& chart, FactorOrder order);

// Interpolated chart function evaluated at arbitrary SL matrices. Noncompact
// coordinates are interpolated; on SO(3) charts the K dependence is
// resynthesized from its Peter–Weyl coefficients at the K grid's band.
// Keeps references to `f` and `chart`.
class ChartFunction {
 public:
  ChartFunction(const SampledFunction& f, const SLChart& chart, InterpolationOrder order);
  ChartFunction(const ChartFunction&) = delete;
  ChartFunction& operator=(const ChartFunction&) = delete;

  cplx operator()(const Matrix& g, bool& clipped) const;
  cplx operator()(const Matrix& g) const;
  const SLChart& chart() const { return *chart_; }

 private:
  const SLChart* chart_;
  GridInterpolator interp_;
  PeterWeylBasis basis_;
  std::vector<SampledFunction> coeffs_;
  std::vector<GridInterpolator> coeff_interp_;
};

// Υ(f)(g, k₁) = f(g·k₁).
class UpsilonExtension {
 public:
  UpsilonExtension(const SampledFunction& f, const SLChart& chart, InterpolationOrder order);
  cplx operator()(const Matrix& g, const KElement& k1, bool& clipped) const;
  cplx operator()(const Matrix& g, const KElement& k1) const;

 private:
  ChartFunction f_;
};

struct ConvolutionAtPoint {
  cplx value;
  std::size_t kernel_points = 0;
  std::size_t clipped = 0;
};

// (Υ(f) ∗ ψ)(g, k₁) = Σ_{g₂} w ψ(g₂) Υ(f)(g g₂⁻¹, k₁), g₂ over ψ's chart nodes
// where |ψ| exceeds cutoff·max|ψ|.
ConvolutionAtPoint upsilon_convolve(const UpsilonExtension& ext, const SampledFunction& psi,
                                    const SLChart& chart, const Matrix& g, const KElement& k1,
                                    Execution exec = Execution::Parallel, double cutoff = 1e-14);

// f̌(g) = conj f(g⁻¹) on f's chart grid, via re-factorization and interpolation.
SampledFunction involution(const SampledFunction& f, const SLChart& chart,
                           InterpolationOrder order = InterpolationOrder::Cubic,
                           std::size_t* clipped = nullptr, Execution exec = Execution::Parallel);

// TFf(ξ, λ, γ) over the chart's frequency grid and irreps up to chart.band.
struct SpectralTable {
  int n = 2;
  KGroup group = KGroup::SO2;
  int band = 0;
  std::vector<GridAxis> freq_axes;  // [eta], xi..., lambda...
  std::vector<IrrepLabel> labels;
  std::vector<std::size_t> offsets;
  std::size_t entries = 0;          // Σ d_γ²
  std::vector<cplx> values;         // [frequency node][entry]
  bool band_warning = false;

  std::size_t frequency_count() const { return entries == 0 ? 0 : values.size() / entries; }
  CMatrix block(std::size_t freq, std::size_t label) const;
  // Σ_γ d_γ ∫ ‖TFf‖²_HS with the spectral measure normalizers.
  double hs_norm_squared() const;
  std::vector<double> norms_per_label() const;
};

SpectralTable sl_fourier(const SampledFunction& f, const SLChart& chart,
                         Execution exec = Execution::Parallel);

// f(a n k₁) from the table; `point` holds (u?, x..., t..., angles...).
cplx sl_invert(const SpectralTable& table, const SLChart& chart, std::span<const double> point);
// Σ d_γ tr TFf integrated over all frequencies.
cplx sl_invert_at_identity(const SpectralTable& table);
// Full synthesis back onto the chart grid.
SampledFunction sl_invert_grid(const SpectralTable& table, const SLChart& chart,
                               Execution exec = Execution::Parallel);

void write_csv(std::ostream& out, const SpectralTable& table);
// Axes, labels and per-label norms; together with the CSV it re-reads the table.
nlohmann::json summary(const SpectralTable& table);
SpectralTable read_spectral_table(const nlohmann::json& summary, std::istream& csv);

struct OrderConsistency {
  double haar_kna = 0.0;
  double haar_kan = 0.0;
  double haar_rel = 0.0;       // ∫|F(kna)|² vs ∫|F(kan)|² a^{2ρ}
  double pointwise_rel = 0.0;  // F^dφ_kna(ξ) vs a^{2ρ} F^dφ_kan(ρ(a)ξ), sup-norm relative
  cplx chain_kna;              // ∫dξ F^dφ_kna
  cplx chain_substituted;      // ∫dξ a^{2ρ} F^dφ_kan(ρ(a)ξ)
  cplx chain_kan;              // ∫dξ F^dφ_kan
  double chain_rel = 0.0;
  double rel_error() const;
};

OrderConsistency order_consistency(const GFunction& F, const SLChart& chart,
                                   Execution exec = Execution::Parallel);

// exp(-c (‖g‖²_F - n)) · (1 + eps·g₀₁): a genuinely non-separable function of g.
GFunction matrix_gaussian(double c, double eps = 0.0);

}  // namespace harmonic
