#pragma once

// S = N ⋊ A inside SL(n,R), the auxiliary group H = N × A × A, the invariant
// extension f ↦ f̃ to H, group and commutative convolution, and the Fourier
// transform on S. A is parameterized by the free log coordinates t ∈ R^{n-1};
// Haar measure on S is dn dt (right invariant).

#include <random>
#include <span>
#include <vector>

#include "harmonic/nilpotent.hpp"

namespace harmonic {

struct APoint {
  int n = 2;
  std::vector<double> t;

  APoint() : t(1, 0.0) {}
  APoint(int size, std::vector<double> log_coords);

  static APoint identity(int size);

  // a_i = e^{t_i} for i < n-1, a_{n-1} = e^{-Σt}.
  double diag(int i) const;
  Matrix matrix() const;
};

APoint a_compose(const APoint& a, const APoint& b);
APoint a_inverse(const APoint& a);
// Log coordinates of a positive unimodular diagonal matrix.
APoint a_from_matrix(const Matrix& a);

// log a_i for the raw log-coordinate vector t of length n-1.
inline double a_log(int n, const double* t, int i) {
  if (i < n - 1) return t[i];
  double s = 0.0;
  for (int k = 0; k < n - 1; ++k) s -= t[k];
  return s;
}

// Coordinates of a·n(x)·a⁻¹: entry (i,j) scales by a_i/a_j.
NCoordinates rho_action(const APoint& a, const NCoordinates& x);
void rho_action_raw(int n, const double* t, const double* x, double* out);
// Jacobian determinant of x ↦ ρ(a)x, i.e. a^{2ρ} = Π_{i<j} a_i/a_j.
double rho_jacobian(const APoint& a);
double rho_jacobian_raw(int n, const double* t);

struct SPoint {
  NCoordinates x;
  APoint a;
};

struct HPoint {
  NCoordinates x;
  APoint a;
  APoint b;
};

SPoint s_identity(int n);
SPoint s_compose(const SPoint& p, const SPoint& q);
SPoint s_inverse(const SPoint& p);
// n(x)·a as an n×n matrix.
Matrix s_embed(const SPoint& p);

HPoint h_identity(int n);
HPoint h_compose(const HPoint& p, const HPoint& q);
HPoint h_inverse(const HPoint& p);
// S as the subgroup N × {0} × A of H.
HPoint s_to_h(const SPoint& p);

SPoint random_s_point(int n, std::mt19937_64& rng, double scale = 1.0);
HPoint random_h_point(int n, std::mt19937_64& rng, double scale = 1.0);

double distance(const NCoordinates& x, const NCoordinates& y);
double distance(const SPoint& p, const SPoint& q);
double distance(const HPoint& p, const HPoint& q);

// "t1".."t{n-1}" linear-real axes.
std::vector<GridAxis> a_axes(int n, double lo, double hi, int count,
                             QuadratureRule rule = QuadratureRule::Trapezoid);
// N axes followed by A axes.
std::vector<GridAxis> s_axes(int n, double n_lo, double n_hi, int n_count, double a_lo,
                             double a_hi, int a_count,
                             QuadratureRule rule = QuadratureRule::Trapezoid);

// Matrix size of an S-grid function (d N axes then n-1 A axes).
int s_size_from_axes(const SampledFunction& f);

// f̃(n, a, b) = f(ρ(a)n, a + b), evaluated by interpolating f on its S grid.
class InvariantExtension {
 public:
  InvariantExtension(const SampledFunction& f, InterpolationOrder order);

  int n() const { return n_; }
  const SampledFunction& base() const { return interp_.function(); }

  // x has n(n-1)/2 entries, a and b have n-1. Off-box arguments give zero and
  // set `clipped`.
  cplx operator()(const double* x, const double* a, const double* b, bool& clipped) const;

  // Samples f̃ on f's N axes × `a_axes` × `b_axes`.
  SampledFunction sample(const std::vector<GridAxis>& a_grid, const std::vector<GridAxis>& b_grid,
                         std::size_t* clipped = nullptr) const;

 private:
  int n_;
  GridInterpolator interp_;
};

InvariantExtension extend_invariant(const SampledFunction& f,
                                    InterpolationOrder order = InterpolationOrder::Cubic);

enum class ConvolutionMode { Group, Commutative };

// Group: (g∗f)(p) = Σ_q w_q g(q) f(q⁻¹p). Commutative: Σ_q w_q g(q) f(p − q)
// in coordinates. Output on f's grid; both factors on the same S grid.
SampledFunction s_convolve(const SampledFunction& g, const SampledFunction& f, ConvolutionMode mode,
                           InterpolationOrder order = InterpolationOrder::Cubic,
                           Execution exec = Execution::Parallel,
                           ConvolutionStats* stats = nullptr, double support_cutoff = 1e-14);

// Support of g on its grid, as (coordinates, w·g) pairs, for repeated
// pointwise convolution.
struct KernelSupport {
  int n = 2;
  std::size_t dim = 0;  // coordinates per point
  std::vector<double> points;
  std::vector<cplx> weights;
  std::size_t size() const { return weights.size(); }
};

KernelSupport kernel_support(const SampledFunction& g, double cutoff = 1e-14);

// (g ∗ f̃)(x, a, b): group mode convolves over (n, b) on S with a fixed;
// commutative mode convolves additively over (n, a) with b fixed.
cplx extension_convolve_at(const KernelSupport& g, const InvariantExtension& ext, const double* x,
                         const double* a, const double* b, ConvolutionMode mode,
                         std::size_t* clipped = nullptr);

// F^d F_A over every axis: e^{-i⟨ξ,n⟩} e^{-i⟨λ,t⟩} with sign -1.
SampledFunction s_fourier(const SampledFunction& psi, int sign,
                          Execution exec = Execution::Parallel);

struct ExtensionCheckResult {
  double pointwise_deviation = 0.0;  // sup |group - commutative| / sup |group|
  double spectral_deviation = 0.0;   // sup |lhs - rhs| / sup |rhs| over sampled (λ, μ)
  double lhs_sup = 0.0;
  double rhs_sup = 0.0;
  std::size_t clipped = 0;
  std::size_t points = 0;
  std::size_t frequencies = 0;
};

struct ExtensionCheckOptions {
  int pointwise_samples = 100;
  std::uint64_t seed = 1;
  int output_stride = 4;   // subsampling of f's grid for the spectral side
  std::vector<double> mu{0.0, 0.5, 1.0, 2.0};
  std::vector<double> lambda{0.0, 1.0, 2.5};
  InterpolationOrder order = InterpolationOrder::Cubic;
  Execution exec = Execution::Parallel;
};

// Pointwise: g∗f̃ = g∗_c f̃ at random points. Spectral: the dν-integral of the
// (n, a, b) transform of g∗f̃ against F f̃(λ,μ,0)·F g(λ,μ).
ExtensionCheckResult extension_check(const SampledFunction& g, const SampledFunction& f,
                            const ExtensionCheckOptions& options = {});

}  // namespace harmonic
