#pragma once

// GL+(n,R) = SL(n,R) × R+* with Haar measure dg dt/t, analysed by the SL
// transform and a scale (Mellin) transform in u = log t; GL(n,R) as GL+ ⊔ GL-
// with GL- carried to GL+ by τ(X) = I⁻X.

#include "harmonic/semisimple.hpp"

namespace harmonic {

struct GLPoint {
  GPoint g;
  double t = 1.0;  // |det|^{1/n}
  Sign sign = Sign::Plus;

  // t·g for sign +, I⁻·(t·g) for sign -.
  Matrix matrix() const;
};

GLPoint gl_point_from_matrix(const Matrix& m, FactorOrder order = FactorOrder::ANK);

// "u" log-scale axis; dt/t = du.
GridAxis log_scale_axis(AxisRange range, QuadratureRule rule = QuadratureRule::Trapezoid);

// F₊*h(η) = ∫ h(t) t^{-iη} dt/t as the quadrature DFT in u. `h` has one
// log-scale axis; sign -1 forward, +1 back from the η axis.
SampledFunction scale_fourier(const SampledFunction& h, int sign, Execution exec = Execution::Parallel);

// SL transform extended by the scale axis (a GL+ chart with the η axis first).
SpectralTable glplus_fourier(const SampledFunction& f, const SLChart& chart,
                             Execution exec = Execution::Parallel);

// h(X) = F(I⁻X): a function on GL- read on GL+ through τ⁻¹.
GFunction pull_back_minus(GFunction f_minus);
// The symmetric extension F₋ = F₊∘τ of a function on GL+.
GFunction symmetric_extension(GFunction f_plus);

struct GLSpectrum {
  SpectralTable plus;
  SpectralTable minus;  // transform of f₋∘τ⁻¹
  double hs_norm_squared() const { return plus.hs_norm_squared() + minus.hs_norm_squared(); }
};

// f_plus and f_minus_pulled both live on the GL+ chart.
GLSpectrum gl_fourier(const SampledFunction& f_plus, const SampledFunction& f_minus_pulled,
                      const SLChart& chart, Execution exec = Execution::Parallel);

struct FactorTwo {
  double plus_norm = 0.0;   // ‖F₊* TF f₊‖²
  double total_norm = 0.0;  // ‖F f‖² over GL
  double rel_error = 0.0;   // |total - 2·plus| / (2·plus)
};

// For f on GL with f₋ = f₊∘τ the spectral norm is exactly twice the GL+ one.
FactorTwo factor_two_check(const GFunction& f_plus, const SLChart& chart,
                           Execution exec = Execution::Parallel);

}  // namespace harmonic
