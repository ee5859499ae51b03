#include "harmonic/fullgroup.hpp"

#include <cmath>
#include <stdexcept>

namespace harmonic {

Matrix GLPoint::matrix() const {
  Matrix m = t * g_matrix(g);
  return sign == Sign::Plus ? m : tau(m);
}

GLPoint gl_point_from_matrix(const Matrix& m, FactorOrder order) {
  const ScaleSplit split = gl_split(m);
  return {g_point_from_matrix(split.s, order), split.t, split.sign};
}

GridAxis log_scale_axis(AxisRange range, QuadratureRule rule) {
  return build_axis({"u", AxisKind::LogScale, range.lo, range.hi, range.count, rule, false});
}

SampledFunction scale_fourier(const SampledFunction& h, int sign, Execution exec) {
  if (h.rank() != 1) throw std::invalid_argument("scale_fourier: expected a single axis");
  const AxisKind kind = h.axis(0).kind;
  if (kind != AxisKind::LogScale && kind != AxisKind::Frequency) {
    throw std::invalid_argument("scale_fourier: axis must be log-scale (or its eta dual)");
  }
  return dft_axis(h, 0, sign, SpectralSymbol::Eta, exec);
}

SpectralTable glplus_fourier(const SampledFunction& f, const SLChart& chart, Execution exec) {
  if (!chart.has_scale) throw std::invalid_argument("glplus_fourier: chart has no scale axis");
  return sl_fourier(f, chart, exec);
}

GFunction pull_back_minus(GFunction f_minus) {
  return [f = std::move(f_minus)](const Matrix& x) { return f(tau(x)); };
}

GFunction symmetric_extension(GFunction f_plus) {
  return [f = std::move(f_plus)](const Matrix& a) { return f(tau(a)); };
}

GLSpectrum gl_fourier(const SampledFunction& f_plus, const SampledFunction& f_minus_pulled,
                      const SLChart& chart, Execution exec) {
  return {glplus_fourier(f_plus, chart, exec), glplus_fourier(f_minus_pulled, chart, exec)};
}

FactorTwo factor_two_check(const GFunction& f_plus, const SLChart& chart, Execution exec) {
  const SampledFunction plus = sample_on_chart(f_plus, chart);
  const SampledFunction minus = sample_on_chart(pull_back_minus(symmetric_extension(f_plus)), chart);
  const GLSpectrum s = gl_fourier(plus, minus, chart, exec);
  FactorTwo r;
  r.plus_norm = s.plus.hs_norm_squared();
  r.total_norm = s.hs_norm_squared();
  r.rel_error = std::abs(r.total_norm - 2.0 * r.plus_norm) / std::max(2.0 * r.plus_norm, 1e-300);
  return r;
}

}  // namespace harmonic
