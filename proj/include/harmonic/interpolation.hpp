#pragma once

#include <span>
#include <string_view>

#include "harmonic/function_spaces.hpp"

namespace harmonic {

enum class InterpolationOrder { Linear, Cubic };

std::string_view to_string(InterpolationOrder order);
InterpolationOrder parse_interpolation_order(std::string_view text);

// Tensor-product Lagrange interpolation of a SampledFunction at off-grid
// points. Angle axes wrap; other axes clip: a point outside the node range
// evaluates to zero and is reported as clipped.
//
// Holds a reference to `f`, which must outlive the interpolator.
class GridInterpolator {
 public:
  GridInterpolator(const SampledFunction& f, InterpolationOrder order);

  cplx operator()(std::span<const double> point) const;
  cplx evaluate(std::span<const double> point, bool& clipped) const;

  const SampledFunction& function() const { return *f_; }
  InterpolationOrder order() const { return order_; }

 private:
  struct Stencil {
    int size = 0;
    std::size_t index[4]{};
    double weight[4]{};
  };

  bool stencil(std::size_t axis, double x, Stencil& s) const;

  const SampledFunction* f_;
  InterpolationOrder order_;
};

// Multiplier for the a-priori interpolation error bound h^p of an axis set:
// max over axes of h^2/8 (linear) or 3h^4/128 (cubic), in units of the
// corresponding derivative of the interpolated function.
double interpolation_error_scale(const SampledFunction& f, InterpolationOrder order);

}  // namespace harmonic
