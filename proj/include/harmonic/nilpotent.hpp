#pragma once

// The unipotent upper-triangular group N of size m, in the coordinates of its
// strictly upper entries ordered by superdiagonal: for m = 3 that is
// (x12, x23, x13). Haar measure is Lebesgue measure in these coordinates.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "harmonic/function_spaces.hpp"
#include "harmonic/interpolation.hpp"

namespace harmonic {

inline constexpr int kMaxUnipotentSize = 8;

int n_dimension(int m);

// (row, col) of each coordinate, superdiagonal by superdiagonal.
std::vector<std::pair<int, int>> n_entries(int m);

// Axis name for a coordinate, e.g. "x12".
std::string n_axis_name(int row, int col);

struct NCoordinates {
  int m = 2;
  std::vector<double> coords;

  NCoordinates() : coords(1, 0.0) {}
  NCoordinates(int size, std::vector<double> values);

  static NCoordinates identity(int size);
};

Matrix n_embed(const NCoordinates& x);
// Reads the strictly upper entries of a unipotent matrix; the lower part and
// diagonal are not inspected.
NCoordinates n_extract(const Matrix& u);

NCoordinates n_compose(const NCoordinates& x, const NCoordinates& y);
NCoordinates n_inverse(const NCoordinates& x);

// Allocation-free versions on raw coordinate arrays of length n_dimension(m).
void n_compose_raw(int m, const double* x, const double* y, double* out);
void n_inverse_raw(int m, const double* x, double* out);

// d linear-real axes, one per coordinate, sharing bounds and count.
std::vector<GridAxis> n_axes(int m, double lo, double hi, int count,
                             QuadratureRule rule = QuadratureRule::Trapezoid);

// Size m of the unipotent group whose coordinate axes lead `f`.
int n_size_from_axes(const SampledFunction& f);

struct ConvolutionStats {
  std::size_t kernel_points = 0;  // support nodes of the left factor actually summed
  std::size_t clipped = 0;        // off-box evaluations replaced by zero
};

// (g∗f)(X) = Σ_Y w_Y g(Y) f(Y⁻¹X), output on f's grid. The sum runs over nodes
// where |g| exceeds `support_cutoff`·max|g|.
SampledFunction n_convolve(const SampledFunction& g, const SampledFunction& f,
                           InterpolationOrder order = InterpolationOrder::Cubic,
                           Execution exec = Execution::Parallel,
                           ConvolutionStats* stats = nullptr, double support_cutoff = 1e-14);

// dft_axis over every coordinate axis; sign -1 forward, +1 inverse.
SampledFunction n_fourier(const SampledFunction& f, int sign,
                          Execution exec = Execution::Parallel);

// f(Y·X) sampled on f's grid (left translation by Y), by interpolation.
SampledFunction n_left_translate(const SampledFunction& f, const NCoordinates& y,
                                 InterpolationOrder order = InterpolationOrder::Cubic);

}  // namespace harmonic
