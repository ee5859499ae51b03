#include "harmonic/nilpotent.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace harmonic {

namespace {

constexpr int kMaxDim = kMaxUnipotentSize * (kMaxUnipotentSize - 1) / 2;

void check_size(int m) {
  if (m < 2 || m > kMaxUnipotentSize) {
    throw std::invalid_argument("unipotent size m must be in [2, " +
                                std::to_string(kMaxUnipotentSize) + "]");
  }
}

// Offset of entry (i, j), i < j, in superdiagonal order.
inline int idx(int m, int i, int j) {
  const int gap = j - i;
  // Σ_{h=1}^{gap-1} (m - h)
  return (gap - 1) * m - (gap - 1) * gap / 2 + i;
}

}  // namespace

int n_dimension(int m) { return m * (m - 1) / 2; }

std::vector<std::pair<int, int>> n_entries(int m) {
  check_size(m);
  std::vector<std::pair<int, int>> out;
  for (int gap = 1; gap < m; ++gap) {
    for (int i = 0; i + gap < m; ++i) out.emplace_back(i, i + gap);
  }
  return out;
}

std::string n_axis_name(int row, int col) {
  return "x" + std::to_string(row + 1) + std::to_string(col + 1);
}

NCoordinates::NCoordinates(int size, std::vector<double> values) : m(size), coords(std::move(values)) {
  check_size(m);
  if (coords.size() != static_cast<std::size_t>(n_dimension(m))) {
    throw std::invalid_argument("NCoordinates: expected " + std::to_string(n_dimension(m)) +
                                " coordinates for m = " + std::to_string(m));
  }
}

NCoordinates NCoordinates::identity(int size) {
  check_size(size);
  return NCoordinates(size, std::vector<double>(static_cast<std::size_t>(n_dimension(size)), 0.0));
}

Matrix n_embed(const NCoordinates& x) {
  Matrix u = Matrix::Identity(x.m, x.m);
  const auto entries = n_entries(x.m);
  for (std::size_t c = 0; c < entries.size(); ++c) u(entries[c].first, entries[c].second) = x.coords[c];
  return u;
}

NCoordinates n_extract(const Matrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("n_extract: matrix must be square");
  const int m = static_cast<int>(u.rows());
  const auto entries = n_entries(m);
  std::vector<double> c(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) c[k] = u(entries[k].first, entries[k].second);
  return NCoordinates(m, std::move(c));
}

void n_compose_raw(int m, const double* x, const double* y, double* out) {
  for (int gap = 1; gap < m; ++gap) {
    for (int i = 0; i + gap < m; ++i) {
      const int j = i + gap;
      const int o = idx(m, i, j);
      double v = x[o] + y[o];
      for (int k = i + 1; k < j; ++k) v += x[idx(m, i, k)] * y[idx(m, k, j)];
      out[o] = v;
    }
  }
}

void n_inverse_raw(int m, const double* x, double* out) {
  for (int gap = 1; gap < m; ++gap) {
    for (int i = 0; i + gap < m; ++i) {
      const int j = i + gap;
      const int o = idx(m, i, j);
      double v = -x[o];
      for (int k = i + 1; k < j; ++k) v -= x[idx(m, i, k)] * out[idx(m, k, j)];
      out[o] = v;
    }
  }
}

NCoordinates n_compose(const NCoordinates& x, const NCoordinates& y) {
  if (x.m != y.m) throw std::invalid_argument("n_compose: size mismatch");
  std::vector<double> out(x.coords.size());
  n_compose_raw(x.m, x.coords.data(), y.coords.data(), out.data());
  return NCoordinates(x.m, std::move(out));
}

NCoordinates n_inverse(const NCoordinates& x) {
  std::vector<double> out(x.coords.size());
  n_inverse_raw(x.m, x.coords.data(), out.data());
  return NCoordinates(x.m, std::move(out));
}

std::vector<GridAxis> n_axes(int m, double lo, double hi, int count, QuadratureRule rule) {
  std::vector<GridAxis> axes;
  for (const auto& [i, j] : n_entries(m)) {
    axes.push_back(build_axis({n_axis_name(i, j), AxisKind::LinearReal, lo, hi, count, rule, false}));
  }
  return axes;
}

int n_size_from_axes(const SampledFunction& f) {
  for (int m = 2; m <= kMaxUnipotentSize; ++m) {
    if (static_cast<std::size_t>(n_dimension(m)) == f.rank()) {
      for (const auto& a : f.axes()) {
        if (a.kind != AxisKind::LinearReal) {
          throw std::invalid_argument("N-grid function: axis '" + a.name + "' is not linear-real");
        }
      }
      return m;
    }
  }
  throw std::invalid_argument("N-grid function: rank is not m(m-1)/2 for any supported m");
}

SampledFunction n_convolve(const SampledFunction& g, const SampledFunction& f,
                           InterpolationOrder order, Execution exec, ConvolutionStats* stats,
                           double support_cutoff) {
  const int m = n_size_from_axes(f);
  if (!same_grid(f, g)) throw std::invalid_argument("n_convolve: grid mismatch");
  const std::size_t d = f.rank();

  // Kernel support: Y⁻¹ and w_Y g(Y).
  double gmax = 0.0;
  for (const auto& v : g.values()) gmax = std::max(gmax, std::abs(v));
  std::vector<double> yinv;
  std::vector<cplx> kw;
  std::vector<std::size_t> index(d);
  std::vector<double> y(d);
  std::vector<double> tmp(d);
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    if (!(std::abs(g[flat]) > support_cutoff * gmax)) continue;
    g.unravel(flat, index);
    double w = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
      y[a] = g.axis(a).nodes[index[a]];
      w *= g.axis(a).weight(index[a]);
    }
    n_inverse_raw(m, y.data(), tmp.data());
    yinv.insert(yinv.end(), tmp.begin(), tmp.end());
    kw.push_back(w * g[flat]);
  }

  SampledFunction out = SampledFunction::zeros(f.axes());
  const GridInterpolator interp(f, order);
  const auto n_out = static_cast<std::ptrdiff_t>(out.size());
  const std::size_t n_kernel = kw.size();
  std::size_t clipped = 0;

#pragma omp parallel for schedule(dynamic, 64) reduction(+ : clipped) if (exec == Execution::Parallel)
  for (std::ptrdiff_t o = 0; o < n_out; ++o) {
    std::array<double, kMaxDim> x{};
    std::array<double, kMaxDim> arg{};
    out.coordinates(static_cast<std::size_t>(o), std::span<double>(x.data(), d));
    cplx acc{};
    for (std::size_t k = 0; k < n_kernel; ++k) {
      n_compose_raw(m, &yinv[k * d], x.data(), arg.data());
      bool clip = false;
      const cplx v = interp.evaluate(std::span<const double>(arg.data(), d), clip);
      if (clip) {
        ++clipped;
        continue;
      }
      acc += kw[k] * v;
    }
    out[static_cast<std::size_t>(o)] = acc;
  }
  if (stats) {
    stats->kernel_points = n_kernel;
    stats->clipped = clipped;
  }
  out.metadata.provenance = "n_convolve";
  return out;
}

SampledFunction n_fourier(const SampledFunction& f, int sign, Execution exec) {
  bool rank_ok = false;
  for (int m = 2; m <= kMaxUnipotentSize; ++m) rank_ok |= static_cast<std::size_t>(n_dimension(m)) == f.rank();
  if (!rank_ok) throw std::invalid_argument("n_fourier: rank is not m(m-1)/2 for any supported m");
  SampledFunction out = f;
  for (std::size_t a = 0; a < f.rank(); ++a) out = dft_axis(out, a, sign, SpectralSymbol::Xi, exec);
  return out;
}

SampledFunction n_left_translate(const SampledFunction& f, const NCoordinates& y,
                                 InterpolationOrder order) {
  const int m = n_size_from_axes(f);
  if (y.m != m) throw std::invalid_argument("n_left_translate: size mismatch");
  const std::size_t d = f.rank();
  SampledFunction out = SampledFunction::zeros(f.axes());
  const GridInterpolator interp(f, order);
  std::vector<double> x(d);
  std::vector<double> arg(d);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.coordinates(flat, x);
    n_compose_raw(m, y.coords.data(), x.data(), arg.data());
    out[flat] = interp(arg);
  }
  return out;
}

}  // namespace harmonic
