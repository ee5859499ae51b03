#include "harmonic/interpolation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace harmonic {

namespace {

constexpr std::size_t kMaxRank = 12;
constexpr double kSnap = 1e-10;

// Lagrange basis weights for nodes xs[0..n) evaluated at x.
void lagrange_weights(const double* xs, int n, double x, double* w) {
  for (int i = 0; i < n; ++i) {
    double num = 1.0;
    double den = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      num *= x - xs[j];
      den *= xs[i] - xs[j];
    }
    w[i] = num / den;
  }
}

}  // namespace

std::string_view to_string(InterpolationOrder order) {
  return order == InterpolationOrder::Linear ? "linear" : "cubic";
}

InterpolationOrder parse_interpolation_order(std::string_view text) {
  if (text == "linear" || text == "multilinear") return InterpolationOrder::Linear;
  if (text == "cubic") return InterpolationOrder::Cubic;
  throw std::invalid_argument("unknown interpolation order '" + std::string(text) + "'");
}

GridInterpolator::GridInterpolator(const SampledFunction& f, InterpolationOrder order)
    : f_(&f), order_(order) {
  if (f.rank() > kMaxRank) throw std::invalid_argument("GridInterpolator: rank too large");
}

bool GridInterpolator::stencil(std::size_t axis_pos, double x, Stencil& s) const {
  const GridAxis& axis = f_->axis(axis_pos);
  const auto n = static_cast<std::ptrdiff_t>(axis.count);
  const int want = (order_ == InterpolationOrder::Cubic && n >= 4) ? 4 : 2;

  if (axis.periodic()) {
    const double h = axis.step();
    double u = std::fmod((x - axis.nodes[0]) / h, static_cast<double>(n));
    if (u < 0.0) u += static_cast<double>(n);
    const double r = std::round(u);
    if (std::abs(u - r) < kSnap) {
      s.size = 1;
      s.index[0] = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(r) % n);
      s.weight[0] = 1.0;
      return true;
    }
    const auto j = static_cast<std::ptrdiff_t>(std::floor(u));
    const double frac = u - static_cast<double>(j);
    const std::ptrdiff_t first = (want == 4) ? j - 1 : j;
    double xs[4];
    for (int i = 0; i < want; ++i) xs[i] = static_cast<double>(first - j + i);
    lagrange_weights(xs, want, frac, s.weight);
    s.size = want;
    for (int i = 0; i < want; ++i) {
      s.index[i] = static_cast<std::size_t>(((first + i) % n + n) % n);
    }
    return true;
  }

  const double lo = axis.nodes.front();
  const double hi = axis.nodes.back();
  const double span_tol = kSnap * std::max(1.0, hi - lo);
  if (x < lo - span_tol || x > hi + span_tol) return false;

  std::ptrdiff_t j = 0;
  double u = 0.0;
  if (axis.uniform()) {
    const double h = axis.step();
    u = (x - lo) / h;
    const double r = std::round(u);
    if (std::abs(u - r) < kSnap) {
      s.size = 1;
      s.index[0] = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(r), 0, n - 1));
      s.weight[0] = 1.0;
      return true;
    }
    j = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor(u)), 0, n - 2);
  } else {
    const auto it = std::upper_bound(axis.nodes.begin(), axis.nodes.end(), x);
    j = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(it - axis.nodes.begin()) - 1, 0, n - 2);
    for (std::ptrdiff_t k = j; k <= j + 1; ++k) {
      if (std::abs(axis.nodes[static_cast<std::size_t>(k)] - x) < span_tol) {
        s.size = 1;
        s.index[0] = static_cast<std::size_t>(k);
        s.weight[0] = 1.0;
        return true;
      }
    }
  }
  std::ptrdiff_t first = (want == 4) ? j - 1 : j;
  first = std::clamp<std::ptrdiff_t>(first, 0, n - want);
  double xs[4];
  for (int i = 0; i < want; ++i) {
    s.index[i] = static_cast<std::size_t>(first + i);
    xs[i] = axis.nodes[s.index[i]];
  }
  lagrange_weights(xs, want, x, s.weight);
  s.size = want;
  return true;
}

cplx GridInterpolator::operator()(std::span<const double> point) const {
  bool clipped = false;
  return evaluate(point, clipped);
}

cplx GridInterpolator::evaluate(std::span<const double> point, bool& clipped) const {
  const std::size_t r = f_->rank();
  if (point.size() != r) throw std::invalid_argument("GridInterpolator: point has wrong rank");
  std::array<Stencil, kMaxRank> st;
  for (std::size_t i = 0; i < r; ++i) {
    if (!stencil(i, point[i], st[i])) {
      clipped = true;
      return {};
    }
  }
  // Odometer over the tensor-product stencil.
  std::array<int, kMaxRank> c{};
  const auto values = f_->values();
  cplx acc{};
  while (true) {
    std::size_t flat = 0;
    double w = 1.0;
    for (std::size_t i = 0; i < r; ++i) {
      flat += st[i].index[c[i]] * f_->stride(i);
      w *= st[i].weight[c[i]];
    }
    acc += w * values[flat];
    bool done = true;
    for (std::size_t i = r; i > 0; --i) {
      if (++c[i - 1] < st[i - 1].size) {
        done = false;
        break;
      }
      c[i - 1] = 0;
    }
    if (done) break;
  }
  return acc;
}

double interpolation_error_scale(const SampledFunction& f, InterpolationOrder order) {
  double worst = 0.0;
  for (const auto& a : f.axes()) {
    double h = 0.0;
    for (std::size_t j = 1; j < a.nodes.size(); ++j) h = std::max(h, a.nodes[j] - a.nodes[j - 1]);
    const double e = order == InterpolationOrder::Linear ? h * h / 8.0 : 3.0 * std::pow(h, 4) / 128.0;
    worst = std::max(worst, e);
  }
  return worst;
}

}  // namespace harmonic
