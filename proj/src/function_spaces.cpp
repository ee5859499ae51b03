#include "harmonic/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "harmonic/kernels.hpp"
#include "harmonic/wigner.hpp"

namespace harmonic {

namespace {

[[noreturn]] void axis_error(const std::string& name, const std::string& what) {
  throw std::invalid_argument("axis '" + name + "': " + what);
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

std::vector<std::size_t> compute_strides(const std::vector<GridAxis>& axes) {
  std::vector<std::size_t> strides(axes.size(), 1);
  for (std::size_t i = axes.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * static_cast<std::size_t>(axes[i].count);
  }
  return strides;
}

std::size_t total_size(const std::vector<GridAxis>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
  return n;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(AxisKind kind) {
  switch (kind) {
    case AxisKind::LinearReal: return "linear-real";
    case AxisKind::LogScale: return "log-scale";
    case AxisKind::Angle: return "angle";
    case AxisKind::EulerBeta: return "euler-beta";
    case AxisKind::Frequency: return "frequency";
  }
  return "?";
}

std::string_view to_string(SpectralSymbol symbol) {
  switch (symbol) {
    case SpectralSymbol::Xi: return "xi";
    case SpectralSymbol::Lambda: return "lambda";
    case SpectralSymbol::Eta: return "eta";
    case SpectralSymbol::Mu: return "mu";
    case SpectralSymbol::Nu: return "nu";
  }
  return "?";
}

std::string_view to_string(QuadratureRule rule) {
  return rule == QuadratureRule::Trapezoid ? "trapezoid" : "midpoint";
}

AxisKind parse_axis_kind(std::string_view text) {
  if (text == "linear-real") return AxisKind::LinearReal;
  if (text == "log-scale") return AxisKind::LogScale;
  if (text == "angle") return AxisKind::Angle;
  if (text == "euler-beta") return AxisKind::EulerBeta;
  if (text == "frequency") return AxisKind::Frequency;
  throw std::invalid_argument("unknown axis kind '" + std::string(text) + "'");
}

QuadratureRule parse_quadrature_rule(std::string_view text) {
  if (text == "trapezoid") return QuadratureRule::Trapezoid;
  if (text == "midpoint") return QuadratureRule::Midpoint;
  throw std::invalid_argument("unknown quadrature rule '" + std::string(text) + "'");
}

double GridAxis::step() const {
  if (!uniform() || nodes.size() < 2) {
    throw std::logic_error("axis '" + name + "' has no uniform step");
  }
  return nodes[1] - nodes[0];
}

GridAxis build_axis(const AxisSpec& spec) {
  if (spec.count < 2) axis_error(spec.name, "count must be at least 2");
  GridAxis axis;
  axis.name = spec.name;
  axis.kind = spec.kind;
  axis.count = spec.count;
  axis.rule = spec.rule;
  const auto n = static_cast<std::size_t>(spec.count);
  axis.nodes.resize(n);
  axis.weights.resize(n);

  switch (spec.kind) {
    case AxisKind::LinearReal:
    case AxisKind::LogScale: {
      if (!(spec.lo < spec.hi)) axis_error(spec.name, "lo must be below hi");
      axis.lo = spec.lo;
      axis.hi = spec.hi;
      if (spec.rule == QuadratureRule::Trapezoid) {
        const double h = (spec.hi - spec.lo) / static_cast<double>(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
          axis.nodes[j] = spec.lo + static_cast<double>(j) * h;
          axis.weights[j] = h;
        }
        axis.nodes[n - 1] = spec.hi;
        axis.weights.front() *= 0.5;
        axis.weights.back() *= 0.5;
      } else {
        const double h = (spec.hi - spec.lo) / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
          axis.nodes[j] = spec.lo + (static_cast<double>(j) + 0.5) * h;
          axis.weights[j] = h;
        }
      }
      break;
    }
    case AxisKind::Angle: {
      axis.lo = 0.0;
      axis.hi = kTwoPi;
      const double h = kTwoPi / static_cast<double>(n);
      for (std::size_t j = 0; j < n; ++j) {
        axis.nodes[j] = static_cast<double>(j) * h;
        axis.weights[j] = h;
      }
      if (spec.haar_normalized) axis.measure_normalizer = 1.0 / kTwoPi;
      break;
    }
    case AxisKind::EulerBeta: {
      std::vector<double> x;
      std::vector<double> w;
      gauss_legendre(spec.count, x, w);
      // x descends from +1; beta = acos(x) then ascends.
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
      for (std::size_t j = 0; j < n; ++j) {
        axis.nodes[j] = std::acos(std::clamp(x[order[j]], -1.0, 1.0));
        axis.weights[j] = w[order[j]];
      }
      axis.lo = 0.0;
      axis.hi = kPi;
      if (spec.haar_normalized) axis.measure_normalizer = 0.5;
      break;
    }
    case AxisKind::Frequency:
      axis_error(spec.name, "frequency axes are produced by dft_axis, not build_grid");
  }
  return axis;
}

std::vector<GridAxis> build_grid(std::span<const AxisSpec> specs) {
  std::vector<GridAxis> axes;
  axes.reserve(specs.size());
  for (const auto& s : specs) axes.push_back(build_axis(s));
  return axes;
}

GridAxis frequency_axis(const GridAxis& spatial, SpectralSymbol symbol) {
  if (spatial.kind != AxisKind::LinearReal && spatial.kind != AxisKind::LogScale) {
    axis_error(spatial.name, "only linear-real and log-scale axes have a frequency dual");
  }
  const auto n = static_cast<std::size_t>(spatial.count);
  const double dxi = kTwoPi / (static_cast<double>(n) * spatial.step());
  GridAxis axis;
  axis.name = std::string(to_string(symbol)) + "_" + spatial.name;
  axis.kind = AxisKind::Frequency;
  axis.count = spatial.count;
  axis.nodes.resize(n);
  axis.weights.assign(n, dxi);
  const auto half = static_cast<double>(n / 2);
  for (std::size_t k = 0; k < n; ++k) axis.nodes[k] = (static_cast<double>(k) - half) * dxi;
  axis.lo = axis.nodes.front();
  axis.hi = axis.nodes.back();
  SpectralAxis spec;
  spec.symbol = symbol;
  spec.dual = AxisSpec{spatial.name, spatial.kind, spatial.lo, spatial.hi, spatial.count, spatial.rule, false};
  axis.measure_normalizer = spec.measure_normalizer;
  axis.spectral = spec;
  return axis;
}

// ---------------------------------------------------------------------------

SampledFunction::SampledFunction(std::vector<GridAxis> axes, std::vector<cplx> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  for (const auto& a : axes_) {
    if (a.count < 1 || a.nodes.size() != static_cast<std::size_t>(a.count) ||
        a.weights.size() != a.nodes.size()) {
      axis_error(a.name, "node/weight arrays do not match count");
    }
  }
  if (values_.size() != total_size(axes_)) {
    throw std::invalid_argument("SampledFunction: value tensor does not match axis counts");
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("SampledFunction: non-finite sample");
    }
  }
  strides_ = compute_strides(axes_);
}

SampledFunction SampledFunction::zeros(std::vector<GridAxis> axes) {
  const std::size_t n = total_size(axes);
  return SampledFunction(std::move(axes), std::vector<cplx>(n, cplx{}));
}

std::vector<std::size_t> SampledFunction::shape() const {
  std::vector<std::size_t> s;
  s.reserve(axes_.size());
  for (const auto& a : axes_) s.push_back(static_cast<std::size_t>(a.count));
  return s;
}

std::optional<std::size_t> SampledFunction::find_axis(std::string_view name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t SampledFunction::axis_index(std::string_view name) const {
  if (auto i = find_axis(name)) return *i;
  throw std::invalid_argument("axis '" + std::string(name) + "' not found");
}

cplx SampledFunction::at(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < axes_.size(); ++i) flat += index[i] * strides_[i];
  return values_.at(flat);
}

void SampledFunction::unravel(std::size_t flat, std::span<std::size_t> index) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    index[i] = flat / strides_[i];
    flat -= index[i] * strides_[i];
  }
}

void SampledFunction::coordinates(std::size_t flat, std::span<double> point) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const std::size_t j = flat / strides_[i];
    flat -= j * strides_[i];
    point[i] = axes_[i].nodes[j];
  }
}

bool same_grid(const SampledFunction& f, const SampledFunction& g, double tol) {
  if (f.rank() != g.rank()) return false;
  for (std::size_t i = 0; i < f.rank(); ++i) {
    const auto& a = f.axis(i);
    const auto& b = g.axis(i);
    if (a.kind != b.kind || a.count != b.count) return false;
    for (std::size_t j = 0; j < a.nodes.size(); ++j) {
      if (std::abs(a.nodes[j] - b.nodes[j]) > tol) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

cplx integrate(const SampledFunction& f, Execution exec) {
  // Contract axes from the last one inward.
  std::vector<cplx> current(f.values().begin(), f.values().end());
  std::size_t outer = f.size();
  for (std::size_t i = f.rank(); i-- > 0;) {
    const auto& axis = f.axis(i);
    const auto n = static_cast<std::size_t>(axis.count);
    outer /= n;
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = axis.weight(j);
    std::vector<cplx> next(outer);
    kernels::contract_axis(w, current, next, outer, 1, exec);
    current.swap(next);
  }
  return current.empty() ? cplx{} : current.front();
}

double norm_squared(const SampledFunction& f, Execution exec) {
  return integrate(abs_squared(f), exec).real();
}

SampledFunction dft_axis(const SampledFunction& f, std::string_view axis, int sign,
                         SpectralSymbol symbol, Execution exec) {
  return dft_axis(f, f.axis_index(axis), sign, symbol, exec);
}

SampledFunction dft_axis(const SampledFunction& f, std::size_t axis_pos, int sign,
                         SpectralSymbol symbol, Execution exec) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("dft_axis: sign must be +1 or -1");
  if (axis_pos >= f.rank()) throw std::invalid_argument("dft_axis: axis not found");
  const GridAxis& src = f.axis(axis_pos);
  if (src.compact()) {
    axis_error(src.name, "compact axes are transformed with peter_weyl_transform");
  }

  GridAxis dst = dual_axis(src, symbol);
  const CMatrix kernel = dft_matrix(src, dst, sign);
  const auto n_out = static_cast<std::size_t>(dst.count);

  std::size_t outer = 1;
  for (std::size_t i = 0; i < axis_pos; ++i) outer *= f.extent(i);
  std::size_t inner = 1;
  for (std::size_t i = axis_pos + 1; i < f.rank(); ++i) inner *= f.extent(i);

  std::vector<cplx> out(outer * n_out * inner);
  kernels::apply_along_axis(kernel, f.values(), out, outer, inner, exec);

  std::vector<GridAxis> axes = f.axes();
  axes[axis_pos] = std::move(dst);
  SampledFunction result(std::move(axes), std::move(out));
  result.metadata.provenance = f.metadata.provenance;
  return result;
}

GridAxis dual_axis(const GridAxis& src, SpectralSymbol symbol) {
  if (src.compact()) {
    axis_error(src.name, "compact axes are transformed with peter_weyl_transform");
  }
  if (src.kind == AxisKind::Frequency) return build_axis(src.spectral->dual);
  return frequency_axis(src, symbol);
}

CMatrix dft_matrix(const GridAxis& src, const GridAxis& dst, int sign) {
  CMatrix kernel(dst.count, src.count);
  for (int k = 0; k < dst.count; ++k) {
    for (int j = 0; j < src.count; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      kernel(k, j) = src.weight(jj) * std::polar(1.0, sign * dst.nodes[static_cast<std::size_t>(k)] * src.nodes[jj]);
    }
  }
  return kernel;
}

cplx fourier_at(const SampledFunction& f, std::span<const double> freqs, int sign) {
  if (freqs.size() != f.rank()) {
    throw std::invalid_argument("fourier_at: one frequency per axis required");
  }
  // Separable phase factors, then a single weighted pass over the tensor.
  std::vector<std::vector<cplx>> factors(f.rank());
  for (std::size_t i = 0; i < f.rank(); ++i) {
    const auto& a = f.axis(i);
    if (a.compact()) axis_error(a.name, "compact axes have no Euclidean Fourier transform");
    factors[i].resize(static_cast<std::size_t>(a.count));
    for (std::size_t j = 0; j < factors[i].size(); ++j) {
      factors[i][j] = a.weight(j) * std::polar(1.0, sign * freqs[i] * a.nodes[j]);
    }
  }
  std::vector<std::size_t> idx(f.rank());
  cplx acc{};
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    f.unravel(flat, idx);
    cplx w{1.0, 0.0};
    for (std::size_t i = 0; i < f.rank(); ++i) w *= factors[i][idx[i]];
    acc += w * f[flat];
  }
  return acc;
}

SampledFunction outer_product(const SampledFunction& a, const SampledFunction& b) {
  std::vector<GridAxis> axes = a.axes();
  axes.insert(axes.end(), b.axes().begin(), b.axes().end());
  std::vector<cplx> values(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) values[i * b.size() + j] = a[i] * b[j];
  }
  SampledFunction out(std::move(axes), std::move(values));
  out.metadata.decay_warning = a.metadata.decay_warning || b.metadata.decay_warning;
  out.metadata.provenance = "[" + a.metadata.provenance + "," + b.metadata.provenance + "]";
  return out;
}

SampledFunction linear_combination(cplx alpha, const SampledFunction& f, cplx beta,
                                   const SampledFunction& g) {
  if (!same_grid(f, g)) throw std::invalid_argument("linear_combination: grid mismatch");
  std::vector<cplx> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values[i] = alpha * f[i] + beta * g[i];
  return SampledFunction(f.axes(), std::move(values));
}

SampledFunction abs_squared(const SampledFunction& f) {
  std::vector<cplx> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values[i] = std::norm(f[i]);
  return SampledFunction(f.axes(), std::move(values));
}

void write_csv(std::ostream& out, const SampledFunction& f) {
  out.precision(17);
  for (const auto& a : f.axes()) out << a.name << ',';
  out << "re,im\n";
  std::vector<double> point(f.rank());
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    f.coordinates(flat, point);
    for (double x : point) out << x << ',';
    out << f[flat].real() << ',' << f[flat].imag() << '\n';
  }
}

// ---------------------------------------------------------------------------

std::string_view to_string(TestFunctionKind kind) {
  switch (kind) {
    case TestFunctionKind::Gaussian: return "gaussian";
    case TestFunctionKind::Bump: return "bump";
    case TestFunctionKind::TrigPolynomial: return "trig-polynomial";
    case TestFunctionKind::WignerPolynomial: return "wigner-polynomial";
    case TestFunctionKind::DeltaApprox: return "delta-approx";
  }
  return "?";
}

TestFunctionKind parse_test_function_kind(std::string_view text) {
  if (text == "gaussian") return TestFunctionKind::Gaussian;
  if (text == "bump") return TestFunctionKind::Bump;
  if (text == "trig-polynomial" || text == "trig") return TestFunctionKind::TrigPolynomial;
  if (text == "wigner-polynomial" || text == "wigner") return TestFunctionKind::WignerPolynomial;
  if (text == "delta-approx" || text == "delta") return TestFunctionKind::DeltaApprox;
  throw std::invalid_argument("unknown test function kind '" + std::string(text) + "'");
}

std::string describe(const TestFunctionSpec& spec) {
  nlohmann::json j;
  j["kind"] = to_string(spec.kind);
  j["center"] = spec.center;
  j["width"] = spec.width;
  if (!spec.trig_coefficients.empty()) {
    auto& t = j["trig_coefficients"];
    for (const auto& [k, c] : spec.trig_coefficients) {
      t.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
    }
  }
  if (!spec.wigner_terms.empty()) {
    auto& t = j["wigner_terms"];
    for (const auto& w : spec.wigner_terms) {
      t.push_back({{"l", w.l}, {"m", w.m}, {"mp", w.mp}, {"re", w.coefficient.real()},
                   {"im", w.coefficient.imag()}});
    }
  }
  if (spec.band > 0) j["band"] = spec.band;
  return j.dump();
}

namespace {

struct AxisRoles {
  std::vector<std::size_t> noncompact;
  std::vector<std::size_t> angles;
  std::optional<std::size_t> beta;
};

AxisRoles classify(const std::vector<GridAxis>& axes) {
  AxisRoles roles;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    switch (axes[i].kind) {
      case AxisKind::LinearReal:
      case AxisKind::LogScale: roles.noncompact.push_back(i); break;
      case AxisKind::Angle: roles.angles.push_back(i); break;
      case AxisKind::EulerBeta: roles.beta = i; break;
      case AxisKind::Frequency:
        throw std::invalid_argument("make_test_function: frequency axes are not sampled directly");
    }
  }
  return roles;
}

double center_of(const TestFunctionSpec& spec, std::size_t slot) {
  return slot < spec.center.size() ? spec.center[slot] : 0.0;
}

struct EulerSlots {
  std::size_t alpha;
  std::size_t beta;
  std::size_t gamma;
};

EulerSlots euler_slots(const AxisRoles& roles) {
  if (!roles.beta || roles.angles.size() != 2) {
    throw std::invalid_argument("SO(3) test functions need alpha, beta, gamma axes");
  }
  return {roles.angles[0], *roles.beta, roles.angles[1]};
}

}  // namespace

SampledFunction make_test_function(const TestFunctionSpec& spec, std::vector<GridAxis> axes) {
  if (!(spec.width > 0.0)) throw std::invalid_argument("make_test_function: width must be positive");
  const AxisRoles roles = classify(axes);
  SampledFunction f = SampledFunction::zeros(std::move(axes));
  std::vector<double> p(f.rank());
  const double w = spec.width;

  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    f.coordinates(flat, p);
    cplx v{1.0, 0.0};
    switch (spec.kind) {
      case TestFunctionKind::Gaussian: {
        double e = 0.0;
        for (std::size_t s = 0; s < roles.noncompact.size(); ++s) {
          const double d = p[roles.noncompact[s]] - center_of(spec, s);
          e += d * d;
        }
        v = std::exp(-e / (2.0 * w * w));
        break;
      }
      case TestFunctionKind::Bump: {
        double r2 = 0.0;
        for (std::size_t s = 0; s < roles.noncompact.size(); ++s) {
          const double d = (p[roles.noncompact[s]] - center_of(spec, s)) / w;
          r2 += d * d;
        }
        v = r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
        break;
      }
      case TestFunctionKind::TrigPolynomial: {
        if (roles.angles.size() != 1 || roles.beta) {
          throw std::invalid_argument("trig-polynomial needs exactly one angle axis");
        }
        const double theta = p[roles.angles[0]];
        v = 0.0;
        for (const auto& [k, c] : spec.trig_coefficients) v += c * std::polar(1.0, k * theta);
        break;
      }
      case TestFunctionKind::WignerPolynomial: {
        const auto slots = euler_slots(roles);
        v = 0.0;
        for (const auto& t : spec.wigner_terms) {
          v += t.coefficient * std::polar(1.0, -t.m * p[slots.alpha]) *
               wigner_small_d(t.l, t.m, t.mp, p[slots.beta]) *
               std::polar(1.0, -t.mp * p[slots.gamma]);
        }
        break;
      }
      case TestFunctionKind::DeltaApprox: {
        double e = 0.0;
        double norm = 1.0;
        for (std::size_t s = 0; s < roles.noncompact.size(); ++s) {
          const double d = p[roles.noncompact[s]] - center_of(spec, s);
          e += d * d;
          norm /= std::sqrt(kTwoPi) * w;
        }
        v = norm * std::exp(-e / (2.0 * w * w));
        if (roles.beta) {
          const auto slots = euler_slots(roles);
          const double omega = zyz_rotation_angle(p[slots.alpha], p[slots.beta], p[slots.gamma]);
          double k = 0.0;
          for (int l = 0; l <= spec.band; ++l) k += (2 * l + 1) * so3_character(l, omega);
          v *= k;
        } else if (roles.angles.size() == 1) {
          const double theta = p[roles.angles[0]] - center_of(spec, roles.noncompact.size());
          double k = 0.0;
          for (int m = -spec.band; m <= spec.band; ++m) k += std::cos(m * theta);
          v *= k;
        }
        break;
      }
    }
    f[flat] = v;
  }

  // Boundary decay on noncompact axes.
  if (spec.kind == TestFunctionKind::Gaussian || spec.kind == TestFunctionKind::Bump ||
      spec.kind == TestFunctionKind::DeltaApprox) {
    std::vector<std::size_t> idx(f.rank());
    double boundary = 0.0;
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
      f.unravel(flat, idx);
      bool on_edge = false;
      for (std::size_t a : roles.noncompact) {
        if (idx[a] == 0 || idx[a] + 1 == f.extent(a)) on_edge = true;
      }
      if (on_edge) boundary = std::max(boundary, std::abs(f[flat]));
    }
    f.metadata.boundary_max = boundary;
    f.metadata.decay_warning = boundary > kDecayThreshold;
    if (f.metadata.decay_warning && spec.strict) {
      std::ostringstream msg;
      msg << "test function does not decay at the grid boundary (|f| = " << boundary << ")";
      throw std::domain_error(msg.str());
    }
  }
  f.metadata.provenance = describe(spec);
  return f;
}

}  // namespace harmonic
