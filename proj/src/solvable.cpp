#include "harmonic/solvable.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace harmonic {

namespace {

constexpr int kMaxN = kMaxUnipotentSize;
constexpr int kMaxD = kMaxUnipotentSize * (kMaxUnipotentSize - 1) / 2;

void check_n(int n) {
  if (n < 2 || n > kMaxN) throw std::invalid_argument("matrix size n out of range");
}

// Scale factor a_i/a_j for every N coordinate, superdiagonal order.
void rho_factors(int n, const double* t, double* out) {
  double loga[kMaxN];
  for (int i = 0; i < n; ++i) loga[i] = a_log(n, t, i);
  int c = 0;
  for (int gap = 1; gap < n; ++gap) {
    for (int i = 0; i + gap < n; ++i) out[c++] = std::exp(loga[i] - loga[i + gap]);
  }
}

}  // namespace

APoint::APoint(int size, std::vector<double> log_coords) : n(size), t(std::move(log_coords)) {
  check_n(n);
  if (t.size() != static_cast<std::size_t>(n - 1)) {
    throw std::invalid_argument("APoint: expected n-1 log coordinates");
  }
}

APoint APoint::identity(int size) { return APoint(size, std::vector<double>(static_cast<std::size_t>(size - 1), 0.0)); }

double APoint::diag(int i) const { return std::exp(a_log(n, t.data(), i)); }

Matrix APoint::matrix() const {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = diag(i);
  return a;
}

APoint a_compose(const APoint& a, const APoint& b) {
  if (a.n != b.n) throw std::invalid_argument("a_compose: size mismatch");
  std::vector<double> t(a.t.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = a.t[i] + b.t[i];
  return APoint(a.n, std::move(t));
}

APoint a_inverse(const APoint& a) {
  std::vector<double> t(a.t.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = -a.t[i];
  return APoint(a.n, std::move(t));
}

APoint a_from_matrix(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<double> t(static_cast<std::size_t>(n - 1));
  for (int i = 0; i + 1 < n; ++i) {
    if (!(a(i, i) > 0.0)) throw std::invalid_argument("a_from_matrix: diagonal must be positive");
    t[static_cast<std::size_t>(i)] = std::log(a(i, i));
  }
  return APoint(n, std::move(t));
}

void rho_action_raw(int n, const double* t, const double* x, double* out) {
  double s[kMaxD];
  rho_factors(n, t, s);
  for (int c = 0; c < n_dimension(n); ++c) out[c] = s[c] * x[c];
}

NCoordinates rho_action(const APoint& a, const NCoordinates& x) {
  if (a.n != x.m) throw std::invalid_argument("rho_action: size mismatch");
  std::vector<double> out(x.coords.size());
  rho_action_raw(a.n, a.t.data(), x.coords.data(), out.data());
  return NCoordinates(x.m, std::move(out));
}

double rho_jacobian_raw(int n, const double* t) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) s += a_log(n, t, i) - a_log(n, t, j);
  }
  return std::exp(s);
}

double rho_jacobian(const APoint& a) { return rho_jacobian_raw(a.n, a.t.data()); }

SPoint s_identity(int n) { return {NCoordinates::identity(n), APoint::identity(n)}; }

SPoint s_compose(const SPoint& p, const SPoint& q) {
  return {n_compose(p.x, rho_action(p.a, q.x)), a_compose(p.a, q.a)};
}

SPoint s_inverse(const SPoint& p) {
  const APoint ainv = a_inverse(p.a);
  return {rho_action(ainv, n_inverse(p.x)), ainv};
}

Matrix s_embed(const SPoint& p) { return n_embed(p.x) * p.a.matrix(); }

HPoint h_identity(int n) { return {NCoordinates::identity(n), APoint::identity(n), APoint::identity(n)}; }

HPoint h_compose(const HPoint& p, const HPoint& q) {
  return {n_compose(p.x, rho_action(p.b, q.x)), a_compose(p.a, q.a), a_compose(p.b, q.b)};
}

HPoint h_inverse(const HPoint& p) {
  const APoint binv = a_inverse(p.b);
  return {rho_action(binv, n_inverse(p.x)), a_inverse(p.a), binv};
}

HPoint s_to_h(const SPoint& p) { return {p.x, APoint::identity(p.a.n), p.a}; }

SPoint random_s_point(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> x(static_cast<std::size_t>(n_dimension(n)));
  std::vector<double> t(static_cast<std::size_t>(n - 1));
  for (auto& v : x) v = normal(rng);
  for (auto& v : t) v = normal(rng);
  return {NCoordinates(n, std::move(x)), APoint(n, std::move(t))};
}

HPoint random_h_point(int n, std::mt19937_64& rng, double scale) {
  SPoint p = random_s_point(n, rng, scale);
  SPoint q = random_s_point(n, rng, scale);
  return {p.x, p.a, q.a};
}

double distance(const NCoordinates& x, const NCoordinates& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.coords.size(); ++i) d = std::max(d, std::abs(x.coords[i] - y.coords[i]));
  return d;
}

namespace {
double distance(const APoint& a, const APoint& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.t.size(); ++i) d = std::max(d, std::abs(a.t[i] - b.t[i]));
  return d;
}
}  // namespace

double distance(const SPoint& p, const SPoint& q) { return std::max(distance(p.x, q.x), distance(p.a, q.a)); }

double distance(const HPoint& p, const HPoint& q) {
  return std::max({distance(p.x, q.x), distance(p.a, q.a), distance(p.b, q.b)});
}

std::vector<GridAxis> a_axes(int n, double lo, double hi, int count, QuadratureRule rule) {
  check_n(n);
  std::vector<GridAxis> axes;
  for (int i = 0; i + 1 < n; ++i) {
    axes.push_back(build_axis({"t" + std::to_string(i + 1), AxisKind::LinearReal, lo, hi, count, rule, false}));
  }
  return axes;
}

std::vector<GridAxis> s_axes(int n, double n_lo, double n_hi, int n_count, double a_lo,
                             double a_hi, int a_count, QuadratureRule rule) {
  auto axes = n_axes(n, n_lo, n_hi, n_count, rule);
  auto a = a_axes(n, a_lo, a_hi, a_count, rule);
  axes.insert(axes.end(), a.begin(), a.end());
  return axes;
}

int s_size_from_axes(const SampledFunction& f) {
  for (int n = 2; n <= kMaxN; ++n) {
    if (static_cast<std::size_t>(n_dimension(n) + n - 1) == f.rank()) {
      for (const auto& a : f.axes()) {
        if (a.kind != AxisKind::LinearReal) {
          throw std::invalid_argument("S-grid function: axis '" + a.name + "' is not linear-real");
        }
      }
      return n;
    }
  }
  throw std::invalid_argument("S-grid function: rank is not n(n-1)/2 + n-1 for any supported n");
}

// ---------------------------------------------------------------------------

InvariantExtension::InvariantExtension(const SampledFunction& f, InterpolationOrder order)
    : n_(s_size_from_axes(f)), interp_(f, order) {}

cplx InvariantExtension::operator()(const double* x, const double* a, const double* b,
                                    bool& clipped) const {
  const int d = n_dimension(n_);
  std::array<double, kMaxD + kMaxN> p{};
  rho_action_raw(n_, a, x, p.data());
  for (int i = 0; i + 1 < n_; ++i) p[static_cast<std::size_t>(d + i)] = a[i] + b[i];
  return interp_.evaluate(std::span<const double>(p.data(), static_cast<std::size_t>(d + n_ - 1)), clipped);
}

SampledFunction InvariantExtension::sample(const std::vector<GridAxis>& a_grid,
                                           const std::vector<GridAxis>& b_grid,
                                           std::size_t* clipped) const {
  const int d = n_dimension(n_);
  if (a_grid.size() != static_cast<std::size_t>(n_ - 1) || b_grid.size() != a_grid.size()) {
    throw std::invalid_argument("InvariantExtension::sample: need n-1 axes for a and for b");
  }
  std::vector<GridAxis> axes(base().axes().begin(), base().axes().begin() + d);
  for (auto ax : a_grid) {
    ax.name = "a_" + ax.name;
    axes.push_back(std::move(ax));
  }
  for (auto ax : b_grid) {
    ax.name = "b_" + ax.name;
    axes.push_back(std::move(ax));
  }
  SampledFunction out = SampledFunction::zeros(std::move(axes));
  std::vector<double> p(out.rank());
  std::size_t clip_count = 0;
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.coordinates(flat, p);
    bool clip = false;
    out[flat] = (*this)(p.data(), p.data() + d, p.data() + d + n_ - 1, clip);
    if (clip) ++clip_count;
  }
  if (clipped) *clipped = clip_count;
  return out;
}

InvariantExtension extend_invariant(const SampledFunction& f, InterpolationOrder order) {
  return InvariantExtension(f, order);
}

// ---------------------------------------------------------------------------

KernelSupport kernel_support(const SampledFunction& g, double cutoff) {
  KernelSupport k;
  k.n = s_size_from_axes(g);
  k.dim = g.rank();
  double gmax = 0.0;
  for (const auto& v : g.values()) gmax = std::max(gmax, std::abs(v));
  std::vector<std::size_t> index(g.rank());
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    if (!(std::abs(g[flat]) > cutoff * gmax)) continue;
    g.unravel(flat, index);
    double w = 1.0;
    for (std::size_t a = 0; a < g.rank(); ++a) {
      k.points.push_back(g.axis(a).nodes[index[a]]);
      w *= g.axis(a).weight(index[a]);
    }
    k.weights.push_back(w * g[flat]);
  }
  return k;
}

SampledFunction s_convolve(const SampledFunction& g, const SampledFunction& f, ConvolutionMode mode,
                           InterpolationOrder order, Execution exec, ConvolutionStats* stats,
                           double support_cutoff) {
  const int n = s_size_from_axes(f);
  if (!same_grid(f, g)) throw std::invalid_argument("s_convolve: grid mismatch");
  const KernelSupport k = kernel_support(g, support_cutoff);
  const int d = n_dimension(n);
  const std::size_t r = f.rank();

  // Group mode needs q⁻¹ = (ρ(-c) m⁻¹, -c) per kernel point.
  std::vector<double> qinv(k.points.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double* q = &k.points[i * r];
    double* out = &qinv[i * r];
    double minv[kMaxD];
    double negc[kMaxN];
    for (int j = 0; j + 1 < n; ++j) negc[j] = -q[d + j];
    n_inverse_raw(n, q, minv);
    rho_action_raw(n, negc, minv, out);
    for (int j = 0; j + 1 < n; ++j) out[d + j] = negc[j];
  }

  SampledFunction out = SampledFunction::zeros(f.axes());
  const GridInterpolator interp(f, order);
  const auto n_out = static_cast<std::ptrdiff_t>(out.size());
  std::size_t clipped = 0;

#pragma omp parallel for schedule(dynamic, 64) reduction(+ : clipped) if (exec == Execution::Parallel)
  for (std::ptrdiff_t o = 0; o < n_out; ++o) {
    std::array<double, kMaxD + kMaxN> p{};
    std::array<double, kMaxD + kMaxN> arg{};
    std::array<double, kMaxD> tmp{};
    out.coordinates(static_cast<std::size_t>(o), std::span<double>(p.data(), r));
    cplx acc{};
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (mode == ConvolutionMode::Group) {
        // q⁻¹p = (q⁻¹.x · ρ(q⁻¹.t) p.x, q⁻¹.t + p.t)
        const double* qi = &qinv[i * r];
        rho_action_raw(n, qi + d, p.data(), tmp.data());
        n_compose_raw(n, qi, tmp.data(), arg.data());
        for (int j = 0; j + 1 < n; ++j) arg[static_cast<std::size_t>(d + j)] = qi[d + j] + p[static_cast<std::size_t>(d + j)];
      } else {
        const double* q = &k.points[i * r];
        for (std::size_t j = 0; j < r; ++j) arg[j] = p[j] - q[j];
      }
      bool clip = false;
      const cplx v = interp.evaluate(std::span<const double>(arg.data(), r), clip);
      if (clip) {
        ++clipped;
        continue;
      }
      acc += k.weights[i] * v;
    }
    out[static_cast<std::size_t>(o)] = acc;
  }
  if (stats) {
    stats->kernel_points = k.size();
    stats->clipped = clipped;
  }
  out.metadata.provenance = mode == ConvolutionMode::Group ? "s_convolve(group)" : "s_convolve(commutative)";
  return out;
}

cplx extension_convolve_at(const KernelSupport& g, const InvariantExtension& ext, const double* x,
                         const double* a, const double* b, ConvolutionMode mode,
                         std::size_t* clipped) {
  const int n = ext.n();
  const int d = n_dimension(n);
  const std::size_t r = g.dim;
  cplx acc{};
  std::size_t clip_count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double* m = &g.points[i * r];
    const double* c = m + d;
    std::array<double, kMaxD> nx{};
    std::array<double, kMaxN> aa{};
    std::array<double, kMaxN> bb{};
    if (mode == ConvolutionMode::Group) {
      // (m, c)⁻¹ (x, b) = (ρ(-c)(m⁻¹x), b - c), a untouched.
      std::array<double, kMaxD> minv{};
      std::array<double, kMaxD> mx{};
      std::array<double, kMaxN> negc{};
      for (int j = 0; j + 1 < n; ++j) negc[static_cast<std::size_t>(j)] = -c[j];
      n_inverse_raw(n, m, minv.data());
      n_compose_raw(n, minv.data(), x, mx.data());
      rho_action_raw(n, negc.data(), mx.data(), nx.data());
      for (int j = 0; j + 1 < n; ++j) {
        aa[static_cast<std::size_t>(j)] = a[j];
        bb[static_cast<std::size_t>(j)] = b[j] - c[j];
      }
    } else {
      for (int j = 0; j < d; ++j) nx[static_cast<std::size_t>(j)] = x[j] - m[j];
      for (int j = 0; j + 1 < n; ++j) {
        aa[static_cast<std::size_t>(j)] = a[j] - c[j];
        bb[static_cast<std::size_t>(j)] = b[j];
      }
    }
    bool clip = false;
    const cplx v = ext(nx.data(), aa.data(), bb.data(), clip);
    if (clip) {
      ++clip_count;
      continue;
    }
    acc += g.weights[i] * v;
  }
  if (clipped) *clipped += clip_count;
  return acc;
}

SampledFunction s_fourier(const SampledFunction& psi, int sign, Execution exec) {
  const int n = psi.axes().front().kind == AxisKind::Frequency
                    ? 0
                    : s_size_from_axes(psi);
  const std::size_t d = n > 0 ? static_cast<std::size_t>(n_dimension(n)) : 0;
  SampledFunction out = psi;
  for (std::size_t a = 0; a < psi.rank(); ++a) {
    SpectralSymbol sym = SpectralSymbol::Xi;
    if (n > 0 && a >= d) sym = SpectralSymbol::Lambda;
    if (n == 0 && psi.axis(a).name.rfind("lambda", 0) == 0) sym = SpectralSymbol::Lambda;
    out = dft_axis(out, a, sign, sym, exec);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Subsample every `stride`-th node of an axis, keeping its bounds.
GridAxis subsample(const GridAxis& axis, int stride) {
  const int count = (axis.count - 1) / stride + 1;
  const double hi = axis.nodes.front() + (count - 1) * stride * axis.step();
  return build_axis({axis.name, axis.kind, axis.nodes.front(), hi, count, axis.rule, false});
}

}  // namespace

ExtensionCheckResult extension_check(const SampledFunction& g, const SampledFunction& f,
                            const ExtensionCheckOptions& options) {
  const int n = s_size_from_axes(f);
  if (!same_grid(f, g)) throw std::invalid_argument("extension_check: grid mismatch");
  const int d = n_dimension(n);
  const std::size_t r = f.rank();
  const InvariantExtension ext(f, options.order);
  const KernelSupport k = kernel_support(g);
  ExtensionCheckResult res;

  // Pointwise: random (x, a, b) inside the central half of the box.
  {
    std::mt19937_64 rng(options.seed);
    std::vector<double> pts;
    for (int s = 0; s < options.pointwise_samples; ++s) {
      for (std::size_t j = 0; j < r + static_cast<std::size_t>(n - 1); ++j) {
        // b coordinates reuse the A axes' box.
        const GridAxis& ax = f.axis(j < r ? j : static_cast<std::size_t>(d) + (j - r));
        std::uniform_real_distribution<double> u(0.25 * ax.lo, 0.25 * ax.hi);
        pts.push_back(u(rng));
      }
    }
    const std::size_t stride = r + static_cast<std::size_t>(n - 1);
    double num = 0.0;
    double den = 0.0;
    std::size_t clipped = 0;
    for (int s = 0; s < options.pointwise_samples; ++s) {
      const double* p = &pts[static_cast<std::size_t>(s) * stride];
      const cplx grp = extension_convolve_at(k, ext, p, p + d, p + r, ConvolutionMode::Group, &clipped);
      const cplx com = extension_convolve_at(k, ext, p, p + d, p + r, ConvolutionMode::Commutative, &clipped);
      num = std::max(num, std::abs(grp - com));
      den = std::max(den, std::abs(grp));
    }
    res.pointwise_deviation = num / std::max(den, 1e-30);
    res.points = static_cast<std::size_t>(options.pointwise_samples);
    res.clipped += clipped;
  }

  // Spectral: H(x, a, b) = (g ∗ f̃)(x, a, b) on a coarse (x, a) grid times a
  // three-node b grid through 0.
  std::vector<GridAxis> out_axes;
  for (std::size_t j = 0; j < r; ++j) out_axes.push_back(subsample(f.axis(j), options.output_stride));
  const double hb = f.axis(r - 1).step();
  for (int j = 0; j + 1 < n; ++j) {
    out_axes.push_back(build_axis({"b" + std::to_string(j + 1), AxisKind::LinearReal, -hb, hb, 3,
                                   QuadratureRule::Trapezoid, false}));
  }
  SampledFunction h = SampledFunction::zeros(out_axes);
  std::size_t clipped = 0;
  const auto n_out = static_cast<std::ptrdiff_t>(h.size());
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : clipped) if (options.exec == Execution::Parallel)
  for (std::ptrdiff_t o = 0; o < n_out; ++o) {
    std::array<double, kMaxD + 2 * kMaxN> p{};
    h.coordinates(static_cast<std::size_t>(o), std::span<double>(p.data(), h.rank()));
    std::size_t c = 0;
    h[static_cast<std::size_t>(o)] = extension_convolve_at(k, ext, p.data(), p.data() + d, p.data() + r,
                                                          ConvolutionMode::Group, &c);
    clipped += c;
  }
  res.clipped += clipped;

  // ∫ dν/(2π) of the b-transform, then the (x, a) transform at (μ, λ).
  SampledFunction hb_hat = h;
  for (std::size_t j = r; j < h.rank(); ++j) hb_hat = dft_axis(hb_hat, j, -1, SpectralSymbol::Nu, options.exec);
  std::vector<GridAxis> xa_axes(out_axes.begin(), out_axes.begin() + static_cast<std::ptrdiff_t>(r));
  SampledFunction slice = SampledFunction::zeros(xa_axes);
  {
    const std::size_t nb = hb_hat.size() / slice.size();
    std::vector<double> nu_w(nb, 1.0);
    std::vector<std::size_t> idx(hb_hat.rank());
    for (std::size_t flat = 0; flat < hb_hat.size(); ++flat) {
      hb_hat.unravel(flat, idx);
      double w = 1.0;
      for (std::size_t j = r; j < hb_hat.rank(); ++j) w *= hb_hat.axis(j).weight(idx[j]);
      slice[flat / nb] += w * hb_hat[flat];
    }
  }

  std::vector<double> freq(r);
  std::vector<double> pt(r);
  double num = 0.0;
  double den = 0.0;
  double lsup = 0.0;
  for (double mu : options.mu) {
    for (double lam : options.lambda) {
      for (int j = 0; j < d; ++j) freq[static_cast<std::size_t>(j)] = mu;
      for (std::size_t j = static_cast<std::size_t>(d); j < r; ++j) freq[j] = lam;
      const cplx lhs = fourier_at(slice, freq, -1);
      const cplx g_hat = fourier_at(g, freq, -1);
      // F f̃(λ, μ, 0) in pulled-back coordinates u = ρ(a)x.
      cplx ft{};
      for (std::size_t flat = 0; flat < f.size(); ++flat) {
        if (f[flat] == cplx{}) continue;
        f.coordinates(flat, pt);
        const double* t = &pt[static_cast<std::size_t>(d)];
        std::array<double, kMaxN> negt{};
        for (int j = 0; j + 1 < n; ++j) negt[static_cast<std::size_t>(j)] = -t[j];
        std::array<double, kMaxD> x{};
        rho_action_raw(n, negt.data(), pt.data(), x.data());
        double phase = 0.0;
        for (int j = 0; j < d; ++j) phase += freq[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        for (std::size_t j = static_cast<std::size_t>(d); j < r; ++j) phase += freq[j] * pt[j];
        std::vector<std::size_t> idx(r);
        f.unravel(flat, idx);
        double w = 1.0 / rho_jacobian_raw(n, t);
        for (std::size_t j = 0; j < r; ++j) w *= f.axis(j).weight(idx[j]);
        ft += w * f[flat] * std::polar(1.0, -phase);
      }
      const cplx rhs = ft * g_hat;
      num = std::max(num, std::abs(lhs - rhs));
      den = std::max(den, std::abs(rhs));
      lsup = std::max(lsup, std::abs(lhs));
    }
  }
  res.spectral_deviation = num / std::max(den, 1e-30);
  res.lhs_sup = lsup;
  res.rhs_sup = den;
  res.frequencies = options.mu.size() * options.lambda.size();
  return res;
}

}  // namespace harmonic
