#include "harmonic/semisimple.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "harmonic/kernels.hpp"

namespace harmonic {

namespace {

std::size_t product_of_extents(std::span<const GridAxis> axes) {
  std::size_t p = 1;
  for (const auto& a : axes) p *= static_cast<std::size_t>(a.count);
  return p;
}

void check_chart_function(const SampledFunction& f, const SLChart& chart, const char* who) {
  if (f.rank() != chart.axes.size()) {
    throw std::invalid_argument(std::string(who) + ": function does not live on the chart grid");
  }
  for (std::size_t i = 0; i < f.rank(); ++i) {
    if (f.axis(i).count != chart.axes[i].count || f.axis(i).kind != chart.axes[i].kind) {
      throw std::invalid_argument(std::string(who) + ": axis " + f.axis(i).name + " differs from the chart");
    }
  }
}

SpectralSymbol symbol_for(const SLChart& chart, std::size_t axis) {
  if (axis < chart.scale_axes()) return SpectralSymbol::Eta;
  if (axis < chart.scale_axes() + chart.d()) return SpectralSymbol::Xi;
  return SpectralSymbol::Lambda;
}

// Synthesis row d_γ γ(k)_{ji} for every entry, in PeterWeylBasis order.
std::vector<cplx> synthesis_row(KGroup group, int band, const KElement& k) {
  std::vector<cplx> row;
  for (const auto& label : irrep_labels(group, band)) {
    const CMatrix g = irrep_matrix(label, k);
    const int d = label.dim();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) row.push_back(static_cast<double>(d) * g(j, i));
    }
  }
  return row;
}

Matrix k_matrix(const GPoint& p) { return rotation_matrix(p.k); }

}  // namespace

// ---------------------------------------------------------------------------
// Points and orders

Matrix g_matrix(const GPoint& p) {
  IwasawaFactors f{k_matrix(p), p.a.matrix(), n_embed(p.x)};
  return compose(f, p.order);
}

GPoint g_point_from_matrix(const Matrix& g, FactorOrder order) {
  const IwasawaFactors f = factorize(g, order);
  const KGroup group = g.rows() == 2 ? KGroup::SO2 : KGroup::SO3;
  if (g.rows() > 3) throw std::invalid_argument("g_point_from_matrix: only n = 2, 3 have a K chart");
  return {k_element_from_rotation(group, f.k), a_from_matrix(f.a), n_extract(f.n_part), order};
}

GPoint convert_order(const GPoint& p, FactorOrder to) {
  if (p.order == to) return p;
  GPoint q = p;
  q.order = to;
  // k-first pair and k-last pair differ only in where a sits relative to n.
  if ((p.order == FactorOrder::KAN && to == FactorOrder::KNA) ||
      (p.order == FactorOrder::NAK && to == FactorOrder::ANK)) {
    // a n = (a n a⁻¹) a ; n a = a (a⁻¹ n a)
    q.x = p.order == FactorOrder::KAN ? rho_action(p.a, p.x) : rho_action(a_inverse(p.a), p.x);
    return q;
  }
  if ((p.order == FactorOrder::KNA && to == FactorOrder::KAN) ||
      (p.order == FactorOrder::ANK && to == FactorOrder::NAK)) {
    q.x = p.order == FactorOrder::KNA ? rho_action(a_inverse(p.a), p.x) : rho_action(p.a, p.x);
    return q;
  }
  return g_point_from_matrix(g_matrix(p), to);
}

double haar_density(FactorOrder order, int n, const double* t) {
  switch (order) {
    case FactorOrder::ANK:
    case FactorOrder::KNA: return 1.0;
    case FactorOrder::KAN: return rho_jacobian_raw(n, t);
    case FactorOrder::NAK: return 1.0 / rho_jacobian_raw(n, t);
  }
  return 1.0;
}

double haar_density(FactorOrder order, const APoint& a) { return haar_density(order, a.n, a.t.data()); }

// ---------------------------------------------------------------------------
// Charts

std::size_t SLChart::size() const { return product_of_extents(axes); }

SLChart make_sl_chart(int n, AxisRange n_axis, AxisRange a_axis, int k_count, int band,
                      QuadratureRule rule) {
  if (n != 2 && n != 3) throw std::invalid_argument("make_sl_chart: n must be 2 or 3");
  if (band < 0) throw std::invalid_argument("make_sl_chart: band must be >= 0");
  SLChart chart;
  chart.n = n;
  chart.group = n == 2 ? KGroup::SO2 : KGroup::SO3;
  chart.band = band;
  chart.axes = s_axes(n, n_axis.lo, n_axis.hi, n_axis.count, a_axis.lo, a_axis.hi, a_axis.count, rule);
  for (auto& k : k_axes(chart.group, k_count)) chart.axes.push_back(std::move(k));
  return chart;
}

SLChart make_glplus_chart(int n, AxisRange n_axis, AxisRange a_axis, int k_count, int band,
                          AxisRange scale_axis, QuadratureRule rule) {
  SLChart chart = make_sl_chart(n, n_axis, a_axis, k_count, band, rule);
  chart.has_scale = true;
  chart.axes.insert(chart.axes.begin(),
                    build_axis({"u", AxisKind::LogScale, scale_axis.lo, scale_axis.hi, scale_axis.count, rule, false}));
  return chart;
}

ChartPoint chart_point(const SLChart& chart, std::span<const double> coords) {
  if (coords.size() != chart.axes.size()) throw std::invalid_argument("chart_point: wrong number of coordinates");
  ChartPoint p;
  std::size_t i = 0;
  if (chart.has_scale) p.u = coords[i++];
  p.x.assign(coords.begin() + static_cast<std::ptrdiff_t>(i), coords.begin() + static_cast<std::ptrdiff_t>(i + chart.d()));
  i += chart.d();
  p.t.assign(coords.begin() + static_cast<std::ptrdiff_t>(i), coords.begin() + static_cast<std::ptrdiff_t>(i) + chart.n - 1);
  i += static_cast<std::size_t>(chart.n - 1);
  p.angles.assign(coords.begin() + static_cast<std::ptrdiff_t>(i), coords.end());
  return p;
}

GPoint g_point(const SLChart& chart, const ChartPoint& p, FactorOrder order) {
  return {k_element_at(chart.group, p.angles), APoint(chart.n, p.t), NCoordinates(chart.n, p.x), order};
}

std::vector<double> chart_coordinates(const SLChart& chart, const Matrix& g) {
  if (g.rows() != chart.n) throw std::invalid_argument("chart_coordinates: matrix size differs from the chart");
  const GPoint p = g_point_from_matrix(g, FactorOrder::ANK);
  std::vector<double> out = p.x.coords;
  out.insert(out.end(), p.a.t.begin(), p.a.t.end());
  if (const auto* e = std::get_if<SO2Element>(&p.k)) {
    out.push_back(e->theta);
  } else {
    const auto& r = std::get<SO3Element>(p.k);
    out.insert(out.end(), {r.alpha, r.beta, r.gamma});
  }
  return out;
}

SampledFunction sample_on_chart(const GFunction& F, const SLChart& chart, FactorOrder order) {
  SampledFunction f = SampledFunction::zeros(chart.axes);
  const auto total = static_cast<std::ptrdiff_t>(f.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t flat = 0; flat < total; ++flat) {
    std::vector<double> c(chart.axes.size());
    f.coordinates(static_cast<std::size_t>(flat), c);
    const ChartPoint p = chart_point(chart, c);
    Matrix g = g_matrix(g_point(chart, p, order));
    if (chart.has_scale) g *= std::exp(p.u);
    f[static_cast<std::size_t>(flat)] = F(g);
  }
  f.metadata.provenance = "sampled on chart, " + std::string(to_string(order)) + " reading";
  return f;
}

cplx haar_integrate(const SampledFunction& f, const SLChart& chart, FactorOrder order) {
  check_chart_function(f, chart, "haar_integrate");
  if (order == FactorOrder::ANK || order == FactorOrder::KNA) return integrate(f);
  SampledFunction g = f;
  const std::size_t t0 = chart.scale_axes() + chart.d();
  std::vector<double> c(f.rank());
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    g.coordinates(flat, c);
    g[flat] *= haar_density(order, chart.n, &c[t0]);
  }
  return integrate(g);
}

// ---------------------------------------------------------------------------
// Interpolated chart functions

ChartFunction::ChartFunction(const SampledFunction& f, const SLChart& chart, InterpolationOrder order)
    : chart_(&chart), interp_(f, order) {
  check_chart_function(f, chart, "ChartFunction");
  if (chart.has_scale) throw std::invalid_argument("ChartFunction: SL charts only");
  if (chart.group == KGroup::SO3) {
    // Peter–Weyl synthesis in K instead of interpolation across the Euler
    // chart, whose beta nodes stop short of the poles.
    const int band = k_axes_band(chart.group, chart.k_axes_span()) / 2;
    basis_ = peter_weyl_basis(chart.group, chart.k_axes_span(), band);
    std::vector<GridAxis> axes(chart.axes.begin(), chart.axes.begin() + static_cast<std::ptrdiff_t>(chart.noncompact_axes()));
    const std::size_t p = product_of_extents(axes);
    const std::size_t kn = static_cast<std::size_t>(basis_.forward.cols());
    const std::size_t e = basis_.entries();
    std::vector<cplx> coeff(p * e);
    kernels::apply_along_axis(basis_.forward, f.values(), coeff, p, 1);
    (void)kn;
    coeffs_.reserve(e);
    for (std::size_t j = 0; j < e; ++j) {
      std::vector<cplx> v(p);
      for (std::size_t q = 0; q < p; ++q) v[q] = coeff[q * e + j];
      coeffs_.emplace_back(axes, std::move(v));
    }
    for (const auto& c : coeffs_) coeff_interp_.emplace_back(c, order);
  }
}

cplx ChartFunction::operator()(const Matrix& g, bool& clipped) const {
  const std::vector<double> c = chart_coordinates(*chart_, g);
  if (coeffs_.empty()) return interp_.evaluate(c, clipped);
  const std::size_t m = chart_->noncompact_axes();
  const std::span<const double> pos(c.data(), m);
  const KElement k = k_element_at(chart_->group, std::span<const double>(c.data() + m, 3));
  const int band = k_axes_band(chart_->group, chart_->k_axes_span()) / 2;
  const std::vector<cplx> row = synthesis_row(chart_->group, band, k);
  cplx acc{};
  for (std::size_t j = 0; j < coeff_interp_.size(); ++j) {
    acc += coeff_interp_[j].evaluate(pos, clipped) * row[j];
    if (clipped) return {};
  }
  return acc;
}

cplx ChartFunction::operator()(const Matrix& g) const {
  bool clipped = false;
  return (*this)(g, clipped);
}

UpsilonExtension::UpsilonExtension(const SampledFunction& f, const SLChart& chart, InterpolationOrder order)
    : f_(f, chart, order) {}

cplx UpsilonExtension::operator()(const Matrix& g, const KElement& k1, bool& clipped) const {
  return f_(g * rotation_matrix(k1), clipped);
}

cplx UpsilonExtension::operator()(const Matrix& g, const KElement& k1) const {
  bool clipped = false;
  return (*this)(g, k1, clipped);
}

ConvolutionAtPoint upsilon_convolve(const UpsilonExtension& ext, const SampledFunction& psi,
                                    const SLChart& chart, const Matrix& g, const KElement& k1,
                                    Execution exec, double cutoff) {
  check_chart_function(psi, chart, "upsilon_convolve");
  double peak = 0.0;
  for (const cplx v : psi.values()) peak = std::max(peak, std::abs(v));
  std::vector<std::size_t> support;
  for (std::size_t flat = 0; flat < psi.size(); ++flat) {
    if (std::abs(psi[flat]) > cutoff * peak) support.push_back(flat);
  }
  // Terms are summed serially afterwards so the result does not depend on
  // the thread count.
  std::vector<cplx> terms(support.size());
  std::size_t clipped = 0;
  const auto count = static_cast<std::ptrdiff_t>(support.size());
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : clipped) if (exec == Execution::Parallel)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    const std::size_t flat = support[static_cast<std::size_t>(s)];
    std::vector<double> c(psi.rank());
    std::vector<std::size_t> idx(psi.rank());
    psi.coordinates(flat, c);
    psi.unravel(flat, idx);
    double w = 1.0;
    for (std::size_t i = 0; i < psi.rank(); ++i) w *= psi.axis(i).weight(idx[i]);
    const Matrix g2 = g_matrix(g_point(chart, chart_point(chart, c), FactorOrder::ANK));
    bool clip = false;
    terms[static_cast<std::size_t>(s)] = w * psi[flat] * ext(g * g2.inverse(), k1, clip);
    if (clip) ++clipped;
  }
  cplx acc{};
  for (const cplx v : terms) acc += v;
  return {acc, support.size(), clipped};
}

SampledFunction involution(const SampledFunction& f, const SLChart& chart, InterpolationOrder order,
                           std::size_t* clipped, Execution exec) {
  const ChartFunction cf(f, chart, order);
  SampledFunction out = SampledFunction::zeros(chart.axes);
  std::size_t clips = 0;
  const auto total = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : clips) if (exec == Execution::Parallel)
  for (std::ptrdiff_t flat = 0; flat < total; ++flat) {
    std::vector<double> c(chart.axes.size());
    out.coordinates(static_cast<std::size_t>(flat), c);
    const Matrix g = g_matrix(g_point(chart, chart_point(chart, c), FactorOrder::ANK));
    bool clip = false;
    out[static_cast<std::size_t>(flat)] = std::conj(cf(g.inverse(), clip));
    if (clip) ++clips;
  }
  if (clipped != nullptr) *clipped = clips;
  out.metadata.provenance = "involution of " + f.metadata.provenance;
  return out;
}

// ---------------------------------------------------------------------------
// Combined transform

CMatrix SpectralTable::block(std::size_t freq, std::size_t label) const {
  const int d = labels.at(label).dim();
  CMatrix b(d, d);
  const std::size_t base = freq * entries + offsets.at(label);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) b(i, j) = values[base + static_cast<std::size_t>(i * d + j)];
  }
  return b;
}

namespace {

// Π of frequency weights (with normalizers) for each flat frequency index.
std::vector<double> frequency_weights(const std::vector<GridAxis>& axes) {
  std::vector<double> w(1, 1.0);
  for (const auto& a : axes) {
    std::vector<double> next;
    next.reserve(w.size() * static_cast<std::size_t>(a.count));
    for (const double v : w) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(a.count); ++j) next.push_back(v * a.weight(j));
    }
    w = std::move(next);
  }
  return w;
}

}  // namespace

std::vector<double> SpectralTable::norms_per_label() const {
  const std::vector<double> w = frequency_weights(freq_axes);
  std::vector<double> out(labels.size(), 0.0);
  for (std::size_t f = 0; f < w.size(); ++f) {
    for (std::size_t l = 0; l < labels.size(); ++l) {
      const int d = labels[l].dim();
      double s = 0.0;
      for (int e = 0; e < d * d; ++e) s += std::norm(values[f * entries + offsets[l] + static_cast<std::size_t>(e)]);
      out[l] += w[f] * static_cast<double>(d) * s;
    }
  }
  return out;
}

double SpectralTable::hs_norm_squared() const {
  double s = 0.0;
  for (const double v : norms_per_label()) s += v;
  return s;
}

SpectralTable sl_fourier(const SampledFunction& f, const SLChart& chart, Execution exec) {
  check_chart_function(f, chart, "sl_fourier");
  const PeterWeylBasis basis = peter_weyl_basis(chart.group, chart.k_axes_span(), chart.band);
  const std::size_t m = chart.noncompact_axes();
  const std::size_t kn = static_cast<std::size_t>(basis.forward.cols());
  const std::size_t e = basis.entries();
  const std::size_t p = f.size() / kn;

  SpectralTable table;
  table.n = chart.n;
  table.group = chart.group;
  table.band = chart.band;
  table.labels = basis.labels;
  table.offsets = basis.offsets;
  table.entries = e;
  table.band_warning = chart.band > k_axes_band(chart.group, chart.k_axes_span());

  std::vector<cplx> cur(p * e);
  kernels::apply_along_axis(basis.forward, f.values(), cur, p, 1, exec);

  std::vector<cplx> next(cur.size());
  for (std::size_t i = 0; i < m; ++i) {
    const GridAxis& src = chart.axes[i];
    table.freq_axes.push_back(dual_axis(src, symbol_for(chart, i)));
    std::size_t outer = 1;
    std::size_t inner = e;
    for (std::size_t j = 0; j < i; ++j) outer *= static_cast<std::size_t>(chart.axes[j].count);
    for (std::size_t j = i + 1; j < m; ++j) inner *= static_cast<std::size_t>(chart.axes[j].count);
    kernels::apply_along_axis(dft_matrix(src, table.freq_axes.back(), -1), cur, next, outer, inner, exec);
    std::swap(cur, next);
  }
  table.values = std::move(cur);
  return table;
}

namespace {

// Contracts the frequency axes of a per-frequency scalar field with
// W e^{+i ν·p}, one axis at a time.
cplx contract_frequencies(const std::vector<GridAxis>& axes, std::vector<cplx> field,
                          std::span<const double> point) {
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const GridAxis& a = axes[i];
    CMatrix row(1, a.count);
    for (int j = 0; j < a.count; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      row(0, j) = a.weight(jj) * std::polar(1.0, a.nodes[jj] * point[i]);
    }
    std::vector<cplx> out(field.size() / static_cast<std::size_t>(a.count));
    kernels::apply_along_axis(row, field, out, 1, out.size(), Execution::Serial);
    field = std::move(out);
  }
  return field.at(0);
}

}  // namespace

cplx sl_invert(const SpectralTable& table, const SLChart& chart, std::span<const double> point) {
  if (point.size() != chart.axes.size()) throw std::invalid_argument("sl_invert: wrong number of coordinates");
  const std::size_t m = chart.noncompact_axes();
  const KElement k = k_element_at(table.group, point.subspan(m));
  const std::vector<cplx> row = synthesis_row(table.group, table.band, k);
  const std::size_t nf = table.frequency_count();
  std::vector<cplx> field(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    cplx s{};
    for (std::size_t e = 0; e < table.entries; ++e) s += table.values[f * table.entries + e] * row[e];
    field[f] = s;
  }
  return contract_frequencies(table.freq_axes, std::move(field), point.first(m));
}

cplx sl_invert_at_identity(const SpectralTable& table) {
  const std::vector<double> w = frequency_weights(table.freq_axes);
  cplx acc{};
  for (std::size_t f = 0; f < w.size(); ++f) {
    cplx tr{};
    for (std::size_t l = 0; l < table.labels.size(); ++l) {
      const int d = table.labels[l].dim();
      for (int i = 0; i < d; ++i) {
        tr += static_cast<double>(d) * table.values[f * table.entries + table.offsets[l] + static_cast<std::size_t>(i * d + i)];
      }
    }
    acc += w[f] * tr;
  }
  return acc;
}

SampledFunction sl_invert_grid(const SpectralTable& table, const SLChart& chart, Execution exec) {
  const PeterWeylBasis basis = peter_weyl_basis(table.group, chart.k_axes_span(), table.band);
  if (basis.entries() != table.entries) throw std::invalid_argument("sl_invert_grid: table and chart bands differ");
  const std::size_t m = table.freq_axes.size();
  std::vector<cplx> cur = table.values;
  std::vector<cplx> next(cur.size());
  for (std::size_t i = 0; i < m; ++i) {
    const GridAxis& src = table.freq_axes[i];
    const GridAxis dst = dual_axis(src);
    std::size_t outer = 1;
    std::size_t inner = table.entries;
    for (std::size_t j = 0; j < i; ++j) outer *= static_cast<std::size_t>(table.freq_axes[j].count);
    for (std::size_t j = i + 1; j < m; ++j) inner *= static_cast<std::size_t>(table.freq_axes[j].count);
    kernels::apply_along_axis(dft_matrix(src, dst, +1), cur, next, outer, inner, exec);
    std::swap(cur, next);
  }
  const std::size_t p = table.frequency_count();
  std::vector<cplx> out(p * static_cast<std::size_t>(basis.synthesis.rows()));
  kernels::apply_along_axis(basis.synthesis, cur, out, p, 1, exec);
  SampledFunction f(chart.axes, std::move(out));
  f.metadata.provenance = "synthesized from spectral table";
  return f;
}

// ---------------------------------------------------------------------------
// Serialization

void write_csv(std::ostream& out, const SpectralTable& table) {
  for (const auto& a : table.freq_axes) out << a.name << ',';
  out << "label,i,j,re,im\n";
  out.precision(17);
  const std::size_t m = table.freq_axes.size();
  std::vector<std::size_t> idx(m);
  for (std::size_t f = 0; f < table.frequency_count(); ++f) {
    std::size_t rem = f;
    for (std::size_t a = m; a-- > 0;) {
      const auto n = static_cast<std::size_t>(table.freq_axes[a].count);
      idx[a] = rem % n;
      rem /= n;
    }
    for (std::size_t l = 0; l < table.labels.size(); ++l) {
      const int d = table.labels[l].dim();
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const cplx v = table.values[f * table.entries + table.offsets[l] + static_cast<std::size_t>(i * d + j)];
          if (v == cplx{}) continue;
          for (std::size_t a = 0; a < m; ++a) out << table.freq_axes[a].nodes[idx[a]] << ',';
          out << table.labels[l].index << ',' << i << ',' << j << ',' << v.real() << ',' << v.imag() << '\n';
        }
      }
    }
  }
}

nlohmann::json summary(const SpectralTable& table) {
  nlohmann::json j;
  j["n"] = table.n;
  j["group"] = std::string(to_string(table.group));
  j["band"] = table.band;
  j["band_warning"] = table.band_warning;
  j["entries"] = table.entries;
  j["frequency_count"] = table.frequency_count();
  auto axes = nlohmann::json::array();
  for (const auto& a : table.freq_axes) {
    const auto& dual = a.spectral->dual;
    axes.push_back({{"name", a.name},
                    {"symbol", std::string(to_string(a.spectral->symbol))},
                    {"dual", {{"name", dual.name},
                              {"kind", std::string(to_string(dual.kind))},
                              {"lo", dual.lo},
                              {"hi", dual.hi},
                              {"count", dual.count},
                              {"rule", std::string(to_string(dual.rule))}}}});
  }
  j["freq_axes"] = axes;
  const std::vector<double> norms = table.norms_per_label();
  auto labels = nlohmann::json::array();
  for (std::size_t l = 0; l < table.labels.size(); ++l) {
    labels.push_back({{"index", table.labels[l].index}, {"dim", table.labels[l].dim()}, {"norm_squared", norms[l]}});
  }
  j["labels"] = labels;
  j["hs_norm_squared"] = table.hs_norm_squared();
  return j;
}

namespace {

SpectralSymbol parse_symbol(const std::string& s) {
  for (const auto sym : {SpectralSymbol::Xi, SpectralSymbol::Lambda, SpectralSymbol::Eta, SpectralSymbol::Mu,
                         SpectralSymbol::Nu}) {
    if (to_string(sym) == s) return sym;
  }
  throw std::invalid_argument("unknown spectral symbol: " + s);
}

}  // namespace

SpectralTable read_spectral_table(const nlohmann::json& s, std::istream& csv) {
  SpectralTable table;
  table.n = s.at("n").get<int>();
  table.group = parse_k_group(s.at("group").get<std::string>());
  table.band = s.at("band").get<int>();
  table.band_warning = s.value("band_warning", false);
  for (const auto& a : s.at("freq_axes")) {
    const auto& d = a.at("dual");
    const GridAxis spatial = build_axis({d.at("name").get<std::string>(), parse_axis_kind(d.at("kind").get<std::string>()),
                                         d.at("lo").get<double>(), d.at("hi").get<double>(), d.at("count").get<int>(),
                                         parse_quadrature_rule(d.at("rule").get<std::string>()), false});
    table.freq_axes.push_back(frequency_axis(spatial, parse_symbol(a.at("symbol").get<std::string>())));
  }
  table.labels = irrep_labels(table.group, table.band);
  std::size_t e = 0;
  for (const auto& l : table.labels) {
    table.offsets.push_back(e);
    e += static_cast<std::size_t>(l.dim() * l.dim());
  }
  table.entries = e;
  const std::size_t nf = product_of_extents(table.freq_axes);
  table.values.assign(nf * e, cplx{});

  const std::size_t m = table.freq_axes.size();
  std::string line;
  if (!std::getline(csv, line)) throw std::invalid_argument("read_spectral_table: empty CSV");
  std::size_t row = 1;
  while (std::getline(csv, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    if (cells.size() != m + 5) {
      throw std::invalid_argument("read_spectral_table: row " + std::to_string(row) + " has the wrong width");
    }
    std::size_t f = 0;
    for (std::size_t a = 0; a < m; ++a) {
      const GridAxis& ax = table.freq_axes[a];
      const double step = ax.count > 1 ? ax.nodes[1] - ax.nodes[0] : 1.0;
      const auto k = static_cast<long>(std::lround((cells[a] - ax.nodes[0]) / step));
      if (k < 0 || k >= ax.count) throw std::invalid_argument("read_spectral_table: frequency off the grid");
      f = f * static_cast<std::size_t>(ax.count) + static_cast<std::size_t>(k);
    }
    const IrrepLabel label{table.group, static_cast<int>(cells[m])};
    const auto it = std::find(table.labels.begin(), table.labels.end(), label);
    if (it == table.labels.end()) throw std::invalid_argument("read_spectral_table: label beyond the band");
    const auto li = static_cast<std::size_t>(it - table.labels.begin());
    const int d = label.dim();
    const int i = static_cast<int>(cells[m + 1]);
    const int j = static_cast<int>(cells[m + 2]);
    if (i < 0 || j < 0 || i >= d || j >= d) throw std::invalid_argument("read_spectral_table: entry index out of range");
    table.values[f * e + table.offsets[li] + static_cast<std::size_t>(i * d + j)] = {cells[m + 3], cells[m + 4]};
  }
  return table;
}

// ---------------------------------------------------------------------------
// Factor-order consistency

double OrderConsistency::rel_error() const { return std::max({haar_rel, pointwise_rel, chain_rel}); }

OrderConsistency order_consistency(const GFunction& F, const SLChart& chart, Execution exec) {
  if (chart.has_scale) throw std::invalid_argument("order_consistency: SL charts only");
  const SampledFunction kna = sample_on_chart(F, chart, FactorOrder::KNA);
  const SampledFunction kan = sample_on_chart(F, chart, FactorOrder::KAN);

  OrderConsistency r;
  r.haar_kna = haar_integrate(abs_squared(kna), chart, FactorOrder::KNA).real();
  r.haar_kan = haar_integrate(abs_squared(kan), chart, FactorOrder::KAN).real();
  r.haar_rel = std::abs(r.haar_kna - r.haar_kan) / std::max(std::abs(r.haar_kna), 1e-300);

  const std::size_t d = chart.d();
  SampledFunction fk = kna;
  SampledFunction fa = kan;
  for (std::size_t i = 0; i < d; ++i) {
    fk = dft_axis(fk, i, -1, SpectralSymbol::Xi, exec);
    fa = dft_axis(fa, i, -1, SpectralSymbol::Xi, exec);
  }

  // a^{2ρ} F^dφ_kan(ρ(a)ξ) on the same (ξ, t, k) grid, one A node at a time.
  SampledFunction sub = SampledFunction::zeros(fk.axes());
  std::size_t nx = 1;
  for (std::size_t i = 0; i < d; ++i) nx *= static_cast<std::size_t>(chart.axes[i].count);
  std::size_t na = 1;
  for (int i = 0; i + 1 < chart.n; ++i) na *= static_cast<std::size_t>(chart.axes[d + static_cast<std::size_t>(i)].count);
  const std::size_t kn = product_of_extents(chart.k_axes_span());
  const auto entries = n_entries(chart.n);

#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::Parallel)
  for (std::ptrdiff_t ta = 0; ta < static_cast<std::ptrdiff_t>(na); ++ta) {
    const auto tflat = static_cast<std::size_t>(ta);
    std::vector<double> t(static_cast<std::size_t>(chart.n - 1));
    std::size_t rem = tflat;
    for (int i = chart.n - 1; i-- > 0;) {
      const GridAxis& ax = chart.axes[d + static_cast<std::size_t>(i)];
      t[static_cast<std::size_t>(i)] = ax.nodes[rem % static_cast<std::size_t>(ax.count)];
      rem /= static_cast<std::size_t>(ax.count);
    }
    std::vector<cplx> slab(nx * kn);
    std::vector<cplx> next(nx * kn);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t k = 0; k < kn; ++k) slab[x * kn + k] = kan[(x * na + tflat) * kn + k];
    }
    for (std::size_t c = 0; c < d; ++c) {
      const auto [i, j] = entries[c];
      const double scale = std::exp(a_log(chart.n, t.data(), i) - a_log(chart.n, t.data(), j));
      GridAxis scaled = fk.axis(c);
      for (auto& v : scaled.nodes) v *= scale;
      // The quadrature sum is periodic in frequency; beyond the source grid's
      // Nyquist band it aliases, so the discrete transform is taken as zero there.
      CMatrix kernel = dft_matrix(chart.axes[c], scaled, -1);
      const double nyquist = kPi / chart.axes[c].step() * (1.0 + 1e-12);
      for (int q = 0; q < kernel.rows(); ++q) {
        if (std::abs(scaled.nodes[static_cast<std::size_t>(q)]) > nyquist) kernel.row(q).setZero();
      }
      std::size_t outer = 1;
      std::size_t inner = kn;
      for (std::size_t q = 0; q < c; ++q) outer *= static_cast<std::size_t>(chart.axes[q].count);
      for (std::size_t q = c + 1; q < d; ++q) inner *= static_cast<std::size_t>(chart.axes[q].count);
      kernels::apply_along_axis(kernel, slab, next, outer, inner, Execution::Serial);
      std::swap(slab, next);
    }
    const double jac = rho_jacobian_raw(chart.n, t.data());
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t k = 0; k < kn; ++k) sub[(x * na + tflat) * kn + k] = jac * slab[x * kn + k];
    }
  }

  double diff = 0.0;
  double peak = 0.0;
  for (std::size_t q = 0; q < fk.size(); ++q) {
    diff = std::max(diff, std::abs(fk[q] - sub[q]));
    peak = std::max(peak, std::abs(fk[q]));
  }
  r.pointwise_rel = diff / std::max(peak, 1e-300);

  r.chain_kna = integrate(fk, exec);
  r.chain_substituted = integrate(sub, exec);
  r.chain_kan = integrate(fa, exec);
  const double scale = std::max(std::abs(r.chain_kna), 1e-300);
  r.chain_rel = std::max(std::abs(r.chain_kna - r.chain_substituted), std::abs(r.chain_kna - r.chain_kan)) / scale;
  return r;
}

GFunction matrix_gaussian(double c, double eps) {
  return [c, eps](const Matrix& g) {
    const double n = static_cast<double>(g.rows());
    return cplx(std::exp(-c * (g.squaredNorm() - n)) * (1.0 + eps * g(0, 1)), 0.0);
  };
}

}  // namespace harmonic
