#include "harmonic/compact.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "harmonic/kernels.hpp"
#include "harmonic/wigner.hpp"

namespace harmonic {

namespace {

double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

Matrix rz(double a) {
  Matrix r = Matrix::Identity(3, 3);
  r(0, 0) = std::cos(a);
  r(0, 1) = -std::sin(a);
  r(1, 0) = std::sin(a);
  r(1, 1) = std::cos(a);
  return r;
}

Matrix ry(double b) {
  Matrix r = Matrix::Identity(3, 3);
  r(0, 0) = std::cos(b);
  r(0, 2) = std::sin(b);
  r(2, 0) = -std::sin(b);
  r(2, 2) = std::cos(b);
  return r;
}

}  // namespace

std::string_view to_string(KGroup group) { return group == KGroup::SO2 ? "SO2" : "SO3"; }

KGroup parse_k_group(std::string_view text) {
  if (text == "SO2" || text == "so2") return KGroup::SO2;
  if (text == "SO3" || text == "so3") return KGroup::SO3;
  throw std::invalid_argument("unknown compact group '" + std::string(text) + "'");
}

KGroup group_of(const KElement& x) {
  return std::holds_alternative<SO2Element>(x) ? KGroup::SO2 : KGroup::SO3;
}

Matrix rotation_matrix(const KElement& x) {
  if (const auto* e = std::get_if<SO2Element>(&x)) {
    Matrix r(2, 2);
    r << std::cos(e->theta), -std::sin(e->theta), std::sin(e->theta), std::cos(e->theta);
    return r;
  }
  const auto& e = std::get<SO3Element>(x);
  return rz(e.alpha) * ry(e.beta) * rz(e.gamma);
}

KElement k_element_from_rotation(KGroup group, const Matrix& r) {
  if (group == KGroup::SO2) {
    if (r.rows() != 2 || r.cols() != 2) throw std::invalid_argument("SO(2) element must be 2x2");
    return SO2Element{wrap_angle(std::atan2(r(1, 0), r(0, 0)))};
  }
  if (r.rows() != 3 || r.cols() != 3) throw std::invalid_argument("SO(3) element must be 3x3");
  SO3Element e;
  const double sb = std::hypot(r(0, 2), r(1, 2));
  e.beta = std::atan2(sb, r(2, 2));
  if (sb > 1e-12) {
    e.alpha = std::atan2(r(1, 2), r(0, 2));
    e.gamma = std::atan2(r(2, 1), -r(2, 0));
  } else if (r(2, 2) > 0.0) {
    e.alpha = std::atan2(r(1, 0), r(0, 0));
    e.gamma = 0.0;
  } else {
    e.alpha = std::atan2(-r(1, 0), -r(0, 0));
    e.gamma = 0.0;
  }
  e.alpha = wrap_angle(e.alpha);
  e.gamma = wrap_angle(e.gamma);
  return e;
}

KElement k_compose(const KElement& x, const KElement& y) {
  if (group_of(x) != group_of(y)) throw std::invalid_argument("k_compose: group mismatch");
  if (group_of(x) == KGroup::SO2) {
    return SO2Element{wrap_angle(std::get<SO2Element>(x).theta + std::get<SO2Element>(y).theta)};
  }
  return k_element_from_rotation(KGroup::SO3, rotation_matrix(x) * rotation_matrix(y));
}

KElement k_inverse(const KElement& x) {
  if (const auto* e = std::get_if<SO2Element>(&x)) return SO2Element{wrap_angle(-e->theta)};
  const auto& e = std::get<SO3Element>(x);
  // Through the matrix so the angles land back in their chart ranges.
  return k_element_from_rotation(KGroup::SO3, rotation_matrix(e).transpose());
}

CMatrix irrep_matrix(const IrrepLabel& label, const KElement& x) {
  if (label.group != group_of(x)) throw std::invalid_argument("irrep_matrix: group mismatch");
  if (label.group == KGroup::SO2) {
    CMatrix m(1, 1);
    m(0, 0) = std::polar(1.0, label.index * std::get<SO2Element>(x).theta);
    return m;
  }
  if (label.index < 0) throw std::invalid_argument("irrep_matrix: SO(3) label must be >= 0");
  const auto& e = std::get<SO3Element>(x);
  return wigner_D_matrix(label.index, e.alpha, e.beta, e.gamma);
}

std::vector<IrrepLabel> irrep_labels(KGroup group, int band) {
  if (band < 0) throw std::invalid_argument("irrep_labels: band must be >= 0");
  std::vector<IrrepLabel> out;
  if (group == KGroup::SO2) {
    for (int k = -band; k <= band; ++k) out.push_back({group, k});
  } else {
    for (int l = 0; l <= band; ++l) out.push_back({group, l});
  }
  return out;
}

std::vector<GridAxis> k_axes(KGroup group, int count) {
  if (group == KGroup::SO2) {
    return {build_axis({"theta", AxisKind::Angle, 0.0, kTwoPi, count, QuadratureRule::Trapezoid, true})};
  }
  if (count < 0) throw std::invalid_argument("k_axes: SO(3) band must be >= 0");
  const int na = 2 * count + 1;
  // A single-node beta axis cannot hold a Gauss-Legendre rule of degree > 1.
  const int nb = std::max(count + 1, 2);
  return {build_axis({"alpha", AxisKind::Angle, 0.0, kTwoPi, na, QuadratureRule::Trapezoid, true}),
          build_axis({"beta", AxisKind::EulerBeta, 0.0, kPi, nb, QuadratureRule::Trapezoid, true}),
          build_axis({"gamma", AxisKind::Angle, 0.0, kTwoPi, na, QuadratureRule::Trapezoid, true})};
}

int k_axes_band(KGroup group, std::span<const GridAxis> axes) {
  if (group == KGroup::SO2) {
    if (axes.size() != 1) throw std::invalid_argument("SO(2) chart has one angle axis");
    return axes[0].count - 1;
  }
  if (axes.size() != 3) throw std::invalid_argument("SO(3) chart has alpha, beta, gamma axes");
  return std::min({axes[0].count - 1, axes[2].count - 1, 2 * axes[1].count - 1});
}

KElement k_element_at(KGroup group, std::span<const double> angles) {
  if (group == KGroup::SO2) {
    if (angles.size() != 1) throw std::invalid_argument("SO(2) element needs one angle");
    return SO2Element{angles[0]};
  }
  if (angles.size() != 3) throw std::invalid_argument("SO(3) element needs three angles");
  return SO3Element{angles[0], angles[1], angles[2]};
}

std::vector<KQuadratureNode> haar_quadrature(KGroup group, int band) {
  if (band < 0) throw std::invalid_argument("haar_quadrature: band must be >= 0");
  const auto axes = group == KGroup::SO2 ? k_axes(group, 4 * band + 1) : k_axes(group, band);
  std::vector<KQuadratureNode> nodes;
  if (group == KGroup::SO2) {
    for (int j = 0; j < axes[0].count; ++j) {
      nodes.push_back({SO2Element{axes[0].nodes[static_cast<std::size_t>(j)]}, axes[0].weight(static_cast<std::size_t>(j))});
    }
    return nodes;
  }
  for (std::size_t a = 0; a < axes[0].nodes.size(); ++a) {
    for (std::size_t b = 0; b < axes[1].nodes.size(); ++b) {
      for (std::size_t c = 0; c < axes[2].nodes.size(); ++c) {
        nodes.push_back({SO3Element{axes[0].nodes[a], axes[1].nodes[b], axes[2].nodes[c]},
                         axes[0].weight(a) * axes[1].weight(b) * axes[2].weight(c)});
      }
    }
  }
  return nodes;
}

double PeterWeylCoefficients::hs_norm_squared() const {
  double s = 0.0;
  for (const auto& [label, m] : blocks) s += label.dim() * m.squaredNorm();
  return s;
}

PeterWeylBasis peter_weyl_basis(KGroup group, std::span<const GridAxis> axes, int band) {
  PeterWeylBasis basis;
  basis.group = group;
  basis.labels = irrep_labels(group, band);
  std::size_t rows = 0;
  for (const auto& l : basis.labels) {
    basis.offsets.push_back(rows);
    rows += static_cast<std::size_t>(l.dim() * l.dim());
  }
  std::size_t nodes = 1;
  for (const auto& a : axes) nodes *= static_cast<std::size_t>(a.count);
  if ((group == KGroup::SO2 && axes.size() != 1) || (group == KGroup::SO3 && axes.size() != 3)) {
    throw std::invalid_argument("peter_weyl_basis: wrong number of K axes");
  }
  basis.forward.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(nodes));
  basis.synthesis.resize(static_cast<Eigen::Index>(nodes), static_cast<Eigen::Index>(rows));

  std::vector<double> angles(axes.size());
  for (std::size_t x = 0; x < nodes; ++x) {
    std::size_t rem = x;
    double w = 1.0;
    for (std::size_t a = axes.size(); a-- > 0;) {
      const auto n = static_cast<std::size_t>(axes[a].count);
      const std::size_t j = rem % n;
      rem /= n;
      angles[a] = axes[a].nodes[j];
      w *= axes[a].weight(j);
    }
    const KElement e = k_element_at(group, angles);
    for (std::size_t li = 0; li < basis.labels.size(); ++li) {
      const auto& label = basis.labels[li];
      const CMatrix g = irrep_matrix(label, e);
      const int d = label.dim();
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const auto row = static_cast<Eigen::Index>(basis.offsets[li] + static_cast<std::size_t>(i * d + j));
          basis.forward(row, static_cast<Eigen::Index>(x)) = w * std::conj(g(j, i));
          basis.synthesis(static_cast<Eigen::Index>(x), row) = static_cast<double>(d) * g(j, i);
        }
      }
    }
  }
  return basis;
}

PeterWeylCoefficients peter_weyl_transform(const SampledFunction& f, KGroup group, int band,
                                           int declared_band, Execution exec) {
  const PeterWeylBasis basis = peter_weyl_basis(group, f.axes(), band);
  std::vector<cplx> coeffs(basis.entries());
  kernels::apply_along_axis(basis.forward, f.values(), coeffs, 1, 1, exec);
  PeterWeylCoefficients c;
  c.group = group;
  c.band = band;
  c.band_warning = declared_band + band > k_axes_band(group, f.axes());
  for (std::size_t li = 0; li < basis.labels.size(); ++li) {
    const int d = basis.labels[li].dim();
    CMatrix m(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) m(i, j) = coeffs[basis.offsets[li] + static_cast<std::size_t>(i * d + j)];
    }
    c.blocks.emplace(basis.labels[li], std::move(m));
  }
  return c;
}

cplx peter_weyl_invert(const PeterWeylCoefficients& c, const KElement& x) {
  cplx s{};
  for (const auto& [label, m] : c.blocks) s += static_cast<double>(label.dim()) * (m * irrep_matrix(label, x)).trace();
  return s;
}

cplx peter_weyl_invert_at_inverse(const PeterWeylCoefficients& c, const KElement& x) {
  cplx s{};
  for (const auto& [label, m] : c.blocks) {
    s += static_cast<double>(label.dim()) * (m * irrep_matrix(label, x).adjoint()).trace();
  }
  return s;
}

cplx peter_weyl_at_identity(const PeterWeylCoefficients& c) {
  cplx s{};
  for (const auto& [label, m] : c.blocks) s += static_cast<double>(label.dim()) * m.trace();
  return s;
}

nlohmann::json to_json(const PeterWeylCoefficients& c) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [label, m] : c.blocks) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      nlohmann::json rr = nlohmann::json::array();
      nlohmann::json ii = nlohmann::json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        rr.push_back(m(i, j).real());
        ii.push_back(m(i, j).imag());
      }
      re.push_back(std::move(rr));
      im.push_back(std::move(ii));
    }
    list.push_back({{"group", to_string(label.group)}, {"index", label.index}, {"re", re}, {"im", im}});
  }
  return {{"group", to_string(c.group)}, {"band", c.band}, {"band_warning", c.band_warning}, {"coefficients", list}};
}

PeterWeylCoefficients peter_weyl_from_json(const nlohmann::json& j) {
  PeterWeylCoefficients c;
  c.group = parse_k_group(j.at("group").get<std::string>());
  c.band = j.at("band").get<int>();
  c.band_warning = j.value("band_warning", false);
  for (const auto& e : j.at("coefficients")) {
    IrrepLabel label{parse_k_group(e.at("group").get<std::string>()), e.at("index").get<int>()};
    const int d = label.dim();
    const auto& re = e.at("re");
    const auto& im = e.at("im");
    if (re.size() != static_cast<std::size_t>(d) || im.size() != static_cast<std::size_t>(d)) {
      throw std::invalid_argument("Peter-Weyl JSON: block has wrong size for its label");
    }
    CMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
      for (int s = 0; s < d; ++s) {
        m(r, s) = cplx(re[static_cast<std::size_t>(r)].at(static_cast<std::size_t>(s)).get<double>(),
                       im[static_cast<std::size_t>(r)].at(static_cast<std::size_t>(s)).get<double>());
      }
    }
    c.blocks.emplace(label, std::move(m));
  }
  return c;
}

}  // namespace harmonic
