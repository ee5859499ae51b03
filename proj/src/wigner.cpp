#include "harmonic/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace harmonic {

namespace {

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

}  // namespace

double wigner_small_d(int l, int m, int mp, double beta) {
  if (l < 0 || std::abs(m) > l || std::abs(mp) > l) {
    throw std::invalid_argument("wigner_small_d: indices out of range");
  }
  // d^l_{m,mp}(b) = sum_s (-1)^{m-mp+s} sqrt((l+m)!(l-m)!(l+mp)!(l-mp)!)
  //   / ((l+mp-s)! s! (m-mp+s)! (l-m-s)!) cos(b/2)^{2l+mp-m-2s} sin(b/2)^{m-mp+2s}
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double log_norm = 0.5 * (log_factorial(l + m) + log_factorial(l - m) +
                                 log_factorial(l + mp) + log_factorial(l - mp));
  const int s_min = std::max(0, mp - m);
  const int s_max = std::min(l + mp, l - m);
  double sum = 0.0;
  for (int k = s_min; k <= s_max; ++k) {
    const double log_den = log_factorial(l + mp - k) + log_factorial(k) +
                           log_factorial(m - mp + k) + log_factorial(l - m - k);
    const int pc = 2 * l + mp - m - 2 * k;
    const int ps = m - mp + 2 * k;
    const double term = std::exp(log_norm - log_den) * std::pow(c, pc) * std::pow(s, ps);
    sum += ((m - mp + k) % 2 == 0) ? term : -term;
  }
  return sum;
}

Matrix wigner_small_d_matrix(int l, double beta) {
  const int dim = 2 * l + 1;
  Matrix d(dim, dim);
  for (int m = -l; m <= l; ++m) {
    for (int mp = -l; mp <= l; ++mp) d(m + l, mp + l) = wigner_small_d(l, m, mp, beta);
  }
  return d;
}

CMatrix wigner_D_matrix(int l, double alpha, double beta, double gamma) {
  const Matrix d = wigner_small_d_matrix(l, beta);
  const int dim = 2 * l + 1;
  CMatrix out(dim, dim);
  for (int m = -l; m <= l; ++m) {
    const cplx left = std::polar(1.0, -m * alpha);
    for (int mp = -l; mp <= l; ++mp) {
      out(m + l, mp + l) = left * d(m + l, mp + l) * std::polar(1.0, -mp * gamma);
    }
  }
  return out;
}

double so3_character(int l, double omega) {
  const double half = 0.5 * omega;
  const double den = std::sin(half);
  if (std::abs(den) < 1e-8) {
    // Limit of sin((2l+1)w/2)/sin(w/2) near w = 0 (mod 2pi).
    double sum = 0.0;
    for (int m = -l; m <= l; ++m) sum += std::cos(m * omega);
    return sum;
  }
  return std::sin((2 * l + 1) * half) / den;
}

double zyz_rotation_angle(double alpha, double beta, double gamma) {
  // cos(w/2) = cos(beta/2) cos((alpha+gamma)/2)
  const double c = std::clamp(std::abs(std::cos(0.5 * beta) * std::cos(0.5 * (alpha + gamma))), 0.0, 1.0);
  return 2.0 * std::acos(c);
}

}  // namespace harmonic
