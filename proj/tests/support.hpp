#pragma once

// Hand-rolled generators for the property tests. Each test seeds its own
// engine so failures reproduce from the printed seed.

#include <cmath>
#include <random>
#include <vector>

#include "harmonic/types.hpp"

namespace testgen {

inline std::mt19937_64 engine(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::vector<double> normals(std::mt19937_64& rng, std::size_t count, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  std::vector<double> v(count);
  for (auto& x : v) x = N(rng);
  return v;
}

inline harmonic::Matrix normal_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> N(0.0, 1.0);
  harmonic::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = N(rng);
  return m;
}

// det = +1 (or -1 with negative = true), rescaled normal entries.
inline harmonic::Matrix unimodular(std::mt19937_64& rng, int n, bool negative = false) {
  harmonic::Matrix m = normal_matrix(rng, n);
  double d = m.determinant();
  if ((d < 0) != negative) {
    m.row(0) *= -1.0;
    d = -d;
  }
  return m / std::pow(std::abs(d), 1.0 / n);
}

// Upper unipotent matrix with normal strictly-upper entries.
inline harmonic::Matrix unipotent(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> N(0.0, 1.0);
  harmonic::Matrix u = harmonic::Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) u(i, j) = N(rng);
  return u;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), 1e-300); }

}  // namespace testgen
