#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace harmonic {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Selects between the OpenMP kernels and the serial reference loops.
enum class Execution { Serial, Parallel };

}  // namespace harmonic
