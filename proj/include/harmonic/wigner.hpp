#pragma once

#include "harmonic/types.hpp"

namespace harmonic {

// Wigner small-d element d^l_{m,mp}(beta) from the explicit factorial sum.
// Accurate to ~1e-13 for l <= 32.
double wigner_small_d(int l, int m, int mp, double beta);

// (2l+1)x(2l+1) matrix indexed by (m + l, mp + l).
Matrix wigner_small_d_matrix(int l, double beta);

// D^l_{m,mp}(alpha, beta, gamma) = e^{-i m alpha} d^l_{m,mp}(beta) e^{-i mp gamma}
// for the rotation Rz(alpha) Ry(beta) Rz(gamma).
CMatrix wigner_D_matrix(int l, double alpha, double beta, double gamma);

// Character chi_l(omega) = sum_{m=-l}^{l} e^{i m omega} of a rotation by omega.
double so3_character(int l, double omega);

// Rotation angle of Rz(alpha) Ry(beta) Rz(gamma), in [0, pi].
double zyz_rotation_angle(double alpha, double beta, double gamma);

}  // namespace harmonic
