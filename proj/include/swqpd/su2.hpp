#pragma once

#include "swqpd/types.hpp"

#include <utility>

namespace swqpd {

/// Gauss-Legendre nodes and weights on [-1, 1], exact for polynomial
/// degree <= 2n-1.
std::pair<RealVector, RealVector> gauss_legendre(int n);

/// Spin coherent state |Omega> in the |j,m> basis with m = j, j-1, ..., -j:
/// c_m = sqrt(C(2j, j+m)) cos^{j+m}(theta/2) sin^{j-m}(theta/2) e^{-i m phi}.
ComplexVector coherent_state(const SpinRep& rep, const PhasePoint& omega);

/// <Omega|Omega'>; satisfies |<Omega|Omega'>|^2 = cos^{4j}(Theta/2) with
/// Theta the geodesic angle between the two points.
Complex coherent_overlap(const SpinRep& rep, const PhasePoint& a, const PhasePoint& b);

/// Gauss-Legendre x uniform-phi product rule. Defaults n_theta = 4j+3,
/// n_phi = 4j+5; rejects counts below the exactness thresholds
/// n_theta >= 4j+3, n_phi >= 4j+1.
QuadratureGrid sphere_grid(const SpinRep& rep, int n_theta = -1, int n_phi = -1);

/// Harmonic Y_nu, orthonormal under the grid measure:
/// Y_nu = sqrt(4*pi/(2j+1)) * Y^std_{LM}(theta, phi).
Complex harmonic(const SpinRep& rep, const HarmonicIndex& nu, const PhasePoint& omega);

/// All (2j+1)^2 harmonics at one point, in flat nu order.
ComplexVector harmonics_all(const SpinRep& rep, const PhasePoint& omega);

/// Wigner-D matrix T(g) = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz)
/// in the m = j..-j basis.
ComplexMatrix rotation_operator(const SpinRep& rep, const EulerAngles& g);

/// 3x3 SO(3) matrix Rz(alpha) Ry(beta) Rz(gamma).
Eigen::Matrix3d rotation_matrix(const EulerAngles& g);

/// Image of a sphere point under the rotation g (active convention);
/// T(g)|Omega> = e^{i chi} |g Omega>.
PhasePoint rotate_point(const EulerAngles& g, const PhasePoint& omega);

/// Euler angles of g^{-1}.
inline EulerAngles euler_inverse(const EulerAngles& g) { return {-g.gamma, -g.beta, -g.alpha}; }

/// z-y-z Euler angles of the rotation encoded by a unit quaternion
/// (w, x, y, z).
EulerAngles euler_from_quaternion(double w, double x, double y, double z);

}  // namespace swqpd
