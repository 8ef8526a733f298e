#pragma once

#include "swqpd/su2.hpp"
#include "swqpd/types.hpp"

#include <vector>

namespace swqpd {

/// Precomputed spin-j tables behind the kernel family: the overlap
/// spectrum tau_L, its normalizers omega_L = 1/sqrt(tau_L), and the
/// orthonormal tensor operators D_nu. Immutable once built.
struct KernelData {
  SpinRep rep;
  RealVector tau;                         // indexed by L = 0..2j
  RealVector omega;                       // +tau_L^{-1/2}
  std::vector<ComplexMatrix> tensor_ops;  // flat nu order, (2j+1)^2 entries

  const ComplexMatrix& tensor_op(const HarmonicIndex& nu) const { return tensor_ops[nu.flat()]; }
};

/// Sampled quasiprobability distribution F_A^(s) on a sphere grid.
struct QpdGrid {
  SValue s;
  int twoj = 0;
  QuadratureGrid grid;
  ComplexVector values;  // aligned with grid.nodes
};

/// Expansion coefficients tau_L of |<Omega|Omega'>|^2 in the harmonic basis,
/// obtained by projecting cos^{4j}(theta/2) onto Y_{L0} with the exact grid.
/// Verifies positivity, monotone decrease, M-independence at an off-pole
/// probe point, and the closed form
/// tau_L = (2j+1) ((2j)!)^2 / ((2j-L)! (2j+L+1)!).
RealVector compute_tau(const SpinRep& rep);

/// Tensor operators D_nu = omega_nu sum_k w_k Y_nu(Omega_k) |Omega_k><Omega_k|
/// with omega_nu = +tau_L^{-1/2}. Aborts if the Gram matrix
/// Tr(D_nu D_nu'^dag) deviates from the identity by more than 1e-10.
std::vector<ComplexMatrix> tensor_operators(const SpinRep& rep, const RealVector& tau);

KernelData build_kernel_data(const SpinRep& rep);

/// SW kernel Delta^(s)(Omega) = sum_nu tau_L^{s/2} Y_nu^*(Omega) D_nu.
ComplexMatrix sw_kernel_at(const KernelData& kd, SValue s, const PhasePoint& omega);

/// Throws if the grid cannot integrate products of two band-limited
/// functions exactly for this representation.
void require_exact_grid(const SpinRep& rep, const QuadratureGrid& grid);

/// Harmonic coefficients A_nu = Tr(A D_nu^dag).
ComplexVector harmonic_coefficients(const KernelData& kd, const ComplexMatrix& a);

/// F_A^(s)(Omega_k) = sum_nu tau_L^{s/2} A_nu Y_nu(Omega_k) on every node.
QpdGrid weyl_map(const KernelData& kd, const ComplexMatrix& a, SValue s, const QuadratureGrid& grid);

/// Pointwise F_A^(s)(Omega) (same spectral sum, arbitrary point).
Complex qpd_at(const KernelData& kd, const ComplexMatrix& a, SValue s, const PhasePoint& omega);

/// A = sum_k w_k F(Omega_k) Delta^(-s)(Omega_k), evaluated spectrally.
ComplexMatrix inverse_weyl(const KernelData& kd, const QpdGrid& f);

/// Re-expands F^(s) as F^(s_target) by rescaling each harmonic coefficient
/// with tau_L^{(s_target - s)/2}.
QpdGrid transform_qpd(const KernelData& kd, const QpdGrid& f, SValue s_target);

/// K_{s,s'}(Omega, Omega') = sum_nu tau_L^{(s-s')/2} Y_nu^*(Omega) Y_nu(Omega').
Complex k_function(const KernelData& kd, SValue s, SValue s_prime, const PhasePoint& a,
                   const PhasePoint& b);

}  // namespace swqpd
