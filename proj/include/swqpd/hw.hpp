#pragma once

#include "swqpd/types.hpp"

#include <vector>

namespace swqpd {

/// Truncated Fock space with number states |0>, ..., |n_max>.
struct FockRep {
  int n_max;

  explicit FockRep(int n_max_) : n_max(n_max_) {
    if (n_max < 1) throw std::invalid_argument("FockRep: n_max must be >= 1");
  }

  int dim() const { return n_max + 1; }
};

/// Phase-space point alpha of the plane.
struct PlanePoint {
  Complex alpha;

  PlanePoint() = default;
  explicit PlanePoint(Complex a) : alpha(a) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("PlanePoint: alpha must be finite");
  }
};

/// Polar product rule for the measure d^2alpha/pi restricted to
/// |alpha|^2 <= u_max: Gauss-Legendre in u = |alpha|^2, uniform in arg(alpha).
/// Weights sum to u_max. Nodes are stored ring by ring (constant radius).
struct PolarGrid {
  std::vector<PlanePoint> nodes;
  RealVector weights;
  int n_radial = 0;
  int n_angular = 0;
  double u_max = 0.0;

  int size() const { return static_cast<int>(nodes.size()); }
};

PolarGrid polar_grid(int n_radial, int n_angular, double u_max);

/// Annihilation operator a on the truncated space.
ComplexMatrix annihilation_op(const FockRep& rep);

/// Displacement D(alpha) = exp(alpha a^dag - alpha^* a), computed by exact
/// exponentiation of the truncated generator (exactly unitary). Warns once
/// per process when |alpha|^2 > n_max/4, where truncation starts to bite.
ComplexMatrix displacement(const FockRep& rep, const PlanePoint& alpha);

/// Cahill-Glauber kernel in the convention where s = +1 gives Q:
/// Delta^(s)(alpha) = (2/(1+s)) D(alpha) diag(((s-1)/(s+1))^n) D(alpha)^dag,
/// symmetrized so the returned matrix is exactly Hermitian.
/// s = -1 is rejected (singular P kernel); s <= -0.9 warns. For s < 0 the
/// diagonal grows like ((1-s)/(1+s))^n and the truncated sandwich is
/// ill-conditioned; quantities against low-excitation operators should go
/// through cg_kernel_block / hw_weyl_map instead.
ComplexMatrix cg_kernel(const FockRep& rep, SValue s, const PlanePoint& alpha);

/// Top-left b x b block of the same kernel from its closed Laguerre form
/// <m|Delta^(s)(alpha)|n> = (2/(1+s)) xi^m sqrt(m!/n!) (2 conj(alpha)/(1+s))^{n-m}
///                          e^{-2|alpha|^2/(1+s)} L_m^{(n-m)}(4|alpha|^2/(1-s^2)),
/// xi = (s-1)/(s+1), n >= m. These are the untruncated matrix elements;
/// they stay numerically clean for every s in (-1, 1], which makes them the
/// usable route to the s < 0 partner distributions.
ComplexMatrix cg_kernel_block(SValue s, const PlanePoint& alpha, int b);

/// <m|D(alpha)|n> from the closed Laguerre form (untruncated).
Complex displacement_element(int m, int n, const PlanePoint& alpha);

/// Geometric tail bound |2/(1+s)| |ratio|^{n_max+1} / (1 - |ratio|) on
/// |Tr Delta^(s) - 1|; infinite for s <= 0 where the series does not converge
/// on a truncation.
double kernel_trace_tail_bound(const FockRep& rep, SValue s);

/// Displacement matrices D(r_i), one per ring of the grid.
std::vector<ComplexMatrix> radial_displacements(const FockRep& rep, const PolarGrid& grid);

/// Kernels Delta^(s)(r_i) per ring, from precomputed radial displacements.
std::vector<ComplexMatrix> ring_kernels(const FockRep& rep, SValue s,
                                        const std::vector<ComplexMatrix>& radial);

/// Sampled plane QPD.
struct PlaneQpdGrid {
  SValue s;
  int n_max = 0;
  PolarGrid grid;
  ComplexVector values;
};

/// F_A^(s)(alpha_k) = Tr(A Delta^(s)(alpha_k)) over a polar grid. For
/// s >= 0 the kernels are bounded and evaluated ring by ring from the
/// truncated sandwich; for s < 0 the trace runs over the support block of A
/// against the closed-form kernel elements.
PlaneQpdGrid hw_weyl_map(const FockRep& rep, const ComplexMatrix& a, SValue s,
                         const PolarGrid& grid);
PlaneQpdGrid hw_weyl_map(const FockRep& rep, const ComplexMatrix& a, SValue s,
                         const PolarGrid& grid, const std::vector<ComplexMatrix>& rings);

/// Pointwise F_A^(s)(alpha), same evaluation split as hw_weyl_map.
Complex hw_qpd_at(const FockRep& rep, const ComplexMatrix& a, SValue s, const PlanePoint& alpha);

/// Smallest b such that A vanishes outside its top-left b x b block.
int support_block(const ComplexMatrix& a);

/// Operator reconstruction from a Wigner grid,
/// A = sum_k w_k W(alpha_k) Delta^(0)(alpha_k). Only s = 0 is accepted: the
/// -s partner kernels for s > 0 grow like ((1-s)/(1+s))^{-n} with the Fock
/// level and are not usable on a truncated space.
ComplexMatrix hw_reconstruct_wigner(const FockRep& rep, const PlaneQpdGrid& f);

}  // namespace swqpd
