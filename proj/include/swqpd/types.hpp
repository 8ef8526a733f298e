#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace swqpd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;

/// Spin-j representation. j is stored as the integer 2j so half-integer
/// spins stay exact; the Hilbert-space dimension is 2j+1.
struct SpinRep {
  int twoj;

  explicit SpinRep(int twoj_) : twoj(twoj_) {
    if (twoj < 1) throw std::invalid_argument("SpinRep: 2j must be a positive integer");
  }

  int dim() const { return twoj + 1; }
  double j() const { return 0.5 * twoj; }
};

inline double wrap_two_pi(double x) {
  double y = std::fmod(x, 2.0 * pi);
  if (y < 0.0) y += 2.0 * pi;
  return y;
}

/// Point (theta, phi) on the unit sphere. The constructor canonicalizes
/// arbitrary angles into theta in [0, pi], phi in [0, 2*pi).
struct PhasePoint {
  double theta = 0.0;
  double phi = 0.0;

  PhasePoint() = default;
  PhasePoint(double theta_, double phi_) {
    double t = wrap_two_pi(theta_);
    double p = phi_;
    if (t > pi) {
      t = 2.0 * pi - t;
      p += pi;
    }
    theta = t;
    phi = wrap_two_pi(p);
  }
};

/// Index (L, M) of a sphere harmonic, 0 <= L <= 2j, -L <= M <= L.
/// Flat ordering: L*L + L + M, so all (2j+1)^2 indices pack densely.
struct HarmonicIndex {
  int L = 0;
  int M = 0;

  HarmonicIndex() = default;
  HarmonicIndex(int L_, int M_) : L(L_), M(M_) {
    if (L < 0 || std::abs(M) > L) throw std::invalid_argument("HarmonicIndex: need 0 <= |M| <= L");
  }

  int flat() const { return L * L + L + M; }

  static HarmonicIndex from_flat(int idx) {
    int L = static_cast<int>(std::sqrt(static_cast<double>(idx)));
    while ((L + 1) * (L + 1) <= idx) ++L;
    while (L * L > idx) --L;
    return HarmonicIndex(L, idx - L * L - L);
  }

  bool valid_for(const SpinRep& rep) const { return L <= rep.twoj; }
};

inline int harmonic_count(const SpinRep& rep) { return rep.dim() * rep.dim(); }

/// Product quadrature rule on the sphere for the measure
/// dmu = ((2j+1)/(4*pi)) sin(theta) dtheta dphi; weights sum to 2j+1.
struct QuadratureGrid {
  std::vector<PhasePoint> nodes;
  RealVector weights;
  int n_theta = 0;
  int n_phi = 0;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Ordering parameter of the kernel family; s = 1 is Q, 0 is W, -1 is P.
struct SValue {
  double s;

  explicit SValue(double s_) : s(s_) {
    if (!(s >= -1.0 && s <= 1.0)) throw std::invalid_argument("SValue: s must lie in [-1, 1]");
  }
};

/// z-y-z Euler angles of a rotation.
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

}  // namespace swqpd
