#include "swqpd/hw.hpp"

#include "swqpd/su2.hpp"  // gauss_legendre

#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace swqpd {

namespace {

// diag(e^{i phi n}); conjugation by it rotates alpha by phi.
ComplexVector phase_diag(int dim, double phi) {
  ComplexVector d(dim);
  for (int n = 0; n < dim; ++n) d[n] = std::exp(Complex(0.0, phi * n));
  return d;
}

ComplexMatrix displacement_radial(const FockRep& rep, double r) {
  // alpha real: H = -i (r a^dag - r a) is Hermitian; D = exp(i H).
  const int d = rep.dim();
  const ComplexMatrix a = annihilation_op(rep);
  const ComplexMatrix h = Complex(0.0, -1.0) * (r * (a.adjoint() - a));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  ComplexVector phases(d);
  for (int n = 0; n < d; ++n) phases[n] = std::exp(Complex(0.0, es.eigenvalues()[n]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

void warn_displacement_range(const FockRep& rep, double u) {
  static std::atomic<bool> warned{false};
  if (u > 0.25 * rep.n_max && !warned.exchange(true)) {
    std::cerr << "swqpd: displacement amplitude |alpha|^2 = " << u << " exceeds n_max/4 = "
              << 0.25 * rep.n_max << "; truncation error grows from here\n";
  }
}

double kernel_ratio(SValue s) {
  if (s.s <= -1.0 + 1e-15)
    throw std::invalid_argument("cg_kernel: s = -1 (P kernel) is singular and not supported");
  if (s.s <= -0.9) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true))
      std::cerr << "swqpd: kernel with s <= -0.9 is severely ill-conditioned on a truncated space\n";
  }
  return (s.s - 1.0) / (s.s + 1.0);
}

RealVector kernel_diag(const FockRep& rep, SValue s) {
  const double ratio = kernel_ratio(s);
  RealVector diag(rep.dim());
  double p = 2.0 / (1.0 + s.s);
  for (int n = 0; n < rep.dim(); ++n) {
    diag[n] = p;
    p *= ratio;
  }
  return diag;
}

ComplexMatrix hermitian_sandwich(const ComplexMatrix& d, const RealVector& diag) {
  const ComplexMatrix m = d * diag.cast<Complex>().asDiagonal() * d.adjoint();
  return 0.5 * (m + m.adjoint());
}

long double ln_fact_l(int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

// Generalized Laguerre L_m^{(d)}(x) by its alternating sum; fine for the
// small m of low-excitation blocks.
long double laguerre_l(int m, int d, long double x) {
  long double sum = 0.0L;
  long double xi = 1.0L;  // x^i / i!
  for (int i = 0; i <= m; ++i) {
    const long double binom = std::exp(ln_fact_l(m + d) - ln_fact_l(m - i) - ln_fact_l(d + i));
    sum += ((i % 2 == 0) ? 1.0L : -1.0L) * binom * xi;
    xi *= x / (i + 1);
  }
  return sum;
}

}  // namespace

PolarGrid polar_grid(int n_radial, int n_angular, double u_max) {
  if (n_radial < 1 || n_angular < 1 || !(u_max > 0.0))
    throw std::invalid_argument("polar_grid: need n_radial, n_angular >= 1 and u_max > 0");
  auto [x, gw] = gauss_legendre(n_radial);
  PolarGrid grid;
  grid.n_radial = n_radial;
  grid.n_angular = n_angular;
  grid.u_max = u_max;
  grid.nodes.reserve(static_cast<size_t>(n_radial) * n_angular);
  grid.weights.resize(static_cast<Eigen::Index>(n_radial) * n_angular);
  Eigen::Index k = 0;
  for (int i = 0; i < n_radial; ++i) {
    const double u = 0.5 * u_max * (x[i] + 1.0);
    const double r = std::sqrt(u);
    const double wt = 0.5 * u_max * gw[i] / n_angular;
    for (int p = 0; p < n_angular; ++p) {
      const double phi = 2.0 * pi * p / n_angular;
      grid.nodes.push_back(PlanePoint(r * Complex(std::cos(phi), std::sin(phi))));
      grid.weights[k++] = wt;
    }
  }
  return grid;
}

ComplexMatrix annihilation_op(const FockRep& rep) {
  ComplexMatrix a = ComplexMatrix::Zero(rep.dim(), rep.dim());
  for (int n = 1; n <= rep.n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix displacement(const FockRep& rep, const PlanePoint& alpha) {
  warn_displacement_range(rep, std::norm(alpha.alpha));
  const double r = std::abs(alpha.alpha);
  const ComplexMatrix dr = displacement_radial(rep, r);
  if (r == 0.0) return dr;
  const double phi = std::arg(alpha.alpha);
  const ComplexVector u = phase_diag(rep.dim(), phi);
  return u.asDiagonal() * dr * u.conjugate().asDiagonal();
}

ComplexMatrix cg_kernel(const FockRep& rep, SValue s, const PlanePoint& alpha) {
  return hermitian_sandwich(displacement(rep, alpha), kernel_diag(rep, s));
}

ComplexMatrix cg_kernel_block(SValue s, const PlanePoint& alpha, int b) {
  if (b < 1) throw std::invalid_argument("cg_kernel_block: block size must be >= 1");
  const long double xi = kernel_ratio(s);
  const long double sp1 = 1.0L + static_cast<long double>(s.s);
  const long double u = std::norm(alpha.alpha);
  const long double r = std::abs(Complex(alpha.alpha));
  const long double phi = std::arg(alpha.alpha);

  ComplexMatrix block(b, b);
  if (xi == 0.0L) {
    // s = 1: xi^m L_m(x) -> u^m/m! as x -> inf, the coherent projector
    ComplexVector v(b);
    for (int m = 0; m < b; ++m) {
      const long double mag = std::exp(-0.5L * u - 0.5L * ln_fact_l(m)) * std::pow(r, m);
      v[m] = Complex(static_cast<double>(mag * std::cos(phi * m)),
                     static_cast<double>(mag * std::sin(phi * m)));
    }
    block = v * v.adjoint();
    return block;
  }

  const long double x = 4.0L * u / (sp1 * (2.0L - sp1));  // 4u/(1-s^2)
  const long double envelope = (2.0L / sp1) * std::exp(-2.0L * u / sp1);
  long double xi_m = 1.0L;
  for (int m = 0; m < b; ++m) {
    for (int n = m; n < b; ++n) {
      const int d = n - m;
      const long double mag = envelope * xi_m *
                              std::exp(0.5L * (ln_fact_l(m) - ln_fact_l(n))) *
                              std::pow(2.0L * r / sp1, d) * laguerre_l(m, d, x);
      const long double ph = -phi * d;  // from conj(alpha)^d
      const Complex v(static_cast<double>(mag * std::cos(ph)),
                      static_cast<double>(mag * std::sin(ph)));
      block(m, n) = v;
      block(n, m) = std::conj(v);
    }
    xi_m *= xi;
  }
  return block;
}

Complex displacement_element(int m, int n, const PlanePoint& alpha) {
  if (m < 0 || n < 0) throw std::invalid_argument("displacement_element: negative index");
  const long double u = std::norm(alpha.alpha);
  const long double r = std::abs(Complex(alpha.alpha));
  const long double phi = std::arg(alpha.alpha);
  const int lo = std::min(m, n);
  const int d = std::abs(n - m);
  // <m|D|n> = sqrt(lo!/hi!) z^d e^{-u/2} L_lo^{(d)}(u), z = alpha or -conj(alpha)
  const long double mag = std::exp(0.5L * (ln_fact_l(lo) - ln_fact_l(lo + d))) *
                          std::pow(r, d) * std::exp(-0.5L * u) * laguerre_l(lo, d, u);
  // z^d phase: z = alpha below the diagonal (from D|0> = e^{-u/2} sum alpha^k/sqrt(k!) |k>),
  // z = -conj(alpha) above it
  const long double ph = (m >= n) ? phi * d : d * (pi - phi);
  return Complex(static_cast<double>(mag * std::cos(ph)), static_cast<double>(mag * std::sin(ph)));
}

double kernel_trace_tail_bound(const FockRep& rep, SValue s) {
  const double ratio = std::abs(kernel_ratio(s));
  if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
  return std::abs(2.0 / (1.0 + s.s)) * std::pow(ratio, rep.n_max + 1) / (1.0 - ratio);
}

std::vector<ComplexMatrix> radial_displacements(const FockRep& rep, const PolarGrid& grid) {
  std::vector<ComplexMatrix> dr(grid.n_radial);
  for (int i = 0; i < grid.n_radial; ++i)
    dr[i] = displacement_radial(rep, std::abs(grid.nodes[static_cast<size_t>(i) * grid.n_angular].alpha));
  return dr;
}

std::vector<ComplexMatrix> ring_kernels(const FockRep& rep, SValue s,
                                        const std::vector<ComplexMatrix>& radial) {
  const RealVector diag = kernel_diag(rep, s);
  std::vector<ComplexMatrix> rings(radial.size());
  for (size_t i = 0; i < radial.size(); ++i) rings[i] = hermitian_sandwich(radial[i], diag);
  return rings;
}

int support_block(const ComplexMatrix& a) {
  int b = static_cast<int>(a.rows());
  while (b > 0 && a.row(b - 1).cwiseAbs().maxCoeff() == 0.0 &&
         a.col(b - 1).cwiseAbs().maxCoeff() == 0.0)
    --b;
  return b;
}

namespace {

// Trace against the closed-form kernel elements over the support of A;
// the route that stays stable for s < 0.
Complex block_trace(const ComplexMatrix& a, int b, SValue s, const PlanePoint& alpha) {
  if (b == 0) return 0.0;
  const ComplexMatrix block = cg_kernel_block(s, alpha, b);
  Complex f = 0.0;
  for (int m = 0; m < b; ++m)
    for (int n = 0; n < b; ++n) f += a(m, n) * block(n, m);
  return f;
}

PlaneQpdGrid hw_weyl_map_stable(const FockRep& rep, const ComplexMatrix& a, SValue s,
                                const PolarGrid& grid) {
  const int b = support_block(a);
  ComplexVector values(grid.size());
  for (int k = 0; k < grid.size(); ++k) values[k] = block_trace(a, b, s, grid.nodes[k]);
  return PlaneQpdGrid{s, rep.n_max, grid, std::move(values)};
}

}  // namespace

PlaneQpdGrid hw_weyl_map(const FockRep& rep, const ComplexMatrix& a, SValue s,
                         const PolarGrid& grid) {
  if (a.rows() != rep.dim() || a.cols() != rep.dim())
    throw std::invalid_argument("hw_weyl_map: operator dimension mismatch");
  if (s.s < 0.0) return hw_weyl_map_stable(rep, a, s, grid);
  return hw_weyl_map(rep, a, s, grid, ring_kernels(rep, s, radial_displacements(rep, grid)));
}

PlaneQpdGrid hw_weyl_map(const FockRep& rep, const ComplexMatrix& a, SValue s,
                         const PolarGrid& grid, const std::vector<ComplexMatrix>& rings) {
  if (a.rows() != rep.dim() || a.cols() != rep.dim())
    throw std::invalid_argument("hw_weyl_map: operator dimension mismatch");
  if (s.s < 0.0) return hw_weyl_map_stable(rep, a, s, grid);
  if (static_cast<int>(rings.size()) != grid.n_radial)
    throw std::invalid_argument("hw_weyl_map: ring kernel count mismatch");
  const int d = rep.dim();
  ComplexVector values(grid.size());
  for (int i = 0; i < grid.n_radial; ++i) {
    // Tr(A U Delta_r U^dag) = u^dag (A o Delta_r^T) u with u = diag phases
    const ComplexMatrix c = a.cwiseProduct(rings[i].transpose());
    for (int p = 0; p < grid.n_angular; ++p) {
      const int k = i * grid.n_angular + p;
      const ComplexVector u = phase_diag(d, std::arg(grid.nodes[k].alpha));
      values[k] = u.dot(c * u);
    }
  }
  return PlaneQpdGrid{s, rep.n_max, grid, std::move(values)};
}

Complex hw_qpd_at(const FockRep& rep, const ComplexMatrix& a, SValue s, const PlanePoint& alpha) {
  if (a.rows() != rep.dim() || a.cols() != rep.dim())
    throw std::invalid_argument("hw_qpd_at: operator dimension mismatch");
  if (s.s < 0.0) return block_trace(a, support_block(a), s, alpha);
  return (a * cg_kernel(rep, s, alpha)).trace();
}

ComplexMatrix hw_reconstruct_wigner(const FockRep& rep, const PlaneQpdGrid& f) {
  if (f.s.s != 0.0)
    throw std::invalid_argument(
        "hw_reconstruct_wigner: only s = 0 grids can be inverted on a truncated space");
  if (f.n_max != rep.n_max) throw std::invalid_argument("hw_reconstruct_wigner: n_max mismatch");
  const int d = rep.dim();
  const std::vector<ComplexMatrix> rings =
      ring_kernels(rep, SValue{0.0}, radial_displacements(rep, f.grid));
  ComplexMatrix acc = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < f.grid.n_radial; ++i) {
    for (int p = 0; p < f.grid.n_angular; ++p) {
      const int k = i * f.grid.n_angular + p;
      const ComplexVector u = phase_diag(d, std::arg(f.grid.nodes[k].alpha));
      acc += (f.grid.weights[k] * f.values[k]) *
             (u.asDiagonal() * rings[i] * u.conjugate().asDiagonal());
    }
  }
  return acc;
}

}  // namespace swqpd
