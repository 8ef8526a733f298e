#include "swqpd/kernel.hpp"

#include "swqpd/detail/su2_math.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace swqpd {

namespace {

using LComplex = std::complex<long double>;

constexpr long double pi_l = detail::pi_v<long double>;

// Long-double sphere rule with the default node counts; the kernel tables
// are built from this rather than the double-rounded public grid so the
// tiny-tau_L normalizations stay accurate.
struct SphereRuleLd {
  std::vector<long double> theta, wt;  // per polar ring
  int n_phi = 0;
};

SphereRuleLd sphere_rule_ld(const SpinRep& rep) {
  SphereRuleLd rule;
  const int n_theta = 2 * rep.twoj + 3;
  rule.n_phi = 2 * rep.twoj + 5;
  std::vector<long double> x(n_theta), gw(n_theta);
  detail::gauss_legendre_rule<long double>(n_theta, x.data(), gw.data());
  rule.theta.resize(n_theta);
  rule.wt.resize(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    rule.theta[i] = std::acos(std::clamp(x[i], -1.0L, 1.0L));
    rule.wt[i] = rep.dim() / (4.0L * pi_l) * gw[i] * (2.0L * pi_l / rule.n_phi);
  }
  return rule;
}

double tau_closed_form(int twoj, int L) {
  // (2j+1) ((2j)!)^2 / ((2j-L)! (2j+L+1)!)
  const double ln = 2.0 * std::lgamma(twoj + 1.0) - std::lgamma(twoj - L + 1.0) -
                    std::lgamma(twoj + L + 2.0);
  return (twoj + 1.0) * std::exp(ln);
}

// Harmonic-value matrix Y(nu, k) over the grid nodes.
ComplexMatrix harmonic_matrix(const SpinRep& rep, const QuadratureGrid& grid) {
  ComplexMatrix y(harmonic_count(rep), grid.size());
  for (int k = 0; k < grid.size(); ++k) y.col(k) = harmonics_all(rep, grid.nodes[k]);
  return y;
}

}  // namespace

RealVector compute_tau(const SpinRep& rep) {
  const int L_max = rep.twoj;

  // Project |<north|Omega>|^2 = cos^{4j}(theta/2) onto Y_{L0}. The high-L
  // coefficients are exponentially small results of an O(1) integrand, so
  // the whole projection runs in long double (rule included). Only the
  // polar rings matter: the integrand has no phi content.
  const SphereRuleLd rule = sphere_rule_ld(rep);
  std::vector<long double> acc(L_max + 1, 0.0L);
  std::vector<long double> p(L_max + 1);
  const long double scale = std::sqrt(4.0L * pi_l / rep.dim());
  for (size_t i = 0; i < rule.theta.size(); ++i) {
    const long double x = std::cos(rule.theta[i]);
    detail::normalized_assoc_legendre<long double>(0, L_max, x, p.data());
    const long double f =
        rule.n_phi * rule.wt[i] * detail::int_pow(0.5L * (1.0L + x), rep.twoj);
    for (int L = 0; L <= L_max; ++L) acc[L] += f * scale * p[L];
  }
  RealVector tau(L_max + 1);
  for (int L = 0; L <= L_max; ++L)
    tau[L] = static_cast<double>(std::sqrt(rep.dim() / (2.0L * L + 1.0L)) * acc[L]);

  for (int L = 0; L <= L_max; ++L) {
    if (!(tau[L] > 0.0))
      throw std::runtime_error("compute_tau: nonpositive coefficient at L=" + std::to_string(L));
    if (L > 0 && !(tau[L] < tau[L - 1]))
      throw std::runtime_error("compute_tau: coefficients not strictly decreasing");
    if (std::abs(tau[L] - tau_closed_form(rep.twoj, L)) > 1e-11)
      throw std::runtime_error("compute_tau: quadrature disagrees with closed form at L=" +
                               std::to_string(L));
  }

  // M-independence: expand |<probe|Omega>|^2 over all harmonics and compare
  // the (L, M) coefficient against tau_L Y_nu^*(probe).
  const QuadratureGrid grid = sphere_grid(rep);
  const PhasePoint probe(1.0, 0.7);
  const ComplexVector y_probe = harmonics_all(rep, probe);
  const ComplexVector cs_probe = coherent_state(rep, probe);
  ComplexVector coeff = ComplexVector::Zero(harmonic_count(rep));
  for (int k = 0; k < grid.size(); ++k) {
    const Complex ov = cs_probe.dot(coherent_state(rep, grid.nodes[k]));
    coeff += grid.weights[k] * std::norm(ov) * harmonics_all(rep, grid.nodes[k]).conjugate();
  }
  for (int idx = 0; idx < coeff.size(); ++idx) {
    const HarmonicIndex nu = HarmonicIndex::from_flat(idx);
    if (std::abs(coeff[idx] - tau[nu.L] * std::conj(y_probe[idx])) > 1e-10)
      throw std::runtime_error("compute_tau: expansion coefficient is not M-independent");
  }
  return tau;
}

std::vector<ComplexMatrix> tensor_operators(const SpinRep& rep, const RealVector& tau) {
  if (tau.size() != rep.twoj + 1) throw std::invalid_argument("tensor_operators: tau size mismatch");
  const int d = rep.dim();
  const int n_nu = harmonic_count(rep);

  // E_nu = sum_k w_k Y_nu(Omega_k) |Omega_k><Omega_k|. The high-L operators
  // have norm sqrt(tau_L) << 1; nodes, weights and integrand all live in
  // long double so the Gram matrix stays inside the 1e-10 gate through j = 6.
  const SphereRuleLd rule = sphere_rule_ld(rep);
  std::vector<std::vector<LComplex>> acc(n_nu, std::vector<LComplex>(d * d, LComplex(0, 0)));
  std::vector<LComplex> proj(d * d);
  std::vector<LComplex> cs(d);
  std::vector<LComplex> y(n_nu);
  for (size_t i = 0; i < rule.theta.size(); ++i) {
    for (int pphi = 0; pphi < rule.n_phi; ++pphi) {
      const long double phi = 2.0L * pi_l * pphi / rule.n_phi;
      detail::coherent_components<long double>(rep.twoj, rule.theta[i], phi, cs.data());
      detail::harmonics_row<long double>(rep.twoj, rule.theta[i], phi, y.data());
      const long double w = rule.wt[i];
      for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) proj[c * d + r] = w * cs[r] * std::conj(cs[c]);
      for (int idx = 0; idx < n_nu; ++idx) {
        const LComplex coef = y[idx];
        LComplex* out = acc[idx].data();
        for (int e = 0; e < d * d; ++e) out[e] += coef * proj[e];
      }
    }
  }

  std::vector<ComplexMatrix> ops(n_nu);
  for (int idx = 0; idx < n_nu; ++idx) {
    const HarmonicIndex nu = HarmonicIndex::from_flat(idx);
    const long double scale = 1.0L / std::sqrt(static_cast<long double>(tau[nu.L]));
    ops[idx].resize(d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) {
        const LComplex v = scale * acc[idx][c * d + r];
        ops[idx](r, c) = Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
      }
  }

  // Gram check Tr(D_nu D_nu'^dag) = delta; this is also where the
  // M-independence of tau is enforced against the raw integrals.
  ComplexMatrix dmat(n_nu, d * d);
  for (int idx = 0; idx < n_nu; ++idx)
    dmat.row(idx) = Eigen::Map<const ComplexVector>(ops[idx].data(), d * d);
  const ComplexMatrix gram = dmat * dmat.adjoint();
  const double dev = (gram - ComplexMatrix::Identity(n_nu, n_nu)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "tensor_operators: orthonormality failure, max deviation %.3e (2j=%d)", dev,
                  rep.twoj);
    throw std::runtime_error(msg);
  }
  return ops;
}

KernelData build_kernel_data(const SpinRep& rep) {
  RealVector tau = compute_tau(rep);
  RealVector omega = tau.array().rsqrt().matrix();
  std::vector<ComplexMatrix> ops = tensor_operators(rep, tau);
  return KernelData{rep, std::move(tau), std::move(omega), std::move(ops)};
}

ComplexMatrix sw_kernel_at(const KernelData& kd, SValue s, const PhasePoint& omega) {
  const int d = kd.rep.dim();
  const ComplexVector y = harmonics_all(kd.rep, omega);
  ComplexMatrix delta = ComplexMatrix::Zero(d, d);
  for (int idx = 0; idx < y.size(); ++idx) {
    const HarmonicIndex nu = HarmonicIndex::from_flat(idx);
    delta += std::pow(kd.tau[nu.L], 0.5 * s.s) * std::conj(y[idx]) * kd.tensor_ops[idx];
  }
  return delta;
}

void require_exact_grid(const SpinRep& rep, const QuadratureGrid& grid) {
  if (grid.n_theta < 2 * rep.twoj + 3 || grid.n_phi < 2 * rep.twoj + 1)
    throw std::invalid_argument("grid too coarse for exact band-limited quadrature at this j (need n_theta >= 4j+3, n_phi >= 4j+1)");
}

ComplexVector harmonic_coefficients(const KernelData& kd, const ComplexMatrix& a) {
  if (a.rows() != kd.rep.dim() || a.cols() != kd.rep.dim())
    throw std::invalid_argument("harmonic_coefficients: operator dimension mismatch");
  const int n_nu = harmonic_count(kd.rep);
  ComplexVector coeff(n_nu);
  for (int idx = 0; idx < n_nu; ++idx)
    coeff[idx] = (a.array() * kd.tensor_ops[idx].conjugate().array()).sum();  // Tr(A D^dag)
  return coeff;
}

QpdGrid weyl_map(const KernelData& kd, const ComplexMatrix& a, SValue s,
                 const QuadratureGrid& grid) {
  require_exact_grid(kd.rep, grid);
  ComplexVector coeff = harmonic_coefficients(kd, a);
  for (int idx = 0; idx < coeff.size(); ++idx)
    coeff[idx] *= std::pow(kd.tau[HarmonicIndex::from_flat(idx).L], 0.5 * s.s);
  const ComplexMatrix y = harmonic_matrix(kd.rep, grid);
  return QpdGrid{s, kd.rep.twoj, grid, y.transpose() * coeff};
}

Complex qpd_at(const KernelData& kd, const ComplexMatrix& a, SValue s, const PhasePoint& omega) {
  const ComplexVector coeff = harmonic_coefficients(kd, a);
  const ComplexVector y = harmonics_all(kd.rep, omega);
  Complex f = 0.0;
  for (int idx = 0; idx < coeff.size(); ++idx)
    f += std::pow(kd.tau[HarmonicIndex::from_flat(idx).L], 0.5 * s.s) * coeff[idx] * y[idx];
  return f;
}

ComplexMatrix inverse_weyl(const KernelData& kd, const QpdGrid& f) {
  if (f.twoj != kd.rep.twoj) throw std::invalid_argument("inverse_weyl: representation mismatch");
  require_exact_grid(kd.rep, f.grid);
  const int d = kd.rep.dim();
  // sum_k w_k F_k Delta^(-s)(Omega_k) = sum_nu tau^{-s/2} [proj of F onto Y_nu] D_nu
  const ComplexMatrix y = harmonic_matrix(kd.rep, f.grid);
  const ComplexVector proj =
      y.conjugate() * f.values.cwiseProduct(f.grid.weights.cast<Complex>());
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (int idx = 0; idx < proj.size(); ++idx)
    a += std::pow(kd.tau[HarmonicIndex::from_flat(idx).L], -0.5 * f.s.s) * proj[idx] *
         kd.tensor_ops[idx];
  return a;
}

QpdGrid transform_qpd(const KernelData& kd, const QpdGrid& f, SValue s_target) {
  if (f.twoj != kd.rep.twoj) throw std::invalid_argument("transform_qpd: representation mismatch");
  require_exact_grid(kd.rep, f.grid);
  const ComplexMatrix y = harmonic_matrix(kd.rep, f.grid);
  ComplexVector proj = y.conjugate() * f.values.cwiseProduct(f.grid.weights.cast<Complex>());
  for (int idx = 0; idx < proj.size(); ++idx)
    proj[idx] *= std::pow(kd.tau[HarmonicIndex::from_flat(idx).L], 0.5 * (s_target.s - f.s.s));
  return QpdGrid{s_target, f.twoj, f.grid, y.transpose() * proj};
}

Complex k_function(const KernelData& kd, SValue s, SValue s_prime, const PhasePoint& a,
                   const PhasePoint& b) {
  const ComplexVector ya = harmonics_all(kd.rep, a);
  const ComplexVector yb = harmonics_all(kd.rep, b);
  Complex k = 0.0;
  for (int idx = 0; idx < ya.size(); ++idx)
    k += std::pow(kd.tau[HarmonicIndex::from_flat(idx).L], 0.5 * (s.s - s_prime.s)) *
         std::conj(ya[idx]) * yb[idx];
  return k;
}

}  // namespace swqpd
