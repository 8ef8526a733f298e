#include "swqpd/axioms.hpp"

#include <algorithm>
#include <cmath>

namespace swqpd {

namespace {

AxiomReport make_report(std::string axiom, std::string system, std::vector<double> s_list,
                        int trials, double dev, double tol, std::uint64_t seed) {
  AxiomReport r;
  r.axiom = std::move(axiom);
  r.system = std::move(system);
  r.s_values = std::move(s_list);
  r.trials = trials;
  r.max_deviation = dev;
  r.tolerance = tol;
  r.passed = dev <= tol;
  r.seed = seed;
  return r;
}

std::string su2_label(const SpinRep& rep) { return "su2 2j=" + std::to_string(rep.twoj); }

std::string hw_label(const FockRep& rep) { return "hw n_max=" + std::to_string(rep.n_max); }

// Low-excitation operator: random complex on the top-left block, zero outside.
ComplexMatrix random_block_matrix(int dim, int block, std::mt19937_64& rng, bool hermitian) {
  const int b = std::min(block + 1, dim);
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  a.topLeftCorner(b, b) = hermitian ? random_hermitian(b, rng) : random_complex_matrix(b, rng);
  return a;
}

void require_trials(int trials, const char* who) {
  if (trials < 1) throw std::invalid_argument(std::string(who) + ": trials must be >= 1");
}

}  // namespace

ComplexMatrix random_complex_matrix(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(n01(rng), n01(rng));
  return g;
}

ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_complex_matrix(dim, rng);
  return 0.5 * (g + g.adjoint());
}

EulerAngles random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  double q[4];
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : q) {
      v = n01(rng);
      norm2 += v * v;
    }
  } while (norm2 < 1e-12);
  return euler_from_quaternion(q[0], q[1], q[2], q[3]);
}

PhasePoint random_phase_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double ct = 2.0 * u01(rng) - 1.0;
  return PhasePoint(std::acos(std::clamp(ct, -1.0, 1.0)), 2.0 * pi * u01(rng));
}

Su2System build_su2_system(const SpinRep& rep) {
  return Su2System{build_kernel_data(rep), sphere_grid(rep)};
}

AxiomReport verify_reality(const Su2System& sys, const std::vector<double>& s_list, int trials,
                           std::uint64_t seed) {
  require_trials(trials, "verify_reality");
  std::mt19937_64 rng(seed);
  double dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix a = random_complex_matrix(sys.kd.rep.dim(), rng);
    for (double s : s_list) {
      const QpdGrid fa = weyl_map(sys.kd, a, SValue{s}, sys.grid);
      const QpdGrid fad = weyl_map(sys.kd, a.adjoint(), SValue{s}, sys.grid);
      dev = std::max(dev, (fad.values - fa.values.conjugate()).cwiseAbs().maxCoeff());
    }
  }
  return make_report("reality", su2_label(sys.kd.rep), s_list, trials, dev, 1e-10, seed);
}

AxiomReport verify_standardization(const Su2System& sys, const std::vector<double>& s_list,
                                   int trials, std::uint64_t seed) {
  require_trials(trials, "verify_standardization");
  std::mt19937_64 rng(seed);
  double dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix a = random_complex_matrix(sys.kd.rep.dim(), rng);
    for (double s : s_list) {
      const QpdGrid f = weyl_map(sys.kd, a, SValue{s}, sys.grid);
      const Complex integral = f.values.cwiseProduct(f.grid.weights.cast<Complex>()).sum();
      dev = std::max(dev, std::abs(integral - a.trace()));
    }
  }
  return make_report("standardization", su2_label(sys.kd.rep), s_list, trials, dev, 1e-10, seed);
}

AxiomReport verify_covariance(const Su2System& sys, const std::vector<double>& s_list, int trials,
                              std::uint64_t seed) {
  require_trials(trials, "verify_covariance");
  std::mt19937_64 rng(seed);
  const int n_probe = 50;
  double dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix a = random_complex_matrix(sys.kd.rep.dim(), rng);
    const EulerAngles g = random_rotation(rng);
    const ComplexMatrix tg = rotation_operator(sys.kd.rep, g);
    const ComplexMatrix a_rot = tg * a * tg.adjoint();
    for (double s : s_list) {
      for (int p = 0; p < n_probe; ++p) {
        const PhasePoint omega = random_phase_point(rng);
        const Complex lhs = qpd_at(sys.kd, a_rot, SValue{s}, omega);
        const Complex rhs = qpd_at(sys.kd, a, SValue{s}, rotate_point(euler_inverse(g), omega));
        dev = std::max(dev, std::abs(lhs - rhs));
      }
    }
  }
  return make_report("covariance", su2_label(sys.kd.rep), s_list, trials, dev, 1e-9, seed);
}

AxiomReport verify_traciality(const Su2System& sys, const std::vector<double>& s_list, int trials,
                              std::uint64_t seed) {
  require_trials(trials, "verify_traciality");
  std::mt19937_64 rng(seed);
  double dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix a = random_hermitian(sys.kd.rep.dim(), rng);
    const ComplexMatrix b = random_hermitian(sys.kd.rep.dim(), rng);
    const Complex tr_ab = (a * b).trace();
    for (double s : s_list) {
      const QpdGrid fa = weyl_map(sys.kd, a, SValue{s}, sys.grid);
      const QpdGrid fb = weyl_map(sys.kd, b, SValue{-s}, sys.grid);
      const Complex pairing =
          fa.values.cwiseProduct(fb.values).cwiseProduct(sys.grid.weights.cast<Complex>()).sum();
      dev = std::max(dev, std::abs(pairing - tr_ab) / std::max(1.0, std::abs(tr_ab)));
    }
  }
  return make_report("traciality", su2_label(sys.kd.rep), s_list, trials, dev, 1e-10, seed);
}

AxiomReport verify_delta(const Su2System& sys, const std::vector<double>& s_list, int probes,
                         std::uint64_t seed) {
  require_trials(probes, "verify_delta");
  std::mt19937_64 rng(seed);
  const int n = sys.grid.size();
  std::vector<ComplexMatrix> delta_nodes(n);
  double dev = 0.0;
  for (double s : s_list) {
    for (int k = 0; k < n; ++k) delta_nodes[k] = sw_kernel_at(sys.kd, SValue{s}, sys.grid.nodes[k]);
    for (int p = 0; p < probes; ++p) {
      const PhasePoint omega = random_phase_point(rng);
      ComplexMatrix acc = ComplexMatrix::Zero(sys.kd.rep.dim(), sys.kd.rep.dim());
      for (int k = 0; k < n; ++k) {
        const Complex kv = k_function(sys.kd, SValue{s}, SValue{s}, omega, sys.grid.nodes[k]);
        acc += (sys.grid.weights[k] * kv) * delta_nodes[k];
      }
      const ComplexMatrix direct = sw_kernel_at(sys.kd, SValue{s}, omega);
      dev = std::max(dev, (acc - direct).cwiseAbs().maxCoeff());
    }
  }
  return make_report("delta", su2_label(sys.kd.rep), s_list, probes, dev, 1e-10, seed);
}

std::vector<AxiomReport> verify_all_su2(const SpinRep& rep, const std::vector<double>& s_list,
                                        int trials, std::uint64_t seed) {
  const Su2System sys = build_su2_system(rep);
  return {verify_reality(sys, s_list, trials, seed),
          verify_standardization(sys, s_list, trials, seed + 1),
          verify_covariance(sys, s_list, trials, seed + 2),
          verify_traciality(sys, s_list, trials, seed + 3),
          verify_delta(sys, s_list, std::min(trials, 20), seed + 4)};
}

HwSystem build_hw_system(const FockRep& rep) {
  if (rep.n_max < 40)
    throw std::invalid_argument("build_hw_system: axiom verification needs n_max >= 40");
  return HwSystem{rep, 5};
}

namespace {

// Verification grid for integrals whose integrand decays like
// exp(-2u/(1+s)) times a low-degree polynomial.
PolarGrid hw_axiom_grid(const FockRep& rep, double s_slowest) {
  const double u_max = std::min(14.0 * (1.0 + s_slowest) + 2.0, 0.35 * rep.n_max);
  return polar_grid(96, 32, u_max);
}

// Domain for the F^(s) F^(-s) pairings; the slowest integrand is the
// Wigner-Wigner product of 5-photon operators, decaying like e^{-4u} times
// a degree-20 polynomial.
PolarGrid hw_pairing_grid(const FockRep& rep) {
  return polar_grid(96, 32, std::min(15.0, 0.35 * rep.n_max));
}

}  // namespace

AxiomReport verify_hw_reality(const HwSystem& sys, const std::vector<double>& s_list, int trials,
                              std::uint64_t seed) {
  require_trials(trials, "verify_hw_reality");
  std::mt19937_64 rng(seed);
  const PolarGrid grid = hw_pairing_grid(sys.rep);
  const std::vector<ComplexMatrix> radial = radial_displacements(sys.rep, grid);
  std::vector<ComplexMatrix> ops;
  for (int t = 0; t < trials; ++t)
    ops.push_back(random_block_matrix(sys.rep.dim(), sys.block, rng, false));
  double dev = 0.0;
  for (double s : s_list) {
    const bool bounded = s >= 0.0;
    const std::vector<ComplexMatrix> rings =
        bounded ? ring_kernels(sys.rep, SValue{s}, radial) : std::vector<ComplexMatrix>{};
    for (const ComplexMatrix& a : ops) {
      const PlaneQpdGrid fa = bounded ? hw_weyl_map(sys.rep, a, SValue{s}, grid, rings)
                                      : hw_weyl_map(sys.rep, a, SValue{s}, grid);
      const PlaneQpdGrid fad = bounded ? hw_weyl_map(sys.rep, a.adjoint(), SValue{s}, grid, rings)
                                       : hw_weyl_map(sys.rep, a.adjoint(), SValue{s}, grid);
      dev = std::max(dev, (fad.values - fa.values.conjugate()).cwiseAbs().maxCoeff());
    }
  }
  return make_report("reality", hw_label(sys.rep), s_list, trials, dev, 1e-9, seed);
}

AxiomReport verify_hw_standardization(const HwSystem& sys, const std::vector<double>& s_list,
                                      int trials, std::uint64_t seed) {
  require_trials(trials, "verify_hw_standardization");
  std::mt19937_64 rng(seed);
  std::vector<ComplexMatrix> ops;
  for (int t = 0; t < trials; ++t)
    ops.push_back(random_block_matrix(sys.rep.dim(), std::min(sys.block, 3), rng, false));
  double dev = 0.0;
  for (double s : s_list) {
    const PolarGrid grid = hw_axiom_grid(sys.rep, s);
    const std::vector<ComplexMatrix> rings =
        s >= 0.0 ? ring_kernels(sys.rep, SValue{s}, radial_displacements(sys.rep, grid))
                 : std::vector<ComplexMatrix>{};
    for (const ComplexMatrix& a : ops) {
      const PlaneQpdGrid f = s >= 0.0 ? hw_weyl_map(sys.rep, a, SValue{s}, grid, rings)
                                      : hw_weyl_map(sys.rep, a, SValue{s}, grid);
      const Complex integral = f.values.cwiseProduct(f.grid.weights.cast<Complex>()).sum();
      dev = std::max(dev, std::abs(integral - a.trace()));
    }
  }
  return make_report("standardization", hw_label(sys.rep), s_list, trials, dev, 1e-6, seed);
}

AxiomReport verify_hw_covariance(const HwSystem& sys, const std::vector<double>& s_list,
                                 int trials, std::uint64_t seed) {
  require_trials(trials, "verify_hw_covariance");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const int d = sys.rep.dim();
  double dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Complex alpha = std::polar(u01(rng), 2.0 * pi * u01(rng));
    const Complex beta = std::polar(u01(rng), 2.0 * pi * u01(rng));
    for (double s : s_list) {
      if (s > 0.0) {
        // bounded kernel: Delta^(s)(alpha+beta) = D(beta) Delta^(s)(alpha) D(beta)^dag
        const ComplexMatrix db = displacement(sys.rep, PlanePoint(beta));
        const ComplexMatrix lhs = cg_kernel(sys.rep, SValue{s}, PlanePoint(alpha + beta));
        const ComplexMatrix rhs =
            db * cg_kernel(sys.rep, SValue{s}, PlanePoint(alpha)) * db.adjoint();
        dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
      } else if (s == 0.0) {
        // parity kernel: the truncation edge carries O(1) garbage, so the
        // identity is checked on the physically meaningful low block
        const int b = std::max(sys.block + 1, d / 4);
        const ComplexMatrix db = displacement(sys.rep, PlanePoint(beta));
        const ComplexMatrix lhs = cg_kernel(sys.rep, SValue{s}, PlanePoint(alpha + beta));
        const ComplexMatrix rhs =
            db * cg_kernel(sys.rep, SValue{s}, PlanePoint(alpha)) * db.adjoint();
        dev = std::max(dev, (lhs - rhs).topLeftCorner(b, b).cwiseAbs().maxCoeff());
      } else {
        // growing kernel: compare closed-form blocks, conjugating with
        // closed-form displacement rows
        const int b = sys.block + 1;
        const int kk = b + 30;
        const ComplexMatrix lhs = cg_kernel_block(SValue{s}, PlanePoint(alpha + beta), b);
        const ComplexMatrix mid = cg_kernel_block(SValue{s}, PlanePoint(alpha), kk);
        ComplexMatrix v(b, kk);  // v(m, k) = <m|D(beta)|k>
        for (int m = 0; m < b; ++m)
          for (int k = 0; k < kk; ++k) v(m, k) = displacement_element(m, k, PlanePoint(beta));
        const ComplexMatrix rhs = v * mid * v.adjoint();
        dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
  }
  return make_report("covariance", hw_label(sys.rep), s_list, trials, dev, 1e-8, seed);
}

AxiomReport verify_hw_traciality(const HwSystem& sys, const std::vector<double>& s_list,
                                 int trials, std::uint64_t seed) {
  require_trials(trials, "verify_hw_traciality");
  std::mt19937_64 rng(seed);
  const PolarGrid grid = hw_pairing_grid(sys.rep);
  const std::vector<ComplexMatrix> radial = radial_displacements(sys.rep, grid);
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> pairs;
  for (int t = 0; t < trials; ++t)
    pairs.emplace_back(random_block_matrix(sys.rep.dim(), sys.block, rng, true),
                       random_block_matrix(sys.rep.dim(), sys.block, rng, true));
  double dev = 0.0;
  for (double s : s_list) {
    // rings serve the bounded side; the s < 0 side dispatches to the
    // closed-form block route on its own
    const std::vector<ComplexMatrix> rings =
        ring_kernels(sys.rep, SValue{std::abs(s)}, radial);
    for (const auto& [a, b] : pairs) {
      const Complex tr_ab = (a * b).trace();
      const PlaneQpdGrid fa = hw_weyl_map(sys.rep, a, SValue{s}, grid, rings);
      const PlaneQpdGrid fb = hw_weyl_map(sys.rep, b, SValue{-s}, grid, rings);
      const Complex pairing =
          fa.values.cwiseProduct(fb.values).cwiseProduct(grid.weights.cast<Complex>()).sum();
      dev = std::max(dev, std::abs(pairing - tr_ab) / std::max(1.0, std::abs(tr_ab)));
    }
  }
  return make_report("traciality", hw_label(sys.rep), s_list, trials, dev, 1e-6, seed);
}

AxiomReport verify_hw_smoothing(const HwSystem& sys, int trials, std::uint64_t seed) {
  require_trials(trials, "verify_hw_smoothing");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const PolarGrid grid = polar_grid(96, 32, std::min(18.0, 0.3 * sys.rep.n_max));
  const std::vector<ComplexMatrix> radial = radial_displacements(sys.rep, grid);
  const std::vector<ComplexMatrix> rings = ring_kernels(sys.rep, SValue{0.0}, radial);
  const int d = sys.rep.dim();
  double dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    // Q(beta) = sum_k w_k K_{1,0}(beta, alpha_k) W(alpha_k) with
    // K_{1,0}(beta, alpha) = <beta| Delta^(0)(alpha) |beta>.
    ComplexMatrix rho = random_block_matrix(d, sys.block, rng, false);
    rho = rho * rho.adjoint();
    rho /= rho.trace();
    const PlaneQpdGrid w = hw_weyl_map(sys.rep, rho, SValue{0.0}, grid, rings);
    for (int p = 0; p < 5; ++p) {
      const PlanePoint beta(std::polar(u01(rng), 2.0 * pi * u01(rng)));
      const ComplexVector cs = displacement(sys.rep, beta).col(0);
      Complex q_smooth = 0.0;
      for (int i = 0; i < grid.n_radial; ++i) {
        for (int a = 0; a < grid.n_angular; ++a) {
          const int k = i * grid.n_angular + a;
          ComplexVector v(d);
          const double phi = std::arg(grid.nodes[k].alpha);
          for (int n = 0; n < d; ++n) v[n] = std::exp(Complex(0.0, -phi * n)) * cs[n];
          q_smooth += grid.weights[k] * w.values[k] * v.dot(rings[i] * v);
        }
      }
      const Complex q_direct = hw_qpd_at(sys.rep, rho, SValue{1.0}, beta);
      dev = std::max(dev, std::abs(q_smooth - q_direct));
    }
  }
  return make_report("smoothing", hw_label(sys.rep), {1.0, 0.0}, trials, dev, 1e-6, seed);
}

std::vector<AxiomReport> verify_all_hw(const FockRep& rep, const std::vector<double>& s_list,
                                       int trials, std::uint64_t seed) {
  const HwSystem sys = build_hw_system(rep);
  return {verify_hw_reality(sys, s_list, trials, seed),
          verify_hw_standardization(sys, s_list, trials, seed + 1),
          verify_hw_covariance(sys, s_list, trials, seed + 2),
          verify_hw_traciality(sys, s_list, trials, seed + 3),
          verify_hw_smoothing(sys, std::min(trials, 10), seed + 4)};
}

}  // namespace swqpd
