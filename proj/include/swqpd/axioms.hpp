#pragma once

#include "swqpd/hw.hpp"
#include "swqpd/kernel.hpp"
#include "swqpd/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace swqpd {

/// Result of one randomized axiom check. Deviations are max-norms, never
/// averages; passed <=> max_deviation <= tolerance.
struct AxiomReport {
  std::string axiom;
  std::string system;
  std::vector<double> s_values;
  int trials = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
};

/// Random complex Gaussian matrix, entries N(0,1) + i N(0,1).
ComplexMatrix random_complex_matrix(int dim, std::mt19937_64& rng);
ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng);
/// Haar-random rotation from a normalized 4-component Gaussian quaternion.
EulerAngles random_rotation(std::mt19937_64& rng);
PhasePoint random_phase_point(std::mt19937_64& rng);

struct Su2System {
  KernelData kd;
  QuadratureGrid grid;
};

Su2System build_su2_system(const SpinRep& rep);

inline const std::vector<double>& default_s_list() {
  static const std::vector<double> s{-1.0, -0.5, 0.0, 0.5, 1.0};
  return s;
}

AxiomReport verify_reality(const Su2System& sys, const std::vector<double>& s_list,
                           int trials = 100, std::uint64_t seed = 1);
AxiomReport verify_standardization(const Su2System& sys, const std::vector<double>& s_list,
                                   int trials = 100, std::uint64_t seed = 2);
AxiomReport verify_covariance(const Su2System& sys, const std::vector<double>& s_list,
                              int trials = 100, std::uint64_t seed = 3);
AxiomReport verify_traciality(const Su2System& sys, const std::vector<double>& s_list,
                              int trials = 100, std::uint64_t seed = 4);
AxiomReport verify_delta(const Su2System& sys, const std::vector<double>& s_list,
                         int probes = 20, std::uint64_t seed = 5);

std::vector<AxiomReport> verify_all_su2(const SpinRep& rep, const std::vector<double>& s_list,
                                        int trials, std::uint64_t seed);

struct HwSystem {
  FockRep rep;
  int block = 5;  // excitation cutoff of the probe operators
};

/// Verification setup for the plane; probe operators live on <= 5 photons
/// and every check picks a quadrature domain its integrand actually decays
/// on. Requires n_max >= 40.
HwSystem build_hw_system(const FockRep& rep);

inline const std::vector<double>& default_hw_s_list() {
  static const std::vector<double> s{-0.5, 0.0, 0.5};
  return s;
}

AxiomReport verify_hw_reality(const HwSystem& sys, const std::vector<double>& s_list,
                              int trials = 20, std::uint64_t seed = 1);
AxiomReport verify_hw_standardization(const HwSystem& sys, const std::vector<double>& s_list,
                                      int trials = 20, std::uint64_t seed = 2);
AxiomReport verify_hw_covariance(const HwSystem& sys, const std::vector<double>& s_list,
                                 int trials = 20, std::uint64_t seed = 3);
AxiomReport verify_hw_traciality(const HwSystem& sys, const std::vector<double>& s_list,
                                 int trials = 20, std::uint64_t seed = 4);
/// Plane analog of the delta test: the K_{1,0} pairing smooths a Wigner
/// grid into the Q function, checked at random probe points.
AxiomReport verify_hw_smoothing(const HwSystem& sys, int trials = 10, std::uint64_t seed = 5);

std::vector<AxiomReport> verify_all_hw(const FockRep& rep, const std::vector<double>& s_list,
                                       int trials, std::uint64_t seed);

}  // namespace swqpd
