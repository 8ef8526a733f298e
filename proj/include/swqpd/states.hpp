#pragma once

#include "swqpd/hw.hpp"
#include "swqpd/types.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace swqpd {

enum class StateKind { dicke, coherent, cat, random_pure, random_mixed, matrix };

/// Parsed state description (JSON document, schema in the README).
struct StateSpec {
  StateKind kind = StateKind::dicke;
  // dicke
  int twom = 0;    // su2: 2m
  int fock_n = 0;  // hw: photon number
  // coherent / cat legs
  PhasePoint point_a, point_b;   // su2
  Complex alpha_a, alpha_b;      // hw
  double relative_phase = 0.0;   // cat
  std::uint64_t seed = 0;        // random_*
  ComplexMatrix matrix;          // matrix kind
  std::optional<bool> purity;    // optional check: Tr(rho^2) == 1 iff true
};

StateSpec parse_state_spec(const std::string& json_text);
StateSpec load_state_spec(const std::string& path);

/// Density matrix of the spec on a spin-j space. Throws if the result is
/// not Hermitian, positive semidefinite and unit trace to 1e-12, or if the
/// purity flag disagrees with Tr(rho^2).
ComplexMatrix density_matrix_su2(const StateSpec& spec, const SpinRep& rep);

/// Same on a truncated Fock space.
ComplexMatrix density_matrix_hw(const StateSpec& spec, const FockRep& rep);

}  // namespace swqpd
