#include "swqpd/states.hpp"

#include "swqpd/su2.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace swqpd {

namespace {

using nlohmann::json;

StateKind kind_from_string(const std::string& s) {
  if (s == "dicke") return StateKind::dicke;
  if (s == "coherent") return StateKind::coherent;
  if (s == "cat") return StateKind::cat;
  if (s == "random_pure") return StateKind::random_pure;
  if (s == "random_mixed") return StateKind::random_mixed;
  if (s == "matrix") return StateKind::matrix;
  throw std::invalid_argument("state spec: unknown kind '" + s + "'");
}

// m may come as a number (0.5) or a string ("1/2", "-3/2", "0.5").
int parse_twice(const json& v, const char* field) {
  double value = 0.0;
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const int num = std::stoi(s.substr(0, slash));
      const int den = std::stoi(s.substr(slash + 1));
      if (den != 2) throw std::invalid_argument(std::string("state spec: ") + field + " fraction must have denominator 2");
      return num;
    }
    value = std::stod(s);
  } else {
    value = v.get<double>();
  }
  const double twice = 2.0 * value;
  if (std::abs(twice - std::round(twice)) > 1e-9)
    throw std::invalid_argument(std::string("state spec: ") + field + " must be half-integer");
  return static_cast<int>(std::round(twice));
}

void validate_density(const ComplexMatrix& rho, const std::optional<bool>& purity) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) throw std::invalid_argument("state spec: density matrix not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("state spec: density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-12)
    throw std::invalid_argument("state spec: density matrix not positive semidefinite");
  if (purity.has_value()) {
    const double p = (rho * rho).trace().real();
    const bool is_pure = std::abs(p - 1.0) <= 1e-10;
    if (is_pure != *purity)
      throw std::invalid_argument("state spec: purity flag disagrees with Tr(rho^2)");
  }
}

ComplexMatrix projector(const ComplexVector& v) {
  const double n2 = v.squaredNorm();
  if (n2 < 1e-12) throw std::invalid_argument("state spec: state vector has zero norm (degenerate cat?)");
  return (v * v.adjoint()) / n2;
}

ComplexMatrix random_pure_rho(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  ComplexVector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(n01(rng), n01(rng));
  return projector(v);
}

ComplexMatrix random_mixed_rho(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(n01(rng), n01(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace

StateSpec parse_state_spec(const std::string& json_text) {
  json doc = json::parse(json_text);
  StateSpec spec;
  spec.kind = kind_from_string(doc.at("kind").get<std::string>());
  if (doc.contains("purity")) spec.purity = doc["purity"].get<bool>();
  switch (spec.kind) {
    case StateKind::dicke:
      if (doc.contains("m")) spec.twom = parse_twice(doc["m"], "m");
      if (doc.contains("n")) spec.fock_n = doc["n"].get<int>();
      break;
    case StateKind::coherent:
      if (doc.contains("theta")) spec.point_a = PhasePoint(doc["theta"].get<double>(), doc.value("phi", 0.0));
      spec.alpha_a = Complex(doc.value("alpha_re", 0.0), doc.value("alpha_im", 0.0));
      break;
    case StateKind::cat:
      if (doc.contains("theta_a")) {
        spec.point_a = PhasePoint(doc["theta_a"].get<double>(), doc.value("phi_a", 0.0));
        spec.point_b = PhasePoint(doc["theta_b"].get<double>(), doc.value("phi_b", 0.0));
      }
      spec.alpha_a = Complex(doc.value("alpha_a_re", 0.0), doc.value("alpha_a_im", 0.0));
      spec.alpha_b = Complex(doc.value("alpha_b_re", 0.0), doc.value("alpha_b_im", 0.0));
      spec.relative_phase = doc.value("relative_phase", 0.0);
      break;
    case StateKind::random_pure:
    case StateKind::random_mixed:
      spec.seed = doc.at("seed").get<std::uint64_t>();
      break;
    case StateKind::matrix: {
      const auto& rows = doc.at("matrix");
      const int d = static_cast<int>(rows.size());
      spec.matrix.resize(d, d);
      for (int r = 0; r < d; ++r) {
        if (static_cast<int>(rows[r].size()) != d)
          throw std::invalid_argument("state spec: matrix must be square");
        for (int c = 0; c < d; ++c) {
          const auto& e = rows[r][c];
          spec.matrix(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
      }
      break;
    }
  }
  return spec;
}

StateSpec load_state_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("state spec: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_state_spec(ss.str());
}

ComplexMatrix density_matrix_su2(const StateSpec& spec, const SpinRep& rep) {
  const int d = rep.dim();
  ComplexMatrix rho;
  switch (spec.kind) {
    case StateKind::dicke: {
      if (std::abs(spec.twom) > rep.twoj || (rep.twoj - spec.twom) % 2 != 0)
        throw std::invalid_argument("state spec: dicke m out of range for this j");
      const int idx = (rep.twoj - spec.twom) / 2;
      rho = ComplexMatrix::Zero(d, d);
      rho(idx, idx) = 1.0;
      break;
    }
    case StateKind::coherent:
      rho = projector(coherent_state(rep, spec.point_a));
      break;
    case StateKind::cat: {
      const ComplexVector v = coherent_state(rep, spec.point_a) +
                              std::exp(Complex(0.0, spec.relative_phase)) *
                                  coherent_state(rep, spec.point_b);
      rho = projector(v);
      break;
    }
    case StateKind::random_pure:
      rho = random_pure_rho(d, spec.seed);
      break;
    case StateKind::random_mixed:
      rho = random_mixed_rho(d, spec.seed);
      break;
    case StateKind::matrix:
      if (spec.matrix.rows() != d)
        throw std::invalid_argument("state spec: matrix dimension does not match 2j+1");
      rho = spec.matrix;
      break;
  }
  validate_density(rho, spec.purity);
  return rho;
}

ComplexMatrix density_matrix_hw(const StateSpec& spec, const FockRep& rep) {
  const int d = rep.dim();
  ComplexMatrix rho;
  switch (spec.kind) {
    case StateKind::dicke: {  // Fock number state
      if (spec.fock_n < 0 || spec.fock_n > rep.n_max)
        throw std::invalid_argument("state spec: Fock n out of range for this n_max");
      rho = ComplexMatrix::Zero(d, d);
      rho(spec.fock_n, spec.fock_n) = 1.0;
      break;
    }
    case StateKind::coherent:
      rho = projector(displacement(rep, PlanePoint(spec.alpha_a)).col(0));
      break;
    case StateKind::cat: {
      const ComplexVector v = displacement(rep, PlanePoint(spec.alpha_a)).col(0) +
                              std::exp(Complex(0.0, spec.relative_phase)) *
                                  displacement(rep, PlanePoint(spec.alpha_b)).col(0);
      rho = projector(v);
      break;
    }
    case StateKind::random_pure:
      rho = random_pure_rho(d, spec.seed);
      break;
    case StateKind::random_mixed:
      rho = random_mixed_rho(d, spec.seed);
      break;
    case StateKind::matrix:
      if (spec.matrix.rows() != d)
        throw std::invalid_argument("state spec: matrix dimension does not match n_max+1");
      rho = spec.matrix;
      break;
  }
  validate_density(rho, spec.purity);
  return rho;
}

}  // namespace swqpd
