#include "swqpd/axioms.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace swqpd;

TEST_CASE("su2 axiom suites pass at their tolerances") {
  for (int twoj : {1, 2, 3, 4}) {
    const SpinRep rep(twoj);
    const auto reports = verify_all_su2(rep, default_s_list(), 20, 7);
    for (const auto& r : reports) {
      INFO(r.axiom, " 2j=", twoj, " dev=", r.max_deviation);
      CHECK(r.passed);
      CHECK(r.max_deviation <= 1e-9);
    }
  }
}

TEST_CASE("reports are reproducible from their seed") {
  const Su2System sys = build_su2_system(SpinRep(2));
  const AxiomReport a = verify_traciality(sys, default_s_list(), 10, 99);
  const AxiomReport b = verify_traciality(sys, default_s_list(), 10, 99);
  CHECK(a.max_deviation == b.max_deviation);
  CHECK(a.seed == b.seed);
  const AxiomReport c = verify_traciality(sys, default_s_list(), 10, 100);
  CHECK(c.max_deviation != a.max_deviation);
}

TEST_CASE("trial counts are validated") {
  const Su2System sys = build_su2_system(SpinRep(1));
  CHECK_THROWS_AS(verify_reality(sys, default_s_list(), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_covariance(sys, default_s_list(), -3, 1), std::invalid_argument);
}

TEST_CASE("hermitian operators have real distributions") {
  const Su2System sys = build_su2_system(SpinRep(3));
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix a = random_hermitian(sys.kd.rep.dim(), rng);
    for (double s : default_s_list()) {
      const QpdGrid f = weyl_map(sys.kd, a, SValue{s}, sys.grid);
      CHECK(f.values.imag().cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("anti-hermitian case: F of i Jz is purely imaginary") {
  const Su2System sys = build_su2_system(SpinRep(1));
  const ComplexMatrix a = Complex(0.0, 1.0) * oracle::jz_matrix(sys.kd.rep);
  const QpdGrid f = weyl_map(sys.kd, a, SValue{0.0}, sys.grid);
  const QpdGrid fd = weyl_map(sys.kd, a.adjoint().eval(), SValue{0.0}, sys.grid);
  CHECK(f.values.real().cwiseAbs().maxCoeff() <= 1e-13);
  CHECK((fd.values + f.values).cwiseAbs().maxCoeff() <= 1e-13);            // F_{A^dag} = -F
  CHECK((fd.values - f.values.conjugate()).cwiseAbs().maxCoeff() <= 1e-13);  // ... = F^*
}

TEST_CASE("standardization: identity and traceless cases") {
  const Su2System sys = build_su2_system(SpinRep(4));
  const int d = sys.kd.rep.dim();
  const QpdGrid fid =
      weyl_map(sys.kd, ComplexMatrix::Identity(d, d), SValue{-0.5}, sys.grid);
  const Complex tot = fid.values.cwiseProduct(sys.grid.weights.cast<Complex>()).sum();
  CHECK(std::abs(tot - Complex(d, 0)) <= 1e-10);

  std::mt19937_64 rng(14);
  ComplexMatrix a = random_complex_matrix(d, rng);
  a -= (a.trace() / static_cast<double>(d)) * ComplexMatrix::Identity(d, d);
  const QpdGrid f = weyl_map(sys.kd, a, SValue{0.5}, sys.grid);
  CHECK(std::abs(f.values.cwiseProduct(sys.grid.weights.cast<Complex>()).sum()) <= 1e-10);
}

TEST_CASE("covariance: identity rotation and identity operator") {
  const Su2System sys = build_su2_system(SpinRep(2));
  const int d = sys.kd.rep.dim();
  std::mt19937_64 rng(15);
  const ComplexMatrix a = random_complex_matrix(d, rng);
  const PhasePoint p = random_phase_point(rng);
  // g = identity: both sides coincide exactly
  const Complex lhs = qpd_at(sys.kd, a, SValue{0.5}, p);
  const ComplexMatrix t = rotation_operator(sys.kd.rep, {0, 0, 0});
  const Complex rhs = qpd_at(sys.kd, (t * a * t.adjoint()).eval(), SValue{0.5}, p);
  CHECK(std::abs(lhs - rhs) < 1e-13);
  // A = I: the image is 1 whatever g does to the point
  const EulerAngles g = random_rotation(rng);
  CHECK(std::abs(qpd_at(sys.kd, ComplexMatrix::Identity(d, d), SValue{0.5},
                        rotate_point(g, p)) -
                 1.0) < 1e-12);
}

TEST_CASE("traciality special cases: identity pair and pure-state purity") {
  const Su2System sys = build_su2_system(SpinRep(3));
  const int d = sys.kd.rep.dim();
  const QpdGrid fid = weyl_map(sys.kd, ComplexMatrix::Identity(d, d), SValue{0.7}, sys.grid);
  const QpdGrid fid2 = weyl_map(sys.kd, ComplexMatrix::Identity(d, d), SValue{-0.7}, sys.grid);
  const Complex pairing =
      fid.values.cwiseProduct(fid2.values).cwiseProduct(sys.grid.weights.cast<Complex>()).sum();
  CHECK(std::abs(pairing - Complex(d, 0)) <= 1e-10);

  // phase-space purity of a pure state at s = 0
  const ComplexVector cs = coherent_state(sys.kd.rep, PhasePoint(1.2, 2.1));
  const QpdGrid w = weyl_map(sys.kd, (cs * cs.adjoint()).eval(), SValue{0.0}, sys.grid);
  const Complex purity =
      w.values.cwiseProduct(w.values).cwiseProduct(sys.grid.weights.cast<Complex>()).sum();
  CHECK(std::abs(purity - 1.0) <= 1e-10);
}

TEST_CASE("hw axiom suite at n_max = 60") {
  const auto reports = verify_all_hw(FockRep(60), default_hw_s_list(), 4, 17);
  REQUIRE(reports.size() == 5);
  for (const auto& r : reports) {
    INFO(r.axiom, " dev=", r.max_deviation, " tol=", r.tolerance);
    CHECK(r.passed);
  }
  CHECK_THROWS_AS(build_hw_system(FockRep(30)), std::invalid_argument);
}
