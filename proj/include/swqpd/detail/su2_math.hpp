#pragma once

// Scalar-templated evaluation cores shared by the public double API and the
// long-double accumulation paths. The tensor-operator norms divide by
// tau_L ~ 1e-7 at j = 6, so the kernel tables are assembled from
// long-double instantiations of these routines.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace swqpd::detail {

template <class Real>
inline constexpr Real pi_v = Real(3.141592653589793238462643383279502884L);

/// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
template <class Real>
void gauss_legendre_rule(int n, Real* x, Real* w) {
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Real z = std::cos(pi_v<Real> * (i + Real(0.75)) / (n + Real(0.5)));
    Real pp = Real(0);
    for (int it = 0; it < 200; ++it) {
      Real p0 = Real(1), p1 = Real(0);
      for (int k = 0; k < n; ++k) {
        const Real p2 = p1;
        p1 = p0;
        p0 = ((2 * Real(k) + 1) * z * p1 - Real(k) * p2) / (Real(k) + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1);
      const Real dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < Real(16) * std::numeric_limits<Real>::epsilon()) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * pp * pp);
  }
}

/// Row n of Pascal's triangle; exact in floating point through n = 51.
template <class Real>
std::vector<Real> binomial_row(int n) {
  std::vector<Real> row(static_cast<size_t>(n) + 1, Real(0));
  row[0] = Real(1);
  for (int i = 1; i <= n; ++i)
    for (int k = i; k >= 1; --k) row[k] += row[k - 1];
  return row;
}

template <class Real>
Real int_pow(Real base, int n) {
  Real r = Real(1);
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

/// Components c_m = sqrt(C(2j, j+m)) cos^{j+m}(theta/2) sin^{j-m}(theta/2)
/// e^{-i m phi}, m = j..-j; out must hold 2j+1 entries.
template <class Real>
void coherent_components(int twoj, Real theta, Real phi, std::complex<Real>* out) {
  const std::vector<Real> binom = binomial_row<Real>(twoj);
  const Real ct = std::cos(theta / 2);
  const Real st = std::sin(theta / 2);
  for (int i = 0; i <= twoj; ++i) {
    const int jpm = twoj - i;  // j + m
    const Real mag = std::sqrt(binom[jpm]) * int_pow(ct, jpm) * int_pow(st, i);
    const Real ph = -Real(0.5) * (twoj - 2 * i) * phi;
    out[i] = std::complex<Real>(mag * std::cos(ph), mag * std::sin(ph));
  }
}

/// Fully normalized associated Legendre P~_L^M(x) for fixed M >= 0 and
/// L = M..L_max, Condon-Shortley phase included, so that
/// Y^std_{LM} = P~_L^M(cos theta) e^{i M phi}; out holds L_max - M + 1 values.
template <class Real>
void normalized_assoc_legendre(int M, int L_max, Real x, Real* out) {
  const Real sx = std::sqrt(std::max(Real(0), Real(1) - x * x));
  Real pmm = std::sqrt(Real(1) / (4 * pi_v<Real>));
  for (int m = 1; m <= M; ++m) pmm *= -std::sqrt((2 * Real(m) + 1) / (2 * Real(m))) * sx;
  out[0] = pmm;
  if (L_max == M) return;
  Real pm1 = pmm;
  Real pm0 = x * std::sqrt(2 * Real(M) + 3) * pmm;
  out[1] = pm0;
  Real a_prev = std::sqrt((4 * Real(M + 1) * Real(M + 1) - 1) / (Real(M + 1) * Real(M + 1) - Real(M) * Real(M)));
  for (int L = M + 2; L <= L_max; ++L) {
    const Real a = std::sqrt((4 * Real(L) * Real(L) - 1) / (Real(L) * Real(L) - Real(M) * Real(M)));
    const Real p = a * (x * pm0 - pm1 / a_prev);
    out[L - M] = p;
    pm1 = pm0;
    pm0 = p;
    a_prev = a;
  }
}

/// All (2j+1)^2 harmonics Y_nu = sqrt(4 pi / (2j+1)) Y^std_{LM} at one point,
/// flat index L^2 + L + M; out must hold (2j+1)^2 entries.
template <class Real>
void harmonics_row(int twoj, Real theta, Real phi, std::complex<Real>* out) {
  const int L_max = twoj;
  const Real x = std::cos(theta);
  const Real scale = std::sqrt(4 * pi_v<Real> / Real(twoj + 1));
  std::vector<Real> p(static_cast<size_t>(L_max) + 1);
  for (int M = 0; M <= L_max; ++M) {
    normalized_assoc_legendre<Real>(M, L_max, x, p.data());
    const std::complex<Real> e(std::cos(M * phi), std::sin(M * phi));
    const Real sign = (M % 2 == 0) ? Real(1) : Real(-1);
    for (int L = M; L <= L_max; ++L) {
      const std::complex<Real> val = scale * p[L - M] * e;
      out[L * L + L + M] = val;
      if (M > 0) out[L * L + L - M] = sign * std::conj(val);
    }
  }
}

}  // namespace swqpd::detail
