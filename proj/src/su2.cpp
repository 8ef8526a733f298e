#include "swqpd/su2.hpp"

#include "swqpd/detail/su2_math.hpp"

#include <algorithm>
#include <cmath>

namespace swqpd {

namespace {

// ln(n!) in long double; d-matrix sums for large j cancel, so keep the
// extra mantissa bits.
long double ln_factorial(int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

// Wigner small-d matrix element d^j_{mp,m}(beta) = <j mp| e^{-i beta Jy} |j m>,
// arguments as twice the physical values.
double wigner_small_d(int twoj, int twomp, int twom, double beta) {
  const int jpm = (twoj + twom) / 2;
  const int jmm = (twoj - twom) / 2;
  const int jpmp = (twoj + twomp) / 2;
  const int jmmp = (twoj - twomp) / 2;
  const int dm = (twomp - twom) / 2;  // mp - m

  const long double c = std::cos(0.5L * static_cast<long double>(beta));
  const long double s = std::sin(0.5L * static_cast<long double>(beta));
  const long double ln_pref =
      0.5L * (ln_factorial(jpm) + ln_factorial(jmm) + ln_factorial(jpmp) + ln_factorial(jmmp));

  const int k_min = std::max(0, -dm);
  const int k_max = std::min(jpm, jmmp);
  long double sum = 0.0L;
  for (int k = k_min; k <= k_max; ++k) {
    const long double ln_den =
        ln_factorial(jpm - k) + ln_factorial(k) + ln_factorial(dm + k) + ln_factorial(jmmp - k);
    const int p_cos = (2 * twoj + twom - twomp) / 2 - 2 * k;  // 2j + m - mp - 2k
    const int p_sin = dm + 2 * k;
    const int sign = ((dm + k) % 2 == 0) ? 1 : -1;
    sum += sign * std::exp(ln_pref - ln_den) * std::pow(c, p_cos) * std::pow(s, p_sin);
  }
  return static_cast<double>(sum);
}

}  // namespace

std::pair<RealVector, RealVector> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  std::vector<long double> x(n), w(n);
  detail::gauss_legendre_rule<long double>(n, x.data(), w.data());
  RealVector xd(n), wd(n);
  for (int i = 0; i < n; ++i) {
    xd[i] = static_cast<double>(x[i]);
    wd[i] = static_cast<double>(w[i]);
  }
  return {xd, wd};
}

ComplexVector coherent_state(const SpinRep& rep, const PhasePoint& omega) {
  ComplexVector v(rep.dim());
  detail::coherent_components<double>(rep.twoj, omega.theta, omega.phi, v.data());
  return v;
}

Complex coherent_overlap(const SpinRep& rep, const PhasePoint& a, const PhasePoint& b) {
  return coherent_state(rep, a).dot(coherent_state(rep, b));
}

QuadratureGrid sphere_grid(const SpinRep& rep, int n_theta, int n_phi) {
  const int min_theta = 2 * rep.twoj + 3;  // 4j + 3
  const int min_phi = 2 * rep.twoj + 1;    // 4j + 1
  if (n_theta < 0) n_theta = min_theta;
  if (n_phi < 0) n_phi = 2 * rep.twoj + 5;
  if (n_theta < min_theta || n_phi < min_phi)
    throw std::invalid_argument("sphere_grid: node counts below the exactness thresholds (need n_theta >= 4j+3, n_phi >= 4j+1)");

  auto [x, gw] = gauss_legendre(n_theta);
  QuadratureGrid grid;
  grid.n_theta = n_theta;
  grid.n_phi = n_phi;
  grid.nodes.reserve(static_cast<size_t>(n_theta) * n_phi);
  grid.weights.resize(static_cast<Eigen::Index>(n_theta) * n_phi);
  // theta ascending = x descending
  Eigen::Index k = 0;
  for (int i = n_theta - 1; i >= 0; --i) {
    const double theta = std::acos(std::clamp(x[i], -1.0, 1.0));
    const double wt = (rep.dim() / (4.0 * pi)) * gw[i] * (2.0 * pi / n_phi);
    for (int p = 0; p < n_phi; ++p) {
      grid.nodes.push_back(PhasePoint(theta, 2.0 * pi * p / n_phi));
      grid.weights[k++] = wt;
    }
  }
  return grid;
}

Complex harmonic(const SpinRep& rep, const HarmonicIndex& nu, const PhasePoint& omega) {
  if (!nu.valid_for(rep)) throw std::invalid_argument("harmonic: index out of range for representation");
  const int Ma = std::abs(nu.M);
  std::vector<double> p(static_cast<size_t>(nu.L - Ma) + 1);
  detail::normalized_assoc_legendre<double>(Ma, nu.L, std::cos(omega.theta), p.data());
  const double mag = std::sqrt(4.0 * pi / rep.dim()) * p[nu.L - Ma];
  const Complex e = Complex(std::cos(Ma * omega.phi), std::sin(Ma * omega.phi));
  if (nu.M >= 0) return mag * e;
  const double sign = (Ma % 2 == 0) ? 1.0 : -1.0;
  return sign * mag * std::conj(e);
}

ComplexVector harmonics_all(const SpinRep& rep, const PhasePoint& omega) {
  ComplexVector y(harmonic_count(rep));
  detail::harmonics_row<double>(rep.twoj, omega.theta, omega.phi, y.data());
  return y;
}

ComplexMatrix rotation_operator(const SpinRep& rep, const EulerAngles& g) {
  const int d = rep.dim();
  ComplexMatrix t(d, d);
  for (int r = 0; r < d; ++r) {
    const int twomp = rep.twoj - 2 * r;
    const Complex ea = std::exp(Complex(0.0, -0.5 * twomp * g.alpha));
    for (int c = 0; c < d; ++c) {
      const int twom = rep.twoj - 2 * c;
      const Complex eg = std::exp(Complex(0.0, -0.5 * twom * g.gamma));
      t(r, c) = ea * wigner_small_d(rep.twoj, twomp, twom, g.beta) * eg;
    }
  }
  return t;
}

Eigen::Matrix3d rotation_matrix(const EulerAngles& g) {
  auto rz = [](double a) {
    Eigen::Matrix3d m;
    m << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0, 1.0;
    return m;
  };
  Eigen::Matrix3d ry;
  ry << std::cos(g.beta), 0.0, std::sin(g.beta), 0.0, 1.0, 0.0, -std::sin(g.beta), 0.0, std::cos(g.beta);
  return rz(g.alpha) * ry * rz(g.gamma);
}

PhasePoint rotate_point(const EulerAngles& g, const PhasePoint& omega) {
  const Eigen::Vector3d n(std::sin(omega.theta) * std::cos(omega.phi),
                          std::sin(omega.theta) * std::sin(omega.phi), std::cos(omega.theta));
  const Eigen::Vector3d r = rotation_matrix(g) * n;
  const double theta = std::acos(std::clamp(r.z(), -1.0, 1.0));
  double phi = std::atan2(r.y(), r.x());
  return PhasePoint(theta, phi);
}

EulerAngles euler_from_quaternion(double w, double x, double y, double z) {
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  if (norm <= 0.0) throw std::invalid_argument("euler_from_quaternion: zero quaternion");
  w /= norm;
  x /= norm;
  y /= norm;
  z /= norm;
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);

  EulerAngles g;
  const double sb = std::hypot(r(0, 2), r(1, 2));
  g.beta = std::atan2(sb, r(2, 2));
  if (sb > 1e-12) {
    g.alpha = std::atan2(r(1, 2), r(0, 2));
    g.gamma = std::atan2(r(2, 1), -r(2, 0));
  } else if (r(2, 2) > 0.0) {  // beta ~ 0
    g.alpha = std::atan2(r(1, 0), r(0, 0));
    g.gamma = 0.0;
  } else {  // beta ~ pi
    g.alpha = std::atan2(-r(1, 0), -r(0, 0));
    g.gamma = 0.0;
  }
  g.alpha = wrap_two_pi(g.alpha);
  g.gamma = wrap_two_pi(g.gamma);
  return g;
}

}  // namespace swqpd
