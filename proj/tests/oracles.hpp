#pragma once

// Test-only reference computations. Nothing here calls into the library's
// solver or quadrature code paths that it is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// Marchenko-Pastur density for H = delta_1.
inline double mp_density(double x, double c) {
  const double a = (1.0 - std::sqrt(c)) * (1.0 - std::sqrt(c));
  const double b = (1.0 + std::sqrt(c)) * (1.0 + std::sqrt(c));
  if (x <= a || x >= b) return 0.0;
  return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * c * x);
}

// Composite Simpson on [lo, hi] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n = 20000) {
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// int_a^x mp_density: substitute x = a + (b - a) sin^2(theta) to remove the
// square-root endpoint behaviour, then Simpson.
inline double mp_cdf(double x, double c) {
  const double a = (1.0 - std::sqrt(c)) * (1.0 - std::sqrt(c));
  const double b = (1.0 + std::sqrt(c)) * (1.0 + std::sqrt(c));
  const double atom = c > 1.0 ? 1.0 - 1.0 / c : 0.0;
  if (x < 0.0) return 0.0;
  if (x <= a) return atom;
  const double top = x >= b ? std::numbers::pi / 2 : std::asin(std::sqrt((x - a) / (b - a)));
  const auto integrand = [&](double th) {
    const double s = std::sin(th), co = std::cos(th);
    const double xx = a + (b - a) * s * s;
    return mp_density(xx, c) * 2.0 * (b - a) * s * co;
  };
  return atom + simpson(integrand, 0.0, top);
}

// int g dF_c for H = delta_1, c < 1, with the same substitution as mp_cdf.
inline double mp_integrate(const std::function<double(double)>& g, double c, int panels = 20000) {
  const double a = (1.0 - std::sqrt(c)) * (1.0 - std::sqrt(c));
  const double b = (1.0 + std::sqrt(c)) * (1.0 + std::sqrt(c));
  const auto integrand = [&](double th) {
    const double s = std::sin(th), co = std::cos(th);
    const double xx = a + (b - a) * s * s;
    return g(xx) * mp_density(xx, c) * 2.0 * (b - a) * s * co;
  };
  return simpson(integrand, 0.0, std::numbers::pi / 2, panels);
}

// Upper-half-plane root of alpha m^2 + beta m + gamma = 0 by the textbook
// formula with the numerically stable branch.
inline cplx upper_root(cplx alpha, cplx beta, cplx gamma) {
  const cplx disc = std::sqrt(beta * beta - 4.0 * alpha * gamma);
  const cplx q = -0.5 * (beta + (std::real(std::conj(beta) * disc) >= 0 ? disc : -disc));
  const cplx r1 = q / alpha;
  const cplx r2 = gamma / q;
  return r1.imag() > r2.imag() ? r1 : r2;
}

// mbar for H = delta_1 at Im z > 0: z m^2 + (z + 1 - c) m + 1 = 0.
inline cplx mp_mbar(cplx z, double c) { return upper_root(z, z + 1.0 - c, 1.0); }

// Moments of F^{c,H}: m1 = int t dH, m2 = int t^2 dH + c (int t dH)^2.
inline double lsd_second_moment(double t1, double t2, double w1, double c) {
  const double mean = w1 * t1 + (1 - w1) * t2;
  return w1 * t1 * t1 + (1 - w1) * t2 * t2 + c * mean * mean;
}

inline Eigen::MatrixXcd random_hermitian_psd(int n, std::mt19937_64& gen, bool complex_entries) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd g(n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2 * n; ++j) g(i, j) = complex_entries ? cplx(nd(gen), nd(gen)) : cplx(nd(gen), 0.0);
  Eigen::MatrixXcd a = g * g.adjoint() / (2.0 * n);
  return 0.5 * (a + a.adjoint());
}

inline Eigen::VectorXcd random_unit(int n, std::mt19937_64& gen, bool complex_entries) {
  std::normal_distribution<double> nd;
  Eigen::VectorXcd x(n);
  for (int i = 0; i < n; ++i) x[i] = complex_entries ? cplx(nd(gen), nd(gen)) : cplx(nd(gen), 0.0);
  return x / x.norm();
}

}  // namespace oracle
