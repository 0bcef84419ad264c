#include "rmtev/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rmtev/error.hpp"

namespace rmtev {

namespace {

struct FixedPointMap {
  cplx z;
  const SpectralMeasure& h;
  double c;

  // F(m) = -1 / (z - c S(m)) and F'(m), with S(m) = int t/(1+tm) dH.
  std::pair<cplx, cplx> operator()(cplx m) const {
    cplx s{}, ds{};
    const auto atoms = h.atoms();
    const auto weights = h.weights();
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const double t = atoms[k];
      const cplx inv = 1.0 / (1.0 + t * m);
      s += weights[k] * t * inv;
      ds -= weights[k] * t * t * inv * inv;
    }
    const cplx denom = z - c * s;
    const cplx f = -1.0 / denom;
    const cplx df = -c * ds / (denom * denom);
    return {f, df};
  }

  double residual(cplx m) const { return std::abs(m - (*this)(m).first); }
};

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

StieltjesSolution solve_upper(cplx z, const SpectralMeasure& h, double c, const SolverOptions& options) {
  const FixedPointMap map{z, h, c};
  cplx m = options.initial.value_or(-1.0 / z);
  if (!(m.imag() > 0.0) || !finite(m)) m = -1.0 / z;

  double r = map.residual(m);
  double damping = 1.0;
  constexpr double min_damping = 1.0 / 64.0;

  for (int it = 0; it <= options.max_iterations; ++it) {
    if (r <= options.tolerance) {
      return StieltjesSolution{z, m, companion_transform(m, z, c, CompanionDirection::to_m), r, it};
    }
    const auto [f, df] = map(m);

    const cplx slope = 1.0 - df;
    if (std::abs(slope) > 0.0) {
      const cplx newton = m - (m - f) / slope;
      if (newton.imag() > 0.0 && finite(newton)) {
        const double rn = map.residual(newton);
        if (rn < r) {
          m = newton;
          r = rn;
          continue;
        }
      }
    }

    const cplx next = m + damping * (f - m);
    const double rn = map.residual(next);
    if (rn > r) damping = std::max(0.5 * damping, min_damping);
    m = next;
    r = rn;
  }
  throw NumericalError("solve_mbar", "no convergence after " + std::to_string(options.max_iterations) +
                                         " iterations, residual " + std::to_string(r));
}

}  // namespace

StieltjesSolution solve_mbar(cplx z, const SpectralMeasure& h, double c, const SolverOptions& options) {
  if (!(c > 0.0)) throw ConfigError("solve_mbar: c must be positive");
  if (z.imag() == 0.0) throw ConfigError("solve_mbar: boundary evaluation requires density()");
  if (z.imag() > 0.0) return solve_upper(z, h, c, options);

  SolverOptions mirrored = options;
  if (options.initial) mirrored.initial = std::conj(*options.initial);
  StieltjesSolution s = solve_upper(std::conj(z), h, c, mirrored);
  s.z = z;
  s.mbar = std::conj(s.mbar);
  s.m = std::conj(s.m);
  return s;
}

cplx inverse_z(cplx mbar, const SpectralMeasure& h, double c) {
  if (mbar == cplx{}) throw NumericalError("inverse_z", "mbar = 0");
  cplx s{};
  const auto atoms = h.atoms();
  const auto weights = h.weights();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const cplx denom = 1.0 + atoms[k] * mbar;
    if (std::abs(denom) < 1e-14) throw NumericalError("inverse_z", "pole at 1 + t mbar = 0");
    s += weights[k] * atoms[k] / denom;
  }
  return -1.0 / mbar + c * s;
}

cplx companion_transform(cplx value, cplx z, double c, CompanionDirection direction) {
  if (z == cplx{}) throw ConfigError("companion_transform: z must be nonzero");
  if (direction == CompanionDirection::to_mbar) return -(1.0 - c) / z + c * value;
  if (c == 0.0) throw ConfigError("companion_transform: c must be nonzero to recover m");
  return (value + (1.0 - c) / z) / c;
}

cplx closed_form_mp(cplx z, double c, double t) {
  if (!(z.imag() > 0.0)) throw ConfigError("closed_form_mp: Im z must be positive");
  if (!(t > 0.0)) throw ConfigError("closed_form_mp: t must be positive");
  const cplx a = t * z;
  const cplx b = z + t * (1.0 - c);
  const cplx root = std::sqrt(b * b - 4.0 * a);
  const cplx r1 = (-b + root) / (2.0 * a);
  const cplx r2 = (-b - root) / (2.0 * a);
  return r1.imag() > r2.imag() ? r1 : r2;
}

Interval support_interval(const SpectralMeasure& h, double c) {
  if (!(c > 0.0)) throw ConfigError("support_interval: c must be positive");
  const double sc = std::sqrt(c);
  const double lo = (c < 1.0) ? h.min_atom() * (1.0 - sc) * (1.0 - sc) : 0.0;
  const double hi = h.max_atom() * (1.0 + sc) * (1.0 + sc);
  return {lo, hi};
}

}  // namespace rmtev
