#pragma once

#include <optional>

#include "rmtev/model.hpp"
#include "rmtev/spectral_measure.hpp"

namespace rmtev {

// Companion Stieltjes transform mbar(z) of the limiting spectral law
// F^{c,H}, together with the dimension transform m(z).
struct StieltjesSolution {
  cplx z;
  cplx mbar;
  cplx m;
  double residual = 0.0;  // |mbar + (z - c int t dH/(1 + t mbar))^{-1}|
  int iterations = 0;
};

struct SolverOptions {
  double tolerance = 1e-12;
  int max_iterations = 10000;
  // Starting point in the upper half plane; defaults to -1/z.
  std::optional<cplx> initial;
};

// Solves mbar = -(z - c int t dH(t) / (1 + t mbar))^{-1} for the unique
// root with Im mbar > 0 when Im z > 0. Damped fixed-point iteration
// (damping starts at 1, halves whenever the residual grows, floor 1/64)
// accelerated by Newton steps that are accepted only if they stay in the
// upper half plane and reduce the residual. For Im z < 0 the conjugate
// of the solution at conj(z) is returned.
StieltjesSolution solve_mbar(cplx z, const SpectralMeasure& h, double c, const SolverOptions& options = {});

// Explicit inverse: z = -1/mbar + c int t dH(t) / (1 + t mbar).
cplx inverse_z(cplx mbar, const SpectralMeasure& h, double c);

enum class CompanionDirection { to_mbar, to_m };

// mbar = -(1 - c)/z + c m, or its inverse.
cplx companion_transform(cplx value, cplx z, double c, CompanionDirection direction);

// Root of t z mbar^2 + (z + t(1 - c)) mbar + 1 = 0 with Im mbar > 0, the
// solution for H = delta_t. Requires Im z > 0 and t > 0.
cplx closed_form_mp(cplx z, double c, double t);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// [t_min 1{0<c<1} (1 - sqrt c)^2, t_max (1 + sqrt c)^2], an interval that
// contains the support of F^{c,H}.
Interval support_interval(const SpectralMeasure& h, double c);

}  // namespace rmtev
