#include "rmtev/kernels.hpp"

#include <cmath>

#include "rmtev/error.hpp"
#include "rmtev/stieltjes.hpp"

namespace rmtev {

namespace {

void require_separated(cplx z1, cplx z2) {
  if (z1.imag() == 0.0 || z2.imag() == 0.0) throw ConfigError("kernel: arguments must be off the real axis");
  if (std::abs(z1 - z2) < 1e-8) throw ConfigError("kernel: coincident arguments, use offset contours");
}

}  // namespace

cplx cov_kernel_from(cplx z1, cplx mbar1, cplx z2, cplx mbar2, double c, EntryCase entry_case) {
  const cplx num = z2 * mbar2 - z1 * mbar1;
  const cplx value = 2.0 * (num * num) / ((c * c) * (z1 * z2) * ((z2 - z1) * (mbar2 - mbar1)));
  return entry_case == EntryCase::complex ? 0.5 * value : value;
}

cplx cov_kernel(cplx z1, cplx z2, const SpectralMeasure& h, double c, EntryCase entry_case) {
  require_separated(z1, z2);
  const cplx m1 = solve_mbar(z1, h, c).mbar;
  const cplx m2 = solve_mbar(z2, h, c).mbar;
  if (std::abs(m2 - m1) == 0.0) throw NumericalError("cov_kernel", "mbar(z1) = mbar(z2)");
  return cov_kernel_from(z1, m1, z2, m2, c, entry_case);
}

ProofKernels proof_kernels(cplx z1, cplx z2, const SpectralMeasure& h, double c) {
  require_separated(z1, z2);
  const cplx m1 = solve_mbar(z1, h, c).mbar;
  const cplx m2 = solve_mbar(z2, h, c).mbar;
  if (std::abs(m2 - m1) == 0.0) throw NumericalError("proof_kernels", "mbar(z1) = mbar(z2)");

  const cplx d_int = h.integrate([&](double t) { return c * t * t * m1 * m2 / ((1.0 + t * m1) * (1.0 + t * m2)); });
  const cplx t_int = h.integrate([&](double t) { return t / ((1.0 + t * m1) * (1.0 + t * m2)); });
  const cplx prefactor = m1 * m2 / (z1 * z2);
  const cplx ratio = (z1 * m1 - z2 * m2) / (c * (m2 - m1));

  return ProofKernels{
      d_int,
      1.0 + m1 * m2 * (z1 - z2) / (m2 - m1),
      prefactor * t_int * t_int,
      prefactor * ratio * ratio,
  };
}

cplx homogeneity_residual(cplx z1, cplx z2, const SpectralMeasure& h, double c) {
  if (z1.imag() == 0.0 || z2.imag() == 0.0) throw ConfigError("kernel: arguments must be off the real axis");
  const cplx m1 = solve_mbar(z1, h, c).mbar;
  const cplx m2 = solve_mbar(z2, h, c).mbar;
  const cplx joint = h.integrate([&](double t) { return 1.0 / ((1.0 + t * m1) * (1.0 + t * m2)); });
  const cplx a = h.integrate([&](double t) { return 1.0 / (1.0 + t * m1); });
  const cplx b = h.integrate([&](double t) { return 1.0 / (1.0 + t * m2); });
  return joint - a * b;
}

}  // namespace rmtev
