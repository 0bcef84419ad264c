#pragma once

#include "rmtev/model.hpp"
#include "rmtev/spectral_measure.hpp"

namespace rmtev {

// Real entries with E X^4 = 3 give the full covariance; complex entries with
// E X^2 = 0, E|X|^4 = 2 give half of it.
enum class EntryCase { real, complex };

inline EntryCase entry_case(EntryDist d) { return is_complex(d) ? EntryCase::complex : EntryCase::real; }

// Covariance kernel of the limiting Gaussian process M(z):
//   2 (z2 mbar2 - z1 mbar1)^2 / (c^2 z1 z2 (z2 - z1)(mbar2 - mbar1)),
// halved in the complex case. Arguments closer than 1e-8 are rejected.
cplx cov_kernel(cplx z1, cplx z2, const SpectralMeasure& h, double c, EntryCase entry_case = EntryCase::real);

// The same kernel from already-solved transforms.
cplx cov_kernel_from(cplx z1, cplx mbar1, cplx z2, cplx mbar2, double c, EntryCase entry_case = EntryCase::real);

// The kernels d(z1, z2) and h(z1, z2), each as an integral against H and in
// closed algebraic form. Mathematically d_integral = d_closed and
// h_integral = h_closed, and h/(1 - d) = cov_kernel / 2 (real case).
struct ProofKernels {
  cplx d_integral;  // int c t^2 mb1 mb2 / ((1 + t mb1)(1 + t mb2)) dH
  cplx d_closed;    // 1 + mb1 mb2 (z1 - z2) / (mb2 - mb1)
  cplx h_integral;  // (mb1 mb2 / (z1 z2)) (int t dH / ((1 + t mb1)(1 + t mb2)))^2
  cplx h_closed;    // (mb1 mb2 / (z1 z2)) ((z1 mb1 - z2 mb2) / (c (mb2 - mb1)))^2
};

ProofKernels proof_kernels(cplx z1, cplx z2, const SpectralMeasure& h, double c);

// int dH/((1 + t mb1)(1 + t mb2)) - int dH/(1 + t mb1) int dH/(1 + t mb2).
// Vanishes identically exactly when H is a single atom.
cplx homogeneity_residual(cplx z1, cplx z2, const SpectralMeasure& h, double c);

}  // namespace rmtev
