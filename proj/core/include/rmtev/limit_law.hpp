#pragma once

#include <functional>
#include <vector>

#include "rmtev/spectral_measure.hpp"
#include "rmtev/stieltjes.hpp"

namespace rmtev {

// The limiting spectral distribution F^{c,H}: a continuous part recovered
// from the Stieltjes transform plus an atom of mass max(0, 1 - 1/c) at 0.
//
// Construction tabulates the CDF on a uniform grid over the support
// interval; afterwards the object is read-only and safe to share.
class LimitLaw {
 public:
  LimitLaw(double c, SpectralMeasure h, int grid_cells = 64);

  double ratio() const { return c_; }
  const SpectralMeasure& population() const { return h_; }
  Interval support() const { return support_; }
  double atom_at_zero() const { return atom_; }

  // Im m(x + i eps)/pi at eps = 1e-3, 5e-4, 2.5e-4, Richardson-extrapolated
  // to eps = 0. Requires x != 0.
  double density(double x) const;

  // atom 1{x >= 0} + int_{-inf}^x density.
  double cdf(double x) const;

  // k-th moment: closed form for a single-atom H, quadrature otherwise.
  double moment(int k) const;
  double moment_by_quadrature(int k) const;

  // int g dF^{c,H}, atom included.
  double integrate(const std::function<double(double)>& g) const;

  // Mass of the continuous part on the tabulated interval.
  double continuous_mass() const { return cumulative_.back(); }

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& grid_density() const { return grid_density_; }
  const std::vector<double>& grid_cdf() const { return grid_cdf_; }

 private:
  double integrate_continuous(const std::function<double(double)>& g, double a, double b) const;

  double c_;
  SpectralMeasure h_;
  Interval support_;
  double atom_;
  std::vector<double> grid_;
  std::vector<double> cumulative_;   // continuous mass up to grid_[j]
  std::vector<double> grid_density_;
  std::vector<double> grid_cdf_;
};

double density(double x, const LimitLaw& law);
double cdf_limit(double x, const LimitLaw& law);
double limit_moments(const LimitLaw& law, int k);

// Moments of F^{c, delta_t}: t^k sum_{r<k} C(k,r) C(k-1,r) c^r / (r+1).
double mp_moment(double c, double t, int k);

}  // namespace rmtev
