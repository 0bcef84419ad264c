#include "rmtev/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include "rmtev/error.hpp"

namespace rmtev {

namespace {

constexpr double kRichardsonEps = 1e-3;
constexpr unsigned kMaxDepth = 12;
constexpr double kRelTol = 1e-9;

}  // namespace

LimitLaw::LimitLaw(double c, SpectralMeasure h, int grid_cells)
    : c_(c), h_(std::move(h)), support_(support_interval(h_, c)), atom_(std::max(0.0, 1.0 - 1.0 / c)) {
  if (grid_cells < 1) throw ConfigError("LimitLaw: grid_cells must be positive");
  const double lo = support_.lo;
  const double hi = support_.hi;
  grid_.resize(static_cast<std::size_t>(grid_cells) + 1);
  for (int j = 0; j <= grid_cells; ++j) grid_[static_cast<std::size_t>(j)] = lo + (hi - lo) * j / grid_cells;

  const auto f = [this](double x) { return density(x); };
  cumulative_.assign(grid_.size(), 0.0);
  for (std::size_t j = 1; j < grid_.size(); ++j)
    cumulative_[j] = cumulative_[j - 1] + integrate_continuous(f, grid_[j - 1], grid_[j]);

  grid_density_.resize(grid_.size());
  grid_cdf_.resize(grid_.size());
  for (std::size_t j = 0; j < grid_.size(); ++j) {
    grid_density_[j] = grid_[j] == 0.0 ? 0.0 : density(grid_[j]);
    grid_cdf_[j] = atom_ + cumulative_[j];
  }
}

double LimitLaw::density(double x) const {
  if (x == 0.0) throw ConfigError("density: x = 0 carries the atom; use cdf()");

  // Walk eps down from ~1 so each solve starts next to its root.
  SolverOptions opts;
  double eps = kRichardsonEps * 1024.0;
  StieltjesSolution s = solve_mbar(cplx(x, eps), h_, c_, opts);
  while (eps > kRichardsonEps * 1.5) {
    eps *= 0.5;
    opts.initial = s.mbar;
    s = solve_mbar(cplx(x, eps), h_, c_, opts);
  }
  double f[3];
  for (int i = 0; i < 3; ++i) {
    const double e = kRichardsonEps / static_cast<double>(1 << i);
    opts.initial = s.mbar;
    s = solve_mbar(cplx(x, e), h_, c_, opts);
    // continuous part: m minus the atom term -atom/z
    f[i] = (s.m + atom_ / cplx(x, e)).imag() / std::numbers::pi;
  }
  // Eliminates the O(eps) and O(eps^2) terms.
  const double value = (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
  return value < 0.0 ? 0.0 : value;
}

double LimitLaw::integrate_continuous(const std::function<double(double)>& g, double a, double b) const {
  if (!(b > a)) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  return gauss_kronrod<double, 15>::integrate(g, a, b, kMaxDepth, kRelTol, &error);
}

double LimitLaw::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= grid_.back()) return atom_ + cumulative_.back();
  if (x <= grid_.front()) return atom_;
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const auto f = [this](double t) { return density(t); };
  return atom_ + cumulative_[j] + integrate_continuous(f, grid_[j], x);
}

double LimitLaw::moment(int k) const {
  if (k < 0) throw ConfigError("moment: k must be nonnegative");
  if (h_.degenerate()) return mp_moment(c_, h_.min_atom(), k);
  return moment_by_quadrature(k);
}

double LimitLaw::moment_by_quadrature(int k) const {
  if (k < 0) throw ConfigError("moment: k must be nonnegative");
  if (k == 0) return atom_ + cumulative_.back();
  return integrate([k](double x) { return std::pow(x, k); });
}

double LimitLaw::integrate(const std::function<double(double)>& g) const {
  double total = atom_ > 0.0 ? atom_ * g(0.0) : 0.0;
  const auto integrand = [&](double x) {
    const double f = density(x);
    return f == 0.0 ? 0.0 : g(x) * f;
  };
  for (std::size_t j = 1; j < grid_.size(); ++j) total += integrate_continuous(integrand, grid_[j - 1], grid_[j]);
  if (!std::isfinite(total)) throw NumericalError("LimitLaw::integrate", "non-finite integral");
  return total;
}

double density(double x, const LimitLaw& law) { return law.density(x); }
double cdf_limit(double x, const LimitLaw& law) { return law.cdf(x); }
double limit_moments(const LimitLaw& law, int k) { return law.moment(k); }

double mp_moment(double c, double t, int k) {
  if (k < 0) throw ConfigError("mp_moment: k must be nonnegative");
  if (k == 0) return 1.0;
  using boost::math::binomial_coefficient;
  const auto uk = static_cast<unsigned>(k);
  double sum = 0.0;
  for (unsigned r = 0; r < uk; ++r) {
    sum += binomial_coefficient<double>(uk, r) * binomial_coefficient<double>(uk - 1, r) * std::pow(c, r) / (r + 1.0);
  }
  return std::pow(t, k) * sum;
}

}  // namespace rmtev
