#include "rmtev/evec_esd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmtev/contour.hpp"
#include "rmtev/error.hpp"
#include "rmtev/stieltjes.hpp"

namespace rmtev {

WeightedSpectrum weighted_spectrum(const EigenSystem& es, const Eigen::VectorXcd& x) {
  if (x.size() != es.size()) throw ConfigError("weighted_spectrum: dimension mismatch");
  const Eigen::VectorXcd y = es.vectors.adjoint() * x;
  return WeightedSpectrum{es.lambdas, y.cwiseAbs2(), false};
}

WeightedSpectrum uniform_spectrum(const Eigen::VectorXd& lambdas) {
  const auto n = lambdas.size();
  return WeightedSpectrum{lambdas, Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)), true};
}

double eval_cdf(const WeightedSpectrum& ws, double x) {
  const double* begin = ws.lambdas.data();
  const double* end = begin + ws.lambdas.size();
  const auto count = std::upper_bound(begin, end, x) - begin;
  return ws.weights.head(count).sum();
}

double y_process(const WeightedSpectrum& ws, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("y_process: t must lie in [0, 1]");
  const auto n = ws.size();
  const double nd = static_cast<double>(n);
  // [nt], guarding against n*t landing just below an integer.
  const auto k = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(std::floor(nd * t + 1e-9)));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) sum += ws.weights[i] - 1.0 / nd;
  return std::sqrt(nd / 2.0) * sum;
}

double x_process(const EigenSystem& es, const Eigen::VectorXcd& x, double at) {
  const WeightedSpectrum w = weighted_spectrum(es, x);
  const WeightedSpectrum u = uniform_spectrum(es.lambdas);
  return std::sqrt(static_cast<double>(es.size()) / 2.0) * (eval_cdf(w, at) - eval_cdf(u, at));
}

double w_statistic(const Eigen::VectorXd& lambdas) {
  double sum = 0.0;
  for (double l : lambdas) {
    if (!(l > 1e-300)) throw NumericalError("w_statistic", "singular sample covariance");
    sum += std::log(l);
  }
  return sum;
}

double w_statistic(const EigenSystem& es) { return w_statistic(es.lambdas); }

double scaled_w_statistic(double w, int n, int N) {
  return std::sqrt(static_cast<double>(N) / static_cast<double>(n)) * w;
}

FunctionalGap functional_gap(const WeightedSpectrum& ws, const FunctionalSpec& g) {
  if (g.kind() == FunctionalSpec::Kind::log && !(ws.lambdas.minCoeff() > 0.0))
    throw ConfigError("functional_gap: log functional needs positive eigenvalues");
  const auto n = ws.size();
  Eigen::VectorXd gv(n);
  for (Eigen::Index i = 0; i < n; ++i) gv[i] = g(ws.lambdas[i]);
  // sum w_i (g_i - mean g), equal to the gap when sum w_i = 1
  const double mean = gv.mean();
  double gap = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) gap += ws.weights[i] * (gv[i] - mean);
  return {gap, std::sqrt(static_cast<double>(n) / 2.0) * gap};
}

FunctionalGap functional_gap(const EigenSystem& es, const Eigen::VectorXcd& x, const FunctionalSpec& g) {
  return functional_gap(weighted_spectrum(es, x), g);
}

double limit_expectation_analytic(const std::function<cplx(cplx)>& f, const LimitLaw& law) {
  if (law.atom_at_zero() > 0.0 || !(law.support().lo > 0.0))
    throw ConfigError("analytic expectation needs a limit support bounded away from 0");
  // -(1/(2 pi i)) oint f(z) m(z) dz
  const double c = law.ratio();
  const Contour contour = default_contours(law.population(), c, true).first;
  cplx sum = 0.0;
  for (const ContourNode& node : contour_nodes(contour)) {
    const cplx mbar = solve_mbar(node.z, law.population(), c).mbar;
    const cplx m = companion_transform(mbar, node.z, c, CompanionDirection::to_m);
    sum += f(node.z) * m * node.weight;
  }
  return (-sum / cplx(0.0, 2.0 * std::numbers::pi)).real();
}

double limit_expectation(const FunctionalSpec& g, const LimitLaw& law) {
  if (g.kind() == FunctionalSpec::Kind::log) {
    if (law.atom_at_zero() > 0.0 || !(law.support().lo > 0.0))
      throw ConfigError("log functional needs a limit support bounded away from 0");
    return limit_expectation_analytic([](cplx z) { return std::log(z); }, law);
  }
  const auto& coeffs = g.coefficients();
  double total = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] != 0.0) total += coeffs[k] * law.moment(static_cast<int>(k));
  }
  return total;
}

double gn_functional(const WeightedSpectrum& ws, const FunctionalSpec& g, double limit_value, int N) {
  if (g.kind() == FunctionalSpec::Kind::log && !(ws.lambdas.minCoeff() > 0.0))
    throw ConfigError("gn_functional: log functional needs positive eigenvalues");
  double weighted = 0.0;
  for (Eigen::Index i = 0; i < ws.size(); ++i) weighted += ws.weights[i] * g(ws.lambdas[i]);
  return std::sqrt(static_cast<double>(N)) * (weighted - limit_value);
}

double gn_functional(const EigenSystem& es, const Eigen::VectorXcd& x, const FunctionalSpec& g, const LimitLaw& law,
                     int N) {
  return gn_functional(weighted_spectrum(es, x), g, limit_expectation(g, law), N);
}

}  // namespace rmtev
