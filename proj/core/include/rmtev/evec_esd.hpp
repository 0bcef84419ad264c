#pragma once

#include <functional>

#include <Eigen/Dense>

#include "rmtev/functional.hpp"
#include "rmtev/limit_law.hpp"
#include "rmtev/linalg.hpp"

namespace rmtev {

// Eigenvalues (ascending) with weights. Eigenvector weights w_i = |<u_i, x>|^2
// give F1, the spectral measure of A at x; uniform weights 1/n give the ESD.
struct WeightedSpectrum {
  Eigen::VectorXd lambdas;
  Eigen::VectorXd weights;
  bool uniform_weights = false;

  Eigen::Index size() const { return lambdas.size(); }
};

WeightedSpectrum weighted_spectrum(const EigenSystem& es, const Eigen::VectorXcd& x);
WeightedSpectrum uniform_spectrum(const Eigen::VectorXd& lambdas);

// sum_i w_i 1{lambda_i <= x}
double eval_cdf(const WeightedSpectrum& ws, double x);

// Y_n(t) = sqrt(n/2) sum_{i <= [nt]} (w_i - 1/n), weights taken in the
// stored (ascending eigenvalue) order.
double y_process(const WeightedSpectrum& ws, double t);

// X_n(x) = sqrt(n/2) (F1(x) - F(x)).
double x_process(const EigenSystem& es, const Eigen::VectorXcd& x, double at);

// W_n = ln det A_n = sum ln lambda_j. Throws "singular sample covariance"
// when some lambda_j <= 1e-300.
double w_statistic(const EigenSystem& es);
double w_statistic(const Eigen::VectorXd& lambdas);
// sqrt(N/n) W_n
double scaled_w_statistic(double w, int n, int N);

struct FunctionalGap {
  double gap;     // sum w_j g(lambda_j) - (1/n) sum g(lambda_j)
  double scaled;  // sqrt(n/2) * gap
};

FunctionalGap functional_gap(const EigenSystem& es, const Eigen::VectorXcd& x, const FunctionalSpec& g);
FunctionalGap functional_gap(const WeightedSpectrum& ws, const FunctionalSpec& g);

// int f dF^{c,H} as a contour integral around the support, for f analytic on
// Re z > 0. Needs a support bounded away from 0.
double limit_expectation_analytic(const std::function<cplx(cplx)>& f, const LimitLaw& law);

// int g dF^{c,H}: exact moments for polynomials, quadrature for log.
double limit_expectation(const FunctionalSpec& g, const LimitLaw& law);

// int g dG_n = sqrt(N) (sum w_j g(lambda_j) - int g dF^{c_n,H_n}), where law
// must be built from c_n = n/N and the realized H_n.
double gn_functional(const EigenSystem& es, const Eigen::VectorXcd& x, const FunctionalSpec& g, const LimitLaw& law,
                     int N);
// Same with the limit term precomputed by limit_expectation.
double gn_functional(const WeightedSpectrum& ws, const FunctionalSpec& g, double limit_value, int N);

}  // namespace rmtev
