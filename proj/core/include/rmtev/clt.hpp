#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rmtev/contour.hpp"
#include "rmtev/functional.hpp"
#include "rmtev/kernels.hpp"
#include "rmtev/limit_law.hpp"
#include "rmtev/model.hpp"

namespace rmtev {

// Stream index reserved for drawing a random direction; replicates use
// streams 0, 1, 2, ... so the direction is the same for every replicate.
inline constexpr std::uint64_t kDirectionStream = ~std::uint64_t{0};

// Everything that is fixed across replicates of one experiment.
struct ExperimentSetup {
  Eigen::VectorXd t_diag;      // realized T_n
  SpectralMeasure h_n;         // its empirical measure
  double c_n;                  // n / N
  Eigen::VectorXcd direction;  // x_n
};

ExperimentSetup prepare_experiment(const ModelConfig& cfg);

// R x k matrix whose row r holds (int g_1 dG_n, ..., int g_k dG_n) for the
// replicate drawn from stream (seed, r). Independent of worker count.
Eigen::MatrixXd run_replications(const ModelConfig& cfg, std::span<const FunctionalSpec> gs, int replicates,
                                 unsigned workers = 0);

struct MeanCov {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;  // divisor R - 1
};

MeanCov estimate_mean_cov(const Eigen::MatrixXd& values);

struct ContourCovariance {
  double value = 0.0;  // real part of the double contour integral
  double imag = 0.0;   // imaginary part, zero up to quadrature error
};

// -(1/(4 pi^2)) oint oint g1(z1) g2(z2) K(z1, z2) dz1 dz2 with K the
// covariance kernel of M(z); the complex case is half the real one.
ContourCovariance theoretical_cov_contour(const FunctionalSpec& g1, const FunctionalSpec& g2,
                                          const SpectralMeasure& h, double c, const Contour& c1, const Contour& c2,
                                          EntryCase entry_case = EntryCase::real);

// All pairs at once; mbar is solved once per node. `imag_max` receives the
// largest imaginary part seen.
Eigen::MatrixXd theoretical_cov_contour_matrix(std::span<const FunctionalSpec> gs, const SpectralMeasure& h, double c,
                                               const Contour& c1, const Contour& c2, EntryCase entry_case,
                                               double* imag_max = nullptr);

// (2/c)(int g1 g2 dF - int g1 dF int g2 dF) for a single-atom H, halved in
// the complex case.
double theoretical_cov_simplified(const FunctionalSpec& g1, const FunctionalSpec& g2, const LimitLaw& law,
                                  EntryCase entry_case = EntryCase::real);

struct MCReport {
  int replicates = 0;
  std::vector<std::string> functionals;
  Eigen::VectorXd sample_mean;
  Eigen::MatrixXd sample_cov;
  Eigen::MatrixXd theory_cov_contour;
  std::optional<Eigen::MatrixXd> theory_cov_simplified;
  Eigen::VectorXd standard_errors;  // of the sample means
  double theory_imag_max = 0.0;
  int n = 0;
  int N = 0;
  std::uint64_t seed = 0;
  EntryDist entries = EntryDist::real_gaussian;
  double wall_time = 0.0;  // seconds
};

// Replications, moments and both theoretical covariances. Theory is
// evaluated at the realized (c_n, H_n).
MCReport run_clt(const ModelConfig& cfg, std::span<const FunctionalSpec> gs, int replicates, unsigned workers = 0);

struct Tolerances {
  double abs = 0.0;
  double rel = 0.0;
};

struct Verdict {
  bool pass = true;
  std::vector<std::string> failures;
};

// |sample - theory| <= abs + rel |theory| entrywise.
Verdict compare_matrices(const Eigen::MatrixXd& sample, const Eigen::MatrixXd& theory, Tolerances tol);

// Sample covariance against the simplified theory when present, otherwise
// against the contour theory.
Verdict compare_report(const MCReport& report, Tolerances tol);

// |mean_k| <= se_multiple * SE_k for every functional.
Verdict compare_means(const MCReport& report, double se_multiple);

struct BridgeEstimate {
  std::vector<double> grid;
  Eigen::MatrixXd empirical;
  Eigen::MatrixXd target;  // min(s, t) - s t
  double max_abs_endpoint = 0.0;  // max over replicates of |Y_n(1)|
  int replicates = 0;
};

Eigen::MatrixXd bridge_target(std::span<const double> grid);

// Empirical covariance of (Y_n(t_1), ..., Y_n(t_m)) over R replicates.
// Requires real-gaussian entries and a single-atom population, where the
// eigenvector matrix is exactly Haar.
BridgeEstimate bb_covariance(const ModelConfig& cfg, std::span<const double> grid, int replicates,
                             unsigned workers = 0);

// sup over the upper nodes of `contour` of
//   sqrt(N) | x^*(mbar T + I)^{-1} x - int dH_n(t)/(mbar t + 1) |
// with mbar the companion transform of F^{c_n, H_n}.
double condition5_gap(const Eigen::VectorXcd& x, const Eigen::VectorXd& t_diag, int N, const Contour& contour);

struct Condition5Trend {
  std::vector<int> n;
  std::vector<double> gap;
  bool decreasing = true;
};

// condition5_gap at several n with the ratio of cfg held fixed; flags a
// sequence that increases anywhere.
Condition5Trend condition5_trend(const ModelConfig& cfg, std::vector<int> ns = {100, 200, 400});

}  // namespace rmtev
