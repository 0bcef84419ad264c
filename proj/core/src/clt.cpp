#include "rmtev/clt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "rmtev/error.hpp"
#include "rmtev/evec_esd.hpp"
#include "rmtev/linalg.hpp"
#include "rmtev/parallel.hpp"

namespace rmtev {

namespace {

bool any_log(std::span<const FunctionalSpec> gs) {
  return std::any_of(gs.begin(), gs.end(), [](const auto& g) { return g.kind() == FunctionalSpec::Kind::log; });
}

struct NodeData {
  std::vector<cplx> z;
  std::vector<cplx> weight;
  std::vector<cplx> mbar;
};

NodeData solve_on(const Contour& contour, const SpectralMeasure& h, double c) {
  NodeData d;
  for (const auto& node : contour_nodes(contour)) {
    d.z.push_back(node.z);
    d.weight.push_back(node.weight);
    d.mbar.push_back(solve_mbar(node.z, h, c).mbar);
  }
  return d;
}

void check_contours(const Contour& c1, const Contour& c2, const SpectralMeasure& h, double c, bool needs_positive) {
  c1.validate();
  c2.validate();
  if (!contours_disjoint(c1, c2)) throw ConfigError("contours intersect; nest one strictly inside the other");
  const Interval support = support_interval(h, c);
  if (!c1.encloses(support) || !c2.encloses(support)) throw ConfigError("contour does not enclose the support");
  if (needs_positive && (c1.u_l <= 0.0 || c2.u_l <= 0.0))
    throw ConfigError("log functional needs contours with u_l > 0");
}

std::string fmt_entry(const char* label, Eigen::Index i, Eigen::Index j, double sample, double theory) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s(%ld,%ld): sample %.6g theory %.6g", label, static_cast<long>(i),
                static_cast<long>(j), sample, theory);
  return buf;
}

}  // namespace

ExperimentSetup prepare_experiment(const ModelConfig& cfg) {
  cfg.validate();
  Eigen::VectorXd t = realize_population(cfg.population, cfg.n);
  SpectralMeasure h_n = empirical_measure(t);
  RngStream direction_rng(cfg.seed, kDirectionStream);
  Eigen::VectorXcd x = realize_direction(cfg.direction, cfg.n, direction_rng);
  return ExperimentSetup{std::move(t), std::move(h_n), cfg.ratio(), std::move(x)};
}

Eigen::MatrixXd run_replications(const ModelConfig& cfg, std::span<const FunctionalSpec> gs, int replicates,
                                 unsigned workers) {
  if (replicates < 2) throw ConfigError("run_replications: need at least 2 replicates");
  const ExperimentSetup setup = prepare_experiment(cfg);
  if (any_log(gs) && !(setup.c_n < 1.0)) throw ConfigError("log functionals need 0 < c_n < 1");

  std::vector<double> limits(gs.size(), 0.0);
  if (!gs.empty()) {
    const LimitLaw law(setup.c_n, setup.h_n);
    for (std::size_t k = 0; k < gs.size(); ++k) limits[k] = limit_expectation(gs[k], law);
  }

  Eigen::MatrixXd values(replicates, static_cast<Eigen::Index>(gs.size()));
  parallel_for(static_cast<std::size_t>(replicates), worker_count(workers), [&](std::size_t r) {
    try {
      const HermitianMatrix a = build_sample_cov(cfg, r);
      const EigenSystem es = eig_decompose(a);
      const WeightedSpectrum ws = weighted_spectrum(es, setup.direction);
      for (std::size_t k = 0; k < gs.size(); ++k)
        values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = gn_functional(ws, gs[k], limits[k], cfg.N);
    } catch (const std::exception& e) {
      throw NumericalError("run_replications", "replicate " + std::to_string(r) + ": " + e.what());
    }
  });
  return values;
}

MeanCov estimate_mean_cov(const Eigen::MatrixXd& values) {
  const Eigen::Index r = values.rows();
  if (r < 2) throw ConfigError("estimate_mean_cov: need at least 2 rows");
  Eigen::VectorXd mean = values.colwise().mean().transpose();
  const Eigen::MatrixXd centered = values.rowwise() - mean.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(r - 1);
  cov = 0.5 * (cov + cov.transpose()).eval();
  return {std::move(mean), std::move(cov)};
}

Eigen::MatrixXd theoretical_cov_contour_matrix(std::span<const FunctionalSpec> gs, const SpectralMeasure& h, double c,
                                               const Contour& c1, const Contour& c2, EntryCase entry_case,
                                               double* imag_max) {
  check_contours(c1, c2, h, c, any_log(gs));
  const NodeData a = solve_on(c1, h, c);
  const NodeData b = solve_on(c2, h, c);

  Eigen::MatrixXcd kernel(static_cast<Eigen::Index>(a.z.size()), static_cast<Eigen::Index>(b.z.size()));
  for (std::size_t i = 0; i < a.z.size(); ++i)
    for (std::size_t j = 0; j < b.z.size(); ++j)
      kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          cov_kernel_from(a.z[i], a.mbar[i], b.z[j], b.mbar[j], c, entry_case);

  const auto weighted_values = [](const FunctionalSpec& g, const NodeData& d) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(d.z.size()));
    for (std::size_t i = 0; i < d.z.size(); ++i) v[static_cast<Eigen::Index>(i)] = g(d.z[i]) * d.weight[i];
    return v;
  };

  const auto k = static_cast<Eigen::Index>(gs.size());
  std::vector<Eigen::VectorXcd> left, right;
  for (const auto& g : gs) {
    left.push_back(weighted_values(g, a));
    right.push_back(weighted_values(g, b));
  }
  const double scale = -1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  Eigen::MatrixXd out(k, k);
  double worst_imag = 0.0;
  for (Eigen::Index p = 0; p < k; ++p) {
    const Eigen::RowVectorXcd lk = left[static_cast<std::size_t>(p)].transpose() * kernel;
    for (Eigen::Index q = 0; q < k; ++q) {
      const cplx value = scale * (lk * right[static_cast<std::size_t>(q)])(0, 0);
      out(p, q) = value.real();
      worst_imag = std::max(worst_imag, std::abs(value.imag()));
    }
  }
  if (!out.allFinite()) throw NumericalError("theoretical_cov_contour", "non-finite covariance");
  if (imag_max) *imag_max = worst_imag;
  return out;
}

ContourCovariance theoretical_cov_contour(const FunctionalSpec& g1, const FunctionalSpec& g2,
                                          const SpectralMeasure& h, double c, const Contour& c1, const Contour& c2,
                                          EntryCase entry_case) {
  const FunctionalSpec gs[2] = {g1, g2};
  check_contours(c1, c2, h, c, any_log(gs));
  const NodeData a = solve_on(c1, h, c);
  const NodeData b = solve_on(c2, h, c);
  cplx total{};
  for (std::size_t i = 0; i < a.z.size(); ++i) {
    const cplx left = g1(a.z[i]) * a.weight[i];
    cplx row{};
    for (std::size_t j = 0; j < b.z.size(); ++j)
      row += g2(b.z[j]) * b.weight[j] * cov_kernel_from(a.z[i], a.mbar[i], b.z[j], b.mbar[j], c, entry_case);
    total += left * row;
  }
  total *= -1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  return {total.real(), total.imag()};
}

double theoretical_cov_simplified(const FunctionalSpec& g1, const FunctionalSpec& g2, const LimitLaw& law,
                                  EntryCase entry_case) {
  if (!law.population().degenerate())
    throw ConfigError("simplified covariance requires a degenerate (single-atom) population");
  double joint = 0.0;
  if (g1.kind() == FunctionalSpec::Kind::poly && g2.kind() == FunctionalSpec::Kind::poly) {
    const auto& p = g1.coefficients();
    const auto& q = g2.coefficients();
    std::vector<double> product(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) product[i + j] += p[i] * q[j];
    joint = limit_expectation(FunctionalSpec::poly(std::move(product)), law);
  } else {
    joint = limit_expectation_analytic([&](cplx z) { return g1(z) * g2(z); }, law);
  }
  const double value =
      (2.0 / law.ratio()) * (joint - limit_expectation(g1, law) * limit_expectation(g2, law));
  return entry_case == EntryCase::complex ? 0.5 * value : value;
}

MCReport run_clt(const ModelConfig& cfg, std::span<const FunctionalSpec> gs, int replicates, unsigned workers) {
  const auto start = std::chrono::steady_clock::now();
  MCReport report;
  report.replicates = replicates;
  for (const auto& g : gs) report.functionals.push_back(g.to_string());
  report.n = cfg.n;
  report.N = cfg.N;
  report.seed = cfg.seed;
  report.entries = cfg.entries;

  const Eigen::MatrixXd values = run_replications(cfg, gs, replicates, workers);
  const MeanCov mc = estimate_mean_cov(values);
  report.sample_mean = mc.mean;
  report.sample_cov = mc.cov;
  report.standard_errors = (mc.cov.diagonal() / static_cast<double>(replicates)).cwiseSqrt();

  const ExperimentSetup setup = prepare_experiment(cfg);
  const EntryCase ec = entry_case(cfg.entries);
  const auto [c1, c2] = default_contours(setup.h_n, setup.c_n, any_log(gs));
  report.theory_cov_contour =
      theoretical_cov_contour_matrix(gs, setup.h_n, setup.c_n, c1, c2, ec, &report.theory_imag_max);
  if (setup.h_n.degenerate()) {
    const LimitLaw law(setup.c_n, setup.h_n);
    const auto k = static_cast<Eigen::Index>(gs.size());
    Eigen::MatrixXd simplified(k, k);
    for (Eigen::Index p = 0; p < k; ++p)
      for (Eigen::Index q = 0; q < k; ++q)
        simplified(p, q) = theoretical_cov_simplified(gs[static_cast<std::size_t>(p)],
                                                      gs[static_cast<std::size_t>(q)], law, ec);
    report.theory_cov_simplified = std::move(simplified);
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Verdict compare_matrices(const Eigen::MatrixXd& sample, const Eigen::MatrixXd& theory, Tolerances tol) {
  if (sample.rows() != theory.rows() || sample.cols() != theory.cols())
    throw ConfigError("compare: shape mismatch");
  Verdict v;
  for (Eigen::Index i = 0; i < sample.rows(); ++i)
    for (Eigen::Index j = 0; j < sample.cols(); ++j) {
      const double s = sample(i, j), t = theory(i, j);
      if (!(std::abs(s - t) <= tol.abs + tol.rel * std::abs(t))) {
        v.pass = false;
        v.failures.push_back(fmt_entry("cov", i, j, s, t));
      }
    }
  return v;
}

Verdict compare_report(const MCReport& report, Tolerances tol) {
  const Eigen::MatrixXd& theory =
      report.theory_cov_simplified ? *report.theory_cov_simplified : report.theory_cov_contour;
  return compare_matrices(report.sample_cov, theory, tol);
}

Verdict compare_means(const MCReport& report, double se_multiple) {
  Verdict v;
  for (Eigen::Index k = 0; k < report.sample_mean.size(); ++k) {
    if (!(std::abs(report.sample_mean[k]) <= se_multiple * report.standard_errors[k])) {
      v.pass = false;
      v.failures.push_back(fmt_entry("mean", k, k, report.sample_mean[k], 0.0));
    }
  }
  return v;
}

Eigen::MatrixXd bridge_target(std::span<const double> grid) {
  const auto m = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd target(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const double s = grid[static_cast<std::size_t>(i)], t = grid[static_cast<std::size_t>(j)];
      target(i, j) = std::min(s, t) - s * t;
    }
  return target;
}

BridgeEstimate bb_covariance(const ModelConfig& cfg, std::span<const double> grid, int replicates, unsigned workers) {
  if (grid.empty()) throw ConfigError("bb_covariance: empty grid");
  for (double t : grid)
    if (!(t > 0.0 && t < 1.0)) throw ConfigError("bb_covariance: grid values must lie in (0, 1)");
  if (replicates < 2) throw ConfigError("bb_covariance: need at least 2 replicates");
  if (cfg.entries != EntryDist::real_gaussian) throw ConfigError("bb_covariance: needs real-gaussian entries");
  if (!cfg.population.spectrum.degenerate()) throw ConfigError("bb_covariance: needs a single-atom population");

  const ExperimentSetup setup = prepare_experiment(cfg);
  const auto m = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd values(replicates, m);
  std::vector<double> endpoint(static_cast<std::size_t>(replicates), 0.0);
  parallel_for(static_cast<std::size_t>(replicates), worker_count(workers), [&](std::size_t r) {
    try {
      const EigenSystem es = eig_decompose(build_sample_cov(cfg, r));
      const WeightedSpectrum ws = weighted_spectrum(es, setup.direction);
      for (Eigen::Index i = 0; i < m; ++i)
        values(static_cast<Eigen::Index>(r), i) = y_process(ws, grid[static_cast<std::size_t>(i)]);
      endpoint[r] = std::abs(y_process(ws, 1.0));
    } catch (const std::exception& e) {
      throw NumericalError("bb_covariance", "replicate " + std::to_string(r) + ": " + e.what());
    }
  });

  BridgeEstimate out;
  out.grid.assign(grid.begin(), grid.end());
  out.empirical = estimate_mean_cov(values).cov;
  out.target = bridge_target(grid);
  out.max_abs_endpoint = *std::max_element(endpoint.begin(), endpoint.end());
  out.replicates = replicates;
  return out;
}

double condition5_gap(const Eigen::VectorXcd& x, const Eigen::VectorXd& t_diag, int N, const Contour& contour) {
  if (x.size() != t_diag.size()) throw ConfigError("condition5_gap: dimension mismatch");
  const SpectralMeasure h_n = empirical_measure(t_diag);
  const double c_n = static_cast<double>(t_diag.size()) / N;
  const Eigen::VectorXd x2 = x.cwiseAbs2();
  double worst = 0.0;
  for (const auto& node : contour_nodes(contour)) {
    if (node.z.imag() < 0.0) continue;  // conjugate symmetric
    const cplx mb = solve_mbar(node.z, h_n, c_n).mbar;
    cplx quad{};
    for (Eigen::Index i = 0; i < x.size(); ++i) quad += x2[i] / (mb * t_diag[i] + 1.0);
    const cplx avg = h_n.integrate([&](double t) { return 1.0 / (mb * t + 1.0); });
    worst = std::max(worst, std::abs(quad - avg));
  }
  return std::sqrt(static_cast<double>(N)) * worst;
}

Condition5Trend condition5_trend(const ModelConfig& cfg, std::vector<int> ns) {
  if (cfg.direction.kind == DirectionSpec::Kind::custom)
    throw ConfigError("condition5_trend: a custom direction has a fixed length");
  Condition5Trend trend;
  trend.n = std::move(ns);
  for (int n : trend.n) {
    ModelConfig scaled = cfg;
    scaled.n = n;
    scaled.N = std::max(1, static_cast<int>(std::lround(n / cfg.ratio())));
    if (scaled.direction.kind == DirectionSpec::Kind::basis) scaled.direction.index = std::min<std::size_t>(cfg.direction.index, static_cast<std::size_t>(n - 1));
    const ExperimentSetup setup = prepare_experiment(scaled);
    auto [outer, inner] = default_contours(setup.h_n, setup.c_n, false, 64);
    trend.gap.push_back(condition5_gap(setup.direction, setup.t_diag, scaled.N, outer));
  }
  for (std::size_t i = 1; i < trend.gap.size(); ++i)
    if (trend.gap[i] > trend.gap[i - 1] + 1e-12) trend.decreasing = false;
  return trend;
}

}  // namespace rmtev
