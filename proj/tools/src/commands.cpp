#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "rmtev/cli/app.hpp"
#include "rmtev/clt.hpp"
#include "rmtev/error.hpp"
#include "rmtev/evec_esd.hpp"
#include "rmtev/kde.hpp"
#include "rmtev/limit_law.hpp"
#include "rmtev/linalg.hpp"
#include "rmtev/parallel.hpp"

namespace rmtev::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content, std::ostream& log) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << content;
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  log << "wrote " << path.string() << "\n";
}

fs::path prepare_out(const RunConfig& rc) {
  const fs::path out(rc.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw ConfigError("out: cannot create directory '" + rc.out + "'");
  return out;
}

json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json to_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) to_json(Eigen::VectorXd(m.row(i).transpose())).swap(a.emplace_back());
  return a;
}

void run_simulate(const RunConfig& rc, std::ostream& log) {
  const ModelConfig& cfg = rc.model;
  const ExperimentSetup setup = prepare_experiment(cfg);
  const HermitianMatrix a =
      rc.entries_override
          ? build_sample_cov_from(Eigen::MatrixXd(Eigen::MatrixXd::Constant(cfg.n, cfg.N, *rc.entries_override)), setup.t_diag)
          : build_sample_cov(cfg, 0);
  const EigenSystem es = eig_decompose(a);
  const WeightedSpectrum ws = weighted_spectrum(es, setup.direction);
  const double u = 1.0 / static_cast<double>(cfg.n);

  const fs::path out = prepare_out(rc);
  std::string csv = "lambda,weight,uniform_weight\n";
  for (Eigen::Index i = 0; i < ws.size(); ++i)
    csv += fmt(ws.lambdas[i]) + "," + fmt(ws.weights[i]) + "," + fmt(u) + "\n";
  write_file(out / "spectrum.csv", csv, log);

  json s;
  s["n"] = cfg.n;
  s["N"] = cfg.N;
  s["c_n"] = cfg.ratio();
  s["seed"] = cfg.seed;
  s["entries"] = to_string(cfg.entries);
  try {
    const double w = w_statistic(es);
    s["W_n"] = w;
    s["scaled_W_n"] = scaled_w_statistic(w, cfg.n, cfg.N);
  } catch (const NumericalError& e) {
    s["W_n"] = nullptr;
    s["scaled_W_n"] = nullptr;
    s["W_n_error"] = e.what();
  }
  json moments = json::array();
  for (int m = 1; m <= 4; ++m) {
    double weighted = 0.0;
    for (Eigen::Index i = 0; i < ws.size(); ++i) weighted += ws.weights[i] * std::pow(ws.lambdas[i], m);
    moments.push_back(json{{"m", m},
                           {"weighted_spectrum", weighted},
                           {"quad_form", quad_form_power(a, setup.direction, m).real()}});
  }
  s["moments"] = moments;
  write_file(out / "summary.json", s.dump(2) + "\n", log);
}

void run_density(const RunConfig& rc, std::ostream& log) {
  const LimitLaw law(rc.model.ratio(), rc.model.population.spectrum);
  std::vector<double> grid = rc.grid;
  if (grid.empty()) {
    const Interval s = law.support();
    const double pad = 0.05 * (s.hi - s.lo);
    for (int i = 0; i <= 200; ++i) grid.push_back(s.lo - pad + (s.hi - s.lo + 2 * pad) * i / 200.0);
  }
  std::string csv = "x,f,F\n";
  for (double x : grid) {
    const double f = x == 0.0 ? 0.0 : law.density(x);
    csv += fmt(x) + "," + fmt(f) + "," + fmt(law.cdf(x)) + "\n";
  }
  write_file(prepare_out(rc) / "density.csv", csv, log);
}

void run_clt_command(const RunConfig& rc, std::ostream& log) {
  std::vector<FunctionalSpec> gs = rc.functionals;
  if (gs.empty()) gs.push_back(FunctionalSpec::poly({0.0, 1.0}));
  const MCReport rep = run_clt(rc.model, gs, rc.replicates(), worker_count());
  json j;
  j["replicates"] = rep.replicates;
  j["functionals"] = rep.functionals;
  j["n"] = rep.n;
  j["N"] = rep.N;
  j["c_n"] = rc.model.ratio();
  j["seed"] = rep.seed;
  j["entries"] = to_string(rep.entries);
  j["sample_mean"] = to_json(rep.sample_mean);
  j["standard_errors"] = to_json(rep.standard_errors);
  j["sample_cov"] = to_json(rep.sample_cov);
  j["theory_cov_contour"] = to_json(rep.theory_cov_contour);
  j["theory_cov_simplified"] = rep.theory_cov_simplified ? to_json(*rep.theory_cov_simplified) : json(nullptr);
  j["theory_imag_max"] = rep.theory_imag_max;
  j["wall_time"] = rep.wall_time;
  write_file(prepare_out(rc) / "report.json", j.dump(2) + "\n", log);
}

void run_bridge(const RunConfig& rc, std::ostream& log) {
  const std::vector<double> grid = rc.grid.empty() ? std::vector<double>{0.25, 0.5, 0.75} : rc.grid;
  const BridgeEstimate be = bb_covariance(rc.model, grid, rc.replicates(), worker_count());
  json j;
  j["n"] = rc.model.n;
  j["N"] = rc.model.N;
  j["seed"] = rc.model.seed;
  j["replicates"] = be.replicates;
  j["grid"] = be.grid;
  j["empirical"] = to_json(be.empirical);
  j["target"] = to_json(be.target);
  j["max_abs_endpoint"] = be.max_abs_endpoint;
  write_file(prepare_out(rc) / "bb.json", j.dump(2) + "\n", log);
}

struct Series {
  std::string name;
  int n;
  int N;
  bool scaled;
};

void run_figures(const RunConfig& rc, std::ostream& log) {
  std::vector<Series> series;
  if (rc.which == 1) {
    for (int N : {20, 100, 200, 500}) series.push_back({"N" + std::to_string(N), N / 5, N, false});
  } else {
    const int n = rc.which == 2 ? 5 : 10;
    series.push_back({"n" + std::to_string(n) + "_N50", n, 50, true});
  }
  const int reps = rc.replicates();
  const unsigned workers = worker_count();
  std::vector<std::vector<double>> samples;
  for (std::size_t k = 0; k < series.size(); ++k) {
    ModelConfig cfg = rc.model;
    cfg.n = series[k].n;
    cfg.N = series[k].N;
    cfg.direction = DirectionSpec::basis(0);
    cfg.seed = rc.model.seed + k;
    std::vector<double> w(static_cast<std::size_t>(reps));
    parallel_for(w.size(), workers, [&](std::size_t r) {
      const double v = w_statistic(eigenvalues_only(build_sample_cov(cfg, r)));
      w[r] = series[k].scaled ? scaled_w_statistic(v, cfg.n, cfg.N) : v;
    });
    samples.push_back(std::move(w));
  }

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : samples) {
    const double bw = silverman_bandwidth(s);
    lo = std::min(lo, *std::min_element(s.begin(), s.end()) - 4 * bw);
    hi = std::max(hi, *std::max_element(s.begin(), s.end()) + 4 * bw);
  }
  const int points = 512;
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  std::vector<std::vector<double>> dens;
  for (const auto& s : samples) dens.push_back(kde(s, grid));

  std::string csv = "x";
  for (const auto& s : series) csv += "," + s.name;
  csv += "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv += fmt(grid[i]);
    for (const auto& d : dens) csv += "," + fmt(d[i]);
    csv += "\n";
  }
  write_file(prepare_out(rc) / ("fig" + std::to_string(rc.which) + ".csv"), csv, log);
}

}  // namespace

void dispatch(const RunConfig& rc, std::ostream& log) {
  rc.model.validate();
  if (rc.entries_override && rc.command != Command::simulate)
    throw ConfigError("entries_override is only supported by simulate");
  switch (rc.command) {
    case Command::simulate: run_simulate(rc, log); break;
    case Command::density: run_density(rc, log); break;
    case Command::clt: run_clt_command(rc, log); break;
    case Command::bridge: run_bridge(rc, log); break;
    case Command::figures: run_figures(rc, log); break;
  }
}

}  // namespace rmtev::cli
