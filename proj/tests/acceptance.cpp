#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rmtev/clt.hpp"
#include "rmtev/contour.hpp"
#include "rmtev/evec_esd.hpp"
#include "rmtev/kernels.hpp"
#include "rmtev/limit_law.hpp"
#include "rmtev/linalg.hpp"
#include "rmtev/parallel.hpp"
#include "rmtev/stieltjes.hpp"

#ifdef RMTEV_HAVE_CLI
#include "rmtev/cli/app.hpp"
#endif

using namespace rmtev;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const SpectralMeasure kDelta1 = SpectralMeasure::point(1.0);
const SpectralMeasure kTwoAtom({1.0, 2.0}, {0.5, 0.5});
const FunctionalSpec kX = FunctionalSpec::poly({0, 1});
const FunctionalSpec kX2 = FunctionalSpec::poly({0, 0, 1});
const FunctionalSpec kX3 = FunctionalSpec::poly({0, 0, 0, 1});

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ModelConfig model(int n, int N, std::uint64_t seed) {
  ModelConfig cfg;
  cfg.n = n;
  cfg.N = N;
  cfg.seed = seed;
  return cfg;
}

Outcome a1() {
  const ModelConfig cfg = model(100, 500, 1);
  std::vector<double> w(100);
  parallel_for(w.size(), worker_count(), [&](std::size_t r) {
    w[r] = w_statistic(eigenvalues_only(build_sample_cov(cfg, r))) / cfg.n;
  });
  double mean = 0.0;
  for (double v : w) mean += v / static_cast<double>(w.size());
  const double err = std::abs(mean + 0.1074258);
  return {err <= 0.03, "mean W_n/n = " + num(mean) + ", |err| = " + num(err)};
}

double sup_gap(const ModelConfig& cfg) {
  const EigenSystem es = eig_decompose(build_sample_cov(cfg));
  RngStream rng(cfg.seed, kDirectionStream);
  const WeightedSpectrum ws = weighted_spectrum(es, realize_direction(cfg.direction, cfg.n, rng));
  const LimitLaw law(cfg.ratio(), cfg.population.spectrum);
  const Interval s = law.support();
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = s.lo - 0.1 + (s.hi - s.lo + 0.2) * i / 199.0;
    worst = std::max(worst, std::abs(eval_cdf(ws, x) - law.cdf(x)));
  }
  return worst;
}

Outcome a2() {
  ModelConfig cfg = model(400, 800, 3);
  const double g1 = sup_gap(cfg);
  cfg.population = PopulationSpec{kTwoAtom};
  cfg.direction = DirectionSpec::uniform();
  const double g2 = sup_gap(cfg);
  return {g1 <= 0.1 && g2 <= 0.1, "sup gaps " + num(g1) + ", " + num(g2)};
}

// random sample covariances with n <= 50, real and complex, varied T
std::vector<std::pair<HermitianMatrix, Eigen::VectorXcd>> instances(int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<HermitianMatrix, Eigen::VectorXcd>> out;
  for (int i = 0; i < count; ++i) {
    ModelConfig cfg = model(2 + static_cast<int>(gen() % 49), 0, gen());
    cfg.N = cfg.n + 1 + static_cast<int>(gen() % 60);
    cfg.entries = static_cast<EntryDist>(i % 4);
    const double w = 0.2 + 0.6 * u(gen);
    cfg.population = PopulationSpec{SpectralMeasure({0.5 + u(gen), 2.0 + u(gen)}, {w, 1.0 - w})};
    cfg.direction = i % 2 ? DirectionSpec::sphere() : DirectionSpec::uniform();
    RngStream rng(cfg.seed, kDirectionStream);
    out.emplace_back(build_sample_cov(cfg), realize_direction(cfg.direction, cfg.n, rng));
  }
  return out;
}

Outcome a3() {
  double worst = 0.0;
  for (const auto& [a, x] : instances(50, 31)) {
    const WeightedSpectrum ws = weighted_spectrum(eig_decompose(a), x);
    for (int r = 0; r <= 5; ++r) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < ws.size(); ++i) s += ws.weights[i] * std::pow(ws.lambdas[i], r);
      worst = std::max(worst, std::abs(s - quad_form_power(a, x, r).real()) / std::abs(s));
    }
  }
  return {worst <= 1e-8, "max relative error " + num(worst)};
}

Outcome a4() {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> re(-1.0, 6.0), im(0.01, 2.0);
  double worst = 0.0;
  for (const auto& [a, x] : instances(20, 43)) {
    const WeightedSpectrum ws = weighted_spectrum(eig_decompose(a), x);
    for (int k = 0; k < 20; ++k) {
      const cplx z(re(gen), (k % 2 ? 1.0 : -1.0) * im(gen));
      cplx s = 0.0;
      for (Eigen::Index i = 0; i < ws.size(); ++i) s += ws.weights[i] / (ws.lambdas[i] - z);
      worst = std::max(worst, std::abs(s - resolvent_quad_form(a, x, z)));
    }
  }
  return {worst <= 1e-8, "max error " + num(worst)};
}

Outcome a5() {
  double solver = 0.0, trip = 0.0;
  for (double c : {0.25, 0.5}) {
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j < 20; ++j) {
        const cplx z(-1.0 + 5.0 * i / 19.0, 0.05 + 2.95 * j / 19.0);
        const cplx mbar = solve_mbar(z, kDelta1, c).mbar;
        solver = std::max(solver, std::abs(mbar - closed_form_mp(z, c, 1.0)));
        trip = std::max(trip, std::abs(inverse_z(mbar, kDelta1, c) - z));
      }
    }
  }
  const double f = LimitLaw(0.25, kDelta1).density(1.0);
  const bool ok = solver <= 1e-10 && trip <= 1e-8 && std::abs(f - 0.61637) <= 1e-4;
  return {ok, "solver " + num(solver) + ", round trip " + num(trip) + ", density(1) " + num(f)};
}

MCReport clt_run(EntryDist entries) {
  ModelConfig cfg = model(200, 400, 6);
  cfg.entries = entries;
  const std::vector<FunctionalSpec> gs{kX, kX2};
  return run_clt(cfg, gs, 400, worker_count());
}

Outcome a6() {
  const MCReport rep = clt_run(EntryDist::real_gaussian);
  const bool means = compare_means(rep, 3.0).pass;
  const double var = rep.sample_cov(0, 0), cov = rep.sample_cov(0, 1);
  const bool ok = means && var >= 1.6 && var <= 2.4 && cov >= 3.75 && cov <= 6.25;
  return {ok, "means " + num(rep.sample_mean[0]) + ", " + num(rep.sample_mean[1]) + " (SE " +
                  num(rep.standard_errors[0]) + ", " + num(rep.standard_errors[1]) + "), Var " + num(var) + ", Cov " +
                  num(cov)};
}

Outcome a7() {
  const MCReport rep = clt_run(EntryDist::complex_gaussian);
  const double var = rep.sample_cov(0, 0);
  return {var >= 0.8 && var <= 1.2, "Var " + num(var)};
}

double contour_cov(const FunctionalSpec& a, const FunctionalSpec& b, double c, int nodes, double v_scale) {
  auto [c1, c2] = default_contours(kDelta1, c, false, nodes);
  c1.v0 *= v_scale;
  c2.v0 *= v_scale;
  return theoretical_cov_contour(a, b, kDelta1, c, c1, c2).value;
}

Outcome a8() {
  const std::vector<FunctionalSpec> gs{kX, kX2, kX3};
  double agree = 0.0, refine = 0.0;
  for (double c : {0.25, 0.5}) {
    const LimitLaw law(c, kDelta1);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = i; j < gs.size(); ++j) {
        const double base = contour_cov(gs[i], gs[j], c, 256, 1.0);
        agree = std::max(agree, std::abs(base - theoretical_cov_simplified(gs[i], gs[j], law)));
        refine = std::max(refine, std::abs(contour_cov(gs[i], gs[j], c, 512, 1.0) - base));
        refine = std::max(refine, std::abs(contour_cov(gs[i], gs[j], c, 256, 2.0) - base));
      }
    }
  }
  return {agree <= 1e-3 && refine <= 1e-4, "contour vs simplified " + num(agree) + ", refinement " + num(refine)};
}

Outcome a9() {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> re(-1.0, 4.0), im(0.1, 2.0);
  double single = 0.0;
  for (double t : {0.25, 0.5, 1.0, 3.0, 10.0}) {
    for (double c : {0.25, 0.5, 2.0}) {
      for (int i = 0; i < 20; ++i) {
        const cplx z1(re(gen), im(gen)), z2(re(gen), (i % 2 ? 1.0 : -1.0) * im(gen));
        single = std::max(single, std::abs(homogeneity_residual(z1, z2, SpectralMeasure::point(t), c)));
      }
    }
  }
  const double two = std::abs(homogeneity_residual(cplx(1, 1), cplx(2, 1), kTwoAtom, 0.5));
  const cplx z(1.0, 1.0);
  const cplx conj = homogeneity_residual(z, std::conj(z), kTwoAtom, 0.5);
  const bool ok = single <= 1e-14 && two > 1e-4 && conj.imag() == 0.0 && conj.real() > 0.0;
  return {ok, "single-atom max " + num(single) + ", two-atom " + num(two) + ", conjugate pair " + num(conj.real()) +
                  (conj.imag() == 0.0 ? "" : " + " + num(conj.imag()) + "i")};
}

Outcome a10() {
  const std::vector<double> grid{0.25, 0.5};
  const BridgeEstimate be = bb_covariance(model(200, 400, 10), grid, 300, worker_count());
  const double cov = be.empirical(0, 1), var = be.empirical(1, 1);
  const bool ok = std::abs(cov - 0.125) <= 0.03 && std::abs(var - 0.25) <= 0.04 && be.max_abs_endpoint <= 1e-10;
  return {ok, "Cov " + num(cov) + ", Var " + num(var) + ", max |Y_n(1)| " + num(be.max_abs_endpoint)};
}

Outcome a11() {
#ifdef RMTEV_HAVE_CLI
  const std::filesystem::path out = std::filesystem::path(RMTEV_TEST_TMP) / "figures";
  std::filesystem::remove_all(out);
  const std::string out_s = out.string();
  const char* argv[] = {"rmtev", "figures", "--which", "1", "--out", out_s.c_str()};
  std::ostringstream log, err;
  if (cli::run(6, argv, log, err) != cli::kExitOk) return {false, "figures failed: " + err.str()};
  std::ifstream f(out / "fig1.csv");
  std::string line;
  std::getline(f, line);
  std::vector<double> xs;
  std::vector<std::vector<double>> cols(4);
  while (std::getline(f, line)) {
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    xs.push_back(std::strtod(cell.c_str(), nullptr));
    for (auto& col : cols) {
      std::getline(row, cell, ',');
      col.push_back(std::strtod(cell.c_str(), nullptr));
    }
  }
  if (xs.size() < 3) return {false, "fig1.csv has no data"};
  bool ok = true;
  std::string detail = "modes";
  double prev = INFINITY;
  for (const auto& col : cols) {
    const auto k = std::max_element(col.begin(), col.end()) - col.begin();
    const double mode = xs[static_cast<std::size_t>(k)];
    double mass = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) mass += 0.5 * (col[i] + col[i - 1]) * (xs[i] - xs[i - 1]);
    ok = ok && mode < prev && std::abs(mass - 1.0) <= 0.02;
    prev = mode;
    detail += " " + num(mode) + " (mass " + num(mass) + ")";
  }
  return {ok, detail};
#else
  return {false, "built without the command-line tool"};
#endif
}

Outcome a12() {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> re(-1.0, 5.0), im(0.1, 2.0);
  double d_err = 0.0, h_err = 0.0, k_err = 0.0;
  for (const SpectralMeasure& h : {kDelta1, kTwoAtom}) {
    for (int i = 0; i < 50; ++i) {
      const cplx z1(re(gen), im(gen)), z2(re(gen), (i % 2 ? 1.0 : -1.0) * im(gen));
      const ProofKernels p = proof_kernels(z1, z2, h, 0.5);
      d_err = std::max(d_err, std::abs(p.d_integral - p.d_closed) / std::max(1.0, std::abs(p.d_closed)));
      h_err = std::max(h_err, std::abs(p.h_integral - p.h_closed) / std::max(1.0, std::abs(p.h_closed)));
      const cplx half = cov_kernel(z1, z2, h, 0.5) / 2.0;
      k_err = std::max(k_err, std::abs(p.h_closed / (1.0 - p.d_closed) - half) / std::max(1.0, std::abs(half)));
    }
  }
  const bool ok = d_err <= 1e-9 && h_err <= 1e-9 && k_err <= 1e-9;
  return {ok, "d " + num(d_err) + ", h " + num(h_err) + ", kernel " + num(k_err)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"A1", a1}, {"A2", a2}, {"A3", a3},   {"A4", a4},   {"A5", a5},   {"A6", a6},
      {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11}, {"A12", a12}};
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%-4s %s  %s  [%.1f s]\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
