#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "rmtev/cli/app.hpp"
#include "rmtev/cli/config.hpp"
#include "rmtev/error.hpp"

using namespace rmtev;
using namespace rmtev::cli;
namespace fs = std::filesystem;

namespace {

const char* kExample =
    R"({"n":100,"N":500,"entries":"real-gaussian","population":{"atoms":[{"t":1.0,"w":1.0}]},)"
    R"("direction":{"kind":"e","index":0},"seed":7})";

struct Result {
  int code;
  std::string out;
  std::string err;
};

fs::path tmp(const std::string& name) {
  const fs::path p = fs::path(RMTEV_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rmtev");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse_config examples") {
  const RunConfig rc = parse_config(kExample);
  CHECK(rc.model.n == 100);
  CHECK(rc.model.N == 500);
  CHECK(rc.model.ratio() == doctest::Approx(0.2));
  CHECK(rc.model.seed == 7);
  CHECK(rc.model.entries == EntryDist::real_gaussian);
  CHECK(rc.model.direction == DirectionSpec::basis(0));
  CHECK(rc.replicates() == 100);

  CHECK(error_of(R"({"n":0,"N":5})") == "n must be ≥ 1");

  const RunConfig custom = parse_config(R"({"n":2,"N":4,"direction":{"kind":"custom","vector":[3,4]}})");
  REQUIRE(custom.model.direction.vector.size() == 2);
  CHECK(custom.model.direction.vector[0].real() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(custom.model.direction.vector[1].real() == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("parse_config defaults and errors") {
  const RunConfig d = parse_config(R"({"n":3,"N":6})");
  CHECK(d.model.seed == 0);
  CHECK(d.model.population.spectrum == SpectralMeasure::point(1.0));
  CHECK(d.replicates() == 100);
  RunConfig fig = d;
  fig.command = Command::figures;
  CHECK(fig.replicates() == 1000);

  CHECK(error_of(R"({"N":6})") == "n is required");
  CHECK(error_of(R"({"n":6})") == "N is required");
  CHECK(error_of(R"({"n":1.5,"N":6})") == "n must be an integer");
  CHECK(error_of(R"({"n":3,"N":6,"entries":"cauchy"})").find("entries must be one of") == 0);
  CHECK(error_of(R"({"n":3,"N":6,"bogus":1})") == "unknown key 'bogus'");
  CHECK(error_of(R"({"n":3,"N":6,"population":{"atoms":[{"t":1,"w":1,"x":2}]}})") ==
        "unknown key 'population.atoms[0].x'");
  CHECK(error_of(R"({"n":3,"N":6,"population":{"atoms":[{"t":1}]}})") == "population.atoms[0].w is required");
  CHECK(error_of(R"({"n":3,"N":6,"population":{"atoms":[{"t":1,"w":0.4}]}})").find("population: ") == 0);
  CHECK(error_of(R"({"n":3,"N":6,"direction":{"kind":"diagonal"}})").find("direction.kind") == 0);
  CHECK(error_of(R"({"n":3,"N":6,"direction":{"kind":"custom","vector":[0,0]}})") == "direction.vector must be nonzero");
  CHECK(error_of(R"({"n":3,"N":6,"direction":{"kind":"uniform","index":2}})").find("direction.index") == 0);
  CHECK(error_of(R"({"n":3,"N":6,"seed":-1})") == "seed must be a nonnegative integer");
  CHECK(error_of(R"({"n":3,"N":6,"reps":0})") == "reps must be ≥ 1");
  CHECK(error_of(R"({"n":3,"N":6,"functionals":["sin"]})").find("functionals[0]: ") == 0);
  CHECK(error_of(R"({"n":3,"N":6,"which":4})") == "which must be 1, 2 or 3");
  CHECK(error_of(R"({"n":3,"N":6,"command":"plot"})").find("command must be one of") == 0);
  CHECK(error_of("{not json").find("config is not valid JSON") == 0);
  CHECK(error_of("[1,2]") == " must be an object");
}

TEST_CASE("serialize round trip") {
  std::vector<RunConfig> cases;
  cases.push_back(parse_config(kExample));
  RunConfig rich = parse_config(
      R"({"command":"clt","n":40,"N":90,"entries":"complex-gaussian","population":{"atoms":[{"t":0.5,"w":0.3},{"t":2.25,"w":0.7}]},)"
      R"("direction":{"kind":"custom","vector":[1,[0.5,-2],0.1]},"seed":18446744073709551615,"reps":17,)"
      R"("functionals":["poly:0.1,0,3","log"],"grid":[0.1,0.2,0.30000000000000004],"which":3,"out":"x/y","entries_override":2.5})");
  cases.push_back(rich);
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    RunConfig rc;
    rc.command = static_cast<Command>(i % 5);
    rc.model.n = 1 + static_cast<int>(gen() % 1000);
    rc.model.N = 1 + static_cast<int>(gen() % 1000);
    rc.model.entries = static_cast<EntryDist>(i % 4);
    const double w = u(gen);
    rc.model.population.spectrum = SpectralMeasure({u(gen), 1.0 + u(gen)}, {w, 1.0 - w});
    rc.model.direction = i % 3 == 0 ? DirectionSpec::uniform() : DirectionSpec::basis(gen() % 5);
    rc.model.seed = gen();
    if (i % 2) rc.reps = 1 + static_cast<int>(gen() % 500);
    rc.functionals = {FunctionalSpec::poly({u(gen), -u(gen)})};
    rc.grid = {u(gen), u(gen)};
    rc.which = 1 + i % 3;
    cases.push_back(rc);
  }
  for (const RunConfig& rc : cases) {
    const std::string text = serialize(rc);
    CHECK(parse_config(text) == rc);
    CHECK(serialize(parse_config(text)) == text);
  }
}

TEST_CASE("parse_grid") {
  CHECK(parse_grid("0.25, 0.5,1") == std::vector<double>{0.25, 0.5, 1.0});
  CHECK_THROWS_AS(parse_grid("0.25,,1"), ConfigError);
  CHECK_THROWS_AS(parse_grid("a"), ConfigError);
}

TEST_CASE("density command") {
  const fs::path dir = tmp("density");
  const fs::path cfg = write_config(dir, R"({"n":1,"N":4})");
  const Result r = run_cli({"density", "--config", cfg.string(), "--out", (dir / "out").string(), "--grid", "0.5,1.0,5"});
  REQUIRE(r.code == kExitOk);
  std::istringstream csv(slurp(dir / "out" / "density.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "x,f,F");
  bool seen = false;
  while (std::getline(csv, line)) {
    double x = 0, f = 0, F = 0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &f, &F) == 3);
    if (x == 1.0) {
      CHECK(std::abs(f - 0.61637) <= 1e-3);
      seen = true;
    }
    if (x == 5.0) CHECK(std::abs(F - 1.0) <= 1e-4);
  }
  CHECK(seen);
}

TEST_CASE("simulate command with fixed entries") {
  const fs::path dir = tmp("simulate");
  const fs::path cfg = write_config(dir, R"({"n":1,"N":1,"entries_override":2})");
  REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--out", dir.string()}).code == kExitOk);
  const auto s = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(s["W_n"].get<double>() == doctest::Approx(std::log(4.0)));
  CHECK(slurp(dir / "spectrum.csv").rfind("lambda,weight,uniform_weight\n4,1,1\n", 0) == 0);
}

TEST_CASE("simulate command moments and singular case") {
  const fs::path dir = tmp("simulate2");
  const fs::path cfg = write_config(dir, kExample);
  REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--out", dir.string()}).code == kExitOk);
  const auto s = nlohmann::json::parse(slurp(dir / "summary.json"));
  for (const auto& m : s["moments"]) {
    const double a = m["weighted_spectrum"].get<double>(), b = m["quad_form"].get<double>();
    CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
  }
  const fs::path wide = write_config(dir, R"({"n":6,"N":3})");
  REQUIRE(run_cli({"simulate", "--config", wide.string(), "--out", dir.string()}).code == kExitOk);
  const auto w = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(w["W_n"].is_null());
}

TEST_CASE("clt command" * doctest::timeout(120)) {
  const fs::path dir = tmp("clt");
  const fs::path cfg = write_config(dir, R"({"n":50,"N":100,"seed":3})");
  REQUIRE(run_cli({"clt", "--config", cfg.string(), "--out", dir.string(), "--g", "poly:0,1", "--reps", "400"}).code ==
          kExitOk);
  const auto rep = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep["theory_cov_simplified"][0][0].get<double>() == doctest::Approx(2.0));
  CHECK(rep["replicates"].get<int>() == 400);
  CHECK(rep["functionals"][0].get<std::string>() == "poly:0,1");
}

TEST_CASE("outputs are reproducible apart from wall_time") {
  const fs::path dir = tmp("repro");
  const fs::path cfg = write_config(dir, R"({"n":20,"N":40,"seed":5,"functionals":["poly:0,1","log"],"reps":20})");
  for (const char* sub : {"a", "b"}) {
    const std::string out = (dir / sub).string();
    REQUIRE(run_cli({"clt", "--config", cfg.string(), "--out", out}).code == kExitOk);
    REQUIRE(run_cli({"simulate", "--config", cfg.string(), "--out", out}).code == kExitOk);
    REQUIRE(run_cli({"bridge", "--config", cfg.string(), "--out", out}).code == kExitOk);
    REQUIRE(run_cli({"figures", "--which", "2", "--reps", "50", "--out", out}).code == kExitOk);
  }
  for (const char* f : {"spectrum.csv", "summary.json", "bb.json", "fig2.csv"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  auto ra = nlohmann::json::parse(slurp(dir / "a" / "report.json"));
  auto rb = nlohmann::json::parse(slurp(dir / "b" / "report.json"));
  ra.erase("wall_time");
  rb.erase("wall_time");
  CHECK(ra.dump() == rb.dump());
}

TEST_CASE("exit codes") {
  const fs::path dir = tmp("codes");
  CHECK(run_cli({}).code == kExitConfig);
  CHECK(run_cli({"plot"}).code == kExitConfig);
  CHECK(run_cli({"density"}).code == kExitConfig);
  CHECK(run_cli({"density", "--config", (dir / "missing.json").string()}).code == kExitConfig);
  const fs::path bad = write_config(dir, R"({"n":0,"N":4})");
  const Result r = run_cli({"density", "--config", bad.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("n must be ≥ 1") != std::string::npos);
  const fs::path ok = write_config(dir, R"({"n":2,"N":4})");
  CHECK(run_cli({"clt", "--config", ok.string(), "--g", "sin", "--out", dir.string()}).code == kExitConfig);
  CHECK(run_cli({"figures", "--which", "4"}).code == kExitConfig);
  CHECK(run_cli({"density", "--config", ok.string(), "--grid", "1,x"}).code == kExitConfig);
  const fs::path hook = write_config(dir, R"({"n":2,"N":4,"entries_override":1})");
  CHECK(run_cli({"clt", "--config", hook.string(), "--out", dir.string()}).code == kExitConfig);
  CHECK(run_cli({"--help"}).code == kExitOk);

  // Rademacher rows coincide with probability 1/4 at N = 3, making A singular.
  const fs::path sing = write_config(dir, R"({"n":2,"N":3,"entries":"rademacher","functionals":["log"],"reps":40})");
  const Result s = run_cli({"clt", "--config", sing.string(), "--out", dir.string()});
  CHECK(s.code == kExitNumerical);
  CHECK(s.err.find("run_replications") != std::string::npos);
  CHECK(s.err.find("replicate ") != std::string::npos);
}
