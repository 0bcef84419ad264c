#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "rmtev/cli/app.hpp"
#include "rmtev/error.hpp"
#include "rmtev/parallel.hpp"

namespace rmtev::cli {

namespace {

struct Flags {
  std::string config;
  std::string out;
  int reps = 0;
  std::vector<std::string> g;
  std::string grid;
  int which = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

RunConfig build(Command command, const Flags& flags) {
  RunConfig rc;
  if (!flags.config.empty())
    rc = parse_config(read_file(flags.config));
  else if (command != Command::figures)
    throw ConfigError("--config is required for " + std::string(to_string(command)));
  rc.command = command;
  if (!flags.out.empty()) rc.out = flags.out;
  if (flags.reps != 0) {
    if (flags.reps < 1) throw ConfigError("--reps must be ≥ 1");
    rc.reps = flags.reps;
  }
  if (!flags.g.empty()) {
    rc.functionals.clear();
    for (const auto& s : flags.g) rc.functionals.push_back(FunctionalSpec::parse(s));
  }
  if (!flags.grid.empty()) rc.grid = parse_grid(flags.grid);
  if (flags.which != 0) rc.which = flags.which;
  return rc;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenvector spectral statistics of sample covariance matrices.\n"
               "Worker threads: set " +
               std::string(kThreadsEnv) + " (default: hardware concurrency)."};
  app.name("rmtev");
  app.require_subcommand(1);
  Flags flags;
  const auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "JSON run configuration");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--reps", flags.reps, "replicate count");
    sub->add_option("--g", flags.g, "functional 'poly:c0,c1,...' or 'log' (repeatable)");
    sub->add_option("--grid", flags.grid, "comma-separated grid");
    sub->add_option("--which", flags.which, "figure number (figures)")->check(CLI::Range(1, 3));
    return sub;
  };
  const std::pair<CLI::App*, Command> subs[] = {
      {add("simulate", "one realization: spectrum.csv and summary.json"), Command::simulate},
      {add("density", "limit density and CDF: density.csv"), Command::density},
      {add("clt", "Monte Carlo CLT check: report.json"), Command::clt},
      {add("bridge", "Brownian bridge covariance: bb.json"), Command::bridge},
      {add("figures", "kernel density series of W_n: figK.csv"), Command::figures},
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Command command = Command::simulate;
    for (const auto& [sub, c] : subs)
      if (sub->parsed()) command = c;
    const RunConfig rc = build(command, flags);
    dispatch(rc, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error in " << e.operation() << ": " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace rmtev::cli
