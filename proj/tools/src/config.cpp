#include "rmtev/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"

#include "rmtev/error.hpp"

namespace rmtev::cli {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void reject_unknown(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(path + " must be an object");
  const std::set<std::string_view> keys(allowed);
  for (const auto& item : j.items()) {
    if (!keys.contains(item.key())) fail("unknown key '" + (path.empty() ? "" : path + ".") + item.key() + "'");
  }
}

long long get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path + " must be an integer");
  return j.get<long long>();
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path + " must be finite");
  return v;
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path + " must be a string");
  return j.get<std::string>();
}

int positive_int(const json& j, const std::string& path) {
  const long long v = get_int(j, path);
  if (v < 1) fail(path + " must be ≥ 1");
  if (v > 1'000'000'000) fail(path + " is too large");
  return static_cast<int>(v);
}

cplx get_component(const json& j, const std::string& path) {
  if (j.is_array()) {
    if (j.size() != 2) fail(path + " must be a number or a [re, im] pair");
    return {get_number(j[0], path + "[0]"), get_number(j[1], path + "[1]")};
  }
  return {get_number(j, path), 0.0};
}

SpectralMeasure parse_population(const json& j) {
  reject_unknown(j, "population", {"atoms"});
  if (!j.contains("atoms")) fail("population.atoms is required");
  const json& atoms = j["atoms"];
  if (!atoms.is_array() || atoms.empty()) fail("population.atoms must be a nonempty array");
  std::vector<double> t, w;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string path = "population.atoms[" + std::to_string(k) + "]";
    reject_unknown(atoms[k], path, {"t", "w"});
    if (!atoms[k].contains("t")) fail(path + ".t is required");
    if (!atoms[k].contains("w")) fail(path + ".w is required");
    t.push_back(get_number(atoms[k]["t"], path + ".t"));
    w.push_back(get_number(atoms[k]["w"], path + ".w"));
  }
  try {
    return SpectralMeasure(std::move(t), std::move(w));
  } catch (const ConfigError& e) {
    fail(std::string("population: ") + e.what());
  }
}

DirectionSpec parse_direction(const json& j) {
  reject_unknown(j, "direction", {"kind", "index", "vector"});
  if (!j.contains("kind")) fail("direction.kind is required");
  const std::string kind = get_string(j["kind"], "direction.kind");
  const auto forbid = [&](const char* key) {
    if (j.contains(key)) fail(std::string("direction.") + key + " does not apply to kind '" + kind + "'");
  };
  if (kind == "e") {
    forbid("vector");
    long long index = 0;
    if (j.contains("index")) index = get_int(j["index"], "direction.index");
    if (index < 0) fail("direction.index must be ≥ 0");
    return DirectionSpec::basis(static_cast<std::size_t>(index));
  }
  if (kind == "uniform" || kind == "sphere") {
    forbid("vector");
    forbid("index");
    return kind == "uniform" ? DirectionSpec::uniform() : DirectionSpec::sphere();
  }
  if (kind == "custom") {
    forbid("index");
    if (!j.contains("vector")) fail("direction.vector is required for kind 'custom'");
    const json& v = j["vector"];
    if (!v.is_array() || v.empty()) fail("direction.vector must be a nonempty array");
    std::vector<cplx> out;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(get_component(v[i], "direction.vector[" + std::to_string(i) + "]"));
      norm2 += std::norm(out.back());
    }
    if (!(norm2 > 0.0)) fail("direction.vector must be nonzero");
    // already-unit vectors are kept bit-exact so serialized configs round-trip
    if (std::abs(norm2 - 1.0) > 8.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(out.size())) {
      const double norm = std::sqrt(norm2);
      for (cplx& x : out) x /= norm;
    }
    return DirectionSpec::custom(std::move(out));
  }
  fail("direction.kind must be one of e, uniform, custom, sphere; got '" + kind + "'");
}

json direction_json(const DirectionSpec& d) {
  json j;
  switch (d.kind) {
    case DirectionSpec::Kind::basis:
      j["kind"] = "e";
      j["index"] = d.index;
      break;
    case DirectionSpec::Kind::uniform:
      j["kind"] = "uniform";
      break;
    case DirectionSpec::Kind::sphere:
      j["kind"] = "sphere";
      break;
    case DirectionSpec::Kind::custom: {
      j["kind"] = "custom";
      json v = json::array();
      for (const cplx& x : d.vector) {
        if (x.imag() == 0.0)
          v.push_back(x.real());
        else
          v.push_back(json::array({x.real(), x.imag()}));
      }
      j["vector"] = v;
      break;
    }
  }
  return j;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::simulate: return "simulate";
    case Command::density: return "density";
    case Command::clt: return "clt";
    case Command::bridge: return "bridge";
    case Command::figures: return "figures";
  }
  return "simulate";
}

Command command_from_string(std::string_view s) {
  for (Command c : {Command::simulate, Command::density, Command::clt, Command::bridge, Command::figures}) {
    if (to_string(c) == s) return c;
  }
  fail("command must be one of simulate, density, clt, bridge, figures; got '" + std::string(s) + "'");
}

int RunConfig::replicates() const { return reps.value_or(command == Command::figures ? 1000 : 100); }

RunConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(j, "", {"command", "n", "N", "entries", "population", "direction", "seed", "reps", "functionals",
                         "grid", "which", "out", "entries_override"});
  RunConfig rc;
  if (j.contains("command")) rc.command = command_from_string(get_string(j["command"], "command"));
  if (!j.contains("n")) fail("n is required");
  if (!j.contains("N")) fail("N is required");
  rc.model.n = positive_int(j["n"], "n");
  rc.model.N = positive_int(j["N"], "N");
  if (j.contains("entries")) {
    const std::string e = get_string(j["entries"], "entries");
    try {
      rc.model.entries = entry_dist_from_string(e);
    } catch (const ConfigError&) {
      fail("entries must be one of real-gaussian, complex-gaussian, rademacher, uniform-rescaled; got '" + e + "'");
    }
  }
  if (j.contains("population")) rc.model.population.spectrum = parse_population(j["population"]);
  if (j.contains("direction")) rc.model.direction = parse_direction(j["direction"]);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed must be a nonnegative integer");
    rc.model.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("reps")) rc.reps = positive_int(j["reps"], "reps");
  if (j.contains("functionals")) {
    const json& f = j["functionals"];
    if (!f.is_array()) fail("functionals must be an array of strings");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string path = "functionals[" + std::to_string(i) + "]";
      try {
        rc.functionals.push_back(FunctionalSpec::parse(get_string(f[i], path)));
      } catch (const ConfigError& e) {
        fail(path + ": " + e.what());
      }
    }
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_array()) fail("grid must be an array of numbers");
    for (std::size_t i = 0; i < g.size(); ++i) rc.grid.push_back(get_number(g[i], "grid[" + std::to_string(i) + "]"));
  }
  if (j.contains("which")) {
    const long long w = get_int(j["which"], "which");
    if (w < 1 || w > 3) fail("which must be 1, 2 or 3");
    rc.which = static_cast<int>(w);
  }
  if (j.contains("out")) rc.out = get_string(j["out"], "out");
  if (j.contains("entries_override")) rc.entries_override = get_number(j["entries_override"], "entries_override");
  return rc;
}

std::string serialize(const RunConfig& rc) {
  json j;
  j["command"] = to_string(rc.command);
  j["n"] = rc.model.n;
  j["N"] = rc.model.N;
  j["entries"] = to_string(rc.model.entries);
  json atoms = json::array();
  const auto& h = rc.model.population.spectrum;
  for (std::size_t k = 0; k < h.size(); ++k) atoms.push_back(json{{"t", h.atoms()[k]}, {"w", h.weights()[k]}});
  j["population"] = json{{"atoms", atoms}};
  j["direction"] = direction_json(rc.model.direction);
  j["seed"] = rc.model.seed;
  if (rc.reps) j["reps"] = *rc.reps;
  json f = json::array();
  for (const auto& g : rc.functionals) f.push_back(g.to_string());
  j["functionals"] = f;
  j["grid"] = rc.grid;
  j["which"] = rc.which;
  j["out"] = rc.out;
  if (rc.entries_override) j["entries_override"] = *rc.entries_override;
  return j.dump(2) + "\n";
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size() || !std::isfinite(v))
      fail("--grid: bad value '" + std::string(item) + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

}  // namespace rmtev::cli
