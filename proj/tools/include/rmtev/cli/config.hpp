#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtev/functional.hpp"
#include "rmtev/model.hpp"

namespace rmtev::cli {

enum class Command { simulate, density, clt, bridge, figures };

std::string_view to_string(Command c);
Command command_from_string(std::string_view s);

// One run of the tool. JSON keys mirror the field names; see README.
struct RunConfig {
  Command command = Command::simulate;
  ModelConfig model;
  std::vector<FunctionalSpec> functionals;
  std::optional<int> reps;
  std::string out = ".";
  std::vector<double> grid;
  int which = 1;
  // Test hook: every entry of X is set to this value (simulate only).
  std::optional<double> entries_override;

  // reps if given, else 1000 for figures and 100 otherwise.
  int replicates() const;
  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError naming the offending field.
RunConfig parse_config(std::string_view json_text);
std::string serialize(const RunConfig& rc);

std::vector<double> parse_grid(std::string_view text);

}  // namespace rmtev::cli
