#pragma once

#include <ostream>

#include "rmtev/cli/config.hpp"

namespace rmtev::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Runs rc.command and writes its files under rc.out. Throws ConfigError or
// NumericalError.
void dispatch(const RunConfig& rc, std::ostream& log);

// Full command line: parse flags, load the config, dispatch, map errors to
// exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rmtev::cli
