#include "rmtev/functional.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "rmtev/error.hpp"

namespace rmtev {

FunctionalSpec FunctionalSpec::poly(std::vector<double> coefficients) {
  if (coefficients.empty()) throw ConfigError("functional: polynomial needs at least one coefficient");
  FunctionalSpec g;
  g.kind_ = Kind::poly;
  g.coefficients_ = std::move(coefficients);
  return g;
}

FunctionalSpec FunctionalSpec::log() {
  FunctionalSpec g;
  g.kind_ = Kind::log;
  return g;
}

FunctionalSpec FunctionalSpec::parse(std::string_view text) {
  if (text == "log") return log();
  constexpr std::string_view prefix = "poly:";
  if (!text.starts_with(prefix)) throw ConfigError("functional: expected 'poly:c0,c1,...' or 'log', got '" + std::string(text) + "'");
  text.remove_prefix(prefix.size());
  std::vector<double> coeffs;
  while (true) {
    const auto comma = text.find(',');
    const std::string token(text.substr(0, comma));
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last)
      throw ConfigError("functional: bad coefficient '" + token + "'");
    coeffs.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return poly(std::move(coeffs));
}

double FunctionalSpec::operator()(double x) const {
  if (kind_ == Kind::log) return std::log(x);
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx FunctionalSpec::operator()(cplx z) const {
  if (kind_ == Kind::log) return std::log(z);
  cplx acc{};
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::string FunctionalSpec::to_string() const {
  if (kind_ == Kind::log) return "log";
  std::string out = "poly:";
  char buf[32];
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i) out += ',';
    std::snprintf(buf, sizeof buf, "%.17g", coefficients_[i]);
    out += buf;
  }
  return out;
}

}  // namespace rmtev
