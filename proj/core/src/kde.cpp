#include "rmtev/kde.hpp"

#include <cmath>
#include <numbers>

#include "rmtev/error.hpp"

namespace rmtev {

double silverman_bandwidth(std::span<const double> samples) {
  const auto r = samples.size();
  if (r < 2) throw ConfigError("kde: need at least 2 samples");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(r);
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / static_cast<double>(r - 1));
  const double h = 1.06 * sd * std::pow(static_cast<double>(r), -0.2);
  if (!(h > 0.0)) throw ConfigError("kde: zero bandwidth");
  return h;
}

std::vector<double> kde(std::span<const double> samples, std::span<const double> grid) {
  const double h = silverman_bandwidth(samples);
  const double norm = 1.0 / (static_cast<double>(samples.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double acc = 0.0;
    for (double s : samples) {
      const double u = (grid[j] - s) / h;
      acc += std::exp(-0.5 * u * u);
    }
    out[j] = acc * norm;
  }
  return out;
}

}  // namespace rmtev
