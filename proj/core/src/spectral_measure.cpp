#include "rmtev/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmtev/error.hpp"

namespace rmtev {

SpectralMeasure::SpectralMeasure(std::vector<double> atoms, std::vector<double> weights) {
  if (atoms.size() != weights.size()) throw ConfigError("spectral measure: atoms and weights differ in length");
  if (atoms.empty()) throw ConfigError("spectral measure: no atoms");

  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });

  double total = 0.0;
  for (std::size_t k : order) {
    const double t = atoms[k];
    const double w = weights[k];
    if (!std::isfinite(t) || t < 0.0) throw ConfigError("spectral measure: atoms must be finite and nonnegative");
    if (!std::isfinite(w) || w < 0.0) throw ConfigError("spectral measure: weights must be finite and nonnegative");
    total += w;
    if (w == 0.0) continue;
    if (!atoms_.empty() && atoms_.back() == t) {
      weights_.back() += w;
    } else {
      atoms_.push_back(t);
      weights_.push_back(w);
    }
  }
  if (atoms_.empty()) throw ConfigError("spectral measure: all weights are zero");
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("spectral measure: weights must sum to 1");
  for (double& w : weights_) w /= total;
}

SpectralMeasure SpectralMeasure::point(double t) { return SpectralMeasure({t}, {1.0}); }

}  // namespace rmtev
