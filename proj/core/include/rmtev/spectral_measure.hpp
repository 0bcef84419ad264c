#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rmtev {

// A discrete probability measure on [0, inf) given by atoms and weights.
// Used both for the population spectral distribution H and its finite-n
// realization H_n.
//
// Construction canonicalizes: atoms are sorted, duplicates merged, zero
// weights dropped, and weights rescaled to sum to one. Weights must sum to
// one within 1e-9 before rescaling.
class SpectralMeasure {
 public:
  SpectralMeasure(std::vector<double> atoms, std::vector<double> weights);

  static SpectralMeasure point(double t);

  std::span<const double> atoms() const { return atoms_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }

  double min_atom() const { return atoms_.front(); }
  double max_atom() const { return atoms_.back(); }

  // A single atom: the case where the simplified covariance applies.
  bool degenerate() const { return atoms_.size() == 1; }

  // sum_k w_k f(t_k)
  template <typename F>
  auto integrate(F&& f) const -> decltype(f(0.0)) {
    decltype(f(0.0)) acc{};
    for (std::size_t k = 0; k < atoms_.size(); ++k) acc += weights_[k] * f(atoms_[k]);
    return acc;
  }

  bool operator==(const SpectralMeasure&) const = default;

 private:
  std::vector<double> atoms_;
  std::vector<double> weights_;
};

}  // namespace rmtev
