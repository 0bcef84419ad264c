#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rmtev/rng.hpp"
#include "rmtev/spectral_measure.hpp"

namespace rmtev {

using cplx = std::complex<double>;

// Distribution of the i.i.d. entries X_ij. All have mean 0 and variance 1.
//   real_gaussian     N(0,1), E X^4 = 3
//   complex_gaussian  (N(0,1/2) + i N(0,1/2)), E X^2 = 0, E|X|^4 = 2
//   rademacher        +-1 with equal probability, E X^4 = 1
//   uniform_rescaled  U[-sqrt3, sqrt3], E X^4 = 9/5
enum class EntryDist { real_gaussian, complex_gaussian, rademacher, uniform_rescaled };

std::string_view to_string(EntryDist d);
EntryDist entry_dist_from_string(std::string_view s);
inline bool is_complex(EntryDist d) { return d == EntryDist::complex_gaussian; }

struct PopulationSpec {
  SpectralMeasure spectrum = SpectralMeasure::point(1.0);

  bool operator==(const PopulationSpec&) const = default;
};

struct DirectionSpec {
  enum class Kind { basis, uniform, custom, sphere };

  Kind kind = Kind::basis;
  std::size_t index = 0;      // basis
  std::vector<cplx> vector;   // custom

  static DirectionSpec basis(std::size_t i) { return {Kind::basis, i, {}}; }
  static DirectionSpec uniform() { return {Kind::uniform, 0, {}}; }
  static DirectionSpec custom(std::vector<cplx> v) { return {Kind::custom, 0, std::move(v)}; }
  // Uniformly distributed on the real unit sphere, drawn from the stream.
  static DirectionSpec sphere() { return {Kind::sphere, 0, {}}; }

  bool operator==(const DirectionSpec&) const = default;
};

struct ModelConfig {
  int n = 1;
  int N = 1;
  EntryDist entries = EntryDist::real_gaussian;
  PopulationSpec population;
  DirectionSpec direction;
  std::uint64_t seed = 0;

  double ratio() const { return static_cast<double>(n) / static_cast<double>(N); }
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

// A Hermitian matrix stored in real arithmetic when the model is real.
class HermitianMatrix {
 public:
  using Real = Eigen::MatrixXd;
  using Complex = Eigen::MatrixXcd;

  explicit HermitianMatrix(Real a) : data_(std::move(a)) {}
  explicit HermitianMatrix(Complex a) : data_(std::move(a)) {}

  Eigen::Index size() const;
  bool is_real() const { return std::holds_alternative<Real>(data_); }
  const Real& real() const { return std::get<Real>(data_); }
  const Complex& complex() const { return std::get<Complex>(data_); }
  Complex to_complex() const;
  double trace() const;
  double frobenius_norm() const;

  template <typename F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), data_);
  }

 private:
  std::variant<Real, Complex> data_;
};

// Diagonal of T_n: atom multiplicities by largest-remainder rounding of
// n*w_k, ties going to the smaller atom. Entries are ascending.
Eigen::VectorXd realize_population(const PopulationSpec& spec, int n);

// The empirical measure H_n of a realized diagonal.
SpectralMeasure empirical_measure(const Eigen::VectorXd& diagonal);

Eigen::VectorXcd realize_direction(const DirectionSpec& spec, int n, RngStream& rng);

// Draws the n x N entry matrix for replicate `replicate` of cfg.
// Real distributions give a real matrix.
std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> draw_entries(const ModelConfig& cfg, RngStream& rng);

// A_n = (1/N) T^{1/2} X X^* T^{1/2} for replicate 0 of cfg.
HermitianMatrix build_sample_cov(const ModelConfig& cfg);
// Same, for replicate r (stream (seed, r)).
HermitianMatrix build_sample_cov(const ModelConfig& cfg, std::uint64_t replicate);
// A_n from explicit entries and a diagonal T.
HermitianMatrix build_sample_cov_from(const Eigen::MatrixXd& x, const Eigen::VectorXd& t_diag);
HermitianMatrix build_sample_cov_from(const Eigen::MatrixXcd& x, const Eigen::VectorXd& t_diag);

// The N x N companion (1/N) X^* T X. Only used for small cross-checks.
Eigen::MatrixXcd build_companion_from(const Eigen::MatrixXcd& x, const Eigen::VectorXd& t_diag);

}  // namespace rmtev
