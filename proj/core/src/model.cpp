#include "rmtev/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rmtev/error.hpp"

namespace rmtev {

std::string_view to_string(EntryDist d) {
  switch (d) {
    case EntryDist::real_gaussian: return "real-gaussian";
    case EntryDist::complex_gaussian: return "complex-gaussian";
    case EntryDist::rademacher: return "rademacher";
    case EntryDist::uniform_rescaled: return "uniform-rescaled";
  }
  return "unknown";
}

EntryDist entry_dist_from_string(std::string_view s) {
  for (auto d : {EntryDist::real_gaussian, EntryDist::complex_gaussian, EntryDist::rademacher,
                 EntryDist::uniform_rescaled}) {
    if (s == to_string(d)) return d;
  }
  throw ConfigError("unknown entry distribution '" + std::string(s) + "'");
}

void ModelConfig::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (N < 1) throw ConfigError("N must be >= 1");
  if (direction.kind == DirectionSpec::Kind::basis && direction.index >= static_cast<std::size_t>(n))
    throw ConfigError("direction index out of range");
  if (direction.kind == DirectionSpec::Kind::custom && direction.vector.size() != static_cast<std::size_t>(n))
    throw ConfigError("custom direction must have length n");
}

Eigen::Index HermitianMatrix::size() const {
  return visit([](const auto& a) { return a.rows(); });
}

HermitianMatrix::Complex HermitianMatrix::to_complex() const {
  return visit([](const auto& a) -> Complex { return a.template cast<cplx>(); });
}

double HermitianMatrix::trace() const {
  return visit([](const auto& a) { return std::real(a.trace()); });
}

double HermitianMatrix::frobenius_norm() const {
  return visit([](const auto& a) { return a.norm(); });
}

Eigen::VectorXd realize_population(const PopulationSpec& spec, int n) {
  const auto atoms = spec.spectrum.atoms();
  const auto weights = spec.spectrum.weights();
  const std::size_t k = atoms.size();
  if (n < static_cast<int>(k)) throw ConfigError("dimension too small");

  std::vector<int> counts(k);
  std::vector<double> remainder(k);
  int assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = n * weights[i];
    counts[i] = static_cast<int>(std::floor(exact));
    remainder[i] = exact - counts[i];
    assigned += counts[i];
  }
  // Largest remainders first; stable sort keeps ties on the smaller atom.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t j = 0; assigned < n; ++j, ++assigned) ++counts[order[j % k]];

  Eigen::VectorXd diag(n);
  Eigen::Index pos = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (int c = 0; c < counts[i]; ++c) diag[pos++] = atoms[i];
  return diag;
}

SpectralMeasure empirical_measure(const Eigen::VectorXd& diagonal) {
  std::vector<double> atoms(diagonal.data(), diagonal.data() + diagonal.size());
  std::vector<double> weights(atoms.size(), 1.0 / static_cast<double>(atoms.size()));
  return SpectralMeasure(std::move(atoms), std::move(weights));
}

Eigen::VectorXcd realize_direction(const DirectionSpec& spec, int n, RngStream& rng) {
  if (n < 1) throw ConfigError("n must be >= 1");
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  switch (spec.kind) {
    case DirectionSpec::Kind::basis:
      if (spec.index >= static_cast<std::size_t>(n)) throw ConfigError("direction index out of range");
      x[static_cast<Eigen::Index>(spec.index)] = 1.0;
      return x;
    case DirectionSpec::Kind::uniform:
      x.setConstant(1.0 / std::sqrt(static_cast<double>(n)));
      return x;
    case DirectionSpec::Kind::custom: {
      if (spec.vector.size() != static_cast<std::size_t>(n)) throw ConfigError("custom direction must have length n");
      for (Eigen::Index i = 0; i < n; ++i) x[i] = spec.vector[static_cast<std::size_t>(i)];
      const double norm = x.norm();
      if (!(norm > 0.0) || !std::isfinite(norm)) throw ConfigError("custom direction must be a nonzero vector");
      return x / norm;
    }
    case DirectionSpec::Kind::sphere: {
      double norm = 0.0;
      do {
        for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.normal();
        norm = x.norm();
      } while (norm == 0.0);
      return x / norm;
    }
  }
  return x;
}

std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> draw_entries(const ModelConfig& cfg, RngStream& rng) {
  const Eigen::Index n = cfg.n, N = cfg.N;
  switch (cfg.entries) {
    case EntryDist::complex_gaussian: {
      Eigen::MatrixXcd x(n, N);
      const double s = std::sqrt(0.5);
      for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
          const double re = rng.normal();
          const double im = rng.normal();
          x(i, j) = cplx(s * re, s * im);
        }
      return x;
    }
    case EntryDist::real_gaussian: {
      Eigen::MatrixXd x(n, N);
      for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = rng.normal();
      return x;
    }
    case EntryDist::rademacher: {
      Eigen::MatrixXd x(n, N);
      for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = (rng.next() >> 63) ? 1.0 : -1.0;
      return x;
    }
    case EntryDist::uniform_rescaled: {
      Eigen::MatrixXd x(n, N);
      const double half_width = std::sqrt(3.0);
      for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = half_width * (2.0 * rng.uniform() - 1.0);
      return x;
    }
  }
  throw ConfigError("unknown entry distribution");
}

namespace {

// Lower triangle by a rank update, then mirrored: the result is exactly
// Hermitian, which a plain Y * Y^* product does not guarantee.
template <typename Matrix>
Matrix scaled_gram(const Matrix& x, const Eigen::VectorXd& t_diag) {
  const Eigen::Index n = x.rows();
  if (t_diag.size() != n) throw ConfigError("population diagonal does not match matrix rows");
  if ((t_diag.array() < 0.0).any()) throw ConfigError("population diagonal must be nonnegative");
  const Matrix y = t_diag.array().sqrt().matrix().asDiagonal() * x;
  Matrix a = Matrix::Zero(n, n);
  a.template selfadjointView<Eigen::Lower>().rankUpdate(y, 1.0 / static_cast<double>(x.cols()));
  a.template triangularView<Eigen::StrictlyUpper>() = a.adjoint();
  return a;
}

}  // namespace

HermitianMatrix build_sample_cov_from(const Eigen::MatrixXd& x, const Eigen::VectorXd& t_diag) {
  return HermitianMatrix(scaled_gram(x, t_diag));
}

HermitianMatrix build_sample_cov_from(const Eigen::MatrixXcd& x, const Eigen::VectorXd& t_diag) {
  Eigen::MatrixXcd a = scaled_gram(x, t_diag);
  for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, i) = std::real(a(i, i));
  return HermitianMatrix(std::move(a));
}

HermitianMatrix build_sample_cov(const ModelConfig& cfg, std::uint64_t replicate) {
  cfg.validate();
  RngStream rng(cfg.seed, replicate);
  const Eigen::VectorXd t = realize_population(cfg.population, cfg.n);
  auto entries = draw_entries(cfg, rng);
  return std::visit([&](const auto& x) { return build_sample_cov_from(x, t); }, entries);
}

HermitianMatrix build_sample_cov(const ModelConfig& cfg) { return build_sample_cov(cfg, 0); }

Eigen::MatrixXcd build_companion_from(const Eigen::MatrixXcd& x, const Eigen::VectorXd& t_diag) {
  if (t_diag.size() != x.rows()) throw ConfigError("population diagonal does not match matrix rows");
  return x.adjoint() * t_diag.asDiagonal() * x / static_cast<double>(x.cols());
}

}  // namespace rmtev
