#include "rmtev/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "rmtev/error.hpp"

namespace rmtev {

namespace {

template <typename Matrix>
void require_hermitian(const Matrix& a) {
  if (a.rows() != a.cols()) throw ConfigError("eig_decompose: matrix is not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ConfigError("eig_decompose: non-Hermitian input");
}

}  // namespace

EigenSystem eig_decompose(const HermitianMatrix& a) {
  return a.visit([](const auto& m) {
    using Matrix = std::decay_t<decltype(m)>;
    require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw NumericalError("eig_decompose", "eig did not converge");
    return EigenSystem{solver.eigenvalues(), solver.eigenvectors().template cast<cplx>()};
  });
}

Eigen::VectorXd eigenvalues_only(const HermitianMatrix& a) {
  return a.visit([](const auto& m) -> Eigen::VectorXd {
    using Matrix = std::decay_t<decltype(m)>;
    require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eig_decompose", "eig did not converge");
    return solver.eigenvalues();
  });
}

cplx quad_form_power(const HermitianMatrix& a, const Eigen::VectorXcd& x, int m) {
  if (m < 0) throw ConfigError("quad_form_power: negative power");
  if (x.size() != a.size()) throw ConfigError("quad_form_power: dimension mismatch");
  const Eigen::MatrixXcd mat = a.to_complex();
  Eigen::VectorXcd v = x;
  for (int k = 0; k < m; ++k) v = (mat * v).eval();
  return x.dot(v);  // x^* v
}

cplx resolvent_quad_form(const HermitianMatrix& a, const Eigen::VectorXcd& x, cplx z) {
  if (z.imag() == 0.0) throw ConfigError("resolvent_quad_form: Im z must be nonzero");
  if (x.size() != a.size()) throw ConfigError("resolvent_quad_form: dimension mismatch");
  Eigen::MatrixXcd shifted = a.to_complex();
  shifted.diagonal().array() -= z;
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  const Eigen::VectorXcd sol = lu.solve(x);
  const cplx value = x.dot(sol);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw NumericalError("resolvent_quad_form", "shifted solve broke down");
  return value;
}

double orthonormality_defect(const EigenSystem& es) {
  const Eigen::Index n = es.size();
  return (es.vectors.adjoint() * es.vectors - Eigen::MatrixXcd::Identity(n, n)).norm();
}

double reconstruction_defect(const HermitianMatrix& a, const EigenSystem& es) {
  const Eigen::MatrixXcd rebuilt = es.vectors * es.lambdas.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  return (a.to_complex() - rebuilt).norm();
}

}  // namespace rmtev
