#pragma once

#include <Eigen/Dense>

#include "rmtev/model.hpp"

namespace rmtev {

// Spectral decomposition A = U diag(lambdas) U^*, eigenvalues ascending,
// columns of U orthonormal.
struct EigenSystem {
  Eigen::VectorXd lambdas;
  Eigen::MatrixXcd vectors;

  Eigen::Index size() const { return lambdas.size(); }
};

EigenSystem eig_decompose(const HermitianMatrix& a);

// Ascending eigenvalues without vectors; for eigenvalue-only statistics.
Eigen::VectorXd eigenvalues_only(const HermitianMatrix& a);

// x^* A^m x by repeated matrix-vector products. Independent of any
// eigendecomposition; serves as the oracle for weighted moments.
cplx quad_form_power(const HermitianMatrix& a, const Eigen::VectorXcd& x, int m);

// x^* (A - zI)^{-1} x by a direct shifted solve.
cplx resolvent_quad_form(const HermitianMatrix& a, const Eigen::VectorXcd& x, cplx z);

// Residuals used to certify an EigenSystem.
double orthonormality_defect(const EigenSystem& es);             // ||U^*U - I||_F
double reconstruction_defect(const HermitianMatrix& a, const EigenSystem& es);  // ||A - U L U^*||_F

}  // namespace rmtev
