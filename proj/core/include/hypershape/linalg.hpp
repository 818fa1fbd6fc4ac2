#pragma once

#include <Eigen/Dense>

namespace hypershape {

struct SymmetricEigen {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns aligned with values
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations,
/// iterated until the off-diagonal Frobenius norm falls below
/// tol * max(1, ||A||_F). Intended for the small (dim <= 10) matrices this
/// library works with.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double tol = 1e-12, int max_sweeps = 64);

/// Symmetric inverse square root A^{-1/2} of a positive definite matrix.
/// Throws singular_error when an eigenvalue is not safely positive.
Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& a, double rel_floor = 1e-13);

} // namespace hypershape
