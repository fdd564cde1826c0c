#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace qspread {

class NumericError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Thin LAPACK wrappers (divide-and-conquer drivers). Eigenvalues ascending.

/// Overwrites `a` with orthonormal eigenvectors.
Eigen::VectorXd symmetric_eigensystem(Eigen::MatrixXd &a);
Eigen::VectorXd hermitian_eigensystem(Eigen::MatrixXcd &a);

/// Destroys `a`.
Eigen::VectorXd hermitian_eigenvalues(Eigen::MatrixXcd &a);

} // namespace qspread
