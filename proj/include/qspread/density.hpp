#pragma once

#include "qspread/pauli.hpp"

#include <Eigen/Dense>
#include <span>

namespace qspread {

/// Positive semidefinite, unit-trace matrix on num_sites spins.
class DensityMatrix {
  public:
    /// Validates shape and trace (1 within 1e-10); positivity is checked where
    /// the spectrum is computed anyway.
    DensityMatrix(int num_sites, Eigen::MatrixXcd matrix);

    static DensityMatrix pure(int num_sites, const Eigen::VectorXcd &psi);

    int num_sites() const { return num_sites_; }
    Eigen::Index dimension() const { return matrix_.rows(); }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }
    Complex trace() const { return matrix_.trace(); }

  private:
    int num_sites_;
    Eigen::MatrixXcd matrix_;
};

/// Reduced state on the sites in `keep`; kept sites keep their relative order
/// in the reduced basis index. An empty keep-set gives the 1x1 matrix [1].
DensityMatrix partial_trace(const Eigen::VectorXcd &psi, int num_sites, SiteMask keep);
DensityMatrix partial_trace(const DensityMatrix &rho, SiteMask keep);

/// Eigenvalues below this are treated as exact zeros.
constexpr double kEntropyFloor = 1e-14;
/// More negative eigenvalues mean the input was not a density matrix.
constexpr double kNegativityTolerance = 1e-8;

/// -sum p log2 p over a probability spectrum, with the floor/negativity
/// conventions above. Throws NumericError on a significantly negative entry.
double entropy_bits(std::span<const double> probabilities);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix &rho);

} // namespace qspread
