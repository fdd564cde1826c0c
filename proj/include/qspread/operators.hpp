#pragma once

#include "qspread/pauli.hpp"

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace qspread {

struct PauliTerm {
    double coefficient;
    PauliString op;
};

struct ComplexPauliTerm {
    Complex coefficient;
    PauliString op;
};

/// Dense matrix of sum_k c_k P_k in the global basis convention. No symmetry
/// requirement; used for non-Hermitian operators such as ladder operators.
Eigen::MatrixXcd pauli_matrix(std::span<const ComplexPauliTerm> terms, int num_sites);
Eigen::MatrixXcd pauli_matrix(const PauliString &p, int num_sites);

/// Dense Hermitian operator on num_sites spins, dimension 2^num_sites.
class HermitianOperator {
  public:
    HermitianOperator(int num_sites, Eigen::MatrixXcd matrix);

    int num_sites() const { return num_sites_; }
    Eigen::Index dimension() const { return matrix_.rows(); }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }

    /// True when every entry has zero imaginary part.
    bool is_real() const;
    /// True when no entry couples basis states of different sigma^z parity.
    bool conserves_parity() const;

  private:
    int num_sites_;
    Eigen::MatrixXcd matrix_;
};

/// Throws std::invalid_argument when a term has a non-Hermitian phase, a mask
/// outside the chain, or a non-finite coefficient.
HermitianOperator build_operator(std::span<const PauliTerm> terms, int num_sites);

/// Max-norm of A - B.
double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

} // namespace qspread
