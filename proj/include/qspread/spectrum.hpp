#pragma once

#include "qspread/operators.hpp"

#include <Eigen/Dense>
#include <string_view>
#include <vector>

namespace qspread {

/// Eigenpairs restricted to one invariant subspace spanned by computational
/// basis states.
struct SpectrumSector {
    /// Basis indices of the subspace, ascending.
    std::vector<BasisIndex> basis;
    /// Ascending.
    Eigen::VectorXd energies;
    /// Column k is the eigenvector of energies(k) in the `basis` coordinates.
    Eigen::MatrixXcd vectors;
};

/// Full eigendecomposition of one Hamiltonian. When the Hamiltonian conserves
/// sigma^z parity the eigenvectors are stored per parity sector (even first)
/// and have definite parity.
class Spectrum {
  public:
    Spectrum(int num_sites, std::vector<SpectrumSector> sectors);

    int num_sites() const { return num_sites_; }
    Eigen::Index dimension() const { return energies_.size(); }

    /// All eigenvalues, ascending.
    const Eigen::VectorXd &energies() const { return energies_; }
    const std::vector<SpectrumSector> &sectors() const { return sectors_; }

    /// Dense eigenvector of energies()(k).
    Eigen::VectorXcd eigenvector(Eigen::Index k) const;
    /// Dense unitary V with H V = V diag(energies()).
    Eigen::MatrixXcd vectors() const;

    struct Location {
        std::size_t sector;
        Eigen::Index column;
    };
    Location locate(Eigen::Index k) const { return order_[static_cast<std::size_t>(k)]; }

  private:
    int num_sites_;
    std::vector<SpectrumSector> sectors_;
    Eigen::VectorXd energies_;
    std::vector<Location> order_;
};

/// Throws NumericError (with `provenance` in the message) if LAPACK fails.
Spectrum diagonalize(const HermitianOperator &h, std::string_view provenance = {});

} // namespace qspread
