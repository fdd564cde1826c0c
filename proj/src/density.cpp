#include "qspread/density.hpp"

#include "qspread/linalg.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

namespace qspread {

namespace {

std::vector<BasisIndex> gather_table(int num_sites, SiteMask mask) {
    const BasisIndex dim = BasisIndex{1} << num_sites;
    std::vector<BasisIndex> table(dim);
    for(BasisIndex b = 0; b < dim; ++b) table[b] = gather_bits(b, mask);
    return table;
}

void check_keep(int num_sites, SiteMask keep) {
    if((keep & ~all_sites(num_sites)) != 0) throw std::invalid_argument("keep-set contains sites outside the chain");
}

} // namespace

DensityMatrix::DensityMatrix(int num_sites, Eigen::MatrixXcd matrix) : num_sites_(num_sites), matrix_(std::move(matrix)) {
    if(num_sites < 0 || num_sites > 24) throw std::invalid_argument("density matrix site count out of range");
    const Eigen::Index dim = Eigen::Index{1} << num_sites;
    if(matrix_.rows() != dim || matrix_.cols() != dim) throw std::invalid_argument("density matrix dimension must be 2^num_sites");
    if(std::abs(matrix_.trace() - Complex{1.0}) > 1e-10) throw std::invalid_argument("density matrix trace differs from 1");
}

DensityMatrix DensityMatrix::pure(int num_sites, const Eigen::VectorXcd &psi) { return {num_sites, psi * psi.adjoint()}; }

DensityMatrix partial_trace(const Eigen::VectorXcd &psi, int num_sites, SiteMask keep) {
    check_keep(num_sites, keep);
    if(psi.size() != (Eigen::Index{1} << num_sites)) throw std::invalid_argument("state size must be 2^num_sites");
    const SiteMask traced = all_sites(num_sites) & ~keep;
    const int kept_sites  = std::popcount(keep);
    const auto rows       = Eigen::Index{1} << kept_sites;
    const auto cols       = Eigen::Index{1} << (num_sites - kept_sites);
    // Schmidt matrix: psi[(k, t)] -> coeff(k, t); rho_keep = C C^dagger.
    Eigen::MatrixXcd coeff(rows, cols);
    const auto row_of = gather_table(num_sites, keep);
    const auto col_of = gather_table(num_sites, traced);
    for(Eigen::Index b = 0; b < psi.size(); ++b) coeff(static_cast<Eigen::Index>(row_of[b]), static_cast<Eigen::Index>(col_of[b])) = psi(b);
    Eigen::MatrixXcd rho = coeff * coeff.adjoint();
    return {kept_sites, std::move(rho)};
}

DensityMatrix partial_trace(const DensityMatrix &rho, SiteMask keep) {
    const int num_sites = rho.num_sites();
    check_keep(num_sites, keep);
    const SiteMask traced = all_sites(num_sites) & ~keep;
    const int kept_sites  = std::popcount(keep);
    const auto row_of     = gather_table(num_sites, keep);
    const auto col_of     = gather_table(num_sites, traced);
    const auto kdim       = Eigen::Index{1} << kept_sites;
    Eigen::MatrixXcd out  = Eigen::MatrixXcd::Zero(kdim, kdim);
    const auto &m         = rho.matrix();
    for(Eigen::Index c = 0; c < m.cols(); ++c)
        for(Eigen::Index r = 0; r < m.rows(); ++r)
            if(col_of[r] == col_of[c]) out(static_cast<Eigen::Index>(row_of[r]), static_cast<Eigen::Index>(row_of[c])) += m(r, c);
    return {kept_sites, std::move(out)};
}

double entropy_bits(std::span<const double> probabilities) {
    double s = 0.0;
    for(double p : probabilities) {
        if(p < -kNegativityTolerance) throw NumericError("negative eigenvalue " + std::to_string(p) + " in density matrix");
        if(p < kEntropyFloor) continue;
        s -= p * std::log2(p);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix &rho) {
    Eigen::MatrixXcd work = rho.matrix();
    const Eigen::VectorXd eig = hermitian_eigenvalues(work);
    return entropy_bits(std::span(eig.data(), static_cast<std::size_t>(eig.size())));
}

} // namespace qspread
