#include "qspread/operators.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qspread {

namespace {

void check_sites(int num_sites) {
    if(num_sites < 1 || num_sites > 14) throw std::invalid_argument("dense operators support 1..14 sites, got " + std::to_string(num_sites));
}

void accumulate(Eigen::MatrixXcd &m, Complex c, const PauliString &p) {
    const auto dim = static_cast<BasisIndex>(m.rows());
    for(BasisIndex col = 0; col < dim; ++col) {
        const auto act = pauli_apply(p, col);
        m(static_cast<Eigen::Index>(act.state), static_cast<Eigen::Index>(col)) += c * act.phase();
    }
}

} // namespace

Eigen::MatrixXcd pauli_matrix(std::span<const ComplexPauliTerm> terms, int num_sites) {
    check_sites(num_sites);
    const Eigen::Index dim = Eigen::Index{1} << num_sites;
    Eigen::MatrixXcd m     = Eigen::MatrixXcd::Zero(dim, dim);
    for(const auto &t : terms) {
        if(!t.op.fits(num_sites)) throw std::invalid_argument("Pauli term " + t.op.str(kMaxSites) + " exceeds " + std::to_string(num_sites) + " sites");
        accumulate(m, t.coefficient, t.op);
    }
    return m;
}

Eigen::MatrixXcd pauli_matrix(const PauliString &p, int num_sites) {
    const ComplexPauliTerm term{1.0, p};
    return pauli_matrix(std::span(&term, 1), num_sites);
}

HermitianOperator::HermitianOperator(int num_sites, Eigen::MatrixXcd matrix) : num_sites_(num_sites), matrix_(std::move(matrix)) {
    check_sites(num_sites);
    const Eigen::Index dim = Eigen::Index{1} << num_sites;
    if(matrix_.rows() != dim || matrix_.cols() != dim) throw std::invalid_argument("operator dimension must be 2^num_sites");
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    if((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw std::invalid_argument("operator is not Hermitian");
}

bool HermitianOperator::is_real() const { return matrix_.imag().cwiseAbs().maxCoeff() == 0.0; }

bool HermitianOperator::conserves_parity() const {
    const Eigen::Index dim = dimension();
    for(Eigen::Index c = 0; c < dim; ++c)
        for(Eigen::Index r = 0; r < dim; ++r)
            if(((std::popcount(static_cast<BasisIndex>(r)) ^ std::popcount(static_cast<BasisIndex>(c))) & 1) && matrix_(r, c) != Complex{})
                return false;
    return true;
}

HermitianOperator build_operator(std::span<const PauliTerm> terms, int num_sites) {
    check_sites(num_sites);
    std::vector<ComplexPauliTerm> complex_terms;
    complex_terms.reserve(terms.size());
    for(const auto &t : terms) {
        if(!std::isfinite(t.coefficient)) throw std::invalid_argument("non-finite coefficient");
        if(!t.op.is_hermitian()) throw std::invalid_argument("term " + t.op.str(num_sites) + " is not self-adjoint");
        complex_terms.push_back({t.coefficient, t.op});
    }
    return {num_sites, pauli_matrix(complex_terms, num_sites)};
}

double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace qspread
