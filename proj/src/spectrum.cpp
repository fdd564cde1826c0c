#include "qspread/spectrum.hpp"

#include "qspread/linalg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace qspread {

Spectrum::Spectrum(int num_sites, std::vector<SpectrumSector> sectors) : num_sites_(num_sites), sectors_(std::move(sectors)) {
    Eigen::Index total = 0;
    for(const auto &s : sectors_) total += s.energies.size();
    if(total != (Eigen::Index{1} << num_sites)) throw std::invalid_argument("spectrum sectors do not cover the Hilbert space");

    order_.reserve(static_cast<std::size_t>(total));
    for(std::size_t s = 0; s < sectors_.size(); ++s)
        for(Eigen::Index k = 0; k < sectors_[s].energies.size(); ++k) order_.push_back({s, k});
    std::stable_sort(order_.begin(), order_.end(), [&](const Location &a, const Location &b) {
        return sectors_[a.sector].energies(a.column) < sectors_[b.sector].energies(b.column);
    });
    energies_.resize(total);
    for(Eigen::Index k = 0; k < total; ++k) {
        const auto &loc = order_[static_cast<std::size_t>(k)];
        energies_(k) = sectors_[loc.sector].energies(loc.column);
    }
}

Eigen::VectorXcd Spectrum::eigenvector(Eigen::Index k) const {
    const auto &loc = locate(k);
    const auto &sec = sectors_[loc.sector];
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dimension());
    for(std::size_t i = 0; i < sec.basis.size(); ++i) v(static_cast<Eigen::Index>(sec.basis[i])) = sec.vectors(static_cast<Eigen::Index>(i), loc.column);
    return v;
}

Eigen::MatrixXcd Spectrum::vectors() const {
    Eigen::MatrixXcd v(dimension(), dimension());
    for(Eigen::Index k = 0; k < dimension(); ++k) v.col(k) = eigenvector(k);
    return v;
}

namespace {

SpectrumSector solve_block(const Eigen::MatrixXcd &h, std::vector<BasisIndex> basis, bool real) {
    const auto n = static_cast<Eigen::Index>(basis.size());
    SpectrumSector sec;
    if(real) {
        Eigen::MatrixXd block(n, n);
        for(Eigen::Index c = 0; c < n; ++c)
            for(Eigen::Index r = 0; r < n; ++r)
                block(r, c) = h(static_cast<Eigen::Index>(basis[static_cast<std::size_t>(r)]), static_cast<Eigen::Index>(basis[static_cast<std::size_t>(c)])).real();
        sec.energies = symmetric_eigensystem(block);
        sec.vectors = block.cast<Complex>();
    } else {
        Eigen::MatrixXcd block(n, n);
        for(Eigen::Index c = 0; c < n; ++c)
            for(Eigen::Index r = 0; r < n; ++r)
                block(r, c) = h(static_cast<Eigen::Index>(basis[static_cast<std::size_t>(r)]), static_cast<Eigen::Index>(basis[static_cast<std::size_t>(c)]));
        sec.energies = hermitian_eigensystem(block);
        sec.vectors = std::move(block);
    }
    sec.basis = std::move(basis);
    return sec;
}

} // namespace

Spectrum diagonalize(const HermitianOperator &h, std::string_view provenance) {
    const bool real = h.is_real();
    const auto dim = static_cast<BasisIndex>(h.dimension());
    std::vector<std::vector<BasisIndex>> bases;
    if(h.conserves_parity() && dim > 1) {
        bases.resize(2);
        for(BasisIndex b = 0; b < dim; ++b) bases[std::popcount(b) & 1].push_back(b);
    } else {
        bases.emplace_back(dim);
        std::iota(bases.front().begin(), bases.front().end(), BasisIndex{0});
    }
    std::vector<SpectrumSector> sectors;
    try {
        if(!h.matrix().allFinite()) throw NumericError("non-finite Hamiltonian entries");
        for(auto &basis : bases) {
            sectors.push_back(solve_block(h.matrix(), std::move(basis), real));
            if(!sectors.back().energies.allFinite() || !sectors.back().vectors.allFinite()) throw NumericError("eigensolver returned non-finite values");
        }
    } catch(const NumericError &e) {
        throw NumericError(std::string(e.what()) + (provenance.empty() ? "" : " [" + std::string(provenance) + "]"));
    }
    return {h.num_sites(), std::move(sectors)};
}

} // namespace qspread
