#include "qspread/quench.hpp"

#include "qspread/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qspread {

std::string InitialState::tag() const {
    std::string out = basis == ProductBasis::Z ? "Z:" : "X:";
    if(std::all_of(up.begin(), up.end(), [](bool u) { return u; })) return out + "all-up";
    bool neel = true;
    for(std::size_t i = 0; i < up.size(); ++i) neel = neel && (up[i] == (i % 2 == 0));
    if(neel) return out + "neel";
    for(bool u : up) out += u ? 'u' : 'd';
    return out;
}

InitialState InitialState::parse(std::string_view tag, int num_sites) {
    if(tag.size() < 3 || tag[1] != ':' || (tag[0] != 'Z' && tag[0] != 'X')) throw std::invalid_argument("initial state tag must look like Z:all-up");
    InitialState s;
    s.basis = tag[0] == 'Z' ? ProductBasis::Z : ProductBasis::X;
    const std::string_view pattern = tag.substr(2);
    const auto n = static_cast<std::size_t>(num_sites);
    if(pattern == "all-up") {
        s.up.assign(n, true);
    } else if(pattern == "neel") {
        for(std::size_t i = 0; i < n; ++i) s.up.push_back(i % 2 == 0);
    } else {
        if(pattern.size() != n) throw std::invalid_argument("pattern length must equal L");
        for(char c : pattern) {
            if(c != 'u' && c != 'd') throw std::invalid_argument("pattern letters must be u or d");
            s.up.push_back(c == 'u');
        }
    }
    return s;
}

Eigen::VectorXcd product_state(ProductBasis basis, const std::vector<bool> &up) {
    const int n = static_cast<int>(up.size());
    if(n < 1 || n > 24) throw std::invalid_argument("product state needs 1..24 sites");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    if(basis == ProductBasis::Z) {
        BasisIndex b = 0;
        for(int i = 0; i < n; ++i)
            if(!up[static_cast<std::size_t>(i)]) b |= BasisIndex{1} << i;
        psi(static_cast<Eigen::Index>(b)) = 1.0;
        return psi;
    }
    const double amp = std::pow(2.0, -0.5 * n);
    for(Eigen::Index b = 0; b < dim; ++b) {
        int sign = 1;
        for(int i = 0; i < n; ++i)
            if(!up[static_cast<std::size_t>(i)] && ((b >> i) & 1)) sign = -sign;
        psi(b) = amp * sign;
    }
    return psi;
}

Eigen::VectorXcd product_state(const InitialState &state) { return product_state(state.basis, state.up); }

namespace {

/// Eigenbasis coefficients V_s^dagger psi0 per sector.
std::vector<Eigen::VectorXcd> project(const Spectrum &s, const Eigen::VectorXcd &psi0) {
    if(psi0.size() != s.dimension()) throw std::invalid_argument("state dimension does not match the spectrum");
    std::vector<Eigen::VectorXcd> coeffs;
    for(const auto &sec : s.sectors()) {
        Eigen::VectorXcd local(static_cast<Eigen::Index>(sec.basis.size()));
        for(std::size_t i = 0; i < sec.basis.size(); ++i) local(static_cast<Eigen::Index>(i)) = psi0(static_cast<Eigen::Index>(sec.basis[i]));
        coeffs.push_back(sec.vectors.adjoint() * local);
    }
    return coeffs;
}

Eigen::VectorXcd reconstruct(const Spectrum &s, const std::vector<Eigen::VectorXcd> &coeffs, double t) {
    Eigen::VectorXcd psi(s.dimension());
    for(std::size_t k = 0; k < s.sectors().size(); ++k) {
        const auto &sec = s.sectors()[k];
        Eigen::VectorXcd c = coeffs[k];
        for(Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -sec.energies(i) * t);
        const Eigen::VectorXcd local = sec.vectors * c;
        for(std::size_t i = 0; i < sec.basis.size(); ++i) psi(static_cast<Eigen::Index>(sec.basis[i])) = local(static_cast<Eigen::Index>(i));
    }
    return psi;
}

} // namespace

Eigen::VectorXcd evolve(const Spectrum &s, const Eigen::VectorXcd &psi0, double t) { return reconstruct(s, project(s, psi0), t); }

std::vector<double> log_time_grid(double start, double stop, int points) {
    if(!(start > 0.0) || !(stop >= start) || points < 1) throw std::invalid_argument("log grid needs 0 < start <= stop and points >= 1");
    if(points == 1) return {start};
    std::vector<double> out;
    const double a = std::log10(start), b = std::log10(stop);
    for(int k = 0; k < points; ++k) out.push_back(std::pow(10.0, a + (b - a) * k / (points - 1)));
    out.back() = stop;
    return out;
}

QuenchSeries quench_ee_series(const Spectrum &s, const Eigen::VectorXcd &psi0, const std::vector<double> &times, int cut, double time_scale,
                              std::string initial_state) {
    const int n = s.num_sites();
    if(cut < 1 || cut > n - 1) throw std::invalid_argument("cut must be in 1..L-1");
    if(!std::is_sorted(times.begin(), times.end())) throw std::invalid_argument("times must be ascending");
    QuenchSeries out;
    out.times = times;
    out.cut = cut;
    out.initial_state = std::move(initial_state);
    const auto coeffs = project(s, psi0);
    const SiteMask keep = all_sites(cut);
    for(double t : times) {
        const Eigen::VectorXcd psi = reconstruct(s, coeffs, time_scale * t);
        out.values.push_back(von_neumann_entropy(partial_trace(psi, n, keep)));
    }
    return out;
}

} // namespace qspread
