#include "qspread/observables.hpp"

#include "qspread/algebra.hpp"
#include "qspread/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qspread {

StateWindow all_states(const Spectrum &s) { return {0, s.dimension()}; }

StateWindow mid_spectrum_window(const Spectrum &s, Eigen::Index size) {
    const Eigen::Index dim = s.dimension();
    if(size >= dim) return {0, dim};
    return {dim / 2 - size / 2, size};
}

namespace {

void check_window(const Spectrum &s, StateWindow w) {
    if(w.first < 0 || w.count < 1 || w.first + w.count > s.dimension()) throw std::invalid_argument("state window outside the spectrum");
}

double mean_of(const std::vector<double> &v) {
    double sum = 0.0;
    for(double x : v) sum += x;
    return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

} // namespace

Complex expectation(const PauliString &p, const Eigen::VectorXcd &psi) {
    Complex acc{};
    for(Eigen::Index b = 0; b < psi.size(); ++b) {
        const auto act = pauli_apply(p, static_cast<BasisIndex>(b));
        acc += std::conj(psi(static_cast<Eigen::Index>(act.state))) * act.phase() * psi(b);
    }
    return acc;
}

EigenstateObservable eigenstate_half_chain_ee(const Spectrum &s, int cut, StateWindow window) {
    const int n = s.num_sites();
    if(cut < 1 || cut > n - 1) throw std::invalid_argument("cut must be in 1..L-1");
    check_window(s, window);
    EigenstateObservable out;
    out.window = window;
    out.values.reserve(static_cast<std::size_t>(window.count));
    const auto rows = Eigen::Index{1} << cut;
    const auto cols = Eigen::Index{1} << (n - cut);
    for(Eigen::Index k = window.first; k < window.first + window.count; ++k) {
        // First `cut` sites are the low bits, so the column-major reshape is the Schmidt matrix.
        const Eigen::VectorXcd psi = s.eigenvector(k);
        const Eigen::Map<const Eigen::MatrixXcd> schmidt(psi.data(), rows, cols);
        const Eigen::VectorXd sv = schmidt.jacobiSvd().singularValues();
        std::vector<double> p(static_cast<std::size_t>(sv.size()));
        for(Eigen::Index i = 0; i < sv.size(); ++i) p[static_cast<std::size_t>(i)] = sv(i) * sv(i);
        out.values.push_back(entropy_bits(p));
    }
    out.mean = mean_of(out.values);
    return out;
}

EigenstateObservable eigenstate_half_chain_ee(const Spectrum &s, int cut) { return eigenstate_half_chain_ee(s, cut, all_states(s)); }

EigenstateObservable spin_glass_correlator(const Spectrum &s, StateWindow window, int distance) {
    const int n = s.num_sites();
    if(distance < 1 || distance > n - 1) throw std::invalid_argument("distance must be in 1..L-1");
    check_window(s, window);
    std::vector<PauliString> pairs;
    for(int i = 0; i + distance < n; ++i) pairs.push_back(PauliString::x(i) * PauliString::x(i + distance));
    EigenstateObservable out;
    out.window = window;
    for(Eigen::Index k = window.first; k < window.first + window.count; ++k) {
        const Eigen::VectorXcd psi = s.eigenvector(k);
        double sum = 0.0;
        for(const auto &p : pairs) sum += std::abs(expectation(p, psi).real());
        out.values.push_back(sum / static_cast<double>(pairs.size()));
    }
    out.mean = mean_of(out.values);
    return out;
}

StringOrderResult string_order(const Spectrum &s, StateWindow window, int first, int last) {
    if(first < 0 || last >= s.num_sites()) throw std::invalid_argument("string endpoints outside the chain");
    const PauliString op = cluster_string_operator(first, last);
    check_window(s, window);
    StringOrderResult out;
    out.window = window;
    double sq = 0.0;
    for(Eigen::Index k = window.first; k < window.first + window.count; ++k) {
        const double o = expectation(op, s.eigenvector(k)).real();
        out.values.push_back(o);
        sq += o * o;
    }
    out.phi = sq / static_cast<double>(out.values.size());
    return out;
}

double gap_ratio(std::span<const double> energies) {
    if(energies.size() < 3) throw std::invalid_argument("gap ratio needs at least three levels");
    double sum = 0.0;
    for(std::size_t n = 0; n + 2 < energies.size(); ++n) {
        const double g0 = energies[n + 1] - energies[n];
        const double g1 = energies[n + 2] - energies[n + 1];
        if(g0 < 1e-12 || g1 < 1e-12) continue;
        sum += std::min(g0, g1) / std::max(g0, g1);
    }
    return sum / static_cast<double>(energies.size() - 2);
}

double sector_gap_ratio(const Spectrum &s) {
    double sum = 0.0;
    int used = 0;
    for(const auto &sec : s.sectors()) {
        if(sec.energies.size() < 3) continue;
        sum += gap_ratio(std::span(sec.energies.data(), static_cast<std::size_t>(sec.energies.size())));
        ++used;
    }
    if(used == 0) throw std::invalid_argument("no sector with three levels");
    return sum / used;
}

} // namespace qspread
