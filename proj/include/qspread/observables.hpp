#pragma once

#include "qspread/spectrum.hpp"

#include <span>
#include <vector>

namespace qspread {

/// Contiguous range of eigenstate indices (ascending-energy order).
struct StateWindow {
    Eigen::Index first = 0;
    Eigen::Index count = 0;
};

StateWindow all_states(const Spectrum &s);

/// `size` states centred on dimension/2 (clipped to the spectrum).
constexpr Eigen::Index kMidSpectrumStates = 16;
StateWindow mid_spectrum_window(const Spectrum &s, Eigen::Index size = kMidSpectrumStates);

struct EigenstateObservable {
    std::vector<double> values;
    double mean = 0.0;
    StateWindow window;
};

/// <psi| p |psi>.
Complex expectation(const PauliString &p, const Eigen::VectorXcd &psi);

/// Entropy (bits) of the first `cut` sites for each eigenstate in the window.
EigenstateObservable eigenstate_half_chain_ee(const Spectrum &s, int cut, StateWindow window);
EigenstateObservable eigenstate_half_chain_ee(const Spectrum &s, int cut);

/// Per state (1/(L-r)) sum_i |<X_i X_{i+r}>|; the mean is G_r.
EigenstateObservable spin_glass_correlator(const Spectrum &s, StateWindow window, int distance);

struct StringOrderResult {
    std::vector<double> values; ///< O_st per state
    double phi = 0.0;           ///< mean of O_st^2
    StateWindow window;
};

StringOrderResult string_order(const Spectrum &s, StateWindow window, int first, int last);

/// Mean of min(g_n, g_{n+1}) / max(g_n, g_{n+1}); gaps below 1e-12 give 0.
double gap_ratio(std::span<const double> energies);

/// Average of gap_ratio over the symmetry sectors that hold at least three levels.
double sector_gap_ratio(const Spectrum &s);

} // namespace qspread
