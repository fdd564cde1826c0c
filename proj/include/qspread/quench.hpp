#pragma once

#include "qspread/spectrum.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qspread {

enum class ProductBasis { Z, X };

/// Product state tagged like "Z:all-up", "X:all-up", "Z:neel" or an explicit
/// pattern "Z:udud..." (u = up, d = down; site 0 first).
struct InitialState {
    ProductBasis basis = ProductBasis::Z;
    std::vector<bool> up;

    std::string tag() const;
    static InitialState parse(std::string_view tag, int num_sites);
};

/// Z: computational basis vector (up = bit 0). X: per-site (|up> +- |down>)/sqrt2.
Eigen::VectorXcd product_state(ProductBasis basis, const std::vector<bool> &up);
Eigen::VectorXcd product_state(const InitialState &state);

/// psi(t) = V exp(-i Lambda t) V^dagger psi0, with t in the Hamiltonian's units.
Eigen::VectorXcd evolve(const Spectrum &s, const Eigen::VectorXcd &psi0, double t);

/// Logarithmic grid of `points` times from `start` to `stop` inclusive.
std::vector<double> log_time_grid(double start, double stop, int points);

struct QuenchSeries {
    std::vector<double> times;  ///< as requested (before time_scale)
    std::vector<double> values; ///< EE(t) in bits
    std::string initial_state;
    int cut = 0;
};

/// Half-chain EE of the first `cut` sites along psi(time_scale * t) for each
/// requested t. `times` must be ascending.
QuenchSeries quench_ee_series(const Spectrum &s, const Eigen::VectorXcd &psi0, const std::vector<double> &times, int cut,
                              double time_scale = 1.0, std::string initial_state = {});

} // namespace qspread
