#pragma once

#include "qspread/operators.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qspread {

enum class Model { RandomIsing, ExtendedCluster };

std::string_view model_name(Model m);
Model parse_model(std::string_view name);

/// Open chain of `num_sites` spins. Disorder width W = exp(delta / 2).
struct ModelParams {
    Model model = Model::RandomIsing;
    int num_sites = 8;
    double g = 0.0;
    double delta = 0.0;

    double disorder_width() const;
    /// Throws std::invalid_argument on an inconsistent parameter set.
    void validate() const;
};

/// One sampled coupling set.
///
/// RandomIsing uses `bonds` (L-1 entries in [0, W]) and `fields` (L entries in
/// [0, 1/W]). ExtendedCluster uses `bonds`, `cluster` (L-2 entries in [0, 1/W],
/// entry k multiplies X_k Z_{k+1} X_{k+2}) and `fields` (L entries in [0, 1]).
struct DisorderRealization {
    Model model = Model::RandomIsing;
    int num_sites = 0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    /// Number of dual maps applied to the sampled realization.
    int dual_generation = 0;
    std::vector<double> bonds;
    std::vector<double> fields;
    std::vector<double> cluster;

    friend bool operator==(const DisorderRealization &, const DisorderRealization &) = default;
};

/// Array tags of the counter-based stream.
enum class ArrayTag : std::uint64_t { Bonds = 1, Fields = 2, Cluster = 3, DualBoundary = 16 };

DisorderRealization sample_realization(const ModelParams &params, std::uint64_t seed, std::uint64_t index);

std::vector<PauliTerm> hamiltonian_terms(const ModelParams &params, const DisorderRealization &r);
HermitianOperator build_hamiltonian(const ModelParams &params, const DisorderRealization &r);

/// P = prod_i Z_i as a Pauli string and as a dense operator.
PauliString parity_string(int num_sites);
HermitianOperator parity_operator(int num_sites);

/// Kramers-Wannier dual of a RandomIsing realization, a realization of the
/// -delta ensemble: bonds'_i = fields_{i+1}, fields'_i = bonds_{i-1} for
/// i >= 1, and fields'_0 (which has no partner on an open chain) resampled
/// from [0, W] of the dual ensemble.
DisorderRealization dual_realization(const DisorderRealization &r);

/// Serialized form: {model, L, g, delta, seed, index, dual_generation, J, h, lambda}.
std::string realization_to_json(const ModelParams &params, const DisorderRealization &r);
std::pair<ModelParams, DisorderRealization> realization_from_json(std::string_view text);

} // namespace qspread
