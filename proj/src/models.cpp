#include "qspread/models.hpp"

#include "qspread/random.hpp"

#include "json.hpp"

#include <cmath>
#include <stdexcept>

namespace qspread {

using nlohmann::json;

std::string_view model_name(Model m) { return m == Model::RandomIsing ? "ising" : "cluster"; }

Model parse_model(std::string_view name) {
    if(name == "ising" || name == "RandomIsing") return Model::RandomIsing;
    if(name == "cluster" || name == "ExtendedCluster") return Model::ExtendedCluster;
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

double ModelParams::disorder_width() const { return std::exp(delta / 2.0); }

void ModelParams::validate() const {
    if(num_sites < 2 || num_sites > 14) throw std::invalid_argument("L must be in 2..14");
    if(model == Model::ExtendedCluster && num_sites < 3) throw std::invalid_argument("cluster chain needs L >= 3");
    if(!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("g must be finite and non-negative");
    if(!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
}

namespace {

std::vector<double> sample_array(const StreamKey &key, int count, double width) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for(int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = width * counter_uniform(key, static_cast<std::uint64_t>(k));
    return out;
}

StreamKey key_for(std::uint64_t seed, std::uint64_t index, ArrayTag tag, int generation = 0) {
    return {seed, index, static_cast<std::uint64_t>(tag) + static_cast<std::uint64_t>(generation)};
}

void check_matches(const ModelParams &params, const DisorderRealization &r) {
    const auto n = static_cast<std::size_t>(params.num_sites);
    bool ok = r.model == params.model && r.num_sites == params.num_sites && r.bonds.size() == n - 1 && r.fields.size() == n;
    if(params.model == Model::ExtendedCluster) ok = ok && r.cluster.size() == n - 2;
    if(!ok) throw std::invalid_argument("realization does not match model parameters");
}

} // namespace

DisorderRealization sample_realization(const ModelParams &params, std::uint64_t seed, std::uint64_t index) {
    params.validate();
    const double w = params.disorder_width();
    const int n = params.num_sites;
    DisorderRealization r;
    r.model = params.model;
    r.num_sites = n;
    r.delta = params.delta;
    r.seed = seed;
    r.index = index;
    r.bonds = sample_array(key_for(seed, index, ArrayTag::Bonds), n - 1, w);
    if(params.model == Model::RandomIsing) {
        r.fields = sample_array(key_for(seed, index, ArrayTag::Fields), n, 1.0 / w);
    } else {
        r.cluster = sample_array(key_for(seed, index, ArrayTag::Cluster), n - 2, 1.0 / w);
        r.fields = sample_array(key_for(seed, index, ArrayTag::Fields), n, 1.0);
    }
    return r;
}

std::vector<PauliTerm> hamiltonian_terms(const ModelParams &params, const DisorderRealization &r) {
    params.validate();
    check_matches(params, r);
    const int n = params.num_sites;
    using P = PauliString;
    std::vector<PauliTerm> terms;
    for(int i = 0; i + 1 < n; ++i) terms.push_back({r.bonds[static_cast<std::size_t>(i)], P::x(i) * P::x(i + 1)});
    if(params.model == Model::ExtendedCluster)
        for(int i = 1; i + 1 < n; ++i) terms.push_back({r.cluster[static_cast<std::size_t>(i - 1)], P::x(i - 1) * P::z(i) * P::x(i + 1)});
    for(int i = 0; i < n; ++i) terms.push_back({r.fields[static_cast<std::size_t>(i)], P::z(i)});
    if(params.g != 0.0) {
        for(int i = 0; i + 2 < n; ++i) terms.push_back({params.g, P::x(i) * P::x(i + 2)});
        for(int i = 0; i + 1 < n; ++i) terms.push_back({params.g, P::z(i) * P::z(i + 1)});
    }
    return terms;
}

HermitianOperator build_hamiltonian(const ModelParams &params, const DisorderRealization &r) {
    const auto terms = hamiltonian_terms(params, r);
    return build_operator(terms, params.num_sites);
}

PauliString parity_string(int num_sites) { return {0, all_sites(num_sites)}; }

HermitianOperator parity_operator(int num_sites) {
    const PauliTerm term{1.0, parity_string(num_sites)};
    return build_operator(std::span(&term, 1), num_sites);
}

DisorderRealization dual_realization(const DisorderRealization &r) {
    if(r.model != Model::RandomIsing) throw std::invalid_argument("the dual map is defined for the Ising chain only");
    const auto n = static_cast<std::size_t>(r.num_sites);
    if(r.bonds.size() != n - 1 || r.fields.size() != n) throw std::invalid_argument("malformed Ising realization");
    DisorderRealization d = r;
    d.delta = -r.delta;
    d.dual_generation = r.dual_generation + 1;
    for(std::size_t i = 0; i + 1 < n; ++i) d.bonds[i] = r.fields[i + 1];
    for(std::size_t i = 1; i < n; ++i) d.fields[i] = r.bonds[i - 1];
    // Dual fields live on [0, W_dual^{-1}] = [0, W].
    const double w = std::exp(r.delta / 2.0);
    d.fields[0] = w * counter_uniform(key_for(r.seed, r.index, ArrayTag::DualBoundary, d.dual_generation), 0);
    return d;
}

std::string realization_to_json(const ModelParams &params, const DisorderRealization &r) {
    check_matches(params, r);
    json j;
    j["model"] = std::string(model_name(params.model));
    j["L"] = params.num_sites;
    j["g"] = params.g;
    j["delta"] = r.delta;
    j["seed"] = r.seed;
    j["index"] = r.index;
    j["dual_generation"] = r.dual_generation;
    j["J"] = r.bonds;
    j["h"] = r.fields;
    j["lambda"] = r.cluster;
    return j.dump();
}

std::pair<ModelParams, DisorderRealization> realization_from_json(std::string_view text) {
    const json j = json::parse(text);
    ModelParams p;
    p.model = parse_model(j.at("model").get<std::string>());
    p.num_sites = j.at("L").get<int>();
    p.g = j.at("g").get<double>();
    p.delta = j.at("delta").get<double>();
    DisorderRealization r;
    r.model = p.model;
    r.num_sites = p.num_sites;
    r.delta = p.delta;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.index = j.at("index").get<std::uint64_t>();
    r.dual_generation = j.value("dual_generation", 0);
    r.bonds = j.at("J").get<std::vector<double>>();
    r.fields = j.at("h").get<std::vector<double>>();
    r.cluster = j.value("lambda", std::vector<double>{});
    p.validate();
    check_matches(p, r);
    return {p, r};
}

} // namespace qspread
