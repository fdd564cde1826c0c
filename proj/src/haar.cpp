#include "qspread/random.hpp"
#include "qspread/scrambling.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace qspread {

namespace {
constexpr std::uint64_t kHaarTag = 0x4841415200;
}

Eigen::MatrixXcd haar_unitary(int num_sites, std::uint64_t seed, std::uint64_t sample) {
    if(num_sites < 1 || num_sites > 13) throw std::invalid_argument("Haar sampling supports 1..13 sites");
    const Eigen::Index dim = Eigen::Index{1} << num_sites;
    const StreamKey key{seed, sample, kHaarTag + static_cast<std::uint64_t>(num_sites)};
    Eigen::MatrixXcd g(dim, dim);
    const double scale = std::sqrt(0.5);
    for(Eigen::Index c = 0; c < dim; ++c)
        for(Eigen::Index r = 0; r < dim; ++r) {
            const auto k = 2 * static_cast<std::uint64_t>(c * dim + r);
            g(r, c) = scale * Complex{counter_normal(key, k), counter_normal(key, k + 1)};
        }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    const auto &packed = qr.matrixQR();
    for(Eigen::Index c = 0; c < dim; ++c) {
        const Complex d = packed(c, c);
        const double mag = std::abs(d);
        if(mag > 0.0) q.col(c) *= d / mag;
    }
    return q;
}

HaarReference haar_reference(int num_sites, const Partition &part, int n_samples, std::uint64_t seed) {
    if(n_samples < 2) throw std::invalid_argument("Haar reference needs at least two samples");
    if(part.num_sites != num_sites) throw std::invalid_argument("partition does not match L");
    std::vector<double> values;
    for(int k = 0; k < n_samples; ++k) {
        const ChannelState cs(num_sites, haar_unitary(num_sites, seed, static_cast<std::uint64_t>(k)), false);
        values.push_back(tmi(cs, part).i3);
    }
    double mean = 0.0;
    for(double v : values) mean += v;
    mean /= n_samples;
    double var = 0.0;
    for(double v : values) var += (v - mean) * (v - mean);
    var /= (n_samples - 1);
    return {num_sites, part.in_a, part.out_c, mean, std::sqrt(var / n_samples), n_samples, seed};
}

HaarCache::HaarCache(std::string path) : path_(std::move(path)) { load(); }

std::string HaarCache::key(const Partition &part) {
    return std::to_string(part.num_sites) + ":" + std::to_string(part.in_a) + ":" + std::to_string(part.out_c);
}

void HaarCache::load() {
    if(path_.empty() || !std::filesystem::exists(path_)) return;
    std::ifstream in(path_);
    const auto j = nlohmann::json::parse(in);
    for(const auto &[k, v] : j.items()) {
        HaarReference h;
        if(std::sscanf(k.c_str(), "%d:%d:%d", &h.num_sites, &h.in_a, &h.out_c) != 3) throw std::runtime_error("bad Haar cache key " + k);
        h.mean = v.at("mean").get<double>();
        h.standard_error = v.at("stderr").get<double>();
        h.n_samples = v.at("n_samples").get<int>();
        h.seed = v.at("seed").get<std::uint64_t>();
        entries_.push_back(h);
    }
}

void HaarCache::save() const {
    if(path_.empty()) return;
    nlohmann::json j = nlohmann::json::object();
    for(const auto &h : entries_) {
        const std::string k = std::to_string(h.num_sites) + ":" + std::to_string(h.in_a) + ":" + std::to_string(h.out_c);
        j[k] = {{"mean", h.mean}, {"stderr", h.standard_error}, {"n_samples", h.n_samples}, {"seed", h.seed}};
    }
    const std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp);
        if(!out) throw std::runtime_error("cannot write Haar cache " + path_);
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path_);
}

HaarReference HaarCache::get(const Partition &part, int n_samples, std::uint64_t seed) {
    const std::lock_guard lock(mutex_);
    for(auto &h : entries_) {
        if(h.num_sites != part.num_sites || h.in_a != part.in_a || h.out_c != part.out_c) continue;
        if(h.n_samples == n_samples && h.seed == seed) return h;
        h = haar_reference(part.num_sites, part, n_samples, seed);
        save();
        return h;
    }
    entries_.push_back(haar_reference(part.num_sites, part, n_samples, seed));
    save();
    return entries_.back();
}

} // namespace qspread
