#include "oracles.hpp"
#include "qspread/models.hpp"
#include "qspread/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace qspread;

namespace {

void expect_in_range(const std::vector<double> &v, double hi) {
    for(double x : v) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, hi);
    }
}

/// Kolmogorov-Smirnov distance of `v` from uniform [0, hi].
double ks_uniform(std::vector<double> v, double hi) {
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for(std::size_t k = 0; k < v.size(); ++k) {
        const double f = v[k] / hi;
        d = std::max({d, std::abs(f - static_cast<double>(k) / n), std::abs(static_cast<double>(k + 1) / n - f)});
    }
    return d;
}

oracle::Mat ising_oracle(const DisorderRealization &r, double g) {
    const int n = r.num_sites;
    const Eigen::Index dim = Eigen::Index{1} << n;
    oracle::Mat h = oracle::Mat::Zero(dim, dim);
    for(int i = 0; i + 1 < n; ++i) h += r.bonds[static_cast<std::size_t>(i)] * oracle::site_op('X', i, n) * oracle::site_op('X', i + 1, n);
    for(int i = 0; i < n; ++i) h += r.fields[static_cast<std::size_t>(i)] * oracle::site_op('Z', i, n);
    if(r.model == Model::ExtendedCluster)
        for(int i = 1; i + 1 < n; ++i)
            h += r.cluster[static_cast<std::size_t>(i - 1)] * oracle::site_op('X', i - 1, n) * oracle::site_op('Z', i, n) * oracle::site_op('X', i + 1, n);
    for(int i = 0; i + 2 < n; ++i) h += g * oracle::site_op('X', i, n) * oracle::site_op('X', i + 2, n);
    for(int i = 0; i + 1 < n; ++i) h += g * oracle::site_op('Z', i, n) * oracle::site_op('Z', i + 1, n);
    return h;
}

} // namespace

TEST(Random, CounterStreamIsDeterministicAndInRange) {
    const StreamKey key{42, 7, 1};
    for(std::uint64_t k = 0; k < 1000; ++k) {
        const double u = counter_uniform(key, k);
        EXPECT_EQ(u, counter_uniform(key, k));
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
    EXPECT_NE(counter_uniform({42, 7, 1}, 0), counter_uniform({42, 8, 1}, 0));
    EXPECT_NE(counter_uniform({42, 7, 1}, 0), counter_uniform({42, 7, 2}, 0));
}

TEST(Random, NormalsHaveUnitVariance) {
    const StreamKey key{1, 2, 3};
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for(int k = 0; k < n; ++k) {
        const double x = counter_normal(key, static_cast<std::uint64_t>(k));
        sum += x;
        sq += x * x;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n, 1.0, 0.01);
}

TEST(ModelParams, DisorderWidthFromDelta) {
    EXPECT_DOUBLE_EQ((ModelParams{Model::RandomIsing, 4, 0.0, 0.0}).disorder_width(), 1.0);
    EXPECT_NEAR((ModelParams{Model::RandomIsing, 4, 0.0, 2.0}).disorder_width(), 2.718282, 1e-6);
}

TEST(ModelParams, Validation) {
    EXPECT_THROW((ModelParams{Model::ExtendedCluster, 2, 0.0, 0.0}).validate(), std::invalid_argument);
    EXPECT_THROW((ModelParams{Model::RandomIsing, 4, -0.1, 0.0}).validate(), std::invalid_argument);
    EXPECT_THROW((ModelParams{Model::RandomIsing, 4, 0.0, NAN}).validate(), std::invalid_argument);
    EXPECT_THROW((ModelParams{Model::RandomIsing, 1, 0.0, 0.0}).validate(), std::invalid_argument);
    EXPECT_NO_THROW((ModelParams{Model::ExtendedCluster, 3, 0.2, -4.0}).validate());
}

TEST(SampleRealization, DeltaZeroGivesUnitIntervals) {
    const ModelParams p{Model::RandomIsing, 10, 0.0, 0.0};
    for(std::uint64_t k = 0; k < 50; ++k) {
        const auto r = sample_realization(p, 3, k);
        ASSERT_EQ(r.bonds.size(), 9u);
        ASSERT_EQ(r.fields.size(), 10u);
        expect_in_range(r.bonds, 1.0);
        expect_in_range(r.fields, 1.0);
    }
}

TEST(SampleRealization, DeltaTwoScalesIntervals) {
    const ModelParams p{Model::RandomIsing, 10, 0.0, 2.0};
    double max_j = 0.0, max_h = 0.0;
    for(std::uint64_t k = 0; k < 200; ++k) {
        const auto r = sample_realization(p, 3, k);
        expect_in_range(r.bonds, 2.718282);
        expect_in_range(r.fields, 0.367879);
        max_j = std::max(max_j, *std::max_element(r.bonds.begin(), r.bonds.end()));
        max_h = std::max(max_h, *std::max_element(r.fields.begin(), r.fields.end()));
    }
    EXPECT_GT(max_j, 2.6);
    EXPECT_GT(max_h, 0.35);
}

TEST(SampleRealization, ClusterIntervals) {
    const ModelParams p{Model::ExtendedCluster, 8, 0.2, 3.0};
    const double w = std::exp(1.5);
    for(std::uint64_t k = 0; k < 50; ++k) {
        const auto r = sample_realization(p, 5, k);
        ASSERT_EQ(r.cluster.size(), 6u);
        expect_in_range(r.bonds, w);
        expect_in_range(r.cluster, 1.0 / w);
        expect_in_range(r.fields, 1.0);
    }
}

TEST(SampleRealization, DeterministicInSeedAndIndex) {
    const ModelParams p{Model::ExtendedCluster, 8, 0.2, -1.0};
    EXPECT_EQ(sample_realization(p, 99, 4), sample_realization(p, 99, 4));
    EXPECT_NE(sample_realization(p, 99, 4).bonds, sample_realization(p, 99, 5).bonds);
    EXPECT_NE(sample_realization(p, 99, 4).bonds, sample_realization(p, 98, 4).bonds);
}

TEST(SampleRealization, UniformKolmogorovSmirnov) {
    const ModelParams p{Model::RandomIsing, 8, 0.0, 1.0};
    std::vector<double> bonds;
    for(std::uint64_t k = 0; k < 500; ++k) {
        const auto r = sample_realization(p, 21, k);
        bonds.insert(bonds.end(), r.bonds.begin(), r.bonds.end());
    }
    EXPECT_LT(ks_uniform(bonds, std::exp(0.5)), 1.628 / std::sqrt(static_cast<double>(bonds.size())));
}

TEST(BuildHamiltonian, TwoSiteBondOnly) {
    const ModelParams p{Model::RandomIsing, 2, 0.0, 0.0};
    DisorderRealization r{Model::RandomIsing, 2, 0.0, 0, 0, 0, {1.0}, {0.0, 0.0}, {}};
    const auto h = build_hamiltonian(p, r);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
    const Eigen::Vector4d expected(-1, -1, 1, 1);
    EXPECT_LT((es.eigenvalues() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(BuildHamiltonian, ThreeSiteClusterOnly) {
    const ModelParams p{Model::ExtendedCluster, 3, 0.0, 0.0};
    DisorderRealization r{Model::ExtendedCluster, 3, 0.0, 0, 0, 0, {0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0}};
    const auto h = build_hamiltonian(p, r);
    EXPECT_LT((h.matrix() - oracle::pauli_word("XZX")).cwiseAbs().maxCoeff(), 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
    for(int k = 0; k < 8; ++k) EXPECT_NEAR(es.eigenvalues()(k), k < 4 ? -1.0 : 1.0, 1e-12);
}

TEST(BuildHamiltonian, MatchesKroneckerOracleForBothModels) {
    for(auto model : {Model::RandomIsing, Model::ExtendedCluster})
        for(double g : {0.0, 0.2}) {
            const ModelParams p{model, 5, g, 0.7};
            const auto r = sample_realization(p, 8, 1);
            EXPECT_LT((build_hamiltonian(p, r).matrix() - ising_oracle(r, g)).cwiseAbs().maxCoeff(), 1e-13);
        }
}

TEST(BuildHamiltonian, CommutesWithParity) {
    for(auto model : {Model::RandomIsing, Model::ExtendedCluster})
        for(std::uint64_t k = 0; k < 5; ++k) {
            const ModelParams p{model, 8, 0.2, -1.5 + static_cast<double>(k)};
            const auto h = build_hamiltonian(p, sample_realization(p, 17, k)).matrix();
            const auto par = parity_operator(8).matrix();
            EXPECT_LT((h * par - par * h).cwiseAbs().maxCoeff(), 1e-12);
        }
}

TEST(BuildHamiltonian, RejectsMismatchedRealization) {
    const ModelParams p{Model::RandomIsing, 6, 0.0, 0.0};
    const auto r = sample_realization(ModelParams{Model::RandomIsing, 5, 0.0, 0.0}, 1, 0);
    EXPECT_THROW(build_hamiltonian(p, r), std::invalid_argument);
    const auto c = sample_realization(ModelParams{Model::ExtendedCluster, 6, 0.0, 0.0}, 1, 0);
    EXPECT_THROW(build_hamiltonian(p, c), std::invalid_argument);
}

TEST(ParityOperator, SmallChains) {
    const auto p1 = parity_operator(1).matrix();
    EXPECT_EQ(p1, (Eigen::MatrixXcd(2, 2) << 1, 0, 0, -1).finished());
    const auto p2 = parity_operator(2).matrix();
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected.diagonal() << 1, -1, -1, 1;
    EXPECT_EQ(p2, expected);
    const auto p8 = parity_operator(8).matrix();
    EXPECT_LT((p8 * p8 - Eigen::MatrixXcd::Identity(256, 256)).cwiseAbs().maxCoeff(), 1e-15);
    for(Eigen::Index b = 0; b < 256; ++b) EXPECT_EQ(p8(b, b).real(), (std::popcount(static_cast<unsigned>(b)) % 2) ? -1.0 : 1.0);
}

TEST(DualRealization, TwiceRecoversInteriorCouplings) {
    const ModelParams p{Model::RandomIsing, 8, 0.2, 1.3};
    for(std::uint64_t k = 0; k < 10; ++k) {
        const auto r = sample_realization(p, 4, k);
        const auto d2 = dual_realization(dual_realization(r));
        EXPECT_EQ(d2.bonds, r.bonds);
        for(std::size_t i = 1; i < r.fields.size(); ++i) EXPECT_EQ(d2.fields[i], r.fields[i]);
        EXPECT_EQ(d2.delta, r.delta);
        EXPECT_EQ(d2.dual_generation, 2);
    }
}

TEST(DualRealization, MapsOntoMinusDeltaIntervals) {
    const ModelParams p{Model::RandomIsing, 8, 0.0, 2.0};
    const double w = std::exp(1.0);
    for(std::uint64_t k = 0; k < 100; ++k) {
        const auto d = dual_realization(sample_realization(p, 4, k));
        EXPECT_EQ(d.delta, -2.0);
        expect_in_range(d.bonds, 1.0 / w);
        expect_in_range(d.fields, w);
    }
}

TEST(DualRealization, EnsembleMatchesUniformByKolmogorovSmirnov) {
    for(double delta : {2.0, 0.0, -1.0}) {
        const ModelParams p{Model::RandomIsing, 6, 0.0, delta};
        const double w = std::exp(delta / 2.0);
        std::vector<double> bonds, boundary;
        for(std::uint64_t k = 0; k < 1000; ++k) {
            const auto d = dual_realization(sample_realization(p, 31, k));
            bonds.insert(bonds.end(), d.bonds.begin(), d.bonds.end());
            boundary.push_back(d.fields[0]);
        }
        EXPECT_LT(ks_uniform(bonds, 1.0 / w), 1.628 / std::sqrt(static_cast<double>(bonds.size()))) << delta;
        EXPECT_LT(ks_uniform(boundary, w), 1.628 / std::sqrt(1000.0)) << delta;
    }
}

TEST(DualRealization, RejectsClusterModel) {
    const auto r = sample_realization(ModelParams{Model::ExtendedCluster, 6, 0.0, 0.0}, 1, 0);
    EXPECT_THROW(dual_realization(r), std::invalid_argument);
}

TEST(RealizationJson, RoundTripIsExact) {
    for(auto model : {Model::RandomIsing, Model::ExtendedCluster}) {
        const ModelParams p{model, 7, 0.2, -2.5};
        const auto r = sample_realization(p, 123456789, 42);
        const auto [p2, r2] = realization_from_json(realization_to_json(p, r));
        EXPECT_EQ(r2, r);
        EXPECT_EQ(p2.model, p.model);
        EXPECT_EQ(p2.g, p.g);
        EXPECT_EQ(p2.delta, p.delta);
    }
    const auto d = dual_realization(sample_realization(ModelParams{Model::RandomIsing, 6, 0.0, 1.0}, 1, 2));
    EXPECT_EQ(realization_from_json(realization_to_json(ModelParams{Model::RandomIsing, 6, 0.0, -1.0}, d)).second, d);
}

TEST(ModelNames, ParseBothSpellings) {
    EXPECT_EQ(parse_model("ising"), Model::RandomIsing);
    EXPECT_EQ(parse_model("ExtendedCluster"), Model::ExtendedCluster);
    EXPECT_THROW(parse_model("heisenberg"), std::invalid_argument);
}
