#include "oracles.hpp"
#include "qspread/models.hpp"
#include "qspread/scrambling.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace qspread;

namespace {

Spectrum spectrum(Model model, int n, double g, double delta, std::uint64_t index) {
    const ModelParams p{model, n, g, delta};
    return diagonalize(build_hamiltonian(p, sample_realization(p, 31, index)));
}

std::vector<int> sites_of(SiteMask m) {
    std::vector<int> v;
    for(int s = 0; s < 64; ++s)
        if((m >> s) & 1U) v.push_back(s);
    return v;
}

std::vector<Partition> partitions_for(int n) {
    std::vector<Partition> out{Partition::equal_half(n), Partition::parse("equal-half:d-first", n)};
    if(n >= 4) out.push_back(Partition::two_site(n));
    for(int r = 3; r <= n / 2; ++r) out.push_back(Partition::r_partition(n, r));
    return out;
}

} // namespace

TEST(Partition, SizesPerScheme) {
    const auto eh = Partition::equal_half(10);
    EXPECT_EQ(eh.in_a, 5);
    EXPECT_EQ(eh.out_c, 5);
    const auto ts = Partition::two_site(10);
    EXPECT_EQ(ts.in_a, 2);
    EXPECT_EQ(ts.out_d(), 2);
    EXPECT_EQ(ts.d_mask(), SiteMask{0b1100000000});
    const auto r3 = Partition::r_partition(10, 3);
    EXPECT_EQ(r3.in_a, 3);
    EXPECT_EQ(r3.out_d(), 3);
    EXPECT_EQ(r3.in_b() + r3.in_a, 10);
    EXPECT_THROW(Partition::r_partition(10, 6), std::invalid_argument);
    EXPECT_THROW(Partition::r_partition(10, 1), std::invalid_argument);
}

TEST(Partition, ParseAndTagRoundTrip) {
    for(const char *tag : {"equal-half", "two-site", "r=3", "r=2:d-first", "two-site:d-first"}) EXPECT_EQ(Partition::parse(tag, 8).tag(), tag);
    const auto df = Partition::parse("two-site:d-first", 8);
    EXPECT_EQ(df.d_mask(), SiteMask{0b11});
    EXPECT_EQ(df.c_mask(), SiteMask{0b11111100});
    EXPECT_THROW(Partition::parse("thirds", 8), std::invalid_argument);
}

TEST(ChannelState, UnitNormAndIdentityCoefficients) {
    const auto s = spectrum(Model::RandomIsing, 6, 0.2, 0.0, 0);
    for(double t : {0.0, 1.0, 1e9}) EXPECT_NEAR(channel_state(s, t).norm(), 1.0, 1e-10);
    const auto cs = channel_state(s, 0.0);
    EXPECT_LT((cs.coefficients() - Eigen::MatrixXcd::Identity(64, 64) / 8.0).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(cs.parity_conserving());
}

TEST(ChannelState, MatchesDoubledStateOracle) {
    const int n = 3;
    const ModelParams p{Model::RandomIsing, n, 0.2, 0.0};
    const auto h = build_hamiltonian(p, sample_realization(p, 31, 1));
    const auto s = diagonalize(h);
    const oracle::Mat u = oracle::expm(oracle::cd(0, -5.0) * h.matrix());
    EXPECT_LT((time_evolution_operator(s, 5.0) - u).cwiseAbs().maxCoeff(), 1e-9);
    const auto cs = channel_state(s, 5.0);
    const auto psi = oracle::doubled_state(u, n);
    for(Eigen::Index in = 0; in < 8; ++in)
        for(Eigen::Index out = 0; out < 8; ++out) EXPECT_NEAR(std::abs(cs.coefficients()(out, in) - psi(in + (out << n))), 0.0, 1e-9);
}

TEST(Tmi, ZeroAtTimeZero) {
    for(int n : {4, 6, 8}) {
        const auto s = spectrum(Model::ExtendedCluster, n, 0.2, 0.0, 2);
        const auto cs = channel_state(s, 0.0);
        for(const auto &part : partitions_for(n)) {
            EXPECT_NEAR(subsystem_oee(cs, part, kA), part.in_a, 1e-12);
            EXPECT_NEAR(subsystem_oee(cs, part, kA | kC), std::popcount(part.a_mask() ^ part.c_mask()), 1e-9);
            const auto r = tmi(cs, part);
            EXPECT_NEAR(r.i3, 0.0, 1e-9) << part.tag();
        }
        const auto eh = Partition::equal_half(n);
        EXPECT_NEAR(subsystem_oee(cs, eh, kA | kC), 0.0, 1e-12);
        EXPECT_NEAR(subsystem_oee(cs, eh, kA | kD), n, 1e-9);
    }
}

TEST(Tmi, FastDefinitionAndOracleAgree) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> time(0.1, 50.0);
    for(int trial = 0; trial < 8; ++trial) {
        const int n = 3 + trial % 3;
        const auto model = trial % 2 ? Model::ExtendedCluster : Model::RandomIsing;
        const ModelParams p{model, n, 0.2, -2.0 + trial * 0.5};
        const auto h = build_hamiltonian(p, sample_realization(p, 31, static_cast<std::uint64_t>(trial)));
        const auto s = diagonalize(h);
        const double t = time(rng);
        const auto cs = channel_state(s, t);
        const oracle::Mat u = oracle::expm(oracle::cd(0, -t) * h.matrix());
        for(const auto &part : {Partition::equal_half(n), Partition::parse("equal-half:d-first", n)}) {
            const auto fast = tmi(cs, part, TmiMode::Fast);
            const auto def = tmi(cs, part, TmiMode::Definition);
            const auto ref = oracle::doubled_tmi(u, n, sites_of(part.a_mask()), sites_of(part.c_mask()), sites_of(part.d_mask()));
            EXPECT_NEAR(fast.i3, def.i3, 1e-9);
            EXPECT_NEAR(fast.i3, ref.i3, 1e-9);
            EXPECT_NEAR(def.i_ac, ref.i_ac, 1e-9);
            EXPECT_NEAR(def.i_ad, ref.i_ad, 1e-9);
            EXPECT_NEAR(def.i_acd, ref.i_acd, 1e-9);
        }
    }
}

TEST(Tmi, ParityPathMatchesGeneralPath) {
    const auto s = spectrum(Model::RandomIsing, 6, 0.2, 0.0, 3);
    const Eigen::MatrixXcd u = time_evolution_operator(s, 7.0);
    const ChannelState blocked(6, u, true), plain(6, u, false);
    for(const auto &part : partitions_for(6))
        for(unsigned which : {unsigned{kA | kC}, unsigned{kA | kD}, unsigned{kC}, unsigned{kB | kD}})
            EXPECT_NEAR(subsystem_oee(blocked, part, which), subsystem_oee(plain, part, which), 1e-10);
}

TEST(Tmi, MarginalsPurityAndBmiBounds) {
    const int n = 6;
    const auto s = spectrum(Model::ExtendedCluster, n, 0.2, 1.0, 4);
    for(double t : {0.0, 0.7, 12.0, 1e6}) {
        const auto cs = channel_state(s, t);
        for(const auto &part : partitions_for(n)) {
            EXPECT_NEAR(subsystem_oee(cs, part, kA), part.in_a, 1e-9);
            EXPECT_NEAR(subsystem_oee(cs, part, kB), part.in_b(), 1e-9);
            EXPECT_NEAR(subsystem_oee(cs, part, kC), part.out_c, 1e-9);
            EXPECT_NEAR(subsystem_oee(cs, part, kD), part.out_d(), 1e-9);
            EXPECT_NEAR(subsystem_oee(cs, part, kA | kC | kD), subsystem_oee(cs, part, kB), 1e-9);
            EXPECT_NEAR(subsystem_oee(cs, part, kC | kD), n, 1e-9);
            const auto r = tmi(cs, part, TmiMode::Definition);
            EXPECT_GE(r.i_ac, -1e-9);
            EXPECT_GE(r.i_ad, -1e-9);
            EXPECT_GE(r.i_acd, -1e-9);
            EXPECT_LE(r.i3, 1e-9);
        }
    }
    EXPECT_THROW(subsystem_oee(channel_state(s, 1.0), Partition::equal_half(n), 0), std::invalid_argument);
    EXPECT_THROW(subsystem_oee(channel_state(s, 1.0), Partition::equal_half(n), 15), std::invalid_argument);
}

TEST(TmiSeries, TimeMajorOrderAndNormalization) {
    const auto s = spectrum(Model::RandomIsing, 6, 0.2, 0.0, 5);
    const std::vector<Partition> parts{Partition::equal_half(6), Partition::two_site(6)};
    const std::vector<double> haar{-4.0, -2.0};
    const std::vector<double> times{0.0, 1.0, 100.0};
    const auto series = tmi_series(s, parts, times, haar, 0.5);
    ASSERT_EQ(series.size(), 6u);
    EXPECT_NEAR(series[0].i3, 0.0, 1e-9);
    EXPECT_NEAR(series[1].i3, 0.0, 1e-9);
    for(std::size_t k = 0; k < series.size(); ++k) {
        EXPECT_EQ(series[k].time, times[k / 2]);
        EXPECT_EQ(series[k].partition, parts[k % 2].tag());
        EXPECT_DOUBLE_EQ(series[k].i3_normalized, series[k].i3 / haar[k % 2]);
    }
    EXPECT_NEAR(series[4].i3, tmi(channel_state(s, 50.0), parts[0]).i3, 1e-12);
}

TEST(Saturation, WindowMeanOfSeries) {
    const auto s = spectrum(Model::RandomIsing, 6, 0.2, 0.0, 6);
    const std::vector<Partition> parts{Partition::equal_half(6)};
    const std::vector<double> haar{-3.0};
    const auto times = saturation_times();
    ASSERT_EQ(times.size(), 10u);
    EXPECT_DOUBLE_EQ(times.front(), 1e9);
    EXPECT_DOUBLE_EQ(times.back(), 1e10);
    double mean = 0.0;
    for(double t : times) mean += tmi(channel_state(s, 2.0 * t), parts[0]).i3 / 10.0;
    const auto sat = saturation_tmi(s, parts, haar, 2.0);
    EXPECT_NEAR(sat[0].i3, mean, 1e-12);
    EXPECT_DOUBLE_EQ(sat[0].i3_normalized, sat[0].i3 / -3.0);
}

TEST(Haar, UnitaryAndDeterministic) {
    const auto u = haar_unitary(4, 9, 2);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(u, haar_unitary(4, 9, 2));
    EXPECT_NE(u, haar_unitary(4, 9, 3));
}

TEST(Haar, NegativeAndGrowingWithSize) {
    double previous = 0.0;
    for(int n : {4, 6, 8}) {
        const auto part = Partition::equal_half(n);
        const auto h = haar_reference(n, part, 10, 5);
        EXPECT_LT(h.mean, 0.0);
        EXPECT_LT(h.mean, previous);
        EXPECT_GE(h.standard_error, 0.0);
        EXPECT_EQ(h.n_samples, 10);
        previous = h.mean;
        const auto again = haar_reference(n, part, 10, 5);
        EXPECT_EQ(again.mean, h.mean);
    }
}

namespace {

/// Mean entropy (bits) of k of `total` qubits in a random pure state. The
/// channel state of a Haar unitary approaches this up to O(2^-L).
double page_entropy(int k, int total) {
    const int small = std::min(k, total - k);
    const double m = std::pow(2.0, small), n = std::pow(2.0, total - small);
    double nats = -(m - 1.0) / (2.0 * n);
    for(double j = n + 1.0; j <= m * n; j += 1.0) nats += 1.0 / j;
    return nats / std::log(2.0);
}

} // namespace

TEST(Haar, MatchesRandomStateEntropy) {
    for(const auto &part : {Partition::equal_half(6), Partition::two_site(6), Partition::equal_half(8), Partition::r_partition(8, 3)}) {
        const int n = part.num_sites;
        const double s_ac = page_entropy(part.in_a + part.out_c, 2 * n);
        const double s_ad = page_entropy(part.in_a + part.out_d(), 2 * n);
        const double expected = n - s_ac - s_ad;
        const auto h = haar_reference(n, part, 20, 7);
        EXPECT_NEAR(h.mean, expected, 4.0 * std::pow(2.0, -n) + 4.0 * h.standard_error) << part.tag();
    }
}

TEST(HaarCache, PersistsAndReusesEntries) {
    const auto path = (std::filesystem::temp_directory_path() / "qspread_haar_cache_test.json").string();
    std::filesystem::remove(path);
    const auto part = Partition::equal_half(4);
    HaarReference first;
    {
        HaarCache cache(path);
        first = cache.get(part, 6, 3);
    }
    ASSERT_TRUE(std::filesystem::exists(path));
    std::ifstream in(path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("\"4:2:2\""), std::string::npos);
    HaarCache reload(path);
    const auto second = reload.get(part, 6, 3);
    EXPECT_EQ(second.mean, first.mean);
    EXPECT_EQ(second.standard_error, first.standard_error);
    const auto other = reload.get(part, 6, 4);
    EXPECT_EQ(other.seed, 4u);
    EXPECT_EQ(HaarCache::key(part), "4:2:2");
    std::filesystem::remove(path);
}
