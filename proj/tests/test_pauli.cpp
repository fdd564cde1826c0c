#include "oracles.hpp"
#include "qspread/algebra.hpp"
#include "qspread/operators.hpp"
#include "qspread/pauli.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qspread;

namespace {

std::vector<PauliString> all_strings(int n) {
    std::vector<PauliString> out;
    for(SiteMask x = 0; x < (SiteMask{1} << n); ++x)
        for(SiteMask z = 0; z < (SiteMask{1} << n); ++z)
            for(int k = 0; k < 4; ++k) out.emplace_back(x, z, k);
    return out;
}

std::string letters(const PauliString &p, int n) {
    std::string w;
    for(int s = 0; s < n; ++s) {
        const bool x = (p.x_mask() >> s) & 1U, z = (p.z_mask() >> s) & 1U;
        w += x && z ? 'Y' : x ? 'X' : z ? 'Z' : 'I';
    }
    return w;
}

/// Kronecker-product matrix of a string, independent of the library.
oracle::Mat kron_matrix(const PauliString &p, int n) { return p.phase() * oracle::pauli_word(letters(p, n)); }

} // namespace

TEST(PauliApply, SigmaXFlipsSiteZero) {
    const auto a = pauli_apply(PauliString::x(0), 0b100);
    EXPECT_EQ(a.state, 0b101u);
    EXPECT_EQ(a.phase(), Complex(1, 0));
}

TEST(PauliApply, SigmaZOnDownGivesMinusOne) {
    const auto a = pauli_apply(PauliString::z(0), 0b1);
    EXPECT_EQ(a.state, 0b1u);
    EXPECT_EQ(a.phase(), Complex(-1, 0));
}

TEST(PauliApply, SigmaYOnUpGivesPlusI) {
    const auto a = pauli_apply(PauliString::y(0), 0b0);
    EXPECT_EQ(a.state, 0b1u);
    EXPECT_EQ(a.phase(), Complex(0, 1));
}

TEST(PauliApply, MatchesKroneckerColumnsExhaustivelyAtThreeSites) {
    const int n = 3;
    for(const auto &p : all_strings(n)) {
        const auto m = kron_matrix(p, n);
        for(BasisIndex b = 0; b < 8; ++b) {
            const auto a = pauli_apply(p, b);
            for(BasisIndex r = 0; r < 8; ++r) {
                const Complex expected = r == a.state ? a.phase() : Complex{};
                EXPECT_LT(std::abs(m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b)) - expected), 1e-15) << p.str(n);
            }
        }
    }
}

TEST(PauliString, ProductMatchesMatrixProductExhaustivelyAtTwoSites) {
    const int n = 2;
    const auto strings = all_strings(n);
    for(const auto &p : strings)
        for(const auto &q : strings) {
            const auto pq = p * q;
            EXPECT_LT((kron_matrix(pq, n) - kron_matrix(p, n) * kron_matrix(q, n)).cwiseAbs().maxCoeff(), 1e-14) << p.str(n) << " " << q.str(n);
        }
}

TEST(PauliString, AssociativeExhaustivelyAtTwoSites) {
    std::vector<PauliString> strings;
    for(SiteMask x = 0; x < 4; ++x)
        for(SiteMask z = 0; z < 4; ++z) strings.emplace_back(x, z, static_cast<int>((x + z) % 4));
    for(const auto &p : strings)
        for(const auto &q : strings)
            for(const auto &r : strings) EXPECT_EQ((p * q) * r, p * (q * r));
}

TEST(PauliString, AssociativeOnRandomFourSiteTriples) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<SiteMask> mask(0, 15);
    std::uniform_int_distribution<int> ph(0, 3);
    for(int trial = 0; trial < 20000; ++trial) {
        const PauliString p(mask(rng), mask(rng), ph(rng)), q(mask(rng), mask(rng), ph(rng)), r(mask(rng), mask(rng), ph(rng));
        ASSERT_EQ((p * q) * r, p * (q * r));
    }
}

TEST(PauliString, SquaresToPlusOrMinusIdentityAtFourSites) {
    for(SiteMask x = 0; x < 16; ++x)
        for(SiteMask z = 0; z < 16; ++z)
            for(int k = 0; k < 4; ++k) {
                const PauliString p(x, z, k);
                const auto sq = p * p;
                EXPECT_EQ(sq.x_mask(), 0u);
                EXPECT_EQ(sq.z_mask(), 0u);
                EXPECT_EQ(sq.phase_power() % 2, 0);
                EXPECT_EQ(sq.phase_power() == 0, p.is_hermitian());
            }
}

TEST(PauliString, CommutationMatchesMatrices) {
    const int n = 2;
    const auto strings = all_strings(n);
    for(std::size_t a = 0; a < strings.size(); a += 4)
        for(std::size_t b = 0; b < strings.size(); b += 4) {
            const auto pm = kron_matrix(strings[a], n), qm = kron_matrix(strings[b], n);
            const bool commute = (pm * qm - qm * pm).cwiseAbs().maxCoeff() < 1e-14;
            EXPECT_EQ(strings[a].commutes_with(strings[b]), commute);
        }
}

TEST(PauliString, AdjointMatchesMatrixAdjoint) {
    for(const auto &p : all_strings(2)) EXPECT_LT((kron_matrix(p.adjoint(), 2) - kron_matrix(p, 2).adjoint()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PauliString, ParseAndFormatRoundTrip) {
    for(const auto &p : all_strings(3)) EXPECT_EQ(PauliString::parse(p.str(3)), p) << p.str(3);
    EXPECT_EQ(PauliString::parse("+XIZY"), PauliString::x(0) * PauliString::z(2) * PauliString::y(3));
    EXPECT_THROW(PauliString::parse("+XQ"), std::invalid_argument);
}

TEST(PauliString, FitsChecksMaskRange) {
    EXPECT_TRUE(PauliString::x(2).fits(3));
    EXPECT_FALSE(PauliString::x(3).fits(3));
    EXPECT_TRUE(PauliString::identity().fits(0));
}

TEST(PauliMatrix, AgreesWithKroneckerOracle) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<SiteMask> mask(0, 31);
    std::uniform_int_distribution<int> ph(0, 3);
    for(int trial = 0; trial < 50; ++trial) {
        const PauliString p(mask(rng), mask(rng), ph(rng));
        EXPECT_LT((pauli_matrix(p, 5) - kron_matrix(p, 5)).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(DualOperators, TauZIsNeighbouringXPairBitmask) {
    for(int i = 0; i < 10; ++i) {
        const auto tz = dual_tau_z(i);
        EXPECT_EQ(tz, PauliString::x(i) * PauliString::x(i + 1));
        EXPECT_EQ(tz.x_mask(), (SiteMask{1} << i) | (SiteMask{1} << (i + 1)));
        EXPECT_EQ(tz.z_mask(), 0u);
        EXPECT_EQ(tz.phase_power(), 0);
    }
}

TEST(DualOperators, TauXIsZStringUpToSite) {
    for(int i = 0; i < 10; ++i) {
        const auto tx = dual_tau_x(i);
        EXPECT_EQ(tx.x_mask(), 0u);
        EXPECT_EQ(tx.z_mask(), all_sites(i + 1));
        EXPECT_EQ(tx.phase_power(), 0);
    }
}

TEST(DualOperators, DualPauliAlgebra) {
    for(int i = 0; i < 8; ++i)
        for(int j = 0; j < 8; ++j) {
            EXPECT_EQ(dual_tau_z(i).commutes_with(dual_tau_x(j)), i != j);
            EXPECT_TRUE(dual_tau_z(i).commutes_with(dual_tau_z(j)));
            EXPECT_TRUE(dual_tau_x(i).commutes_with(dual_tau_x(j)));
        }
    // sigma^z_i = tau^x_{i-1} tau^x_i maps the field term onto the dual bond.
    for(int i = 1; i < 8; ++i) EXPECT_EQ(dual_tau_x(i - 1) * dual_tau_x(i), PauliString::z(i));
}
