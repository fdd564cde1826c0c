#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace qspread {

using Complex    = std::complex<double>;
using BasisIndex = std::uint64_t;
using SiteMask   = std::uint64_t;

/// Basis convention shared by every module: bit i of a basis index is the
/// sigma^z state of site i (0 = up, 1 = down), site 0 least significant.
constexpr int kMaxSites = 62;

constexpr SiteMask all_sites(int num_sites) {
    return num_sites >= 64 ? ~SiteMask{0} : (SiteMask{1} << num_sites) - 1;
}

/// Packs the bits of `value` selected by `mask` into the low bits, keeping
/// their order (a software pext).
BasisIndex gather_bits(BasisIndex value, SiteMask mask);

/// i^power for power taken mod 4.
Complex phase_value(int power);

/// Signed multi-site Pauli operator i^phase * prod_k sigma_k.
///
/// Site k carries sigma^x if only the x bit is set, sigma^z if only the z bit
/// is set and sigma^y if both are set. Without the phase the string is
/// Hermitian, so the operator is Hermitian exactly when the phase is +-1.
class PauliString {
  public:
    PauliString() = default;
    PauliString(SiteMask x_mask, SiteMask z_mask, int phase_power = 0);

    static PauliString identity() { return {}; }
    static PauliString x(int site);
    static PauliString y(int site);
    static PauliString z(int site);

    /// Parses strings like "+XIZY" or "-iXX"; the first letter is site 0.
    static PauliString parse(std::string_view text);

    SiteMask x_mask() const { return x_; }
    SiteMask z_mask() const { return z_; }
    SiteMask support() const { return x_ | z_; }
    int phase_power() const { return phase_; }
    Complex phase() const { return phase_value(phase_); }

    bool is_hermitian() const { return phase_ % 2 == 0; }
    bool fits(int num_sites) const { return (support() & ~all_sites(num_sites)) == 0; }
    bool commutes_with(const PauliString &other) const;

    PauliString times_phase(int power) const;
    PauliString adjoint() const;

    PauliString &operator*=(const PauliString &rhs);
    friend PauliString operator*(PauliString lhs, const PauliString &rhs) { return lhs *= rhs; }
    friend bool operator==(const PauliString &, const PauliString &) = default;

    std::string str(int num_sites) const;

  private:
    SiteMask x_ = 0;
    SiteMask z_ = 0;
    int phase_  = 0;
};

struct PauliAction {
    BasisIndex state;
    int phase_power;
    Complex phase() const { return phase_value(phase_power); }
};

/// p|basis> = phase * |state>.
PauliAction pauli_apply(const PauliString &p, BasisIndex basis);

} // namespace qspread
