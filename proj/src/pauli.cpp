#include "qspread/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qspread {

namespace {
int wrap4(int k) { return ((k % 4) + 4) % 4; }
int popcount(SiteMask m) { return std::popcount(m); }
} // namespace

BasisIndex gather_bits(BasisIndex value, SiteMask mask) {
    BasisIndex out = 0;
    int pos        = 0;
    while(mask != 0) {
        const int site = std::countr_zero(mask);
        out |= ((value >> site) & 1U) << pos++;
        mask &= mask - 1;
    }
    return out;
}

Complex phase_value(int power) {
    switch(wrap4(power)) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

PauliString::PauliString(SiteMask x_mask, SiteMask z_mask, int phase_power)
    : x_(x_mask), z_(z_mask), phase_(wrap4(phase_power)) {}

PauliString PauliString::x(int site) { return {SiteMask{1} << site, 0}; }
PauliString PauliString::y(int site) { return {SiteMask{1} << site, SiteMask{1} << site}; }
PauliString PauliString::z(int site) { return {0, SiteMask{1} << site}; }

PauliString PauliString::parse(std::string_view text) {
    int power = 0;
    if(!text.empty() && (text.front() == '+' || text.front() == '-')) {
        if(text.front() == '-') power += 2;
        text.remove_prefix(1);
    }
    if(!text.empty() && text.front() == 'i') {
        power += 1;
        text.remove_prefix(1);
    }
    if(text.size() > static_cast<std::size_t>(kMaxSites)) throw std::invalid_argument("Pauli string too long");
    SiteMask x = 0, z = 0;
    for(std::size_t k = 0; k < text.size(); ++k) {
        const SiteMask bit = SiteMask{1} << k;
        switch(text[k]) {
            case 'I':
            case '_': break;
            case 'X': x |= bit; break;
            case 'Y': x |= bit; z |= bit; break;
            case 'Z': z |= bit; break;
            default: throw std::invalid_argument("bad Pauli letter '" + std::string(1, text[k]) + "'");
        }
    }
    return {x, z, power};
}

bool PauliString::commutes_with(const PauliString &other) const {
    return (popcount(x_ & other.z_) + popcount(z_ & other.x_)) % 2 == 0;
}

PauliString PauliString::times_phase(int power) const { return {x_, z_, phase_ + power}; }

PauliString PauliString::adjoint() const { return {x_, z_, -phase_}; }

// Each site's sigma^y is i X Z, so the string is i^(phase + |x&z|) X^x Z^z.
// Moving Z^z1 past X^x2 costs (-1)^|z1&x2|.
PauliString &PauliString::operator*=(const PauliString &rhs) {
    const SiteMask x3 = x_ ^ rhs.x_;
    const SiteMask z3 = z_ ^ rhs.z_;
    const int power   = phase_ + rhs.phase_ + popcount(x_ & z_) + popcount(rhs.x_ & rhs.z_) +
                      2 * popcount(z_ & rhs.x_) - popcount(x3 & z3);
    x_     = x3;
    z_     = z3;
    phase_ = wrap4(power);
    return *this;
}

std::string PauliString::str(int num_sites) const {
    static constexpr const char *prefixes[] = {"+", "+i", "-", "-i"};
    std::string out = prefixes[phase_];
    for(int k = 0; k < num_sites; ++k) {
        const bool bx = (x_ >> k) & 1U, bz = (z_ >> k) & 1U;
        out += bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
    }
    return out;
}

PauliAction pauli_apply(const PauliString &p, BasisIndex basis) {
    const int power = p.phase_power() + popcount(p.x_mask() & p.z_mask()) + 2 * popcount(p.z_mask() & basis);
    return {basis ^ p.x_mask(), wrap4(power)};
}

} // namespace qspread
