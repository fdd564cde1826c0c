#pragma once

#include <cstdint>

namespace qspread {

/// Stateless counter-based stream: every draw is a pure function of its key,
/// so draws are reproducible and independent of evaluation order.
struct StreamKey {
    std::uint64_t seed;
    std::uint64_t index;
    std::uint64_t tag;
};

std::uint64_t mix64(std::uint64_t x);

std::uint64_t counter_bits(const StreamKey &key, std::uint64_t element);

/// Uniform on [0, 1) with 53 random bits.
double counter_uniform(const StreamKey &key, std::uint64_t element);

/// Standard normal (Box-Muller on elements 2k and 2k+1).
double counter_normal(const StreamKey &key, std::uint64_t element);

} // namespace qspread
