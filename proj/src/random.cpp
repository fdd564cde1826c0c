#include "qspread/random.hpp"

#include <cmath>
#include <numbers>

namespace qspread {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t counter_bits(const StreamKey &key, std::uint64_t element) {
    std::uint64_t h = mix64(key.seed);
    h = mix64(h ^ key.index);
    h = mix64(h ^ key.tag);
    return mix64(h ^ element);
}

double counter_uniform(const StreamKey &key, std::uint64_t element) {
    return static_cast<double>(counter_bits(key, element) >> 11) * 0x1.0p-53;
}

double counter_normal(const StreamKey &key, std::uint64_t element) {
    const std::uint64_t pair = element & ~std::uint64_t{1};
    const double u1 = 1.0 - counter_uniform(key, pair);
    const double u2 = counter_uniform(key, pair + 1);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return (element & 1U) ? radius * std::sin(angle) : radius * std::cos(angle);
}

} // namespace qspread
