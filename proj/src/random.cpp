#include "irgpucb/random.hpp"

#include <cmath>
#include <numbers>

namespace irgpucb {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

Stream::Stream(std::uint64_t seed) : key_(mix(seed + kGolden)) {}

Stream Stream::split(std::uint64_t tag) const {
    return Stream(mix(key_ ^ mix(tag * kGolden + 0x632BE59BD9B4E019ULL)), 0, 0);
}

Stream Stream::split(std::string_view tag) const { return split(fnv1a(tag)); }

std::uint64_t Stream::next_u64() {
    ++counter_;
    return mix(key_ ^ mix(counter_ * kGolden));
}

double Stream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Stream::open_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Stream::below(std::uint64_t n) {
    // Lemire's multiply-shift with rejection for an unbiased result.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double Stream::normal() {
    // Box-Muller, cosine branch only so the stream carries no cached state.
    const double u1 = open_uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Stream::exponential(double rate) { return -std::log(open_uniform()) / rate; }

double Stream::gamma(double shape, double scale) {
    if (shape <= 0.0) return 0.0;
    if (shape < 1.0) {
        // Gamma(k) = Gamma(k + 1) * U^(1/k)
        const double boosted = gamma(shape + 1.0, 1.0);
        return scale * boosted * std::pow(open_uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = open_uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
}

double Stream::truncated_standard_normal(double half_width) {
    for (;;) {
        const double z = normal();
        if (std::abs(z) <= half_width) return z;
    }
}

}  // namespace irgpucb
