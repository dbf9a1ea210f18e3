#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ladder {

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard and every draw below is derived from raw 64-bit words, so streams
// reproduce bit-for-bit across platforms (std::uniform_int_distribution
// would not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    int coin() { return static_cast<int>(next() & 1ull); }

    // uniform on the 0.01 grid {0.01, ..., 0.99}
    double grid_prob() { return static_cast<double>(1 + below(99)) / 100.0; }

    double uniform01() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

private:
    std::mt19937_64 gen_;
};

// Substream seed for an independent, order-free generation cell.
inline std::uint64_t substream_seed(std::uint64_t master, std::string_view id) {
    return splitmix64(master ^ fnv1a64(id));
}

}  // namespace ladder
