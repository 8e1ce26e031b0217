#pragma once
// Seed derivation for reproducible, schedule-independent Monte Carlo.
//
// Each replicate gets its own engine seeded from (master seed, stream ids)
// through SplitMix64 finalizers, so replicate r sees the same stream no
// matter which worker runs it or in which order.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fnclass {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> ids) noexcept {
    std::uint64_t s = splitmix64(master);
    for (auto id : ids) s = splitmix64(s ^ splitmix64(id + 0x632be59bd9b4e019ULL));
    return s;
}

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> ids) {
    return Rng(derive_seed(master, ids));
}

// Stream tags keep independent uses of one master seed apart.
enum StreamTag : std::uint64_t {
    kStreamSample = 1,
    kStreamSplit = 2,
    kStreamReference = 3,
    kStreamSystemRef = 4,
    kStreamRealSystem = 5,
};

}  // namespace fnclass
