#pragma once

#include <cstdint>
#include <initializer_list>

#include <boost/random/mersenne_twister.hpp>

namespace sskh {

// All stochastic operations draw from an explicit stream; boost's engine and
// distributions give identical sequences across platforms and compilers.
using Stream = boost::random::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic sub-seed from a master seed and a path of tags (e.g. star id, trial index).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

inline Stream make_stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    return Stream(derive_seed(master, path));
}

// Stable 64-bit tag for a label such as "channel" or "oracle".
constexpr std::uint64_t tag(const char* s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (; *s; ++s) {
        h ^= static_cast<unsigned char>(*s);
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace sskh
