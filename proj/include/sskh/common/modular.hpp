#pragma once

#include <cmath>
#include <cstdint>

namespace sskh {

// Nearest integer, ties away from zero.
inline std::int64_t round_half_away(double v) { return static_cast<std::int64_t>(std::llround(v)); }

// Least nonnegative residue.
inline std::int64_t mod(std::int64_t v, std::int64_t m) {
    std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

inline double fmod_pos(double v, double m) {
    double r = std::fmod(v, m);
    if (r < 0) r += m;
    if (r >= m) r -= m;
    return r;
}

// Representative of v mod m in (-m/2, (m+1)/2].
inline std::int64_t recenter(std::int64_t v, std::int64_t m) {
    std::int64_t r = mod(v, m);
    // r > (m+1)/2 in exact arithmetic  <=>  2r > m+1
    if (2 * r > m + 1) r -= m;
    return r;
}

inline double recenter(double v, std::int64_t m) {
    const double md = static_cast<double>(m);
    double r = fmod_pos(v, md);
    if (2.0 * r > md + 1.0) r -= md;
    return r;
}

}  // namespace sskh
