#include <cstdint>
#include <string>

#include "odc/corpus.hpp"

namespace odc {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

// 16^e mod m
u64 pow16_mod(u64 e, u64 m) {
    if (m == 1) return 0;
    u64 result = 1 % m;
    u64 base = 16 % m;
    while (e > 0) {
        if (e & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

// Fractional part of sum_k 16^(d-k)/(8k+j) in 64-bit fixed point
// (value/2^64). All arithmetic is integral, so results are bit-identical
// everywhere; truncation error is far below the extracted digits.
u64 series_frac(u64 d, u64 j) {
    u64 acc = 0;
    for (u64 k = 0; k <= d; ++k) {
        u64 m = 8 * k + j;
        u64 r = pow16_mod(d - k, m);
        acc += static_cast<u64>((u128(r) << 64) / m);  // wraps mod 2^64 = mod 1
    }
    // Tail k > d: 16^(d-k) = 2^(-4(k-d)); stop once the shift kills the term.
    for (u64 t = 1; 4 * t < 64; ++t) {
        u64 m = 8 * (d + t) + j;
        acc += static_cast<u64>((u128(1) << (64 - 4 * t)) / m);
    }
    return acc;
}

// Fractional part of 16^d * pi; the top nibbles are the hex digits at
// positions d+1, d+2, ... of pi's fractional part.
u64 pi_frac_at(u64 d) {
    u64 s1 = series_frac(d, 1);
    u64 s4 = series_frac(d, 4);
    u64 s5 = series_frac(d, 5);
    u64 s6 = series_frac(d, 6);
    return 4 * s1 - 2 * s4 - s5 - s6;  // mod-2^64 arithmetic keeps the fraction
}

} // namespace

std::string pi_hex_fraction(std::size_t count) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(count);
    // Extract 4 digits (top 16 bits) per evaluation; accumulated
    // truncation error stays far below bit 16 for any realistic count.
    for (std::size_t pos = 0; pos < count; pos += 4) {
        u64 frac = pi_frac_at(pos);
        for (int i = 0; i < 4 && pos + i < count; ++i) {
            out.push_back(digits[(frac >> 60) & 0xF]);
            frac <<= 4;
        }
    }
    return out;
}

} // namespace odc
