#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace odc {

/// Deterministic pseudo-random generator used for every "random" fixture
/// and every stochastic simulation step in this project.
///
/// This is the splitmix64 generator (Steele/Lea/Vigna): the state walks a
/// fixed odd increment and each output is a bit-mixed hash of the state.
/// All constants are spelled out below; the byte stream produced by
/// `fill` is therefore identical on every platform and in every build.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Next byte: 64-bit words are consumed little-endian, low byte first.
    std::uint8_t next_byte() {
        if (bits_left_ == 0) {
            word_ = next();
            bits_left_ = 64;
        }
        auto b = static_cast<std::uint8_t>(word_ & 0xFF);
        word_ >>= 8;
        bits_left_ -= 8;
        return b;
    }

    void fill(std::span<std::uint8_t> out) {
        for (auto& b : out) b = next_byte();
    }

    /// Uniform in [0,1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound) by rejection; bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t v = next();
            if (v >= threshold) return v % bound;
        }
    }

private:
    std::uint64_t state_;
    std::uint64_t word_ = 0;
    int bits_left_ = 0;
};

/// splitmix64 finalizer as a standalone hash; used to derive independent
/// substreams from (seed, tag, counter) tuples.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
    return mix64(seed ^ mix64(a));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return mix64(derive_seed(seed, a) ^ mix64(b));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return mix64(derive_seed(seed, a, b) ^ mix64(c));
}

/// FNV-1a, used to fold text identifiers (family ids) into stream seeds.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x00000100000001B3ULL;
    }
    return h;
}

} // namespace odc
