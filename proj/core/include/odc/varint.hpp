#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "odc/bytes.hpp"
#include "odc/errors.hpp"

namespace odc {

/// Unsigned LEB128: 7 payload bits per byte, least-significant group
/// first, high bit set on every byte except the last.
inline void put_varint(Bytes& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(v) | 0x80);
        v >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(v));
}

inline std::size_t varint_size(std::uint64_t v) {
    std::size_t n = 1;
    while (v >= 0x80) {
        v >>= 7;
        ++n;
    }
    return n;
}

/// Reads a varint at `pos`, advancing it; throws format_error on
/// truncation or on encodings longer than 10 bytes.
inline std::uint64_t get_varint(std::span<const std::uint8_t> in, std::size_t& pos) {
    std::uint64_t v = 0;
    int shift = 0;
    for (;;) {
        if (pos >= in.size()) throw format_error("varint: truncated input");
        if (shift >= 64) throw format_error("varint: value too wide");
        std::uint8_t b = in[pos++];
        v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
        if ((b & 0x80) == 0) return v;
        shift += 7;
    }
}

} // namespace odc
