#include <cstdint>
#include <vector>

#include "codec_internal.hpp"
#include "odc/errors.hpp"
#include "odc/varint.hpp"

namespace odc::detail {

namespace {

constexpr std::size_t kWindow = 64 * 1024;
constexpr std::size_t kMinMatch = 3;
constexpr std::size_t kMaxChain = 1024;  // candidate positions examined per match search
constexpr int kHashBits = 15;

constexpr std::uint8_t kTokLiterals = 0x00;  // 0x00 varint(count) count raw bytes
constexpr std::uint8_t kTokMatch = 0x01;     // 0x01 varint(offset) varint(length)

inline std::uint32_t hash3(const std::uint8_t* p) {
    std::uint32_t v = (std::uint32_t(p[0]) << 16) | (std::uint32_t(p[1]) << 8) | p[2];
    return (v * 2654435761u) >> (32 - kHashBits);
}

// Greedy longest-match parse over a 64 KiB sliding window. Ties in length
// prefer the nearest (smallest) offset, which the chain walk yields first.
class LzCodec final : public Codec {
public:
    CodecId id() const override { return CodecId::Lz; }
    std::string_view name() const override { return "lz"; }

    Bytes compress_payload(const Bytes& input) const override {
        Bytes out;
        const std::size_t n = input.size();
        if (n == 0) return out;

        std::vector<std::int64_t> head(std::size_t(1) << kHashBits, -1);
        std::vector<std::int64_t> prev(n, -1);

        std::size_t lit_start = 0;  // first byte of the pending literal run
        std::size_t pos = 0;

        auto flush_literals = [&](std::size_t end) {
            if (end == lit_start) return;
            out.push_back(kTokLiterals);
            put_varint(out, end - lit_start);
            out.insert(out.end(), input.begin() + lit_start, input.begin() + end);
        };
        auto insert = [&](std::size_t p) {
            if (p + kMinMatch > n) return;
            std::uint32_t h = hash3(&input[p]);
            prev[p] = head[h];
            head[h] = static_cast<std::int64_t>(p);
        };

        while (pos < n) {
            std::size_t best_len = 0, best_off = 0;
            if (pos + kMinMatch <= n) {
                const std::size_t limit = n - pos;
                std::int64_t cand = head[hash3(&input[pos])];
                std::size_t chain = 0;
                while (cand >= 0 && chain < kMaxChain) {
                    std::size_t c = static_cast<std::size_t>(cand);
                    if (pos - c > kWindow) break;  // chain is position-ordered
                    std::size_t len = 0;
                    while (len < limit && input[c + len] == input[pos + len]) ++len;
                    if (len > best_len) {
                        best_len = len;
                        best_off = pos - c;
                        if (len == limit) break;
                    }
                    cand = prev[c];
                    ++chain;
                }
            }
            if (best_len >= kMinMatch) {
                flush_literals(pos);
                out.push_back(kTokMatch);
                put_varint(out, best_off);
                put_varint(out, best_len);
                for (std::size_t i = 0; i < best_len; ++i) insert(pos + i);
                pos += best_len;
                lit_start = pos;
            } else {
                insert(pos);
                ++pos;
            }
        }
        flush_literals(n);
        return out;
    }

    DecodeResult decompress_payload(std::span<const std::uint8_t> payload,
                                    std::uint64_t original_len) const override {
        DecodeResult out;
        out.bytes.reserve(original_len);
        std::size_t pos = 0;
        while (pos < payload.size()) {
            std::uint8_t tok = payload[pos++];
            if (tok == kTokLiterals) {
                std::uint64_t count = get_varint(payload, pos);
                if (count == 0) throw format_error("lz literal token with zero count");
                if (pos + count > payload.size())
                    throw format_error("lz literal token overruns payload");
                if (out.bytes.size() + count > original_len)
                    throw format_error("lz payload overruns declared length");
                out.bytes.insert(out.bytes.end(), payload.begin() + pos,
                                 payload.begin() + pos + count);
                pos += count;
                out.steps += count + 1;
            } else if (tok == kTokMatch) {
                std::uint64_t off = get_varint(payload, pos);
                std::uint64_t len = get_varint(payload, pos);
                if (off == 0 || off > kWindow) throw format_error("lz match offset out of range");
                if (off > out.bytes.size())
                    throw format_error("lz match reaches before stream start");
                if (len < kMinMatch) throw format_error("lz match shorter than minimum");
                if (out.bytes.size() + len > original_len)
                    throw format_error("lz payload overruns declared length");
                std::size_t src = out.bytes.size() - off;
                for (std::uint64_t i = 0; i < len; ++i)  // byte-wise: matches may overlap
                    out.bytes.push_back(out.bytes[src + i]);
                out.steps += len + 1;
            } else {
                throw format_error("lz token type " + std::to_string(tok) + " is invalid");
            }
        }
        if (out.bytes.size() != original_len)
            throw format_error("lz payload underruns declared length");
        return out;
    }
};

const LzCodec kLz;

} // namespace

const Codec& lz_codec() { return kLz; }

} // namespace odc::detail
