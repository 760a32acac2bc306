#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "codec_internal.hpp"
#include "odc/errors.hpp"
#include "odc/varint.hpp"

namespace odc::detail {

namespace {

constexpr std::size_t kBlock = 64 * 1024;

// ---- Burrows-Wheeler transform over cyclic rotations ----
//
// Prefix doubling on rotation ranks; equal rotations (periodic blocks) are
// ordered by start index, which keeps the transform and its primary index
// deterministic without affecting invertibility.

struct BwtResult {
    Bytes last_column;
    std::uint64_t primary = 0;  // row of rotation 0 in sorted order
};

BwtResult bwt_forward(std::span<const std::uint8_t> block) {
    const std::size_t n = block.size();
    std::vector<std::uint32_t> idx(n), rank(n), newrank(n);
    std::iota(idx.begin(), idx.end(), 0u);
    for (std::size_t i = 0; i < n; ++i) rank[i] = block[i];
    std::array<bool, 256> seen{};
    std::uint32_t classes = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!seen[block[i]]) {
            seen[block[i]] = true;
            ++classes;
        }

    for (std::size_t k = 1; k < n && classes < n; k *= 2) {
        auto key2 = [&](std::uint32_t i) { return rank[(i + k) % n]; };
        auto less = [&](std::uint32_t a, std::uint32_t b) {
            if (rank[a] != rank[b]) return rank[a] < rank[b];
            return key2(a) < key2(b);
        };
        std::sort(idx.begin(), idx.end(), less);
        newrank[idx[0]] = 0;
        for (std::size_t i = 1; i < n; ++i)
            newrank[idx[i]] = newrank[idx[i - 1]] + (less(idx[i - 1], idx[i]) ? 1 : 0);
        rank.swap(newrank);
        std::uint32_t refined = rank[idx[n - 1]] + 1;
        // A round that refines nothing can never refine later (the block is
        // periodic and remaining ties are exactly equal rotations).
        if (refined == classes) break;
        classes = refined;
    }
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        return rank[a] != rank[b] ? rank[a] < rank[b] : a < b;
    });

    BwtResult out;
    out.last_column.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::uint32_t start = idx[r];
        out.last_column[r] = block[(start + n - 1) % n];
        if (start == 0) out.primary = r;
    }
    return out;
}

Bytes bwt_inverse(const Bytes& last, std::uint64_t primary, std::uint64_t& steps) {
    const std::size_t n = last.size();
    if (primary >= n) throw format_error("bwt primary index out of range");
    std::array<std::uint64_t, 256> count{};
    for (auto b : last) ++count[b];
    std::array<std::uint64_t, 256> base{};
    std::uint64_t acc = 0;
    for (int c = 0; c < 256; ++c) {
        base[c] = acc;
        acc += count[c];
    }
    std::vector<std::uint64_t> lf(n);
    std::array<std::uint64_t, 256> occ{};
    for (std::size_t i = 0; i < n; ++i) lf[i] = base[last[i]] + occ[last[i]]++;

    Bytes out(n);
    std::uint64_t row = primary;
    for (std::size_t j = n; j-- > 0;) {
        out[j] = last[row];
        row = lf[row];
        ++steps;  // one pointer traversal per recovered byte
    }
    return out;
}

// ---- move-to-front ----

Bytes mtf_encode(const Bytes& in) {
    std::array<std::uint8_t, 256> list;
    std::iota(list.begin(), list.end(), 0);
    Bytes out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        std::uint8_t b = in[i];
        int pos = 0;
        while (list[pos] != b) ++pos;
        out[i] = static_cast<std::uint8_t>(pos);
        for (int j = pos; j > 0; --j) list[j] = list[j - 1];
        list[0] = b;
    }
    return out;
}

Bytes mtf_decode(const Bytes& in, std::uint64_t& steps) {
    std::array<std::uint8_t, 256> list;
    std::iota(list.begin(), list.end(), 0);
    Bytes out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        int pos = in[i];
        std::uint8_t b = list[pos];
        out[i] = b;
        for (int j = pos; j > 0; --j) list[j] = list[j - 1];
        list[0] = b;
        ++steps;  // one list access per symbol
    }
    return out;
}

// ---- zero run-length stage (post-MTF the stream is mostly zeros) ----

Bytes zrle_encode(const Bytes& in) {
    Bytes out;
    std::size_t i = 0;
    while (i < in.size()) {
        if (in[i] == 0) {
            std::size_t run = 1;
            while (i + run < in.size() && in[i + run] == 0) ++run;
            out.push_back(0);
            put_varint(out, run);
            i += run;
        } else {
            out.push_back(in[i++]);
        }
    }
    return out;
}

Bytes zrle_decode(const Bytes& in, std::uint64_t expected_len, std::uint64_t& steps) {
    Bytes out;
    out.reserve(expected_len);
    std::size_t pos = 0;
    while (pos < in.size()) {
        std::uint8_t b = in[pos++];
        if (b == 0) {
            std::uint64_t run = get_varint(in, pos);
            if (run == 0) throw format_error("zero-run token with zero length");
            if (out.size() + run > expected_len)
                throw format_error("bwt run stage overruns block length");
            out.insert(out.end(), run, std::uint8_t{0});
        } else {
            if (out.size() + 1 > expected_len)
                throw format_error("bwt run stage overruns block length");
            out.push_back(b);
        }
        ++steps;  // one token
    }
    if (out.size() != expected_len)
        throw format_error("bwt run stage underruns block length");
    return out;
}

// ---- canonical Huffman ----

void huffman_lengths(const std::array<std::uint64_t, 256>& freq,
                     std::array<std::uint8_t, 256>& lengths) {
    struct Node {
        std::uint64_t f;
        int id;  // leaves: symbol value; internal: 256+, in creation order
        int left = -1, right = -1;
    };
    std::vector<Node> nodes;
    std::vector<int> live;  // indices into nodes, kept as a min-heap
    for (int s = 0; s < 256; ++s)
        if (freq[s]) {
            live.push_back(static_cast<int>(nodes.size()));
            nodes.push_back({freq[s], s});
        }
    if (nodes.empty()) return;
    if (nodes.size() == 1) {
        lengths[nodes[0].id] = 1;
        return;
    }
    auto greater = [&](int a, int b) {
        if (nodes[a].f != nodes[b].f) return nodes[a].f > nodes[b].f;
        return nodes[a].id > nodes[b].id;  // deterministic tie-break
    };
    std::make_heap(live.begin(), live.end(), greater);
    int next_id = 256;
    while (live.size() > 1) {
        std::pop_heap(live.begin(), live.end(), greater);
        int a = live.back();
        live.pop_back();
        std::pop_heap(live.begin(), live.end(), greater);
        int b = live.back();
        live.pop_back();
        live.push_back(static_cast<int>(nodes.size()));
        nodes.push_back({nodes[a].f + nodes[b].f, next_id++, a, b});
        std::push_heap(live.begin(), live.end(), greater);
    }
    // depth-first walk for code lengths
    std::vector<std::pair<int, int>> stack{{live[0], 0}};
    while (!stack.empty()) {
        auto [i, depth] = stack.back();
        stack.pop_back();
        if (nodes[i].left < 0) {
            lengths[nodes[i].id] = static_cast<std::uint8_t>(depth);
        } else {
            stack.emplace_back(nodes[i].left, depth + 1);
            stack.emplace_back(nodes[i].right, depth + 1);
        }
    }
}

struct CanonicalCodes {
    std::array<std::uint32_t, 256> code{};
    std::array<std::uint8_t, 256> length{};
};

// Codes assigned in (length, symbol) order; throws if the length table
// violates the Kraft inequality.
CanonicalCodes canonical_codes(const std::array<std::uint8_t, 256>& lengths) {
    CanonicalCodes out;
    out.length = lengths;
    std::vector<int> syms;
    for (int s = 0; s < 256; ++s)
        if (lengths[s]) syms.push_back(s);
    std::sort(syms.begin(), syms.end(), [&](int a, int b) {
        return lengths[a] != lengths[b] ? lengths[a] < lengths[b] : a < b;
    });
    std::uint32_t code = 0;
    int prev_len = 0;
    for (int s : syms) {
        int len = lengths[s];
        if (len > 32) throw format_error("huffman code length exceeds 32 bits");
        if (prev_len) code = (code + 1) << (len - prev_len);
        if (len < 32 && code >> len) throw format_error("huffman length table violates Kraft bound");
        out.code[s] = code;
        prev_len = len;
    }
    return out;
}

struct BitWriter {
    Bytes bytes;
    std::uint8_t cur = 0;
    int nbits = 0;
    void put(std::uint32_t code, int len) {
        for (int b = len - 1; b >= 0; --b) {
            cur = static_cast<std::uint8_t>((cur << 1) | ((code >> b) & 1));
            if (++nbits == 8) {
                bytes.push_back(cur);
                cur = 0;
                nbits = 0;
            }
        }
    }
    void finish() {
        if (nbits) {
            bytes.push_back(static_cast<std::uint8_t>(cur << (8 - nbits)));
            cur = 0;
            nbits = 0;
        }
    }
};

struct BitReader {
    std::span<const std::uint8_t> bytes;
    std::size_t pos = 0;
    std::uint8_t cur = 0;
    int nbits = 0;
    int get() {
        if (nbits == 0) {
            if (pos >= bytes.size()) throw format_error("huffman bitstream truncated");
            cur = bytes[pos++];
            nbits = 8;
        }
        int b = (cur >> 7) & 1;
        cur = static_cast<std::uint8_t>(cur << 1);
        --nbits;
        return b;
    }
};

Bytes huffman_decode(std::span<const std::uint8_t> bits, const std::array<std::uint8_t, 256>& lengths,
                     std::uint64_t symbol_count, std::uint64_t& steps) {
    std::array<std::uint32_t, 33> count{};
    std::vector<std::uint8_t> syms;
    for (int s = 0; s < 256; ++s)
        if (lengths[s]) {
            if (lengths[s] > 32) throw format_error("huffman code length exceeds 32 bits");
            ++count[lengths[s]];
            syms.push_back(static_cast<std::uint8_t>(s));
        }
    if (syms.empty() && symbol_count > 0)
        throw format_error("huffman table empty but symbols declared");
    std::sort(syms.begin(), syms.end(), [&](std::uint8_t a, std::uint8_t b) {
        return lengths[a] != lengths[b] ? lengths[a] < lengths[b] : a < b;
    });
    std::array<std::uint64_t, 33> first_code{};
    std::array<std::uint32_t, 33> first_index{};
    std::uint64_t code = 0;
    std::uint32_t index = 0;
    for (int len = 1; len <= 32; ++len) {
        code <<= 1;
        first_code[len] = code;
        first_index[len] = index;
        code += count[len];
        index += count[len];
        if (code > (std::uint64_t(1) << len))
            throw format_error("huffman length table violates Kraft bound");
    }

    Bytes out;
    out.reserve(symbol_count);
    BitReader reader{bits};
    for (std::uint64_t i = 0; i < symbol_count; ++i) {
        std::uint64_t acc = 0;
        int len = 0;
        for (;;) {
            acc = (acc << 1) | static_cast<std::uint64_t>(reader.get());
            ++len;
            if (len > 32) throw format_error("invalid huffman code");
            if (count[len] && acc >= first_code[len] && acc - first_code[len] < count[len]) {
                out.push_back(syms[first_index[len] + (acc - first_code[len])]);
                break;
            }
        }
        ++steps;  // one symbol decoded
    }
    if (reader.pos != bits.size())
        throw format_error("huffman bitstream has trailing bytes");
    return out;
}

// ---- block assembly ----
//
// Block: varint block-length | varint primary-index | 256 code-length bytes |
//        varint symbol-count | varint bitstream-bytes | bitstream.

class BwtCodec final : public Codec {
public:
    CodecId id() const override { return CodecId::BwtChain; }
    std::string_view name() const override { return "bwt-chain"; }

    Bytes compress_payload(const Bytes& input) const override {
        Bytes out;
        for (std::size_t off = 0; off < input.size(); off += kBlock) {
            std::size_t len = std::min(kBlock, input.size() - off);
            compress_block(std::span(input).subspan(off, len), out);
        }
        return out;
    }

    DecodeResult decompress_payload(std::span<const std::uint8_t> payload,
                                    std::uint64_t original_len) const override {
        DecodeResult out;
        out.bytes.reserve(original_len);
        std::size_t pos = 0;
        while (pos < payload.size()) {
            std::uint64_t block_len = get_varint(payload, pos);
            if (block_len == 0 || block_len > kBlock)
                throw format_error("bwt block length out of range");
            std::uint64_t primary = get_varint(payload, pos);
            if (pos + 256 > payload.size()) throw format_error("bwt block table truncated");
            std::array<std::uint8_t, 256> lengths;
            std::copy_n(payload.begin() + pos, 256, lengths.begin());
            pos += 256;
            std::uint64_t symbol_count = get_varint(payload, pos);
            if (symbol_count == 0) throw format_error("bwt block with zero symbols");
            std::uint64_t bits_len = get_varint(payload, pos);
            if (pos + bits_len > payload.size())
                throw format_error("bwt block bitstream truncated");
            auto bits = payload.subspan(pos, bits_len);
            pos += bits_len;

            Bytes zrle = huffman_decode(bits, lengths, symbol_count, out.steps);
            Bytes mtf = zrle_decode(zrle, block_len, out.steps);
            Bytes last = mtf_decode(mtf, out.steps);
            Bytes block = bwt_inverse(last, primary, out.steps);
            if (out.bytes.size() + block.size() > original_len)
                throw format_error("bwt payload overruns declared length");
            out.bytes.insert(out.bytes.end(), block.begin(), block.end());
            out.steps += block.size();  // emits
        }
        if (out.bytes.size() != original_len)
            throw format_error("bwt payload underruns declared length");
        return out;
    }

private:
    static void compress_block(std::span<const std::uint8_t> block, Bytes& out) {
        BwtResult bwt = bwt_forward(block);
        Bytes zrle = zrle_encode(mtf_encode(bwt.last_column));

        std::array<std::uint64_t, 256> freq{};
        for (auto b : zrle) ++freq[b];
        std::array<std::uint8_t, 256> lengths{};
        huffman_lengths(freq, lengths);
        CanonicalCodes codes = canonical_codes(lengths);

        BitWriter writer;
        for (auto b : zrle) writer.put(codes.code[b], codes.length[b]);
        writer.finish();

        put_varint(out, block.size());
        put_varint(out, bwt.primary);
        out.insert(out.end(), lengths.begin(), lengths.end());
        put_varint(out, zrle.size());
        put_varint(out, writer.bytes.size());
        out.insert(out.end(), writer.bytes.begin(), writer.bytes.end());
    }
};

const BwtCodec kBwt;

} // namespace

const Codec& bwt_codec() { return kBwt; }

} // namespace odc::detail
