#include "odc/codec.hpp"

#include <cstdio>

#include "codec_internal.hpp"
#include "odc/errors.hpp"
#include "odc/varint.hpp"

namespace odc {

namespace {

class LiteralCodec final : public Codec {
public:
    CodecId id() const override { return CodecId::Literal; }
    std::string_view name() const override { return "literal"; }

    Bytes compress_payload(const Bytes& input) const override { return input; }

    DecodeResult decompress_payload(std::span<const std::uint8_t> payload,
                                    std::uint64_t original_len) const override {
        if (payload.size() != original_len)
            throw format_error("literal payload length does not match declared length");
        DecodeResult out;
        out.bytes.assign(payload.begin(), payload.end());
        out.steps = original_len;  // one emit per byte
        return out;
    }
};

class RleCodec final : public Codec {
public:
    CodecId id() const override { return CodecId::Rle; }
    std::string_view name() const override { return "rle"; }

    Bytes compress_payload(const Bytes& input) const override {
        Bytes out;
        std::size_t i = 0;
        while (i < input.size()) {
            std::size_t run = 1;
            while (i + run < input.size() && input[i + run] == input[i]) ++run;
            out.push_back(input[i]);
            put_varint(out, run);
            i += run;
        }
        return out;
    }

    DecodeResult decompress_payload(std::span<const std::uint8_t> payload,
                                    std::uint64_t original_len) const override {
        DecodeResult out;
        out.bytes.reserve(original_len);
        std::size_t pos = 0;
        while (pos < payload.size()) {
            std::uint8_t value = payload[pos++];
            std::uint64_t run = get_varint(payload, pos);
            if (run == 0) throw format_error("rle token with zero run length");
            if (out.bytes.size() + run > original_len)
                throw format_error("rle payload overruns declared length");
            out.bytes.insert(out.bytes.end(), run, value);
            out.steps += run + 1;  // emits + one token
        }
        if (out.bytes.size() != original_len)
            throw format_error("rle payload underruns declared length");
        return out;
    }
};

const LiteralCodec kLiteral;
const RleCodec kRle;

} // namespace

const std::vector<CodecId>& codec_list() {
    static const std::vector<CodecId> ids{CodecId::Literal, CodecId::Rle, CodecId::Lz,
                                          CodecId::BwtChain};
    return ids;
}

const Codec& codec_ref(CodecId id) {
    switch (id) {
        case CodecId::Literal: return kLiteral;
        case CodecId::Rle: return kRle;
        case CodecId::Lz: return detail::lz_codec();
        case CodecId::BwtChain: return detail::bwt_codec();
    }
    throw error("unknown codec id " + std::to_string(static_cast<unsigned>(id)));
}

std::string_view codec_name(CodecId id) { return codec_ref(id).name(); }

std::optional<CodecId> codec_from_name(std::string_view name) {
    for (CodecId id : codec_list())
        if (codec_ref(id).name() == name) return id;
    return std::nullopt;
}

Bytes compress(const Bytes& input, CodecId codec) {
    const Codec& c = codec_ref(codec);  // validates the id
    Bytes out(kContainerMagic.begin(), kContainerMagic.end());
    out.push_back(kContainerVersion);
    out.push_back(static_cast<std::uint8_t>(codec));
    put_varint(out, input.size());
    Bytes payload = c.compress_payload(input);
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

ContainerInfo parse_container(std::span<const std::uint8_t> container) {
    if (container.size() < kContainerMagic.size() + 3)
        throw format_error("container truncated: " + std::to_string(container.size()) +
                           " bytes is too short for a header");
    for (std::size_t i = 0; i < kContainerMagic.size(); ++i) {
        if (container[i] != kContainerMagic[i]) {
            char buf[96];
            std::snprintf(buf, sizeof buf,
                          "bad container magic: byte %zu is 0x%02X, expected 0x%02X", i,
                          container[i], kContainerMagic[i]);
            throw format_error(buf);
        }
    }
    if (container[4] != kContainerVersion)
        throw format_error("unsupported container version " + std::to_string(container[4]));
    std::uint8_t codec_byte = container[5];
    bool known = false;
    for (CodecId id : codec_list()) known |= static_cast<std::uint8_t>(id) == codec_byte;
    if (!known) throw format_error("unknown codec id " + std::to_string(codec_byte));

    ContainerInfo info;
    info.codec = static_cast<CodecId>(codec_byte);
    std::size_t pos = 6;
    info.original_len = get_varint(container, pos);
    info.payload_offset = pos;
    return info;
}

DecodeResult decompress(std::span<const std::uint8_t> container) {
    ContainerInfo info = parse_container(container);
    auto payload = container.subspan(info.payload_offset);
    DecodeResult out = codec_ref(info.codec).decompress_payload(payload, info.original_len);
    if (out.bytes.size() != info.original_len)
        throw format_error("decoded length does not match container header");
    return out;
}

} // namespace odc
