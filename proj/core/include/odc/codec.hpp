#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "odc/bytes.hpp"

namespace odc {

// Registry order doubles as the tie-break order for ensemble selection.
enum class CodecId : std::uint8_t {
    Literal = 0,
    Rle = 1,
    Lz = 2,
    BwtChain = 3,
};

inline constexpr std::array<std::uint8_t, 4> kContainerMagic{0x4F, 0x44, 0x43, 0x31};  // "ODC1"
inline constexpr std::uint8_t kContainerVersion = 0x01;

struct DecodeResult {
    Bytes bytes;
    std::uint64_t steps = 0;  // deterministic work units per the codec's step schedule
};

// A codec maps raw bytes to a container payload and back. Containers add the
// self-describing header; payload formats and step schedules are frozen in
// docs/format.md.
class Codec {
public:
    virtual ~Codec() = default;
    virtual CodecId id() const = 0;
    virtual std::string_view name() const = 0;
    virtual Bytes compress_payload(const Bytes& input) const = 0;
    // Must consume the whole payload, reproduce exactly original_len bytes,
    // and tally steps; throws format_error on malformed payloads.
    virtual DecodeResult decompress_payload(std::span<const std::uint8_t> payload,
                                            std::uint64_t original_len) const = 0;
};

const std::vector<CodecId>& codec_list();
const Codec& codec_ref(CodecId id);                          // throws on unknown id
std::string_view codec_name(CodecId id);
std::optional<CodecId> codec_from_name(std::string_view name);

// Full container: magic, version byte, codec-id byte, varint original
// length, payload.
Bytes compress(const Bytes& input, CodecId codec);

struct ContainerInfo {
    CodecId codec;
    std::uint64_t original_len = 0;
    std::size_t payload_offset = 0;  // payload = container bytes from here to end
};

ContainerInfo parse_container(std::span<const std::uint8_t> container);
DecodeResult decompress(std::span<const std::uint8_t> container);

} // namespace odc
