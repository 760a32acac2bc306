#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace odc {

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data);
std::string sha256_hex(std::span<const std::uint8_t> data);

} // namespace odc
