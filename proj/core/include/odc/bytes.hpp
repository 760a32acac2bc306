#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace odc {

using Bytes = std::vector<std::uint8_t>;

/// Where a byte object came from: a named generator with its parameters,
/// or a file path. Never empty; anonymous objects are not allowed.
struct Provenance {
    std::string origin;  // generator name, or "file"
    std::vector<std::pair<std::string, std::string>> params;

    std::string describe() const;
};

/// A finite byte sequence with a label and provenance. The unit every
/// measure in this library operates on.
struct ByteObject {
    Bytes bytes;
    std::string label;
    Provenance provenance;

    std::size_t size() const { return bytes.size(); }
    bool empty() const { return bytes.empty(); }
};

ByteObject make_object(Bytes bytes, std::string label, Provenance prov);

/// Reads a regular file verbatim. Missing, unreadable, or directory
/// paths raise io_error naming the path.
ByteObject load_file(const std::string& path);

/// Writes bytes to a file, overwriting; io_error on failure.
void save_file(const std::string& path, const Bytes& bytes);

std::string to_hex(const Bytes& bytes);
Bytes from_hex(const std::string& hex);

} // namespace odc
