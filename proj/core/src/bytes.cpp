#include "odc/bytes.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "odc/errors.hpp"

namespace odc {

std::string Provenance::describe() const {
    std::string s = origin;
    if (!params.empty()) {
        s += "(";
        bool first = true;
        for (const auto& [k, v] : params) {
            if (!first) s += ",";
            s += k + "=" + v;
            first = false;
        }
        s += ")";
    }
    return s;
}

ByteObject make_object(Bytes bytes, std::string label, Provenance prov) {
    if (prov.origin.empty()) throw error("byte object requires provenance");
    return ByteObject{std::move(bytes), std::move(label), std::move(prov)};
}

ByteObject load_file(const std::string& path) {
    std::error_code ec;
    if (std::filesystem::is_directory(path, ec))
        throw io_error("cannot load directory: " + path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path);
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw io_error("read failure: " + path);
    return make_object(std::move(data), std::filesystem::path(path).filename().string(),
                       Provenance{"file", {{"path", path}}});
}

void save_file(const std::string& path, const Bytes& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("write failure: " + path);
}

std::string to_hex(const Bytes& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

static int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw error(std::string("invalid hex digit: ") + c);
}

Bytes from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw error("hex string has odd length");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        out.push_back(static_cast<std::uint8_t>(hex_val(hex[i]) * 16 + hex_val(hex[i + 1])));
    return out;
}

} // namespace odc
