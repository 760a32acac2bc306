#include "doctest.h"

#include <cstdint>
#include <vector>

#include "odc/bytes.hpp"
#include "odc/errors.hpp"
#include "odc/varint.hpp"
#include "test_support.hpp"

using namespace odc;

TEST_CASE("hex round-trips and rejects malformed input") {
    Bytes data = {0x00, 0x0F, 0xA5, 0xFF};
    std::string hex = to_hex(data);
    CHECK(hex == "000fa5ff");
    CHECK(from_hex(hex) == data);
    CHECK(from_hex("") == Bytes{});
    CHECK(from_hex("ABcd") == Bytes{0xAB, 0xCD});

    CHECK_THROWS_AS(from_hex("abc"), error);   // odd length
    CHECK_THROWS_AS(from_hex("zz"), error);    // non-hex digit
}

TEST_CASE("make_object keeps label and provenance, and requires an origin") {
    ByteObject obj = make_object({1, 2, 3}, "unit", Provenance{"test", {{"n", "3"}}});
    CHECK(obj.bytes == Bytes{1, 2, 3});
    CHECK(obj.label == "unit");
    CHECK(obj.provenance.origin == "test");
    CHECK(obj.provenance.describe() == "test(n=3)");
    CHECK_THROWS_AS(make_object({1}, "x", Provenance{}), error);
}

TEST_CASE("file io round-trips and surfaces errors") {
    test_support::TempDir dir("bytes");
    Bytes payload = {0xDE, 0xAD, 0xBE, 0xEF, 0x00};
    save_file(dir.file("x.bin"), payload);
    ByteObject loaded = load_file(dir.file("x.bin"));
    CHECK(loaded.bytes == payload);
    CHECK(loaded.label == "x.bin");
    CHECK(loaded.provenance.origin == "file");

    save_file(dir.file("empty.bin"), {});
    CHECK(load_file(dir.file("empty.bin")).bytes.empty());

    CHECK_THROWS_AS(load_file(dir.file("missing.bin")), io_error);
    CHECK_THROWS_AS(load_file(dir.path().string()), io_error);  // directory, not file
}

TEST_CASE("varint encodes LEB128 with the documented boundary values") {
    auto enc = [](std::uint64_t v) {
        Bytes out;
        put_varint(out, v);
        return out;
    };
    CHECK(enc(0) == Bytes{0x00});
    CHECK(enc(1) == Bytes{0x01});
    CHECK(enc(127) == Bytes{0x7F});
    CHECK(enc(128) == Bytes{0x80, 0x01});
    CHECK(enc(300) == Bytes{0xAC, 0x02});
    CHECK(enc(1000) == Bytes{0xE8, 0x07});
    CHECK(enc(0xFFFFFFFFFFFFFFFFULL).size() == 10);
    CHECK(varint_size(0) == 1);
    CHECK(varint_size(127) == 1);
    CHECK(varint_size(128) == 2);
    CHECK(varint_size(0xFFFFFFFFFFFFFFFFULL) == 10);
}

TEST_CASE("varint round-trips across magnitude boundaries") {
    std::vector<std::uint64_t> values = {0, 1, 127, 128, 255, 16383, 16384,
                                         1000000, 0x7FFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL};
    Bytes buf;
    for (auto v : values) put_varint(buf, v);
    std::size_t pos = 0;
    for (auto v : values) CHECK(get_varint(buf, pos) == v);
    CHECK(pos == buf.size());
}

TEST_CASE("varint decoding rejects truncation and overlong encodings") {
    Bytes truncated = {0x80};  // continuation bit set, no following byte
    std::size_t pos = 0;
    CHECK_THROWS_AS(get_varint(truncated, pos), format_error);

    Bytes overlong(10, 0xFF);
    overlong.push_back(0x7F);  // an 11th group would shift past 64 bits
    pos = 0;
    CHECK_THROWS_AS(get_varint(overlong, pos), format_error);

    Bytes empty;
    pos = 0;
    CHECK_THROWS_AS(get_varint(empty, pos), format_error);
}
