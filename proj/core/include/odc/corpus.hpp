#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "odc/bytes.hpp"

namespace odc {

/// Parameters of a synthetic text family: an order-k Markov chain over a
/// byte alphabet whose transition structure is a pure function of
/// (family_id, transition_seed). Distinct document seeds then produce
/// distinct members of the same family.
struct FamilySpec {
    std::string family_id;
    int order = 2;
    std::uint64_t transition_seed = 0;
    Bytes alphabet;

    void validate() const;  // order >= 1, alphabet non-empty
};

/// Initial row for the elementary cellular automaton generator.
enum class CaInit { SingleCenter, SeededRandomRow };

// Reference generators. All are pure functions of their parameters and
// reproduce byte-for-byte across runs and machines.

/// n pseudo-random bytes from splitmix64 seeded with `seed`.
ByteObject gen_random(std::uint64_t n, std::uint64_t seed);

/// n copies of b.
ByteObject gen_constant(std::uint64_t n, std::uint8_t b);

/// `pattern` repeated and truncated to exactly n bytes; empty pattern is an error.
ByteObject gen_periodic(const Bytes& pattern, std::uint64_t n);

/// First k binary digits of the fractional part of pi, packed big-endian
/// (first digit in the top bit of byte 0, final byte zero-padded).
/// Digits come from per-position hexadecimal digit extraction; no tables.
ByteObject gen_pi_bits(std::uint64_t k);

/// Elementary cellular automaton with cyclic boundary. Emits `steps`
/// evolved rows (the initial row is not part of the output), one bit per
/// cell, rows concatenated into a single big-endian bitstream.
ByteObject gen_ca(unsigned rule, std::size_t width, std::size_t steps, CaInit init,
                  std::uint64_t seed = 0);

/// n bytes from the family's Markov chain; doc_seed selects the member.
ByteObject gen_family(const FamilySpec& spec, std::uint64_t n, std::uint64_t doc_seed);

/// Raw hexadecimal digits of the fractional part of pi ('0'..'f'),
/// exposed for cross-checks; count = number of digits.
std::string pi_hex_fraction(std::size_t count);

} // namespace odc
