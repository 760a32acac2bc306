#include "odc/corpus.hpp"

#include <algorithm>
#include <string>

#include "odc/errors.hpp"
#include "odc/rng.hpp"

namespace odc {

void FamilySpec::validate() const {
    if (order < 1) throw error("family order must be >= 1");
    if (alphabet.empty()) throw error("family alphabet must be non-empty");
}

ByteObject gen_random(std::uint64_t n, std::uint64_t seed) {
    Bytes data(n);
    SplitMix64 rng(seed);
    rng.fill(data);
    return make_object(std::move(data), "random",
                       Provenance{"gen_random",
                                  {{"n", std::to_string(n)}, {"seed", std::to_string(seed)}}});
}

ByteObject gen_constant(std::uint64_t n, std::uint8_t b) {
    return make_object(Bytes(n, b), "constant",
                       Provenance{"gen_constant",
                                  {{"n", std::to_string(n)}, {"byte", std::to_string(b)}}});
}

ByteObject gen_periodic(const Bytes& pattern, std::uint64_t n) {
    if (pattern.empty()) throw error("gen_periodic: empty pattern");
    Bytes data(n);
    for (std::uint64_t i = 0; i < n; ++i) data[i] = pattern[i % pattern.size()];
    return make_object(std::move(data), "periodic",
                       Provenance{"gen_periodic",
                                  {{"pattern_hex", to_hex(pattern)}, {"n", std::to_string(n)}}});
}

ByteObject gen_pi_bits(std::uint64_t k) {
    if (k < 1) throw error("gen_pi_bits: k must be >= 1");
    const std::size_t digits = static_cast<std::size_t>((k + 3) / 4);
    std::string hex = pi_hex_fraction(digits);
    Bytes data((k + 7) / 8, 0);
    for (std::uint64_t bit = 0; bit < k; ++bit) {
        char c = hex[bit / 4];
        int v = c <= '9' ? c - '0' : c - 'a' + 10;
        int b = (v >> (3 - bit % 4)) & 1;
        if (b) data[bit / 8] |= static_cast<std::uint8_t>(0x80u >> (bit % 8));
    }
    return make_object(std::move(data), "pi",
                       Provenance{"gen_pi_bits", {{"bits", std::to_string(k)}}});
}

ByteObject gen_ca(unsigned rule, std::size_t width, std::size_t steps, CaInit init,
                  std::uint64_t seed) {
    if (rule > 255) throw error("gen_ca: rule must be 0..255");
    if (width < 3) throw error("gen_ca: width must be >= 3");
    if (steps < 1) throw error("gen_ca: steps must be >= 1");

    std::vector<std::uint8_t> row(width, 0);
    if (init == CaInit::SingleCenter) {
        row[width / 2] = 1;
    } else {
        SplitMix64 rng(seed);
        std::uint8_t byte = 0;
        int have = 0;
        for (std::size_t i = 0; i < width; ++i) {
            if (have == 0) {
                byte = rng.next_byte();
                have = 8;
            }
            row[i] = (byte >> 7) & 1;  // consume bits MSB-first
            byte <<= 1;
            --have;
        }
    }

    Bytes data((width * steps + 7) / 8, 0);
    std::vector<std::uint8_t> next(width);
    std::size_t bit = 0;
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < width; ++i) {
            std::uint8_t l = row[(i + width - 1) % width];
            std::uint8_t c = row[i];
            std::uint8_t r = row[(i + 1) % width];
            unsigned v = (l << 2) | (c << 1) | r;
            next[i] = (rule >> v) & 1;
        }
        row.swap(next);
        for (std::size_t i = 0; i < width; ++i, ++bit)
            if (row[i]) data[bit / 8] |= static_cast<std::uint8_t>(0x80u >> (bit % 8));
    }
    return make_object(std::move(data), "ca",
                       Provenance{"gen_ca",
                                  {{"rule", std::to_string(rule)},
                                   {"width", std::to_string(width)},
                                   {"steps", std::to_string(steps)},
                                   {"init", init == CaInit::SingleCenter ? "center" : "random"},
                                   {"seed", std::to_string(seed)}}});
}

namespace {

// Per-context successor pair. The chain is deliberately sparse: from any
// context only two symbols can follow, at 85%/15%, so family members are
// low-entropy and share n-gram structure.
struct Successors {
    std::uint8_t hi, lo;
};

Successors context_successors(std::uint64_t family_key, const Bytes& alphabet,
                              std::uint64_t context_hash) {
    std::uint64_t h = mix64(family_key ^ context_hash);
    auto a = alphabet[h % alphabet.size()];
    auto b = alphabet[(h >> 32) % alphabet.size()];
    return Successors{a, b};
}

} // namespace

ByteObject gen_family(const FamilySpec& spec, std::uint64_t n, std::uint64_t doc_seed) {
    spec.validate();
    if (n < 1) throw error("gen_family: n must be >= 1");

    const std::uint64_t family_key =
        derive_seed(spec.transition_seed, fnv1a64(spec.family_id),
                    static_cast<std::uint64_t>(spec.order));
    SplitMix64 doc_rng(derive_seed(family_key, 0x0D0CULL, doc_seed));

    const std::size_t k = static_cast<std::size_t>(spec.order);
    Bytes data;
    data.reserve(n);
    // Seed context: k symbols drawn uniformly from the alphabet.
    for (std::size_t i = 0; i < k && data.size() < n; ++i)
        data.push_back(spec.alphabet[doc_rng.next_below(spec.alphabet.size())]);

    // Rolling polynomial hash of the last k symbols.
    auto context_hash = [&](std::size_t end) {
        std::uint64_t h = 0xFEEDFACE8BADF00DULL;
        for (std::size_t i = end - k; i < end; ++i) h = h * 0x100000001B3ULL + data[i];
        return h;
    };

    while (data.size() < n) {
        auto succ = context_successors(family_key, spec.alphabet, context_hash(data.size()));
        double u = doc_rng.next_unit();
        data.push_back(u < 0.85 ? succ.hi : succ.lo);
    }
    return make_object(std::move(data), spec.family_id,
                       Provenance{"gen_family",
                                  {{"family", spec.family_id},
                                   {"order", std::to_string(spec.order)},
                                   {"transition_seed", std::to_string(spec.transition_seed)},
                                   {"alphabet_hex", to_hex(spec.alphabet)},
                                   {"n", std::to_string(n)},
                                   {"doc_seed", std::to_string(doc_seed)}}});
}

} // namespace odc
