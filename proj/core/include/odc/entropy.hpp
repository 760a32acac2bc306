#pragma once

#include <cstdint>
#include <map>

#include "odc/bytes.hpp"

namespace odc {

// Empirical (or caller-supplied) distribution over byte values.
struct SymbolModel {
    std::map<std::uint8_t, double> probs;  // keyed by symbol, probabilities sum to 1

    void validate() const;  // throws if probs empty, any p <= 0, or sum off by > 1e-12
};

struct EntropyReport {
    std::uint64_t n = 0;          // number of symbols
    double bits_per_symbol = 0;   // H over the model
    double total_bits = 0;        // n * bits_per_symbol
};

// Empirical distribution of `data`. Throws on empty input.
SymbolModel symbol_frequencies(const Bytes& data);

// Shannon entropy of `data` under its empirical distribution.
EntropyReport shannon_entropy(const Bytes& data);

// Shannon entropy under an explicit model. Every symbol occurring in `data`
// must have nonzero model probability; otherwise throws.
EntropyReport shannon_entropy(const Bytes& data, const SymbolModel& model);

} // namespace odc
