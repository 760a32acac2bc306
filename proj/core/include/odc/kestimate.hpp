#pragma once

#include <cstdint>
#include <vector>

#include "odc/bytes.hpp"
#include "odc/codec.hpp"

namespace odc {

// Ensemble-best compressed size as the complexity proxy. Sizes are whole
// containers (header included) in bits.
struct ComplexityEstimate {
    std::uint64_t original_bits = 0;
    std::vector<std::pair<CodecId, std::uint64_t>> per_codec;  // registry order, container bits
    CodecId best_codec = CodecId::Literal;
    std::uint64_t best_bits = 0;
    double ratio = 0;  // best_bits / original_bits; 0 when the input is empty
};

ComplexityEstimate k_estimate(const Bytes& data);

// Convenience: best container bits per original byte.
double k_rate(const ComplexityEstimate& est);

} // namespace odc
