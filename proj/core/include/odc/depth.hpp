#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "odc/bytes.hpp"
#include "odc/codec.hpp"

namespace odc {

struct TimingProtocol {
    unsigned warmups = 1;
    unsigned repetitions = 5;

    void validate() const;  // repetitions >= 5, warmups >= 1
};

struct WallclockStats {
    double median_s = 0;
    double mad_s = 0;  // median absolute deviation
    unsigned repetitions = 0;
    unsigned warmups = 0;
};

// Decompression work of the ensemble-best container. `steps` is the
// deterministic clock; wall-clock is advisory and optional.
struct DepthEstimate {
    CodecId best_codec = CodecId::Literal;
    std::uint64_t steps = 0;
    double steps_per_byte = 0;  // 0 for the empty object
    std::vector<std::pair<CodecId, std::uint64_t>> per_codec_steps;  // registry order
    // True when another codec compresses to within 5% of the best size but
    // its step count differs from the best by more than 10% — the depth
    // proxy is then sensitive to the ensemble choice.
    bool ambiguous = false;
    std::optional<WallclockStats> wallclock;
};

DepthEstimate depth_estimate(const Bytes& data);
DepthEstimate depth_estimate(const Bytes& data, const TimingProtocol& timing);

WallclockStats wallclock_measure(std::span<const std::uint8_t> container,
                                 const TimingProtocol& timing);

struct SlowGrowthReport {
    std::vector<std::uint64_t> deltas;  // positive-part step increases between neighbors
    std::uint64_t max_delta = 0;
    std::uint64_t bound = 0;
    std::vector<std::size_t> violations;  // indices i with deltas[i] > bound
};

// Requires at least two entries and a positive bound.
SlowGrowthReport slow_growth_check(std::span<const std::uint64_t> depths, std::uint64_t bound);

} // namespace odc
