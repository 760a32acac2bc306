#include "odc/depth.hpp"

#include <algorithm>
#include <chrono>

#include "odc/errors.hpp"
#include "odc/kestimate.hpp"

namespace odc {

void TimingProtocol::validate() const {
    if (repetitions < 5) throw error("timing protocol requires at least 5 repetitions");
    if (warmups < 1) throw error("timing protocol requires at least 1 warmup");
}

namespace {

DepthEstimate estimate_steps(const Bytes& data) {
    DepthEstimate est;
    std::uint64_t best_bits = 0;
    bool first = true;
    std::vector<std::pair<CodecId, std::uint64_t>> sizes;
    for (CodecId id : codec_list()) {
        Bytes container = compress(data, id);
        std::uint64_t bits = std::uint64_t(container.size()) * 8;
        std::uint64_t steps = decompress(container).steps;
        est.per_codec_steps.emplace_back(id, steps);
        sizes.emplace_back(id, bits);
        if (first || bits < best_bits) {
            best_bits = bits;
            est.best_codec = id;
            est.steps = steps;
            first = false;
        }
    }
    est.steps_per_byte = data.empty() ? 0.0 : double(est.steps) / double(data.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i].first == est.best_codec) continue;
        if (double(sizes[i].second) > 1.05 * double(best_bits)) continue;
        double other = double(est.per_codec_steps[i].second);
        double best = double(est.steps);
        if (std::abs(other - best) > 0.10 * best) est.ambiguous = true;
    }
    return est;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

DepthEstimate depth_estimate(const Bytes& data) { return estimate_steps(data); }

DepthEstimate depth_estimate(const Bytes& data, const TimingProtocol& timing) {
    timing.validate();
    DepthEstimate est = estimate_steps(data);
    est.wallclock = wallclock_measure(compress(data, est.best_codec), timing);
    return est;
}

WallclockStats wallclock_measure(std::span<const std::uint8_t> container,
                                 const TimingProtocol& timing) {
    timing.validate();
    using clock = std::chrono::steady_clock;
    for (unsigned i = 0; i < timing.warmups; ++i) (void)decompress(container);
    std::vector<double> runs;
    runs.reserve(timing.repetitions);
    for (unsigned i = 0; i < timing.repetitions; ++i) {
        auto t0 = clock::now();
        (void)decompress(container);
        auto t1 = clock::now();
        runs.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    WallclockStats stats;
    stats.median_s = median_of(runs);
    for (auto& r : runs) r = std::abs(r - stats.median_s);
    stats.mad_s = median_of(runs);
    stats.repetitions = timing.repetitions;
    stats.warmups = timing.warmups;
    return stats;
}

SlowGrowthReport slow_growth_check(std::span<const std::uint64_t> depths, std::uint64_t bound) {
    if (depths.size() < 2) throw error("slow-growth check needs at least 2 step counts");
    if (bound == 0) throw error("slow-growth bound must be positive");
    SlowGrowthReport rep;
    rep.bound = bound;
    rep.deltas.reserve(depths.size() - 1);
    for (std::size_t i = 0; i + 1 < depths.size(); ++i) {
        std::uint64_t d = depths[i + 1] > depths[i] ? depths[i + 1] - depths[i] : 0;
        rep.deltas.push_back(d);
        rep.max_delta = std::max(rep.max_delta, d);
        if (d > bound) rep.violations.push_back(i);
    }
    return rep;
}

} // namespace odc
