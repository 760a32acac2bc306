#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "odc/bytes.hpp"
#include "odc/corpus.hpp"
#include "odc/depth.hpp"
#include "odc/kestimate.hpp"
#include "odc/rng.hpp"

namespace odc {

enum class EvoMode { Cumulative, Memoryless };

struct EvoConfig {
    EvoMode mode = EvoMode::Cumulative;
    std::uint64_t genome_length = 1024;
    FamilySpec target_family;          // hidden structured target, realized via gen_family
    std::uint64_t target_doc_seed = 0;
    std::uint64_t population = 2;      // CUMULATIVE: parent + offspring; MEMORYLESS: fresh draws
    double mutation_rate = 1.0;        // expected mutated bytes per offspring
    std::uint64_t generations = 1;
    std::uint64_t sample_every = 1;    // generations 1 and `generations` are always sampled
    std::uint64_t seed = 0;

    void validate() const;
};

struct TraceSample {
    std::uint64_t generation = 0;  // 1-based
    Bytes best_genome;
    double best_fitness = 0;
    double mean_fitness = 0;
};

struct EvolutionTrace {
    EvoConfig config;
    Bytes target;
    std::vector<TraceSample> samples;  // strictly increasing generations
};

// Matching positions / length. Lengths must agree and be nonzero.
double fitness(const Bytes& genome, const Bytes& target);

// Mutates an expected `rate` bytes; every touched byte changes (replacement
// drawn from the 255 other values), so rate equals the expected Hamming
// distance. rate 0 returns the genome unchanged.
Bytes mutate(const Bytes& genome, double rate, SplitMix64& rng);

EvolutionTrace run_evolution(const EvoConfig& cfg);

struct TrajectoryPoint {
    std::uint64_t generation = 0;
    double fitness = 0;
    ComplexityEstimate k;
    DepthEstimate depth;
};

struct ComplexityTrajectory {
    std::vector<TrajectoryPoint> points;
    SlowGrowthReport slow_growth;  // deltas empty when the trace has < 2 samples
};

// K and depth of every sampled best genome plus the slow-growth report over
// the depth-step sequence. Without an explicit bound, calibrates on the
// trace's target at the trace's mutation rate.
ComplexityTrajectory analyze_trace(const EvolutionTrace& trace,
                                   std::optional<std::uint64_t> bound = std::nullopt);

// 99th percentile (nearest-rank) of positive depth-step deltas over `trials`
// mutations of `base`, floored at 1 step.
std::uint64_t calibrate_bound(const Bytes& base, double rate, std::uint64_t seed,
                              std::size_t trials = 1000);

} // namespace odc
