#include "odc/evosim.hpp"

#include <algorithm>
#include <cmath>

#include "odc/errors.hpp"

namespace odc {

void EvoConfig::validate() const {
    if (genome_length < 1) throw error("genome length must be >= 1");
    if (population < 2) throw error("population must be >= 2");
    if (!(mutation_rate > 0)) throw error("mutation rate must be positive");
    if (generations < 1) throw error("generations must be >= 1");
    if (sample_every < 1) throw error("sample stride must be >= 1");
    target_family.validate();
}

double fitness(const Bytes& genome, const Bytes& target) {
    if (genome.size() != target.size()) throw error("genome/target length mismatch");
    if (genome.empty()) throw error("fitness of empty genome is undefined");
    std::size_t matches = 0;
    for (std::size_t i = 0; i < genome.size(); ++i) matches += genome[i] == target[i];
    return double(matches) / double(genome.size());
}

namespace {

struct Edit {
    std::uint32_t pos;
    std::uint8_t value;  // always differs from the byte it replaces
};

// Binomial mutation count by CDF inversion, then distinct positions by
// rejection. Equivalent to independent per-byte Bernoulli(rate/n) trials.
std::size_t draw_mutation_count(std::size_t n, double rate, SplitMix64& rng) {
    double p = rate / double(n);
    if (p >= 1.0) return n;
    double u = rng.next_unit();
    double q = 1.0 - p;
    double pmf = std::pow(q, double(n));
    double cdf = pmf;
    std::size_t k = 0;
    while (cdf < u && k < n) {
        pmf *= (double(n - k) / double(k + 1)) * (p / q);
        cdf += pmf;
        ++k;
    }
    return k;
}

std::vector<Edit> mutation_patch(const Bytes& genome, double rate, SplitMix64& rng) {
    const std::size_t n = genome.size();
    std::size_t k = draw_mutation_count(n, rate, rng);
    std::vector<Edit> patch;
    patch.reserve(k);
    std::vector<bool> used(k ? n : 0, false);
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t pos;
        do {
            pos = rng.next_below(n);
        } while (used[pos]);
        used[pos] = true;
        std::uint8_t old = genome[pos];
        std::uint64_t r = rng.next_below(255);  // skip the current value
        std::uint8_t value = static_cast<std::uint8_t>(r >= old ? r + 1 : r);
        patch.push_back({static_cast<std::uint32_t>(pos), value});
    }
    return patch;
}

std::uint64_t match_count(const Bytes& genome, const Bytes& target) {
    std::uint64_t matches = 0;
    for (std::size_t i = 0; i < genome.size(); ++i) matches += genome[i] == target[i];
    return matches;
}

bool sampled_at(const EvoConfig& cfg, std::uint64_t g) {
    return g == 1 || g == cfg.generations || g % cfg.sample_every == 0;
}

void record_sample(EvolutionTrace& trace, std::uint64_t g, const Bytes& best,
                   std::uint64_t best_matches, double mean_matches) {
    const double n = double(trace.config.genome_length);
    trace.samples.push_back({g, best, double(best_matches) / n, mean_matches / n});
}

EvolutionTrace run_cumulative(const EvoConfig& cfg, const Bytes& target) {
    EvolutionTrace trace{cfg, target, {}};
    const std::size_t n = target.size();
    const Bytes& alphabet = cfg.target_family.alphabet;

    // The founder population is drawn over the target's alphabet so the best
    // genome is alphabet-typical text from the start; see docs/format.md.
    Bytes parent(n);
    std::uint64_t parent_matches = 0;
    Bytes candidate(n);
    for (std::uint64_t i = 0; i < cfg.population; ++i) {
        SplitMix64 rng(derive_seed(cfg.seed, 0, i));
        for (auto& b : candidate) b = alphabet[rng.next_below(alphabet.size())];
        std::uint64_t matches = match_count(candidate, target);
        if (i == 0 || matches > parent_matches) {
            parent = candidate;
            parent_matches = matches;
        }
    }

    const std::uint64_t offspring = cfg.population - 1;
    std::vector<Edit> best_patch;
    for (std::uint64_t g = 1; g <= cfg.generations; ++g) {
        std::uint64_t best_matches = parent_matches;  // accept strictly better only
        bool improved = false;
        double mean_acc = double(parent_matches);     // parent is part of the population
        for (std::uint64_t i = 0; i < offspring; ++i) {
            SplitMix64 rng(derive_seed(cfg.seed, g, i));
            std::vector<Edit> patch = mutation_patch(parent, cfg.mutation_rate, rng);
            std::int64_t delta = 0;
            for (const Edit& e : patch) {
                delta -= parent[e.pos] == target[e.pos];
                delta += e.value == target[e.pos];
            }
            std::uint64_t matches = std::uint64_t(std::int64_t(parent_matches) + delta);
            mean_acc += double(matches);
            if (matches > best_matches) {
                best_matches = matches;
                best_patch = std::move(patch);
                improved = true;
            }
        }
        if (improved) {
            for (const Edit& e : best_patch) parent[e.pos] = e.value;
            parent_matches = best_matches;
        }
        if (sampled_at(cfg, g))
            record_sample(trace, g, parent, parent_matches, mean_acc / double(cfg.population));
    }
    return trace;
}

EvolutionTrace run_memoryless(const EvoConfig& cfg, const Bytes& target) {
    EvolutionTrace trace{cfg, target, {}};
    const std::size_t n = target.size();
    Bytes genome(n), best(n);
    // Generations are seeded independently (counter-based), and nothing is
    // inherited, so generations that produce no sample are skipped outright:
    // the recorded trace is identical either way.
    for (std::uint64_t g = 1; g <= cfg.generations; ++g) {
        if (!sampled_at(cfg, g)) continue;
        std::uint64_t best_matches = 0;
        double mean_acc = 0;
        for (std::uint64_t i = 0; i < cfg.population; ++i) {
            SplitMix64 rng(derive_seed(cfg.seed, g, i));
            rng.fill(genome);
            std::uint64_t matches = match_count(genome, target);
            mean_acc += double(matches);
            if (i == 0 || matches > best_matches) {
                best_matches = matches;
                best.swap(genome);
            }
        }
        record_sample(trace, g, best, best_matches, mean_acc / double(cfg.population));
    }
    return trace;
}

} // namespace

Bytes mutate(const Bytes& genome, double rate, SplitMix64& rng) {
    if (rate < 0) throw error("mutation rate must be non-negative");
    if (rate == 0 || genome.empty()) return genome;
    Bytes out = genome;
    for (const Edit& e : mutation_patch(genome, rate, rng)) out[e.pos] = e.value;
    return out;
}

EvolutionTrace run_evolution(const EvoConfig& cfg) {
    cfg.validate();
    ByteObject target = gen_family(cfg.target_family, cfg.genome_length, cfg.target_doc_seed);
    return cfg.mode == EvoMode::Cumulative ? run_cumulative(cfg, target.bytes)
                                           : run_memoryless(cfg, target.bytes);
}

std::uint64_t calibrate_bound(const Bytes& base, double rate, std::uint64_t seed,
                              std::size_t trials) {
    if (base.empty()) throw error("calibration base genome is empty");
    if (trials < 1) throw error("calibration needs at least 1 trial");
    const std::uint64_t base_steps = depth_estimate(base).steps;
    std::vector<std::uint64_t> deltas(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng(derive_seed(seed, t));
        Bytes mutant = mutate(base, rate, rng);
        std::uint64_t steps = depth_estimate(mutant).steps;
        deltas[t] = steps > base_steps ? steps - base_steps : 0;
    }
    std::sort(deltas.begin(), deltas.end());
    std::size_t idx = (trials * 99 + 99) / 100;  // ceil(0.99 * trials)
    idx = std::min(idx, trials) - 1;
    return std::max<std::uint64_t>(deltas[idx], 1);
}

ComplexityTrajectory analyze_trace(const EvolutionTrace& trace,
                                   std::optional<std::uint64_t> bound) {
    if (trace.samples.empty()) throw error("cannot analyze an empty trace");
    ComplexityTrajectory traj;
    for (const TraceSample& s : trace.samples) {
        TrajectoryPoint p;
        p.generation = s.generation;
        p.fitness = s.best_fitness;
        p.k = k_estimate(s.best_genome);
        p.depth = depth_estimate(s.best_genome);
        traj.points.push_back(std::move(p));
    }
    std::uint64_t b = bound ? *bound
                            : calibrate_bound(trace.target, trace.config.mutation_rate,
                                              derive_seed(trace.config.seed, 0xB0D), 1000);
    if (traj.points.size() >= 2) {
        std::vector<std::uint64_t> steps;
        steps.reserve(traj.points.size());
        for (const TrajectoryPoint& p : traj.points) steps.push_back(p.depth.steps);
        traj.slow_growth = slow_growth_check(steps, b);
    } else {
        traj.slow_growth.bound = b;
    }
    return traj;
}

} // namespace odc
