#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "supershape/genome.hpp"
#include "supershape/novelty.hpp"
#include "supershape/rng.hpp"
#include "supershape/scoring.hpp"

namespace supershape {

struct GAConfig {
    std::size_t population_size = 40;
    double mutation_rate = 0.1;
    double selection_rate = 0.5;
    std::size_t generations = 30;
    std::uint64_t rng_seed = 0;
    GeneBounds gene_bounds = default_gene_bounds();
    std::size_t elitism = 1;

    void validate() const;  // throws Error{invalid_config}

    // min(ceil(selection_rate * N), N - elitism)
    std::size_t survivor_count() const;
    std::size_t offspring_count() const { return population_size - elitism - survivor_count(); }
};

struct ScoredGenome {
    Genome genome;
    Fitness fitness;
};

struct GenerationRecord {
    std::size_t index = 0;
    std::vector<ScoredGenome> scored;
    std::size_t best_index = 0;
    // Engine state after evaluating this generation and before breeding the next.
    std::string rng_state;
    std::string rng_state_digest;

    const ScoredGenome& best() const { return scored.at(best_index); }
};

std::vector<Genome> init_population(const GAConfig& config, Rng& rng);
// Same as above with a fresh Rng(config.rng_seed).
std::vector<Genome> init_population(const GAConfig& config);

// Raw fitness with invalid entries replaced by (minimum valid raw - 1);
// all zeros when nothing is valid.
std::vector<double> effective_raw(std::span<const ScoredGenome> scored);

// Shifted roulette weights w_i = raw_i - min + eps, eps = 1e-6 * (max - min + 1).
std::vector<double> shifted_weights(std::span<const double> raw);

// Index of the highest effective raw, lowest index on ties.
std::size_t best_index(std::span<const ScoredGenome> scored);

// Fitness-proportionate sampling with replacement over explicit positive weights.
// Throws Error{empty_population} on an empty wheel.
std::vector<std::size_t> roulette_wheel(std::span<const double> weights, std::size_t count, Rng& rng);

// Roulette over shifted_weights(effective_raw(scored)).
std::vector<Genome> roulette_select(std::span<const ScoredGenome> scored, std::size_t count, Rng& rng);

// Each gene mutates with probability mutation_rate by N(0, (0.1 * range)^2)
// noise, then clamps to its range.
Genome mutate(const Genome& genome, const GAConfig& config, Rng& rng);

using GenomeEvaluator = std::function<Fitness(const Genome&)>;
using BatchEvaluator = std::function<std::vector<Fitness>(std::span<const Genome>)>;

// One evaluator call per genome, spread across OpenMP threads. The evaluator
// must be thread-safe; exceptions become invalid fitness.
std::vector<Fitness> evaluate_parallel(std::span<const Genome> genomes, const GenomeEvaluator& evaluator);
std::vector<Fitness> evaluate_serial(std::span<const Genome> genomes, const GenomeEvaluator& evaluator);
BatchEvaluator parallel_batch(GenomeEvaluator evaluator);

GenerationRecord evaluate_generation(std::size_t index, std::span<const Genome> population,
                                     const BatchEvaluator& evaluate, const Rng& rng);

// Next population: the `elitism` best (unchanged), then survivor_count()
// roulette picks, then offspring_count() mutated roulette picks.
std::vector<Genome> breed(const GenerationRecord& record, const GAConfig& config, Rng& rng);

struct EvolutionState {
    std::size_t index = 0;  // generation number of `population`
    std::vector<Genome> population;
    Rng rng;
};

EvolutionState initial_state(const GAConfig& config);

// Rebuilds the state that followed `record` in the original run.
EvolutionState resume_state(const GenerationRecord& record, const GAConfig& config);

// Evaluates state.population, then breeds into it and advances the index.
GenerationRecord step_generation(EvolutionState& state, const BatchEvaluator& evaluate, const GAConfig& config);

using GenerationSink = std::function<void(const GenerationRecord&)>;

struct RunResult {
    GenerationRecord final_record;
    bool interrupted = false;
};

// Evaluates generations state.index .. config.generations - 1, handing each
// record to `sink` (which may throw to abort). generations == 0 evaluates the
// initial population and returns its record without calling the sink.
// A set `stop` flag ends the run after the current generation's sink call.
RunResult run_evolution(const GAConfig& config, const BatchEvaluator& evaluate, const GenerationSink& sink,
                        std::optional<EvolutionState> resume = std::nullopt,
                        const std::atomic<bool>* stop = nullptr);

struct NoveltyConfig {
    std::size_t k = 15;
    double add_threshold = 0.03;
};

// Genome -> behavior descriptor; an exception marks the genome invalid.
using DescriptorFn = std::function<Descriptor(const Genome&)>;

// Record plus the descriptors archive_update accepted after that generation.
using NoveltySink = std::function<void(const GenerationRecord&, const std::vector<Descriptor>& added)>;

struct NoveltyResult {
    NoveltyArchive archive;
    GenerationRecord final_record;
    bool interrupted = false;
};

// Novelty of every genome against the archive snapshot plus the other valid
// genomes of its generation.
std::vector<Fitness> novelty_scores(const NoveltyArchive& archive, std::span<const std::optional<Descriptor>> descriptors);

// The run_evolution loop with fitness = novelty; after each generation every
// valid individual goes through archive_update in population order.
NoveltyResult run_novelty_search(const GAConfig& config, const NoveltyConfig& novelty_config,
                                 const DescriptorFn& describe, const NoveltySink& sink,
                                 std::optional<EvolutionState> resume = std::nullopt,
                                 std::optional<NoveltyArchive> archive = std::nullopt,
                                 const std::atomic<bool>* stop = nullptr);

}  // namespace supershape
