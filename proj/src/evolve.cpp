#include "supershape/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "supershape/error.hpp"

namespace supershape {

void GAConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::invalid_config, what); };
    if (population_size < 2) fail("population_size must be >= 2");
    if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) fail("mutation_rate must lie in [0, 1]");
    if (!(selection_rate > 0.0 && selection_rate <= 1.0)) fail("selection_rate must lie in (0, 1]");
    if (selection_rate * static_cast<double>(population_size) < 1.0)
        fail("selection_rate * population_size must be >= 1");
    if (elitism >= population_size) fail("elitism must be smaller than population_size");
    validate_bounds(gene_bounds);
}

std::size_t GAConfig::survivor_count() const {
    const auto wanted = static_cast<std::size_t>(std::ceil(selection_rate * static_cast<double>(population_size)));
    return std::min(wanted, population_size - elitism);
}

std::vector<Genome> init_population(const GAConfig& config, Rng& rng) {
    config.validate();
    std::vector<Genome> population(config.population_size);
    for (auto& genome : population)
        for (std::size_t g = 0; g < kGeneCount; ++g) {
            const auto& range = config.gene_bounds[g];
            genome[g] = std::clamp(rng.uniform(range.lo, range.hi), range.lo, range.hi);
        }
    return population;
}

std::vector<Genome> init_population(const GAConfig& config) {
    Rng rng(config.rng_seed);
    return init_population(config, rng);
}

std::vector<double> effective_raw(std::span<const ScoredGenome> scored) {
    double min_valid = std::numeric_limits<double>::infinity();
    for (const auto& s : scored)
        if (s.fitness.valid) min_valid = std::min(min_valid, s.fitness.raw);
    std::vector<double> out(scored.size(), 0.0);
    if (!std::isfinite(min_valid)) return out;
    for (std::size_t i = 0; i < scored.size(); ++i)
        out[i] = scored[i].fitness.valid ? scored[i].fitness.raw : min_valid - 1.0;
    return out;
}

std::vector<double> shifted_weights(std::span<const double> raw) {
    if (raw.empty()) return {};
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    const double eps = 1e-6 * (*hi - *lo + 1.0);
    std::vector<double> w(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) w[i] = raw[i] - *lo + eps;
    return w;
}

std::size_t best_index(std::span<const ScoredGenome> scored) {
    if (scored.empty()) throw Error(ErrorKind::empty_population, "no genomes to rank");
    const auto eff = effective_raw(scored);
    return static_cast<std::size_t>(std::distance(eff.begin(), std::max_element(eff.begin(), eff.end())));
}

std::vector<std::size_t> roulette_wheel(std::span<const double> weights, std::size_t count, Rng& rng) {
    if (weights.empty()) throw Error(ErrorKind::empty_population, "roulette wheel over zero genomes");
    std::vector<double> cumulative(weights.size());
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
    const double total = cumulative.back();
    std::vector<std::size_t> picks(count);
    for (auto& pick : picks) {
        const double spin = rng.uniform() * total;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), spin);
        pick = std::min(static_cast<std::size_t>(std::distance(cumulative.begin(), it)), weights.size() - 1);
    }
    return picks;
}

std::vector<Genome> roulette_select(std::span<const ScoredGenome> scored, std::size_t count, Rng& rng) {
    if (scored.empty()) throw Error(ErrorKind::empty_population, "roulette selection over zero genomes");
    const auto weights = shifted_weights(effective_raw(scored));
    std::vector<Genome> out;
    out.reserve(count);
    for (auto i : roulette_wheel(weights, count, rng)) out.push_back(scored[i].genome);
    return out;
}

Genome mutate(const Genome& genome, const GAConfig& config, Rng& rng) {
    Genome out = genome;
    for (std::size_t g = 0; g < kGeneCount; ++g) {
        if (!(rng.uniform() < config.mutation_rate)) continue;
        const auto& range = config.gene_bounds[g];
        out[g] = std::clamp(out[g] + 0.1 * range.width() * rng.normal(), range.lo, range.hi);
    }
    return out;
}

std::vector<Fitness> evaluate_serial(std::span<const Genome> genomes, const GenomeEvaluator& evaluator) {
    std::vector<Fitness> out(genomes.size());
    for (std::size_t i = 0; i < genomes.size(); ++i) {
        try {
            out[i] = evaluator(genomes[i]);
        } catch (...) {
            out[i] = Fitness::invalid();
        }
    }
    return out;
}

std::vector<Fitness> evaluate_parallel(std::span<const Genome> genomes, const GenomeEvaluator& evaluator) {
    std::vector<Fitness> out(genomes.size());
    const long n = static_cast<long>(genomes.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = evaluator(genomes[i]);
        } catch (...) {
            out[i] = Fitness::invalid();
        }
    }
    return out;
}

BatchEvaluator parallel_batch(GenomeEvaluator evaluator) {
    return [evaluator = std::move(evaluator)](std::span<const Genome> genomes) {
        return evaluate_parallel(genomes, evaluator);
    };
}

GenerationRecord evaluate_generation(std::size_t index, std::span<const Genome> population,
                                     const BatchEvaluator& evaluate, const Rng& rng) {
    if (population.empty()) throw Error(ErrorKind::empty_population, "cannot evaluate an empty population");
    auto fitness = evaluate(population);
    if (fitness.size() != population.size())
        throw Error(ErrorKind::invalid_config, "evaluator returned the wrong number of results");
    GenerationRecord record;
    record.index = index;
    record.scored.reserve(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
        Fitness f = fitness[i];
        if (f.valid && !std::isfinite(f.raw)) f = Fitness::invalid();
        record.scored.push_back({population[i], f});
    }
    record.best_index = best_index(record.scored);
    record.rng_state = rng.serialize();
    record.rng_state_digest = rng.digest();
    return record;
}

std::vector<Genome> breed(const GenerationRecord& record, const GAConfig& config, Rng& rng) {
    const auto& scored = record.scored;
    if (scored.size() != config.population_size)
        throw Error(ErrorKind::invalid_config, "record size does not match population_size");

    const auto eff = effective_raw(scored);
    std::vector<std::size_t> order(scored.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return eff[a] > eff[b]; });

    std::vector<Genome> next;
    next.reserve(config.population_size);
    for (std::size_t e = 0; e < config.elitism; ++e) next.push_back(scored[order[e]].genome);

    const auto weights = shifted_weights(eff);
    for (auto i : roulette_wheel(weights, config.survivor_count(), rng)) next.push_back(scored[i].genome);
    for (auto i : roulette_wheel(weights, config.offspring_count(), rng))
        next.push_back(mutate(scored[i].genome, config, rng));
    return next;
}

EvolutionState initial_state(const GAConfig& config) {
    EvolutionState state{0, {}, Rng(config.rng_seed)};
    state.population = init_population(config, state.rng);
    return state;
}

EvolutionState resume_state(const GenerationRecord& record, const GAConfig& config) {
    EvolutionState state{record.index + 1, {}, Rng::deserialize(record.rng_state)};
    state.population = breed(record, config, state.rng);
    return state;
}

GenerationRecord step_generation(EvolutionState& state, const BatchEvaluator& evaluate, const GAConfig& config) {
    GenerationRecord record = evaluate_generation(state.index, state.population, evaluate, state.rng);
    state.population = breed(record, config, state.rng);
    ++state.index;
    return record;
}

RunResult run_evolution(const GAConfig& config, const BatchEvaluator& evaluate, const GenerationSink& sink,
                        std::optional<EvolutionState> resume, const std::atomic<bool>* stop) {
    config.validate();
    EvolutionState state = resume ? std::move(*resume) : initial_state(config);
    if (state.population.size() != config.population_size)
        throw Error(ErrorKind::invalid_config, "starting population does not match population_size");

    RunResult result;
    if (config.generations == 0) {
        result.final_record = evaluate_generation(state.index, state.population, evaluate, state.rng);
        return result;
    }
    while (state.index < config.generations) {
        result.final_record = evaluate_generation(state.index, state.population, evaluate, state.rng);
        if (sink) sink(result.final_record);
        if (stop && stop->load()) {
            result.interrupted = state.index + 1 < config.generations;
            break;
        }
        if (state.index + 1 < config.generations)
            state.population = breed(result.final_record, config, state.rng);
        ++state.index;
    }
    return result;
}

std::vector<Fitness> novelty_scores(const NoveltyArchive& archive,
                                    std::span<const std::optional<Descriptor>> descriptors) {
    std::vector<Descriptor> candidates;
    std::vector<std::size_t> slot(descriptors.size(), 0);
    for (std::size_t i = 0; i < descriptors.size(); ++i) {
        if (!descriptors[i]) continue;
        slot[i] = candidates.size();
        candidates.push_back(*descriptors[i]);
    }
    std::vector<Fitness> out(descriptors.size(), Fitness::invalid());
    const long n = static_cast<long>(descriptors.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        if (!descriptors[i]) continue;
        out[i] = Fitness::of(novelty(archive, candidates, candidates[slot[i]], slot[i]));
    }
    return out;
}

NoveltyResult run_novelty_search(const GAConfig& config, const NoveltyConfig& novelty_config,
                                 const DescriptorFn& describe, const NoveltySink& sink,
                                 std::optional<EvolutionState> resume, std::optional<NoveltyArchive> archive,
                                 const std::atomic<bool>* stop) {
    NoveltyResult result{archive ? std::move(*archive)
                                 : NoveltyArchive(kDescriptorDim, novelty_config.k, novelty_config.add_threshold),
                         {}, false};
    std::vector<std::optional<Descriptor>> last;

    const BatchEvaluator evaluate = [&](std::span<const Genome> genomes) {
        last.assign(genomes.size(), std::nullopt);
        const long n = static_cast<long>(genomes.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            try {
                last[i] = describe(genomes[i]);
            } catch (...) {
                last[i] = std::nullopt;
            }
        }
        return novelty_scores(result.archive, last);
    };

    auto grow_archive = [&](const GenerationRecord& record) {
        std::vector<Descriptor> added;
        for (std::size_t i = 0; i < last.size(); ++i) {
            if (!last[i] || !record.scored[i].fitness.valid) continue;
            if (archive_update(result.archive, *last[i], record.scored[i].fitness.raw)) added.push_back(*last[i]);
        }
        return added;
    };

    if (config.generations == 0) {
        EvolutionState state = resume ? std::move(*resume) : initial_state(config);
        result.final_record = evaluate_generation(state.index, state.population, evaluate, state.rng);
        grow_archive(result.final_record);
        return result;
    }

    const GenerationSink on_generation = [&](const GenerationRecord& record) {
        const auto added = grow_archive(record);
        if (sink) sink(record, added);
    };
    auto run = run_evolution(config, evaluate, on_generation, std::move(resume), stop);
    result.final_record = std::move(run.final_record);
    result.interrupted = run.interrupted;
    return result;
}

}  // namespace supershape
