#include "saga/evolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include "saga/rng.hpp"

namespace saga {

namespace {

// Stream labels keeping the GA's own draws and the per-evaluation world
// seeds on provably separate branches of the master seed.
constexpr std::uint64_t kGaStream = 0xA11E1E5u;
constexpr std::uint64_t kEvalStream = 0xF17BE55u;

std::string genome_key(const Genome& genome) {
    std::string key(genome.size() * sizeof(double), '\0');
    std::memcpy(key.data(), genome.data(), key.size());
    return key;
}

} // namespace

void GAConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("ga config: population_size must be at least 2");
    if (generations < 0) throw std::invalid_argument("ga config: generations must not be negative");
    if (crossover_rate < 0.0 || crossover_rate > 1.0) {
        throw std::invalid_argument("ga config: crossover_rate must be in [0,1]");
    }
    if (mutation_denominator < 1) {
        throw std::invalid_argument("ga config: mutation_denominator must be at least 1");
    }
    if (!(survivor_fraction > 0.0) || survivor_fraction > 1.0) {
        throw std::invalid_argument("ga config: survivor_fraction must be in (0,1]");
    }
    if (!(elite_fraction > 0.0) || elite_fraction > 1.0) {
        throw std::invalid_argument("ga config: elite_fraction must be in (0,1]");
    }
    if (fitness_replicas < 1) throw std::invalid_argument("ga config: fitness_replicas must be at least 1");
    if (world.initial_agents < 1) {
        throw std::invalid_argument("ga config: the world must start with at least one agent");
    }
    scene.validate();
    world.validate();
}

Evaluator::Evaluator(const GAConfig& config) : config_(config) {
    for (const std::string& name : config.scene.required_archetypes()) {
        const ArchetypeSpec* spec = find_builtin(name);
        if (spec == nullptr) {
            throw std::invalid_argument("scene '" + config.scene.name +
                                        "' references unknown archetype '" + name + "'");
        }
        needed_specs_.push_back(*spec);
    }
}

void Evaluator::begin_generation(int generation) {
    generation_ = generation;
    if (config_.resample_each_generation) {
        memo_.clear();
    }
}

double Evaluator::evaluate(const Genome& genome) {
    const std::string key = genome_key(genome);
    const auto hit = memo_.find(key);
    if (hit != memo_.end()) {
        return hit->second;
    }
    const double score = run_replicas(genome, static_cast<std::uint64_t>(counter_++));
    memo_.emplace(std::move(key), score);
    return score;
}

double Evaluator::run_replicas(const Genome& genome, std::uint64_t eval_index) {
    const std::vector<Profile> profiles = split_genome(genome);
    double total = 0.0;
    for (int r = 0; r < config_.fitness_replicas; ++r) {
        WorldConfig wc = config_.world;
        const std::uint64_t gen_label =
            config_.resample_each_generation ? static_cast<std::uint64_t>(generation_) : 0u;
        wc.master_seed = derive_seed(config_.master_seed,
                                     {kEvalStream, gen_label, eval_index,
                                      static_cast<std::uint64_t>(r)});
        const WorldRun run = run_world(wc, profiles);
        const TagReport tags = tag_run(run, needed_specs_);
        total += scene_fitness(config_.scene, run, tags);
    }
    return total / config_.fitness_replicas;
}

GATrace evolve(const GAConfig& config) {
    config.validate();

    const int n = config.population_size;
    const int genome_len = config.genome_length();
    const int elite_count = std::min(
        n, static_cast<int>(std::ceil(config.elite_fraction * n)));
    const int survivor_count = std::min(
        n, static_cast<int>(std::ceil(config.survivor_fraction * n)));

    RngStream rng(derive_seed(config.master_seed, kGaStream));
    Evaluator evaluator(config);

    std::vector<Genome> population(static_cast<std::size_t>(n));
    for (Genome& g : population) {
        g.resize(static_cast<std::size_t>(genome_len));
        for (double& allele : g) {
            allele = rng.next_double();
        }
    }

    std::vector<double> fitness(static_cast<std::size_t>(n));
    GATrace trace;

    const auto score_population = [&](int generation) {
        evaluator.begin_generation(generation);
        for (int i = 0; i < n; ++i) {
            fitness[static_cast<std::size_t>(i)] = evaluator.evaluate(population[static_cast<std::size_t>(i)]);
        }
        GenerationStats stats;
        stats.best_fitness = *std::max_element(fitness.begin(), fitness.end());
        stats.mean_fitness = std::accumulate(fitness.begin(), fitness.end(), 0.0) / n;
        stats.population = n;
        trace.generations.push_back(stats);
    };

    // Descending fitness; equal scores keep their index order so ranking
    // never depends on sort internals.
    const auto ranking = [&] {
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return fitness[static_cast<std::size_t>(a)] > fitness[static_cast<std::size_t>(b)];
        });
        return order;
    };

    score_population(0);

    for (int gen = 1; gen <= config.generations; ++gen) {
        const std::vector<int> order = ranking();

        std::vector<Genome> next;
        next.reserve(static_cast<std::size_t>(n));
        for (int e = 0; e < elite_count; ++e) {
            next.push_back(population[static_cast<std::size_t>(order[static_cast<std::size_t>(e)])]);
        }

        while (static_cast<int>(next.size()) < n) {
            const int pa = order[static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(survivor_count)))];
            Genome child = population[static_cast<std::size_t>(pa)];
            if (rng.bernoulli(config.crossover_rate)) {
                const int pb = order[static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(survivor_count)))];
                // Cut strictly inside the genome so both parents contribute.
                const int cut = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(genome_len - 1)));
                const Genome& other = population[static_cast<std::size_t>(pb)];
                std::copy(other.begin() + cut, other.end(), child.begin() + cut);
            }
            const double mutation_prob = 1.0 / config.mutation_denominator;
            for (double& allele : child) {
                if (rng.bernoulli(mutation_prob)) {
                    allele = rng.next_double();
                }
            }
            next.push_back(std::move(child));
        }

        population = std::move(next);
        score_population(gen);
    }

    const std::vector<int> order = ranking();
    trace.best_genome = population[static_cast<std::size_t>(order.front())];
    trace.best_fitness = fitness[static_cast<std::size_t>(order.front())];
    trace.unique_evaluations = evaluator.unique_evaluations();
    return trace;
}

} // namespace saga
