#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "saga/fitness.hpp"
#include "saga/profile.hpp"
#include "saga/world.hpp"

namespace saga {

// A genome is the flat allele vector for all behavioural profiles under
// search: 12 values per profile, all in [0,1].
using Genome = std::vector<double>;

struct GAConfig {
    int population_size = 30;
    int generations = 30;
    double crossover_rate = 0.35;    // chance an offspring mixes two parents
    int mutation_denominator = 12;   // per-allele mutation chance = 1/this
    double survivor_fraction = 0.9;  // truncation selection keeps this share
    double elite_fraction = 0.1;     // carried over verbatim each generation
    int fitness_replicas = 10;       // simulations averaged per genome
    bool resample_each_generation = false; // re-roll replica seeds per generation
    std::uint64_t master_seed = 0;
    SceneSpec scene;
    WorldConfig world; // master_seed ignored; replica seeds are derived

    int genome_length() const { return kAllelesPerProfile * world.profile_count; }
    void validate() const;
};

struct GenerationStats {
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    int population = 0; // genomes scored this generation
};

struct GATrace {
    // One entry for the initial population plus one per generation.
    std::vector<GenerationStats> generations;
    Genome best_genome;
    double best_fitness = 0.0;
    int unique_evaluations = 0;
};

// Scores genomes for one GA run. Each distinct genome gets a fresh batch
// of replica seeds derived from (master seed, evaluation counter, replica
// index) and its mean score is memoized, so re-encountering a genome costs
// nothing and returns the identical value.
class Evaluator {
public:
    explicit Evaluator(const GAConfig& config);

    double evaluate(const Genome& genome);

    // Replica seeds include the generation when the config resamples.
    void begin_generation(int generation);

    int unique_evaluations() const { return counter_; }

private:
    double run_replicas(const Genome& genome, std::uint64_t eval_index);

    const GAConfig& config_;
    std::vector<ArchetypeSpec> needed_specs_;
    int counter_ = 0;
    int generation_ = 0;
    std::unordered_map<std::string, double> memo_; // key: raw allele bytes
};

GATrace evolve(const GAConfig& config);

} // namespace saga
