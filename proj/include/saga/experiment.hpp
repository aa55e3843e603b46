#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "saga/evolver.hpp"
#include "saga/json_io.hpp"

namespace saga {

// A sweep over profile-count diversity: for each requested count, repeat
// the whole evolutionary search several times with independent seeds and
// aggregate the final best and population-average fitness.
struct ExperimentConfig {
    std::vector<int> profile_counts = {1, 2, 3, 4, 5};
    int repetitions = 10;
    std::uint64_t master_seed = 0;
    GAConfig ga; // per-run seed and profile_count are overwritten

    void validate() const;
};

struct ExperimentResult {
    std::vector<SummaryRow> rows;
    // "P3 rep 7: <what went wrong>", in run order; failed runs are left
    // out of the aggregates.
    std::vector<std::string> errors;
};

// The tuning every developer checkout and the CI lane run at: small
// population, short horizon, a fraction of the replicas. Statistically
// noisier than the full setup but the same code path end to end.
GAConfig desk_scale_ga();

// The full-size setup: 30 genomes, 30 generations, 10 replicas over
// 1000-day worlds. Hours, not minutes.
GAConfig paper_scale_ga();

// Runs the sweep, writing P<k>/rep<j>/{trace.csv,best.json} plus a final
// summary.csv under out_dir. `progress` (optional) receives one line per
// finished run.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir,
                                std::ostream* progress = nullptr);

} // namespace saga
