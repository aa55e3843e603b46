#include "saga/experiment.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "saga/rng.hpp"

namespace saga {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kRunStream = 0x5EEDBEDu;

struct Moments {
    double mean = 0.0;
    double std_dev = 0.0; // population form; a single sample reports 0
};

Moments moments_of(const std::vector<double>& values) {
    Moments m;
    if (values.empty()) return m;
    for (double v : values) m.mean += v;
    m.mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.std_dev = std::sqrt(ss / static_cast<double>(values.size()));
    return m;
}

} // namespace

void ExperimentConfig::validate() const {
    if (profile_counts.empty()) {
        throw std::invalid_argument("experiment: no profile counts requested");
    }
    for (int k : profile_counts) {
        if (k < 1 || k > 5) {
            throw std::invalid_argument("experiment: profile counts must be in 1..5");
        }
    }
    if (repetitions < 1) {
        throw std::invalid_argument("experiment: repetitions must be at least 1");
    }
}

GAConfig desk_scale_ga() {
    GAConfig c;
    c.population_size = 15;
    c.generations = 10;
    c.fitness_replicas = 5;
    c.scene = natality_scene();
    c.world.duration_days = 300;
    return c;
}

GAConfig paper_scale_ga() {
    GAConfig c;
    c.scene = natality_scene();
    return c; // the defaults are the full-size setup already
}

ExperimentResult run_experiment(const ExperimentConfig& config, const fs::path& out_dir,
                                std::ostream* progress) {
    config.validate();
    fs::create_directories(out_dir);

    ExperimentResult result;
    for (const int profiles : config.profile_counts) {
        std::vector<double> best_scores;
        std::vector<double> avg_scores;

        for (int rep = 0; rep < config.repetitions; ++rep) {
            GAConfig ga = config.ga;
            ga.world.profile_count = profiles;
            // Seeds depend on the slot, not the execution order, so a
            // re-run of any single cell reproduces it exactly.
            ga.master_seed = derive_seed(config.master_seed,
                                         {kRunStream, static_cast<std::uint64_t>(profiles),
                                          static_cast<std::uint64_t>(rep)});

            const fs::path run_dir = out_dir / ("P" + std::to_string(profiles)) /
                                     ("rep" + std::to_string(rep));
            try {
                const GATrace trace = evolve(ga);
                fs::create_directories(run_dir);
                write_trace_csv(run_dir / "trace.csv", trace);
                write_json_file(run_dir / "best.json", trace_best_to_json(trace));

                best_scores.push_back(trace.best_fitness);
                avg_scores.push_back(trace.generations.back().mean_fitness);
                if (progress) {
                    *progress << "P" << profiles << " rep " << rep << ": best "
                              << format_double(trace.best_fitness) << '\n';
                }
            } catch (const std::exception& e) {
                result.errors.push_back("P" + std::to_string(profiles) + " rep " +
                                        std::to_string(rep) + ": " + e.what());
                if (progress) {
                    *progress << "P" << profiles << " rep " << rep << " failed: " << e.what()
                              << '\n';
                }
            }
        }

        const Moments best = moments_of(best_scores);
        const Moments avg = moments_of(avg_scores);
        result.rows.push_back(SummaryRow{profiles, best.mean, best.std_dev, avg.mean, avg.std_dev});
    }

    write_summary_csv(out_dir / "summary.csv", result.rows);
    return result;
}

} // namespace saga
