#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "saga/experiment.hpp"
#include "saga/json_io.hpp"
#include "saga/rng.hpp"

namespace fs = std::filesystem;

namespace {

// Distinguishes the CLI's "make me some profiles" stream from every other
// consumer of the same seed.
constexpr std::uint64_t kProfileStream = 0xCAFEuLL;

struct SimulateArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int cmd_simulate(const SimulateArgs& args) {
    saga::WorldConfig config;
    std::vector<saga::Profile> profiles;

    if (!args.config_path.empty()) {
        nlohmann::json doc = saga::load_json_file(args.config_path);
        if (doc.contains("profiles")) {
            for (const auto& pj : doc["profiles"]) {
                saga::Profile p;
                if (pj.size() != p.alleles.size()) {
                    throw std::invalid_argument("config profiles need 12 alleles each");
                }
                for (std::size_t i = 0; i < p.alleles.size(); ++i) {
                    p.alleles[i] = pj[i].get<double>();
                }
                profiles.push_back(p);
            }
            doc.erase("profiles");
        }
        config = saga::world_config_from_json(doc);
    }
    if (args.seed_set) {
        config.master_seed = args.seed;
    }
    if (profiles.empty()) {
        saga::RngStream rng(saga::derive_seed(config.master_seed, kProfileStream));
        profiles = saga::random_profiles(config.profile_count, rng);
    } else if (static_cast<int>(profiles.size()) != config.profile_count) {
        throw std::invalid_argument("config lists " + std::to_string(profiles.size()) +
                                    " profiles but profile_count is " +
                                    std::to_string(config.profile_count));
    }

    const saga::WorldRun run = saga::run_world(config, profiles);
    saga::save_run(args.out_dir, run);

    std::cout << "simulated " << run.days_simulated << " days: " << run.total_born
              << " agents born, " << run.alive_at_end << " alive at the end\n"
              << "wrote " << run.total_born << " logs to " << args.out_dir << "\n";
    return 0;
}

struct TagArgs {
    std::string log_dir;
    std::string specs_path;
    std::string out_path;
    bool check_oracle = false;
};

int cmd_tag(const TagArgs& args) {
    const saga::WorldRun run = saga::load_run(args.log_dir);

    std::vector<saga::ArchetypeSpec> specs = saga::builtin_specs();
    if (!args.specs_path.empty()) {
        const auto extra = saga::load_archetype_specs(args.specs_path);
        specs.insert(specs.end(), extra.begin(), extra.end());
    }

    const saga::TagReport report = saga::tag_run(run, specs);
    for (const std::string& warning : report.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    for (const auto& [name, ids] : report.tagged) {
        std::cout << name << ": " << ids.size() << "\n";
    }

    const fs::path out = args.out_path.empty() ? fs::path(args.log_dir) / "tags.json"
                                               : fs::path(args.out_path);
    saga::save_tag_report(out, report);
    std::cout << "wrote " << out.string() << "\n";

    if (args.check_oracle) {
        int disagreements = 0;
        for (const saga::ArchetypeSpec& spec : saga::builtin_specs()) {
            const auto& tagged = report.tagged.at(spec.name);
            for (const saga::Chronicle& c : run.chronicles) {
                const bool by_pattern = tagged.count(c.agent_id) > 0;
                const bool by_count = saga::oracle_tag(c, spec.name);
                if (by_pattern != by_count) {
                    ++disagreements;
                    std::cerr << "oracle disagreement: " << spec.name << " on A" << c.agent_id
                              << " (pattern " << (by_pattern ? "yes" : "no") << ", count route "
                              << (by_count ? "yes" : "no") << ")\n";
                }
            }
        }
        if (disagreements > 0) {
            std::cerr << disagreements << " disagreement(s) between tag routes\n";
            return 1;
        }
        std::cout << "oracle check passed for all builtin archetypes\n";
    }
    return 0;
}

struct EvolveArgs {
    std::string scene = "natality_control";
    std::string config_path;
    std::string out_dir;
    int profiles = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool paper_scale = false;
};

int cmd_evolve(const EvolveArgs& args) {
    saga::GAConfig ga = args.paper_scale ? saga::paper_scale_ga() : saga::desk_scale_ga();
    if (!args.config_path.empty()) {
        ga = saga::ga_config_from_json(saga::load_json_file(args.config_path), ga);
    }
    ga.scene = saga::resolve_scene(args.scene);
    if (args.profiles > 0) {
        ga.world.profile_count = args.profiles;
    }
    if (args.seed_set) {
        ga.master_seed = args.seed;
    }

    const saga::GATrace trace = saga::evolve(ga);

    fs::create_directories(args.out_dir);
    saga::write_trace_csv(fs::path(args.out_dir) / "trace.csv", trace);

    saga::write_json_file(fs::path(args.out_dir) / "best.json", saga::trace_best_to_json(trace));

    std::cout << "best fitness " << saga::format_double(trace.best_fitness) << " after "
              << (trace.generations.size() - 1) << " generations ("
              << trace.unique_evaluations << " genomes scored)\n"
              << "wrote trace.csv and best.json to " << args.out_dir << "\n";
    return 0;
}

struct ExperimentArgs {
    std::string scene = "natality_control";
    std::string config_path;
    std::string out_dir;
    std::vector<int> profiles = {1, 2, 3, 4, 5};
    int repetitions = 10;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool paper_scale = false;
};

int cmd_experiment(const ExperimentArgs& args) {
    saga::ExperimentConfig config;
    config.ga = args.paper_scale ? saga::paper_scale_ga() : saga::desk_scale_ga();
    if (!args.config_path.empty()) {
        config.ga = saga::ga_config_from_json(saga::load_json_file(args.config_path), config.ga);
    }
    config.ga.scene = saga::resolve_scene(args.scene);
    config.profile_counts = args.profiles;
    config.repetitions = args.repetitions;
    if (args.seed_set) {
        config.master_seed = args.seed;
    }

    const saga::ExperimentResult result =
        saga::run_experiment(config, args.out_dir, &std::cout);

    for (const std::string& error : result.errors) {
        std::cerr << "error: " << error << "\n";
    }
    std::cout << "profiles,best_fitness_mean,best_fitness_std,avg_fitness_mean,avg_fitness_std\n";
    for (const saga::SummaryRow& row : result.rows) {
        std::cout << row.profiles << ',' << saga::format_double(row.best_fitness_mean) << ','
                  << saga::format_double(row.best_fitness_std) << ','
                  << saga::format_double(row.avg_fitness_mean) << ','
                  << saga::format_double(row.avg_fitness_std) << "\n";
    }
    std::cout << "wrote " << (fs::path(args.out_dir) / "summary.csv").string() << "\n";
    return result.errors.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"agent societies, life logs, and archetype-driven evolution"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "run one world and write its logs");
    simulate->add_option("--config", sim.config_path, "world config JSON (defaults apply)");
    simulate->add_option("--out", sim.out_dir, "output directory")->required();
    simulate->add_option("--seed", sim.seed, "master seed override")
        ->each([&](const std::string&) { sim.seed_set = true; });

    TagArgs tag;
    CLI::App* tag_cmd = app.add_subcommand("tag", "tag the agents of a saved run");
    tag_cmd->add_option("logdir", tag.log_dir, "directory with A*.log and run.json")->required();
    tag_cmd->add_option("--specs", tag.specs_path, "extra archetypes, JSON array");
    tag_cmd->add_option("--out", tag.out_path, "tag report path (default <logdir>/tags.json)");
    tag_cmd->add_flag("--check-oracle", tag.check_oracle,
                      "verify pattern tags against the counting route");

    EvolveArgs evo;
    CLI::App* evolve = app.add_subcommand("evolve", "search profiles for one scene");
    evolve->add_option("--scene", evo.scene, "builtin scene name or scene JSON path");
    evolve->add_option("--config", evo.config_path, "ga config JSON");
    evolve->add_option("--out", evo.out_dir, "output directory")->required();
    evolve->add_option("--profiles", evo.profiles, "number of profiles under search");
    evolve->add_option("--seed", evo.seed, "master seed")
        ->each([&](const std::string&) { evo.seed_set = true; });
    evolve->add_flag("--paper-scale", evo.paper_scale, "full-size search (hours)");

    ExperimentArgs exp;
    CLI::App* experiment = app.add_subcommand("experiment", "profile-count sweep with repetitions");
    experiment->add_option("--scene", exp.scene, "builtin scene name or scene JSON path");
    experiment->add_option("--config", exp.config_path, "ga config JSON");
    experiment->add_option("--out", exp.out_dir, "output directory")->required();
    experiment->add_option("--profiles", exp.profiles, "profile counts to sweep")->delimiter(',');
    experiment->add_option("--repetitions", exp.repetitions, "independent runs per count");
    experiment->add_option("--seed", exp.seed, "master seed")
        ->each([&](const std::string&) { exp.seed_set = true; });
    experiment->add_flag("--paper-scale", exp.paper_scale, "full-size sweep (a day, not minutes)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(sim);
        if (tag_cmd->parsed()) return cmd_tag(tag);
        if (evolve->parsed()) return cmd_evolve(evo);
        if (experiment->parsed()) return cmd_experiment(exp);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
