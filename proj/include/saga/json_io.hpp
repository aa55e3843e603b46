#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "saga/archetype.hpp"
#include "saga/evolver.hpp"
#include "saga/fitness.hpp"
#include "saga/world.hpp"

// Disk formats live here so the engine stays ignorant of files. All JSON
// loaders accept partial documents: absent keys keep their defaults,
// unknown keys are rejected to catch typos early. docs/formats.md is the
// authoritative description of every format this module reads or writes.

namespace saga {

inline constexpr int kFormatVersion = 1;

// --- JSON documents ---

nlohmann::json world_config_to_json(const WorldConfig& config);
WorldConfig world_config_from_json(const nlohmann::json& j);

nlohmann::json ga_config_to_json(const GAConfig& config);
GAConfig ga_config_from_json(const nlohmann::json& j, const GAConfig& defaults);

SceneSpec scene_from_json(const nlohmann::json& j);
nlohmann::json scene_to_json(const SceneSpec& scene);

std::vector<ArchetypeSpec> archetype_specs_from_json(const nlohmann::json& j);

// Builtin scene name, otherwise a path to a scene JSON file.
SceneSpec resolve_scene(const std::string& name_or_path);

// --- files and directories ---

// A<id>.log per agent plus run.json with the counts, the config and the
// decoded profile table.
void save_run(const std::filesystem::path& dir, const WorldRun& run);
WorldRun load_run(const std::filesystem::path& dir);

void save_tag_report(const std::filesystem::path& file, const TagReport& report);

std::vector<ArchetypeSpec> load_archetype_specs(const std::filesystem::path& file);
nlohmann::json load_json_file(const std::filesystem::path& file);
void write_json_file(const std::filesystem::path& file, const nlohmann::json& j);

// The winning genome of a finished search, with its alleles also grouped
// per profile. Both the CLI and the experiment sweep write this shape.
nlohmann::json trace_best_to_json(const GATrace& trace);

// --- CSV ---

// Shortest decimal text that parses back to exactly the same double, so
// rewriting a file never drifts a value.
std::string format_double(double value);

void write_trace_csv(const std::filesystem::path& file, const GATrace& trace);

struct SummaryRow {
    int profiles = 0;
    double best_fitness_mean = 0.0;
    double best_fitness_std = 0.0;
    double avg_fitness_mean = 0.0;
    double avg_fitness_std = 0.0;
};

void write_summary_csv(const std::filesystem::path& file, const std::vector<SummaryRow>& rows);

} // namespace saga
