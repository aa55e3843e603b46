#include "saga/json_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <stdexcept>

namespace saga {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad_doc(const std::string& message) {
    throw std::invalid_argument(message);
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& what) {
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) {
            bad_doc(what + ": unknown key '" + key + "'");
        }
    }
}

std::string slurp(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        bad_doc("cannot open " + file.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

} // namespace

json load_json_file(const fs::path& file) {
    const std::string text = slurp(file);
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
        bad_doc(file.string() + " is not valid JSON");
    }
    return j;
}

void write_json_file(const fs::path& file, const json& j) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) {
        bad_doc("cannot write " + file.string());
    }
    out << j.dump(2) << '\n';
}

// --- world config ---

json world_config_to_json(const WorldConfig& c) {
    return json{
        {"grid_dim", c.grid_dim},
        {"initial_agents", c.initial_agents},
        {"rations_per_day", c.rations_per_day},
        {"duration_days", c.duration_days},
        {"profile_count", c.profile_count},
        {"master_seed", c.master_seed},
        {"ration_energy", c.ration_energy},
        {"max_energy", c.max_energy},
    };
}

WorldConfig world_config_from_json(const json& j) {
    if (!j.is_object()) bad_doc("world config must be a JSON object");
    reject_unknown_keys(j,
                        {"grid_dim", "initial_agents", "rations_per_day", "duration_days",
                         "profile_count", "master_seed", "ration_energy", "max_energy"},
                        "world config");
    WorldConfig c;
    c.grid_dim = j.value("grid_dim", c.grid_dim);
    c.initial_agents = j.value("initial_agents", c.initial_agents);
    c.rations_per_day = j.value("rations_per_day", c.rations_per_day);
    c.duration_days = j.value("duration_days", c.duration_days);
    c.profile_count = j.value("profile_count", c.profile_count);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.ration_energy = j.value("ration_energy", c.ration_energy);
    c.max_energy = j.value("max_energy", c.max_energy);
    c.validate();
    return c;
}

// --- ga config ---

json ga_config_to_json(const GAConfig& c) {
    return json{
        {"population_size", c.population_size},
        {"generations", c.generations},
        {"crossover_rate", c.crossover_rate},
        {"mutation_denominator", c.mutation_denominator},
        {"survivor_fraction", c.survivor_fraction},
        {"elite_fraction", c.elite_fraction},
        {"fitness_replicas", c.fitness_replicas},
        {"resample_each_generation", c.resample_each_generation},
        {"master_seed", c.master_seed},
        {"scene", scene_to_json(c.scene)},
        {"world", world_config_to_json(c.world)},
    };
}

GAConfig ga_config_from_json(const json& j, const GAConfig& defaults) {
    if (!j.is_object()) bad_doc("ga config must be a JSON object");
    reject_unknown_keys(j,
                        {"population_size", "generations", "crossover_rate", "mutation_denominator",
                         "survivor_fraction", "elite_fraction", "fitness_replicas",
                         "resample_each_generation", "master_seed", "scene", "world"},
                        "ga config");
    GAConfig c = defaults;
    c.population_size = j.value("population_size", c.population_size);
    c.generations = j.value("generations", c.generations);
    c.crossover_rate = j.value("crossover_rate", c.crossover_rate);
    c.mutation_denominator = j.value("mutation_denominator", c.mutation_denominator);
    c.survivor_fraction = j.value("survivor_fraction", c.survivor_fraction);
    c.elite_fraction = j.value("elite_fraction", c.elite_fraction);
    c.fitness_replicas = j.value("fitness_replicas", c.fitness_replicas);
    c.resample_each_generation = j.value("resample_each_generation", c.resample_each_generation);
    c.master_seed = j.value("master_seed", c.master_seed);
    if (j.contains("scene")) {
        if (j["scene"].is_string()) {
            c.scene = resolve_scene(j["scene"].get<std::string>());
        } else {
            c.scene = scene_from_json(j["scene"]);
        }
    }
    if (j.contains("world")) {
        c.world = world_config_from_json(j["world"]);
    }
    c.validate();
    return c;
}

// --- scenes ---

json scene_to_json(const SceneSpec& s) {
    json j{{"name", s.name}};
    if (s.kind == SceneSpec::Kind::Count) {
        j["kind"] = "count";
        j["archetype"] = s.count_archetype;
        return j;
    }
    j["kind"] = "band_sum";
    json terms = json::array();
    for (const SceneTerm& t : s.terms) {
        terms.push_back(json{{"metric", t.metric},
                             {"weight", t.weight},
                             {"target", t.band.target},
                             {"low", t.band.low},
                             {"high", t.band.high}});
    }
    j["terms"] = std::move(terms);
    return j;
}

SceneSpec scene_from_json(const json& j) {
    if (!j.is_object()) bad_doc("scene must be a JSON object");
    reject_unknown_keys(j, {"name", "kind", "archetype", "terms"}, "scene");
    SceneSpec s;
    s.name = j.value("name", "");
    const std::string kind = j.value("kind", "band_sum");
    if (kind == "count") {
        s.kind = SceneSpec::Kind::Count;
        s.count_archetype = j.value("archetype", "");
    } else if (kind == "band_sum") {
        s.kind = SceneSpec::Kind::BandSum;
        if (!j.contains("terms") || !j["terms"].is_array()) {
            bad_doc("band_sum scene needs a 'terms' array");
        }
        for (const json& tj : j["terms"]) {
            reject_unknown_keys(tj, {"metric", "weight", "target", "low", "high"}, "scene term");
            SceneTerm t;
            t.metric = tj.value("metric", "");
            t.weight = tj.value("weight", 1.0);
            t.band.target = tj.value("target", 0.0);
            t.band.low = tj.value("low", 0.0);
            t.band.high = tj.value("high", 0.0);
            s.terms.push_back(std::move(t));
        }
    } else {
        bad_doc("scene kind must be 'band_sum' or 'count', got '" + kind + "'");
    }
    s.validate();
    return s;
}

SceneSpec resolve_scene(const std::string& name_or_path) {
    if (const SceneSpec* builtin = find_scene(name_or_path)) {
        return *builtin;
    }
    if (fs::exists(name_or_path)) {
        return scene_from_json(load_json_file(name_or_path));
    }
    std::string names;
    for (const SceneSpec& s : builtin_scenes()) {
        names += names.empty() ? s.name : ", " + s.name;
    }
    bad_doc("unknown scene '" + name_or_path + "' (builtins: " + names + ")");
}

// --- archetype files ---

std::vector<ArchetypeSpec> archetype_specs_from_json(const json& j) {
    if (!j.is_array()) bad_doc("archetype file must hold a JSON array");
    std::vector<ArchetypeSpec> specs;
    for (const json& sj : j) {
        reject_unknown_keys(sj, {"name", "pattern", "forbidden_pattern", "description"},
                            "archetype");
        ArchetypeSpec s;
        s.name = sj.value("name", "");
        s.pattern = sj.value("pattern", "");
        if (sj.contains("forbidden_pattern")) {
            s.forbidden_pattern = sj["forbidden_pattern"].get<std::string>();
        }
        s.description = sj.value("description", "");
        if (s.name.empty() || s.pattern.empty()) {
            bad_doc("archetype entries need both 'name' and 'pattern'");
        }
        specs.push_back(std::move(s));
    }
    return specs;
}

std::vector<ArchetypeSpec> load_archetype_specs(const fs::path& file) {
    return archetype_specs_from_json(load_json_file(file));
}

// --- runs on disk ---

void save_run(const fs::path& dir, const WorldRun& run) {
    fs::create_directories(dir);

    std::vector<int> agent_profiles;
    std::vector<int> born_by_profile(run.profiles.size(), 0);
    agent_profiles.reserve(run.chronicles.size());
    for (const Chronicle& c : run.chronicles) {
        agent_profiles.push_back(c.profile_index);
        ++born_by_profile[static_cast<std::size_t>(c.profile_index)];
        std::ofstream log(dir / ("A" + std::to_string(c.agent_id) + ".log"),
                          std::ios::binary | std::ios::trunc);
        if (!log) {
            bad_doc("cannot write log for A" + std::to_string(c.agent_id) + " in " + dir.string());
        }
        log << render_log(c);
    }

    json profiles = json::array();
    for (const Profile& p : run.profiles) {
        profiles.push_back(p.alleles);
    }

    write_json_file(dir / "run.json",
                    json{
                        {"format_version", kFormatVersion},
                        {"total_born", run.total_born},
                        {"alive_at_end", run.alive_at_end},
                        {"days_simulated", run.days_simulated},
                        {"born_by_profile", born_by_profile},
                        {"agent_profiles", agent_profiles},
                        {"config", world_config_to_json(run.config)},
                        {"profiles", profiles},
                    });
}

WorldRun load_run(const fs::path& dir) {
    const json j = load_json_file(dir / "run.json");
    if (j.value("format_version", 0) != kFormatVersion) {
        bad_doc(dir.string() + ": unsupported run format version");
    }

    WorldRun run;
    run.config = world_config_from_json(j.at("config"));
    run.total_born = j.at("total_born").get<int>();
    run.alive_at_end = j.at("alive_at_end").get<int>();
    run.days_simulated = j.value("days_simulated", 0);

    for (const json& pj : j.at("profiles")) {
        Profile p;
        if (pj.size() != p.alleles.size()) {
            bad_doc(dir.string() + ": profile with wrong allele count");
        }
        for (std::size_t i = 0; i < p.alleles.size(); ++i) {
            p.alleles[i] = pj[i].get<double>();
        }
        run.profiles.push_back(p);
    }

    const auto agent_profiles = j.at("agent_profiles").get<std::vector<int>>();
    if (static_cast<int>(agent_profiles.size()) != run.total_born) {
        bad_doc(dir.string() + ": agent_profiles length disagrees with total_born");
    }

    run.chronicles.reserve(agent_profiles.size());
    for (std::size_t id = 0; id < agent_profiles.size(); ++id) {
        const fs::path log_file = dir / ("A" + std::to_string(id) + ".log");
        const ParsedLog parsed = parse_log(slurp(log_file));
        if (!parsed.ok()) {
            bad_doc(log_file.string() + ": line " + std::to_string(parsed.issues.front().line_no) +
                    ": " + parsed.issues.front().message);
        }
        Chronicle c;
        c.agent_id = static_cast<AgentId>(id);
        c.profile_index = agent_profiles[id];
        c.events = std::move(parsed.events);
        run.chronicles.push_back(std::move(c));
    }
    return run;
}

void save_tag_report(const fs::path& file, const TagReport& report) {
    json tagged = json::object();
    json counts = json::object();
    for (const auto& [name, ids] : report.tagged) {
        tagged[name] = ids;
        counts[name] = ids.size();
    }
    write_json_file(file, json{
                              {"format_version", kFormatVersion},
                              {"total_born", report.total_born},
                              {"alive_at_end", report.alive_at_end},
                              {"tagged", tagged},
                              {"counts", counts},
                              {"warnings", report.warnings},
                          });
}

json trace_best_to_json(const GATrace& trace) {
    json profiles = json::array();
    for (const Profile& p : split_genome(trace.best_genome)) {
        profiles.push_back(p.alleles);
    }
    return json{
        {"fitness", trace.best_fitness},
        {"genome", trace.best_genome},
        {"profiles", std::move(profiles)},
        {"unique_evaluations", trace.unique_evaluations},
    };
}

// --- CSV ---

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

void write_trace_csv(const fs::path& file, const GATrace& trace) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) bad_doc("cannot write " + file.string());
    out << "generation,best_fitness,mean_fitness\n";
    for (std::size_t g = 0; g < trace.generations.size(); ++g) {
        out << g << ',' << format_double(trace.generations[g].best_fitness) << ','
            << format_double(trace.generations[g].mean_fitness) << '\n';
    }
}

void write_summary_csv(const fs::path& file, const std::vector<SummaryRow>& rows) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) bad_doc("cannot write " + file.string());
    out << "profiles,best_fitness_mean,best_fitness_std,avg_fitness_mean,avg_fitness_std\n";
    for (const SummaryRow& r : rows) {
        out << r.profiles << ',' << format_double(r.best_fitness_mean) << ','
            << format_double(r.best_fitness_std) << ',' << format_double(r.avg_fitness_mean) << ','
            << format_double(r.avg_fitness_std) << '\n';
    }
}

} // namespace saga
