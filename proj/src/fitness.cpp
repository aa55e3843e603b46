#include "saga/fitness.hpp"

#include <cmath>
#include <stdexcept>

namespace saga {

void Band::validate() const {
    if (!(low < target && target < high)) {
        throw std::invalid_argument("band requires low < target < high, got [" +
                                    std::to_string(low) + ", " + std::to_string(target) + ", " +
                                    std::to_string(high) + "]");
    }
}

double band_score(double value, const Band& band) {
    band.validate();
    if (value < band.low || value > band.high) {
        return 0.0;
    }
    // Three sigma from the target to whichever edge this side owns.
    const double sigma = value < band.target ? (band.target - band.low) / 3.0
                                             : (band.high - band.target) / 3.0;
    const double d = (value - band.target) / sigma;
    return std::exp(-0.5 * d * d);
}

std::vector<std::string> SceneSpec::required_archetypes() const {
    std::vector<std::string> names;
    if (kind == Kind::Count) {
        names.push_back(count_archetype);
        return names;
    }
    for (const SceneTerm& term : terms) {
        if (term.metric != "survival") {
            names.push_back(term.metric);
        }
    }
    return names;
}

double SceneSpec::max_score() const {
    if (kind == Kind::Count) {
        return -1.0; // unbounded
    }
    double total = 0.0;
    for (const SceneTerm& term : terms) {
        total += term.weight;
    }
    return total;
}

void SceneSpec::validate() const {
    if (name.empty()) throw std::invalid_argument("scene has no name");
    if (kind == Kind::Count) {
        if (count_archetype.empty()) {
            throw std::invalid_argument("count scene '" + name + "' names no archetype");
        }
        return;
    }
    if (terms.empty()) {
        throw std::invalid_argument("scene '" + name + "' has no terms");
    }
    for (const SceneTerm& term : terms) {
        if (term.metric.empty()) {
            throw std::invalid_argument("scene '" + name + "' has a term with no metric");
        }
        if (!(term.weight > 0.0)) {
            throw std::invalid_argument("scene '" + name + "' has a non-positive weight");
        }
        term.band.validate();
    }
}

SceneSpec natality_scene() {
    SceneSpec s;
    s.name = "natality_control";
    s.kind = SceneSpec::Kind::BandSum;
    // Survival plus one band per combat archetype, five components in all.
    // Every archetype band targets the same 22.5% share, so a population
    // only scores high when all four roles coexist at the right rates.
    s.terms = {
        {"survival", Band{60.0, 30.0, 90.0}, 1.0},
        {"downtrodden", Band{22.5, 8.0, 30.0}, 1.0},
        {"warrior", Band{22.5, 8.0, 30.0}, 1.0},
        {"helpless", Band{22.5, 8.0, 30.0}, 1.0},
        {"bad_warrior", Band{22.5, 8.0, 30.0}, 1.0},
    };
    return s;
}

SceneSpec revenge_scene() {
    SceneSpec s;
    s.name = "revenge";
    s.kind = SceneSpec::Kind::Count;
    s.count_archetype = "avenger";
    return s;
}

const std::vector<SceneSpec>& builtin_scenes() {
    static const std::vector<SceneSpec> scenes = {natality_scene(), revenge_scene()};
    return scenes;
}

const SceneSpec* find_scene(std::string_view name) {
    for (const SceneSpec& s : builtin_scenes()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

double scene_fitness(const SceneSpec& scene, const WorldRun& run, const TagReport& tags) {
    scene.validate();
    if (run.total_born <= 0) {
        throw std::invalid_argument("cannot score a run in which no agent ever lived");
    }

    const auto share_of_population = [&](const std::string& archetype) {
        const auto it = tags.tagged.find(archetype);
        if (it == tags.tagged.end()) {
            throw std::invalid_argument("scene '" + scene.name + "' needs archetype '" + archetype +
                                        "' but the tag report does not cover it");
        }
        return 100.0 * static_cast<double>(it->second.size()) / run.total_born;
    };

    if (scene.kind == SceneSpec::Kind::Count) {
        const auto it = tags.tagged.find(scene.count_archetype);
        if (it == tags.tagged.end()) {
            throw std::invalid_argument("scene '" + scene.name + "' needs archetype '" +
                                        scene.count_archetype +
                                        "' but the tag report does not cover it");
        }
        return static_cast<double>(it->second.size());
    }

    double total = 0.0;
    for (const SceneTerm& term : scene.terms) {
        const double value = term.metric == "survival" ? 100.0 * run.survival_rate()
                                                       : share_of_population(term.metric);
        total += term.weight * band_score(value, term.band);
    }
    return total;
}

} // namespace saga
