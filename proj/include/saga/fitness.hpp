#pragma once

#include <string>
#include <vector>

#include "saga/archetype.hpp"
#include "saga/world.hpp"

namespace saga {

// An acceptance band for one observable: full credit exactly at `target`,
// nothing outside [low, high], a Gaussian ramp in between. The ramp is
// fitted per side so an off-centre target still reaches zero right at its
// own edge: three standard deviations from target to either boundary.
struct Band {
    double target = 0.0;
    double low = 0.0;
    double high = 0.0;

    void validate() const; // throws std::invalid_argument
};

double band_score(double value, const Band& band);

// One weighted band over a named observable. The metric is either the
// reserved name "survival" (share of all agents ever born still alive at
// the end, in percent) or an archetype name (share of agents ever born
// carrying that archetype, in percent).
struct SceneTerm {
    std::string metric;
    Band band;
    double weight = 1.0;
};

// What a story needs from a run. BandSum scenes add up weighted band
// scores; Count scenes simply count carriers of one archetype.
struct SceneSpec {
    enum class Kind { BandSum, Count };

    std::string name;
    Kind kind = Kind::BandSum;
    std::vector<SceneTerm> terms;     // BandSum
    std::string count_archetype;      // Count

    // Archetypes the evaluation must have tagged beforehand.
    std::vector<std::string> required_archetypes() const;
    double max_score() const;
    void validate() const;
};

// A population that survives in a healthy band (60% alive, acceptable
// 30..90) while each combat archetype (downtrodden, warrior, helpless,
// bad_warrior) settles around a 22.5% share, acceptable 8..30. Five terms
// of weight 1, so the ceiling is 5.
SceneSpec natality_scene();

// Count of avengers; more grudges repaid, better the material.
SceneSpec revenge_scene();

const std::vector<SceneSpec>& builtin_scenes();
const SceneSpec* find_scene(std::string_view name);

// Scores one finished run against a scene. The tag report must already
// cover every archetype the scene requires (std::invalid_argument
// otherwise, as for a run with no agents at all).
double scene_fitness(const SceneSpec& scene, const WorldRun& run, const TagReport& tags);

} // namespace saga
