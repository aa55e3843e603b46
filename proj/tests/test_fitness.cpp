#include <doctest.h>

#include <stdexcept>

#include "saga/fitness.hpp"

using namespace saga;

namespace {

// Just enough of a finished run to feed the scorer.
WorldRun run_with(int born, int alive) {
    WorldRun run;
    run.total_born = born;
    run.alive_at_end = alive;
    return run;
}

TagReport tags_with(const std::string& name, int carriers) {
    TagReport tags;
    auto& ids = tags.tagged[name];
    for (int i = 0; i < carriers; ++i) {
        ids.insert(static_cast<AgentId>(i));
    }
    return tags;
}

// Carrier counts for several archetypes at once; the id sets may overlap,
// which mirrors real runs where one agent carries several tags.
TagReport tags_multi(std::initializer_list<std::pair<const char*, int>> counts) {
    TagReport tags;
    for (const auto& [name, carriers] : counts) {
        auto& ids = tags.tagged[name];
        for (int i = 0; i < carriers; ++i) {
            ids.insert(static_cast<AgentId>(i));
        }
    }
    return tags;
}

const Band kSurvival{60.0, 30.0, 90.0};
const Band kDowntrodden{22.5, 8.0, 30.0};

} // namespace

TEST_CASE("band gives full credit exactly at the target") {
    CHECK(band_score(60.0, kSurvival) == 1.0);
    CHECK(band_score(22.5, kDowntrodden) == 1.0);
}

TEST_CASE("band is zero outside its edges and tiny at them") {
    CHECK(band_score(29.999, kSurvival) == 0.0);
    CHECK(band_score(90.001, kSurvival) == 0.0);
    CHECK(band_score(-5.0, kSurvival) == 0.0);
    // the edges themselves sit three sigma out
    CHECK(band_score(30.0, kSurvival) == doctest::Approx(0.011108996538242306).epsilon(1e-12));
    CHECK(band_score(8.0, kDowntrodden) == doctest::Approx(0.011108996538242306).epsilon(1e-12));
}

TEST_CASE("band falls off on the bell curve, one sigma per step") {
    // symmetric band: 50 and 70 are each one sigma from 60
    CHECK(band_score(50.0, kSurvival) == doctest::Approx(0.6065306597126334).epsilon(1e-12));
    CHECK(band_score(70.0, kSurvival) == doctest::Approx(0.6065306597126334).epsilon(1e-12));
}

TEST_CASE("each side of an off-centre band owns its own slope") {
    // 2.5 above the target is one short-side sigma, 2.5 below is only
    // about half of the long side's
    CHECK(band_score(25.0, kDowntrodden) == doctest::Approx(0.6065306597126334).epsilon(1e-12));
    CHECK(band_score(20.0, kDowntrodden) == doctest::Approx(0.874791836355582).epsilon(1e-12));
    CHECK(band_score(20.0, kDowntrodden) > band_score(25.0, kDowntrodden));
}

TEST_CASE("degenerate bands are rejected") {
    CHECK_THROWS_AS(band_score(1.0, Band{5.0, 5.0, 10.0}), std::invalid_argument);
    CHECK_THROWS_AS(band_score(1.0, Band{10.0, 5.0, 10.0}), std::invalid_argument);
    CHECK_THROWS_AS(band_score(1.0, Band{0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("the shipped scenes declare their needs correctly") {
    const SceneSpec natality = natality_scene();
    CHECK(natality.max_score() == 5.0);
    CHECK(natality.terms.size() == 5);
    CHECK(natality.required_archetypes() ==
          std::vector<std::string>{"downtrodden", "warrior", "helpless", "bad_warrior"});
    CHECK_NOTHROW(natality.validate());

    const SceneSpec revenge = revenge_scene();
    CHECK(revenge.kind == SceneSpec::Kind::Count);
    CHECK(revenge.required_archetypes() == std::vector<std::string>{"avenger"});
    CHECK(revenge.max_score() == -1.0); // counts have no ceiling
    CHECK_NOTHROW(revenge.validate());

    CHECK(find_scene("natality_control") != nullptr);
    CHECK(find_scene("revenge") != nullptr);
    CHECK(find_scene("finale") == nullptr);
}

TEST_CASE("a run dead-centre in every band earns the maximum") {
    // 24 of 40 alive is 60% survival; 9 of 40 in each combat role is 22.5%
    const double fitness = scene_fitness(natality_scene(), run_with(40, 24),
                                         tags_multi({{"downtrodden", 9},
                                                     {"warrior", 9},
                                                     {"helpless", 9},
                                                     {"bad_warrior", 9}}));
    CHECK(fitness == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("a partly off-target run scores the frozen blend") {
    // Survival 12/20 = 60% is spot on. The four roles sit at 20%, 25%, 0%
    // and 10% of the population, one band value each, summed by hand:
    // 1 + 0.874791836355582 + 0.6065306597126334 + 0 + 0.03528726814483152.
    const double fitness = scene_fitness(natality_scene(), run_with(20, 12),
                                         tags_multi({{"downtrodden", 4},
                                                     {"warrior", 5},
                                                     {"helpless", 0},
                                                     {"bad_warrior", 2}}));
    CHECK(fitness == doctest::Approx(2.516609764213047).epsilon(1e-12));
}

TEST_CASE("count scenes return the carrier count as the score") {
    CHECK(scene_fitness(revenge_scene(), run_with(30, 10), tags_with("avenger", 3)) == 3.0);
    CHECK(scene_fitness(revenge_scene(), run_with(30, 10), tags_with("avenger", 0)) == 0.0);
}

TEST_CASE("scoring refuses runs and reports it cannot interpret") {
    CHECK_THROWS_AS(
        scene_fitness(natality_scene(), run_with(0, 0), tags_with("downtrodden", 0)),
        std::invalid_argument);
    // the report lacks the archetypes the scene needs, entirely or in part
    CHECK_THROWS_AS(scene_fitness(natality_scene(), run_with(10, 5), tags_with("avenger", 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        scene_fitness(natality_scene(), run_with(10, 5), tags_with("downtrodden", 2)),
        std::invalid_argument);
    CHECK_THROWS_AS(scene_fitness(revenge_scene(), run_with(10, 5), tags_with("warrior", 1)),
                    std::invalid_argument);

    SceneSpec nameless;
    CHECK_THROWS_AS(scene_fitness(nameless, run_with(10, 5), TagReport{}),
                    std::invalid_argument);
    SceneSpec empty_terms;
    empty_terms.name = "empty";
    CHECK_THROWS_AS(empty_terms.validate(), std::invalid_argument);
    SceneSpec bad_weight;
    bad_weight.name = "bad";
    bad_weight.terms = {{"survival", Band{60.0, 30.0, 90.0}, 0.0}};
    CHECK_THROWS_AS(bad_weight.validate(), std::invalid_argument);
}
