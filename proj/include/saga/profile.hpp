#pragma once

#include <array>
#include <vector>

namespace saga {

inline constexpr int kAllelesPerProfile = 12;

// Raw behavioural genotype: twelve values in [0,1]. The search layer only
// ever manipulates these; everything the simulation consumes is derived
// through decode_profile.
struct Profile {
    std::array<double, kAllelesPerProfile> alleles{};

    bool operator==(const Profile&) const = default;
};

// Allele layout (see docs/formats.md for the versioned table):
//   0 movement     1 vision        2 metabolism   3 hunger threshold
//   4 aggression   5 defence       6 flight       7 strength
//   8 courtship    9 fertility    10 gestation   11 longevity
struct Traits {
    double move_prob;        // chance per day to wander when contented
    int vision;              // neighbourhood radius, 1..3
    double metabolism;       // energy burned per day, 1..10
    double hunger_threshold; // fraction of max energy below which food rules
    double attack_prob;      // chance to fight a blocking agent for food
    double defend_prob;      // chance an attack is repelled outright
    double escape_prob;      // chance to flee instead of fighting back
    double attack_strength;  // weight in contested fights
    double seek_mate_prob;   // chance per day to start courting when sated
    double fertility;        // chance a courtship leads to pregnancy
    int gestation_days;      // 5..30
    int max_age_days;        // 100..1000
};

// Clamps each allele to [0,1] and maps it onto the trait ranges above.
// Probability-like traits pass through untouched; the four scaled traits
// interpolate their documented ranges.
Traits decode_profile(const Profile& profile);

// Splits a flat genome (12 * n values) into n profiles. Throws
// std::invalid_argument when the length is not a multiple of 12.
std::vector<Profile> split_genome(const std::vector<double>& genome);
std::vector<double> join_profiles(const std::vector<Profile>& profiles);

} // namespace saga
