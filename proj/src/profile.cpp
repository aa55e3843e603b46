#include "saga/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saga {

namespace {

double clamp01(double v) {
    return std::clamp(v, 0.0, 1.0);
}

} // namespace

Traits decode_profile(const Profile& profile) {
    std::array<double, kAllelesPerProfile> a{};
    for (int i = 0; i < kAllelesPerProfile; ++i) {
        a[i] = clamp01(profile.alleles[i]);
    }

    Traits t{};
    t.move_prob = a[0];
    // Three vision buckets; allele 1.0 still lands in the top bucket.
    t.vision = 1 + std::min(2, static_cast<int>(a[1] * 3.0));
    t.metabolism = 1.0 + 9.0 * a[2];
    t.hunger_threshold = a[3];
    t.attack_prob = a[4];
    t.defend_prob = a[5];
    t.escape_prob = a[6];
    t.attack_strength = a[7];
    t.seek_mate_prob = a[8];
    t.fertility = a[9];
    t.gestation_days = 5 + static_cast<int>(std::lround(a[10] * 25.0));
    t.max_age_days = 100 + static_cast<int>(std::lround(a[11] * 900.0));
    return t;
}

std::vector<Profile> split_genome(const std::vector<double>& genome) {
    if (genome.empty() || genome.size() % kAllelesPerProfile != 0) {
        throw std::invalid_argument("genome length must be a positive multiple of " +
                                    std::to_string(kAllelesPerProfile));
    }
    std::vector<Profile> profiles(genome.size() / kAllelesPerProfile);
    for (std::size_t i = 0; i < genome.size(); ++i) {
        profiles[i / kAllelesPerProfile].alleles[i % kAllelesPerProfile] = genome[i];
    }
    return profiles;
}

std::vector<double> join_profiles(const std::vector<Profile>& profiles) {
    std::vector<double> genome;
    genome.reserve(profiles.size() * kAllelesPerProfile);
    for (const Profile& p : profiles) {
        genome.insert(genome.end(), p.alleles.begin(), p.alleles.end());
    }
    return genome;
}

} // namespace saga
