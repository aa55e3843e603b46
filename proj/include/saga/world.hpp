#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "saga/chronicle.hpp"
#include "saga/grid.hpp"
#include "saga/profile.hpp"
#include "saga/rng.hpp"

namespace saga {

struct WorldConfig {
    int grid_dim = 10;
    int initial_agents = 15;
    int rations_per_day = 10;
    int duration_days = 1000;
    int profile_count = 1;
    std::uint64_t master_seed = 0;
    double ration_energy = 40.0;
    double max_energy = 100.0;

    // Throws std::invalid_argument with the offending field named.
    void validate() const;
};

enum class AgentPhase : std::uint8_t {
    Sated,       // energy comfortable, wanders and may court
    Hungry,      // below the hunger threshold, food overrides everything
    SeekingMate, // courting until a partner or hunger interrupts
    Pregnant,    // counting down gestation
};

struct Agent {
    AgentId id = 0;
    int profile_index = 0;
    Traits traits{};
    Cell cell{};
    double energy = 0.0;
    int age_days = 0;
    AgentPhase phase = AgentPhase::Sated;
    int gestation_left = 0;
    AgentId mate = kNoAgent; // partner recorded at conception
    bool alive = true;
};

// Everything a finished simulation hands downstream: one life log per
// agent ever born (index == agent id), plus the headline counts.
struct WorldRun {
    WorldConfig config;
    std::vector<Profile> profiles;
    std::vector<Chronicle> chronicles;
    int total_born = 0;
    int alive_at_end = 0;
    int days_simulated = 0;

    double survival_rate() const {
        return total_born == 0 ? 0.0 : static_cast<double>(alive_at_end) / total_born;
    }
};

// The simulation proper. Construction validates and seeds; populate()
// places the initial cohort; step_day() advances one day. run_world()
// below is the one-call wrapper almost every caller wants.
//
// Determinism contract: all randomness flows through the single stream
// seeded from config.master_seed, and every iteration that feeds it walks
// a canonical order (ascending ids, row-major cells). Two worlds built
// from equal configs and profiles produce identical chronicles.
class World {
public:
    World(WorldConfig config, std::vector<Profile> profiles);

    // Scatters the starting agents on distinct random cells, round-robin
    // over profiles, at full energy. Separate from the constructor so
    // tests can assemble exact scenarios via spawn_agent instead.
    void populate();

    void step_day();
    bool finished() const { return day_ >= config_.duration_days; }
    void run_to_end();

    WorldRun take_run() &&;

    // --- engine services, also the test seam ---

    AgentId spawn_agent(Cell cell, int profile_index, double energy,
                        std::optional<AgentId> parent = std::nullopt);
    void add_ration(Cell cell) { grid_.add_ration(cell); }

    const Grid& grid() const { return grid_; }
    Grid& grid() { return grid_; }
    RngStream& rng() { return rng_; }
    int today() const { return day_; }

    Agent& agent(AgentId id) { return agents_[id]; }
    const Agent& agent(AgentId id) const { return agents_[id]; }
    int total_born() const { return static_cast<int>(agents_.size()); }
    int alive_count() const;

    void log(AgentId id, EventKind kind, std::string args = {});
    void move_agent(AgentId id, Cell to);
    void kill_agent(AgentId id, std::string_view cause);

    // Burns one day of upkeep; starvation is logged and marked here.
    void charge_metabolism(AgentId id);

    // Dead agents keep blocking their cell until the end-of-day sweep so
    // mid-day geometry never dangles; this removes them from the board.
    void sweep_dead();

    const WorldConfig& config() const { return config_; }
    const std::vector<Profile>& profiles() const { return profiles_; }

    // Invariant audit used by property tests: grid occupancy and agent
    // positions agree exactly, one agent per cell, all in bounds.
    std::vector<std::string> audit_consistency() const;

private:
    void scatter_rations();

    WorldConfig config_;
    std::vector<Profile> profiles_;
    std::vector<Traits> decoded_;
    Grid grid_;
    RngStream rng_;
    int day_ = 0;
    std::vector<Agent> agents_;
    std::vector<Chronicle> chronicles_;
};

WorldRun run_world(const WorldConfig& config, const std::vector<Profile>& profiles);

// Uniform random profiles, the starting point for searches and the
// default when a caller supplies none.
std::vector<Profile> random_profiles(int count, RngStream& rng);

} // namespace saga
