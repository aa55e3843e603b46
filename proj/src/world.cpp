#include "saga/world.hpp"

#include <algorithm>
#include <stdexcept>

#include "saga/agent.hpp"

namespace saga {

namespace {

[[noreturn]] void bad_field(const std::string& message) {
    throw std::invalid_argument("world config: " + message);
}

} // namespace

void WorldConfig::validate() const {
    if (grid_dim < 1) bad_field("grid_dim must be at least 1");
    if (initial_agents < 0) bad_field("initial_agents must not be negative");
    if (static_cast<long long>(initial_agents) >
        static_cast<long long>(grid_dim) * grid_dim) {
        bad_field("initial_agents exceeds grid capacity");
    }
    if (rations_per_day < 0) bad_field("rations_per_day must not be negative");
    if (duration_days < 0) bad_field("duration_days must not be negative");
    if (profile_count < 1 || profile_count > 5) bad_field("profile_count must be in 1..5");
    if (!(ration_energy > 0.0)) bad_field("ration_energy must be positive");
    if (!(max_energy > 0.0)) bad_field("max_energy must be positive");
}

World::World(WorldConfig config, std::vector<Profile> profiles)
    : config_(config),
      profiles_(std::move(profiles)),
      grid_(config.grid_dim),
      rng_(config.master_seed) {
    config_.validate();
    if (static_cast<int>(profiles_.size()) != config_.profile_count) {
        throw std::invalid_argument("world config: expected " +
                                    std::to_string(config_.profile_count) + " profiles, got " +
                                    std::to_string(profiles_.size()));
    }
    decoded_.reserve(profiles_.size());
    for (const Profile& p : profiles_) {
        decoded_.push_back(decode_profile(p));
    }
}

void World::populate() {
    for (int i = 0; i < config_.initial_agents; ++i) {
        // Rejection sampling keeps the draw uniform over free cells and,
        // unlike scanning for gaps, costs a predictable stream prefix.
        Cell cell;
        do {
            cell.x = static_cast<int>(rng_.uniform_below(static_cast<std::uint64_t>(config_.grid_dim)));
            cell.y = static_cast<int>(rng_.uniform_below(static_cast<std::uint64_t>(config_.grid_dim)));
        } while (!grid_.is_free(cell));
        spawn_agent(cell, i % config_.profile_count, config_.max_energy);
    }
}

AgentId World::spawn_agent(Cell cell, int profile_index, double energy,
                           std::optional<AgentId> parent) {
    const AgentId id = static_cast<AgentId>(agents_.size());
    Agent a;
    a.id = id;
    a.profile_index = profile_index;
    a.traits = decoded_.at(static_cast<std::size_t>(profile_index));
    a.cell = cell;
    a.energy = energy;
    agents_.push_back(a);
    grid_.place(id, cell);

    Chronicle c;
    c.agent_id = id;
    c.profile_index = profile_index;
    chronicles_.push_back(std::move(c));
    log(id, EventKind::Born, parent ? agent_arg(*parent) : std::string{});
    return id;
}

void World::log(AgentId id, EventKind kind, std::string args) {
    chronicles_[id].events.push_back(make_event(day_, kind, std::move(args)));
}

void World::move_agent(AgentId id, Cell to) {
    Agent& a = agents_[id];
    grid_.relocate(a.cell, to);
    a.cell = to;
}

void World::kill_agent(AgentId id, std::string_view cause) {
    Agent& a = agents_[id];
    if (!a.alive) return;
    a.alive = false;
    log(id, EventKind::Die, std::string(cause));
}

void World::charge_metabolism(AgentId id) {
    Agent& a = agents_[id];
    a.energy -= a.traits.metabolism;
    if (a.energy <= 0.0) {
        kill_agent(id, "starvation");
    }
}

void World::sweep_dead() {
    for (Agent& a : agents_) {
        if (!a.alive && a.cell.x >= 0) {
            grid_.vacate(a.cell);
            a.cell = Cell{-1, -1};
        }
    }
}

void World::scatter_rations() {
    for (int i = 0; i < config_.rations_per_day; ++i) {
        Cell cell;
        cell.x = static_cast<int>(rng_.uniform_below(static_cast<std::uint64_t>(config_.grid_dim)));
        cell.y = static_cast<int>(rng_.uniform_below(static_cast<std::uint64_t>(config_.grid_dim)));
        grid_.add_ration(cell);
    }
}

void World::step_day() {
    ++day_;
    scatter_rations();

    // Snapshot the living roster before anyone acts: agents born today do
    // not act today, and the shuffle always starts from ascending ids so
    // the permutation is a pure function of the stream.
    std::vector<AgentId> order;
    order.reserve(agents_.size());
    for (const Agent& a : agents_) {
        if (a.alive) order.push_back(a.id);
    }
    shuffle_in_place(order, rng_);

    for (AgentId id : order) {
        if (agents_[id].alive) {
            live_one_day(*this, id);
        }
    }

    sweep_dead();
}

void World::run_to_end() {
    while (!finished()) {
        step_day();
    }
}

int World::alive_count() const {
    return static_cast<int>(std::count_if(agents_.begin(), agents_.end(),
                                          [](const Agent& a) { return a.alive; }));
}

WorldRun World::take_run() && {
    WorldRun run;
    run.config = config_;
    run.profiles = std::move(profiles_);
    run.total_born = static_cast<int>(agents_.size());
    run.alive_at_end = alive_count();
    run.days_simulated = day_;
    run.chronicles = std::move(chronicles_);
    return run;
}

std::vector<std::string> World::audit_consistency() const {
    std::vector<std::string> problems;
    int on_grid = 0;
    for (const Agent& a : agents_) {
        if (a.cell.x >= 0) {
            ++on_grid;
            if (!grid_.in_bounds(a.cell)) {
                problems.push_back("agent A" + std::to_string(a.id) + " out of bounds");
            } else if (grid_.occupant(a.cell) != a.id) {
                problems.push_back("cell does not record agent A" + std::to_string(a.id));
            }
        } else if (a.alive) {
            problems.push_back("living agent A" + std::to_string(a.id) + " is off the board");
        }
    }
    for (int y = 0; y < grid_.dim(); ++y) {
        for (int x = 0; x < grid_.dim(); ++x) {
            const AgentId id = grid_.occupant(Cell{x, y});
            if (id == kNoAgent) continue;
            if (id >= agents_.size() || !(agents_[id].cell == Cell{x, y})) {
                problems.push_back("stale occupant entry at " + std::to_string(x) + "," +
                                   std::to_string(y));
            }
        }
    }
    if (grid_.occupied_count() != on_grid) {
        problems.push_back("occupied-cell counter drifted");
    }
    return problems;
}

WorldRun run_world(const WorldConfig& config, const std::vector<Profile>& profiles) {
    World world(config, profiles);
    world.populate();
    world.run_to_end();
    return std::move(world).take_run();
}

std::vector<Profile> random_profiles(int count, RngStream& rng) {
    std::vector<Profile> out(static_cast<std::size_t>(count));
    for (Profile& p : out) {
        for (double& allele : p.alleles) {
            allele = rng.next_double();
        }
    }
    return out;
}

} // namespace saga
