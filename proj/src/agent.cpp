#include "saga/agent.hpp"

#include <algorithm>
#include <cstdlib>

namespace saga {

namespace {

int cheb(Cell a, Cell b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

int sign(int v) {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

std::string cell_arg(Cell c) {
    return std::to_string(c.x) + "," + std::to_string(c.y);
}

Cell pick(const std::vector<Cell>& cells, RngStream& rng) {
    return cells[rng.uniform_below(cells.size())];
}

void wander(World& w, AgentId id) {
    const auto exits = w.grid().free_neighbours(w.agent(id).cell);
    if (exits.empty()) return;
    const Cell dest = pick(exits, w.rng());
    w.move_agent(id, dest);
    w.log(id, EventKind::Move, cell_arg(dest));
}

// One step along the straight line to `target` (diagonal moves allowed).
// A blocked step either starts a fight over the blocking cell or slides
// to a free neighbour that does not lose ground toward the target.
void step_toward(World& w, AgentId id, Cell target, bool may_attack) {
    Agent& a = w.agent(id);
    const Cell desired{a.cell.x + sign(target.x - a.cell.x), a.cell.y + sign(target.y - a.cell.y)};
    if (desired == a.cell) return;

    if (w.grid().is_free(desired)) {
        w.move_agent(id, desired);
        w.log(id, EventKind::Move, cell_arg(desired));
        return;
    }

    const AgentId blocker = w.grid().occupant(desired);
    if (may_attack && w.agent(blocker).alive && w.rng().bernoulli(a.traits.attack_prob)) {
        const AttackOutcome outcome = resolve_attack(w, id, blocker);
        // Claim the ground the loser gave up, combat toll permitting.
        if (outcome != AttackOutcome::Repelled && w.agent(id).alive && w.grid().is_free(desired)) {
            w.move_agent(id, desired);
            w.log(id, EventKind::Move, cell_arg(desired));
        }
        return;
    }

    const auto exits = w.grid().free_neighbours(a.cell);
    if (exits.empty()) return;
    const int current = cheb(a.cell, target);
    int best = current + 1;
    for (const Cell& c : exits) {
        best = std::min(best, cheb(c, target));
    }
    if (best > current) return; // every open cell loses ground; wait instead
    std::vector<Cell> candidates;
    for (const Cell& c : exits) {
        if (cheb(c, target) == best) candidates.push_back(c);
    }
    const Cell dest = pick(candidates, w.rng());
    w.move_agent(id, dest);
    w.log(id, EventKind::Move, cell_arg(dest));
}

void eat_here(World& w, AgentId id) {
    Agent& a = w.agent(id);
    w.grid().take_ration(a.cell);
    a.energy = std::min(w.config().max_energy, a.energy + w.config().ration_energy);
    w.log(id, EventKind::Eat, cell_arg(a.cell));
}

// Food ladder shared by the hungry phase and a hungry pregnancy: eat on
// the spot, else head for the closest visible ration, else roam.
void forage(World& w, AgentId id) {
    Agent& a = w.agent(id);
    if (w.grid().rations_at(a.cell) > 0) {
        eat_here(w, id);
        return;
    }

    std::vector<Cell> nearest;
    int nearest_dist = 0;
    for (const Cell& c : w.grid().neighbours(a.cell, a.traits.vision)) {
        if (w.grid().rations_at(c) == 0) continue;
        const int d = cheb(a.cell, c);
        if (nearest.empty() || d < nearest_dist) {
            nearest_dist = d;
            nearest.assign(1, c);
        } else if (d == nearest_dist) {
            nearest.push_back(c);
        }
    }

    if (nearest.empty()) {
        wander(w, id);
        return;
    }
    step_toward(w, id, pick(nearest, w.rng()), /*may_attack=*/true);
}

void court(World& w, AgentId id) {
    Agent& a = w.agent(id);

    std::vector<AgentId> adjacent;
    std::vector<Cell> nearest;
    int nearest_dist = 0;
    for (const Cell& c : w.grid().neighbours(a.cell, a.traits.vision)) {
        const AgentId other = w.grid().occupant(c);
        if (other == kNoAgent) continue;
        const Agent& o = w.agent(other);
        if (!o.alive || o.phase != AgentPhase::SeekingMate) continue;
        const int d = cheb(a.cell, c);
        if (d == 1) adjacent.push_back(other);
        if (nearest.empty() || d < nearest_dist) {
            nearest_dist = d;
            nearest.assign(1, c);
        } else if (d == nearest_dist) {
            nearest.push_back(c);
        }
    }

    if (!adjacent.empty()) {
        const AgentId partner = adjacent[w.rng().uniform_below(adjacent.size())];
        w.log(id, EventKind::Mate, agent_arg(partner));
        w.log(partner, EventKind::Mate, agent_arg(id));
        w.agent(partner).phase = AgentPhase::Sated;
        if (w.rng().bernoulli(a.traits.fertility)) {
            a.phase = AgentPhase::Pregnant;
            a.gestation_left = a.traits.gestation_days;
            a.mate = partner;
            w.log(id, EventKind::Pregnant, agent_arg(partner));
        } else {
            a.phase = AgentPhase::Sated;
        }
        return;
    }

    if (!nearest.empty()) {
        step_toward(w, id, pick(nearest, w.rng()), /*may_attack=*/false);
        return;
    }
    wander(w, id);
}

void deliver_or_wait(World& w, AgentId id) {
    const auto exits = w.grid().free_neighbours(w.agent(id).cell);
    if (exits.empty()) return; // boxed in; the birth waits for tomorrow
    const Cell dest = pick(exits, w.rng());
    const int lineage = w.agent(id).profile_index;
    const AgentId child = w.spawn_agent(dest, lineage, w.config().max_energy * 0.5, id);
    // spawn_agent may reallocate agent storage; re-resolve the mother.
    Agent& m = w.agent(id);
    w.log(id, EventKind::Birth, agent_arg(child));
    m.phase = AgentPhase::Sated;
    m.mate = kNoAgent;
}

void gestate(World& w, AgentId id) {
    Agent& a = w.agent(id);
    if (a.gestation_left > 0) --a.gestation_left;
    if (a.gestation_left == 0) {
        deliver_or_wait(w, id);
        return;
    }
    const double threshold = a.traits.hunger_threshold * w.config().max_energy;
    if (a.energy < threshold) {
        forage(w, id);
    } else if (w.rng().bernoulli(a.traits.move_prob)) {
        wander(w, id);
    }
}

} // namespace

void live_one_day(World& w, AgentId id) {
    {
        Agent& a = w.agent(id);
        ++a.age_days;
        if (a.age_days > a.traits.max_age_days) {
            w.kill_agent(id, "old_age");
            return;
        }
    }
    w.charge_metabolism(id);
    if (!w.agent(id).alive) return;

    Agent& a = w.agent(id);
    const double threshold = a.traits.hunger_threshold * w.config().max_energy;
    // Morning reappraisal is the single place hunger is entered or left;
    // pregnancy shields the phase but not the appetite.
    if (a.phase == AgentPhase::Hungry && a.energy >= threshold) {
        a.phase = AgentPhase::Sated;
    }
    if (a.phase != AgentPhase::Hungry && a.phase != AgentPhase::Pregnant &&
        a.energy < threshold) {
        a.phase = AgentPhase::Hungry;
        w.log(id, EventKind::Hungry);
    }

    switch (a.phase) {
    case AgentPhase::Hungry:
        forage(w, id);
        break;
    case AgentPhase::SeekingMate:
        court(w, id);
        break;
    case AgentPhase::Pregnant:
        gestate(w, id);
        break;
    case AgentPhase::Sated:
        if (w.rng().bernoulli(a.traits.seek_mate_prob)) {
            a.phase = AgentPhase::SeekingMate;
            w.log(id, EventKind::SeekMate);
        } else if (w.rng().bernoulli(a.traits.move_prob)) {
            wander(w, id);
        }
        break;
    }
}

AttackOutcome resolve_attack(World& w, AgentId attacker, AgentId defender) {
    Agent& atk = w.agent(attacker);
    Agent& def = w.agent(defender);
    AttackOutcome outcome;
    bool cornered_loss = false;

    const auto log_stand = [&](bool attacker_won) {
        w.log(attacker, attacker_won ? EventKind::AttackOk : EventKind::AttackFail,
              agent_arg(defender));
        w.log(defender, EventKind::Attacked, agent_arg(attacker));
        if (!attacker_won) {
            w.log(defender, EventKind::Defended, agent_arg(attacker));
        }
    };

    std::vector<Cell> exits;
    if (w.rng().bernoulli(def.traits.escape_prob) &&
        !(exits = w.grid().free_neighbours(def.cell)).empty()) {
        // Flight needs an open cell; a cornered agent has to stand.
        const Cell dest = pick(exits, w.rng());
        w.log(attacker, EventKind::AttackOk, agent_arg(defender));
        w.log(defender, EventKind::Attacked, agent_arg(attacker));
        w.log(defender, EventKind::Escaped, agent_arg(attacker));
        w.move_agent(defender, dest);
        w.log(defender, EventKind::Move, cell_arg(dest));
        outcome = AttackOutcome::DefenderEscaped;
    } else if (w.rng().bernoulli(def.traits.defend_prob)) {
        log_stand(false);
        outcome = AttackOutcome::Repelled;
    } else {
        // Open contest, weighted by strength with a floor so a zero-
        // strength pairing still resolves.
        const double sa = std::max(0.01, atk.traits.attack_strength);
        const double sd = std::max(0.01, def.traits.attack_strength);
        if (w.rng().next_double() < sa / (sa + sd)) {
            log_stand(true);
            exits = w.grid().free_neighbours(def.cell);
            if (!exits.empty()) {
                const Cell dest = pick(exits, w.rng());
                w.move_agent(defender, dest);
                w.log(defender, EventKind::Move, cell_arg(dest));
            } else {
                cornered_loss = true; // nowhere to shove the loser
            }
            outcome = AttackOutcome::Won;
        } else {
            log_stand(false);
            outcome = AttackOutcome::Repelled;
        }
    }

    // Fighting costs both sides a day's upkeep, and losing with your back
    // to the wall costs the defender a second one.
    w.charge_metabolism(attacker);
    w.charge_metabolism(defender);
    if (cornered_loss && w.agent(defender).alive) {
        w.charge_metabolism(defender);
    }
    return outcome;
}

} // namespace saga
