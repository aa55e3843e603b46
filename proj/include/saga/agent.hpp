#pragma once

#include "saga/world.hpp"

namespace saga {

enum class AttackOutcome {
    Won,             // defender displaced (or cornered), attacker may advance
    Repelled,        // defender blocked or beat back the attack
    DefenderEscaped, // defender slipped away; the contested cell is open
};

// One agent's full day: upkeep, phase bookkeeping, then one action chosen
// by the phase-driven decision ladder. Callers guarantee `id` is alive.
void live_one_day(World& world, AgentId id);

// Fight over a cell or its rations. Rolls escape, then outright defence,
// then a strength-weighted contest; writes the paired events into both
// logs and charges both parties a day's metabolism as combat toll.
AttackOutcome resolve_attack(World& world, AgentId attacker, AgentId defender);

} // namespace saga
