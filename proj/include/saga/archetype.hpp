#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "saga/chronicle.hpp"
#include "saga/regex.hpp"
#include "saga/world.hpp"

namespace saga {

// A named character shape, recognised by running `pattern` over an
// agent's rendered life log. The agent carries the archetype when the
// pattern matches and the optional `forbidden_pattern` does not. Both
// compile with dotall and multiline on, so '.' crosses line breaks and
// '^'/'$' see every line.
struct ArchetypeSpec {
    std::string name;
    std::string pattern;
    std::optional<std::string> forbidden_pattern;
    std::string description;
};

// The five shipped archetypes:
//   downtrodden  attacked at least twice and defended at least once
//   warrior      landed at least five successful attacks
//   helpless     attacked at least ten times, never once defending
//   bad_warrior  botched at least ten attacks
//   avenger      attacked by someone, later lands a hit on that same foe
const std::vector<ArchetypeSpec>& builtin_specs();
const ArchetypeSpec* find_builtin(std::string_view name);

struct TagReport {
    // archetype name -> ids of agents carrying it; every requested
    // archetype has an entry, possibly empty.
    std::map<std::string, std::set<AgentId>> tagged;
    int total_born = 0;
    int alive_at_end = 0;
    // compile failures and budget blowouts, one line each; tagging
    // continues past them.
    std::vector<std::string> warnings;

    int count(const std::string& name) const {
        const auto it = tagged.find(name);
        return it == tagged.end() ? 0 : static_cast<int>(it->second.size());
    }
};

TagReport tag_chronicles(const std::vector<Chronicle>& chronicles,
                         const std::vector<ArchetypeSpec>& specs);
TagReport tag_run(const WorldRun& run, const std::vector<ArchetypeSpec>& specs);

// Event-counting reimplementation of the five shipped archetypes. Shares
// no code with the pattern route on purpose: it reads parsed events, never
// rendered text, and exists so the two routes can be checked against each
// other. Throws std::invalid_argument for names it does not know.
bool oracle_tag(const Chronicle& chronicle, std::string_view archetype_name);

} // namespace saga
