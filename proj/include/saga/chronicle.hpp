#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace saga {

using AgentId = std::uint32_t;
inline constexpr AgentId kNoAgent = 0xFFFFFFFFu;

enum class EventKind : std::uint8_t {
    Born,
    Move,
    Eat,
    Hungry,
    SeekMate,
    Mate,
    Pregnant,
    Birth,
    AttackOk,
    AttackFail,
    Attacked,
    Defended,
    Escaped,
    Die,
};

inline constexpr int kEventKindCount = 14;

std::string_view to_string(EventKind kind);
std::optional<EventKind> event_kind_from(std::string_view name);

// One line of an agent's life log. `args` holds the third field verbatim,
// already comma-joined ("3,7", "A12", "starvation", or empty). Keeping it
// as a single short string means most events never touch the heap.
struct Event {
    std::int32_t day = 0;
    EventKind kind = EventKind::Born;
    std::string args;

    bool operator==(const Event&) const = default;
};

Event make_event(std::int32_t day, EventKind kind, std::string args = {});

// "A<id>" argument helpers.
std::string agent_arg(AgentId id);
std::optional<AgentId> parse_agent_arg(std::string_view arg);

// First comma-separated atom of an event's args ("A3,7" -> "A3").
std::string_view first_arg(const Event& ev);

struct Chronicle {
    AgentId agent_id = 0;
    int profile_index = 0;
    std::vector<Event> events;

    bool operator==(const Chronicle&) const = default;
};

// Renders events as "<day>|<KIND>|<args>\n" lines, in order.
std::string render_log(const Chronicle& chronicle);
void render_event(std::string& out, const Event& ev);

struct ParseIssue {
    int line_no = 0; // 1-based
    std::string message;
};

struct ParsedLog {
    std::vector<Event> events;
    std::vector<ParseIssue> issues;

    bool ok() const { return issues.empty(); }
};

// Inverse of render_log: accepts exactly the rendered format, reports
// malformed lines without aborting so callers can surface all problems
// from a hand-edited file at once.
ParsedLog parse_log(std::string_view text);

// Structural checks on a single life log: starts with BORN, days never
// decrease, nothing after DIE. Returns human-readable violations.
std::vector<std::string> validate_chronicle(const Chronicle& chronicle);

struct CoherenceViolation {
    AgentId agent = 0;
    std::int32_t day = 0;
    std::string message;
};

// Cross-log consistency: every ATTACK_OK/ATTACK_FAIL in one log must have
// a same-day ATTACKED naming the attacker in the target's log, MATE events
// must appear in both partners' logs, and BIRTH must pair with the child's
// BORN. Multiple interactions between the same pair on the same day are
// matched by count.
std::vector<CoherenceViolation> check_coherence(const std::vector<Chronicle>& chronicles);

} // namespace saga
