#include "saga/chronicle.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>

namespace saga {

namespace {

constexpr std::array<std::string_view, kEventKindCount> kKindNames = {
    "BORN",      "MOVE",     "EAT",      "HUNGRY",   "SEEK_MATE",
    "MATE",      "PREGNANT", "BIRTH",    "ATTACK_OK", "ATTACK_FAIL",
    "ATTACKED",  "DEFENDED", "ESCAPED",  "DIE",
};

void append_int(std::string& out, std::int64_t value) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    out.append(buf, ptr);
}

} // namespace

std::string_view to_string(EventKind kind) {
    return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<EventKind> event_kind_from(std::string_view name) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) {
            return static_cast<EventKind>(i);
        }
    }
    return std::nullopt;
}

Event make_event(std::int32_t day, EventKind kind, std::string args) {
    return Event{day, kind, std::move(args)};
}

std::string agent_arg(AgentId id) {
    std::string out;
    out.push_back('A');
    append_int(out, id);
    return out;
}

std::optional<AgentId> parse_agent_arg(std::string_view arg) {
    if (arg.size() < 2 || arg[0] != 'A') {
        return std::nullopt;
    }
    std::uint32_t value = 0;
    const char* begin = arg.data() + 1;
    const char* end = arg.data() + arg.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        return std::nullopt;
    }
    return value;
}

std::string_view first_arg(const Event& ev) {
    std::string_view args = ev.args;
    const std::size_t comma = args.find(',');
    return comma == std::string_view::npos ? args : args.substr(0, comma);
}

void render_event(std::string& out, const Event& ev) {
    append_int(out, ev.day);
    out.push_back('|');
    out.append(to_string(ev.kind));
    out.push_back('|');
    out.append(ev.args);
    out.push_back('\n');
}

std::string render_log(const Chronicle& chronicle) {
    std::string out;
    // 24 bytes is a comfortable bound for a typical rendered line.
    out.reserve(chronicle.events.size() * 24);
    for (const Event& ev : chronicle.events) {
        render_event(out, ev);
    }
    return out;
}

ParsedLog parse_log(std::string_view text) {
    ParsedLog result;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        ++line_no;
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) {
            result.issues.push_back({line_no, "empty line"});
            continue;
        }

        const std::size_t p1 = line.find('|');
        if (p1 == std::string_view::npos) {
            result.issues.push_back({line_no, "missing '|' separators"});
            continue;
        }
        const std::size_t p2 = line.find('|', p1 + 1);
        if (p2 == std::string_view::npos) {
            result.issues.push_back({line_no, "missing second '|' separator"});
            continue;
        }

        const std::string_view day_field = line.substr(0, p1);
        std::int32_t day = 0;
        auto [ptr, ec] = std::from_chars(day_field.data(), day_field.data() + day_field.size(), day);
        if (ec != std::errc{} || ptr != day_field.data() + day_field.size() || day_field.empty() || day < 0) {
            result.issues.push_back({line_no, "bad day field '" + std::string(day_field) + "'"});
            continue;
        }

        const std::string_view kind_field = line.substr(p1 + 1, p2 - p1 - 1);
        const auto kind = event_kind_from(kind_field);
        if (!kind) {
            result.issues.push_back({line_no, "unknown event kind '" + std::string(kind_field) + "'"});
            continue;
        }

        const std::string_view args = line.substr(p2 + 1);
        if (args.find('|') != std::string_view::npos) {
            result.issues.push_back({line_no, "unexpected '|' in argument field"});
            continue;
        }

        result.events.push_back(Event{day, *kind, std::string(args)});
    }
    return result;
}

std::vector<std::string> validate_chronicle(const Chronicle& chronicle) {
    std::vector<std::string> problems;
    const auto& events = chronicle.events;
    if (events.empty()) {
        problems.push_back("log is empty");
        return problems;
    }
    if (events.front().kind != EventKind::Born) {
        problems.push_back("log does not start with BORN");
    }
    std::int32_t last_day = events.front().day;
    bool dead = false;
    for (std::size_t i = 1; i < events.size(); ++i) {
        const Event& ev = events[i];
        if (ev.kind == EventKind::Born) {
            problems.push_back("BORN appears after line 1");
        }
        if (ev.day < last_day) {
            problems.push_back("day decreases at line " + std::to_string(i + 1));
        }
        if (dead) {
            problems.push_back("event after DIE at line " + std::to_string(i + 1));
        }
        if (ev.kind == EventKind::Die) {
            dead = true;
        }
        last_day = ev.day;
    }
    return problems;
}

namespace {

// Key for pairwise same-day interactions: (day, actor, target).
using PairKey = std::tuple<std::int32_t, AgentId, AgentId>;

void note_mismatch(std::vector<CoherenceViolation>& out, const PairKey& key,
                   AgentId blame, const std::string& what, int have, int want) {
    out.push_back({blame, std::get<0>(key),
                   what + ": " + std::to_string(have) + " recorded, " + std::to_string(want) +
                       " expected (counterpart A" + std::to_string(std::get<2>(key)) + ")"});
}

} // namespace

std::vector<CoherenceViolation> check_coherence(const std::vector<Chronicle>& chronicles) {
    std::vector<CoherenceViolation> violations;

    // attacks_made[(day,a,b)] counts ATTACK_OK/ATTACK_FAIL lines in a's log
    // targeting b; attacked_seen counts matching ATTACKED lines in b's log.
    std::map<PairKey, int> attacks_made;
    std::map<PairKey, int> attacked_seen;
    std::map<PairKey, int> mate_said;
    std::map<PairKey, int> birth_said;
    std::map<PairKey, int> born_said;

    auto id_of = [&](std::string_view arg) -> std::optional<AgentId> {
        return parse_agent_arg(arg);
    };

    for (const Chronicle& c : chronicles) {
        for (const Event& ev : c.events) {
            switch (ev.kind) {
            case EventKind::AttackOk:
            case EventKind::AttackFail:
                if (auto target = id_of(first_arg(ev))) {
                    ++attacks_made[{ev.day, c.agent_id, *target}];
                } else {
                    violations.push_back({c.agent_id, ev.day, "attack event with unparseable target"});
                }
                break;
            case EventKind::Attacked:
                if (auto attacker = id_of(first_arg(ev))) {
                    ++attacked_seen[{ev.day, *attacker, c.agent_id}];
                } else {
                    violations.push_back({c.agent_id, ev.day, "ATTACKED with unparseable attacker"});
                }
                break;
            case EventKind::Mate:
                if (auto partner = id_of(first_arg(ev))) {
                    ++mate_said[{ev.day, c.agent_id, *partner}];
                } else {
                    violations.push_back({c.agent_id, ev.day, "MATE with unparseable partner"});
                }
                break;
            case EventKind::Birth:
                if (auto child = id_of(first_arg(ev))) {
                    ++birth_said[{ev.day, c.agent_id, *child}];
                } else {
                    violations.push_back({c.agent_id, ev.day, "BIRTH with unparseable child"});
                }
                break;
            case EventKind::Born:
                if (!ev.args.empty()) {
                    if (auto parent = id_of(first_arg(ev))) {
                        ++born_said[{ev.day, *parent, c.agent_id}];
                    } else {
                        violations.push_back({c.agent_id, ev.day, "BORN with unparseable parent"});
                    }
                }
                break;
            default:
                break;
            }
        }
    }

    for (const auto& [key, count] : attacks_made) {
        const auto it = attacked_seen.find(key);
        const int seen = it == attacked_seen.end() ? 0 : it->second;
        if (seen != count) {
            note_mismatch(violations, key, std::get<1>(key), "attack without matching ATTACKED", count, seen);
        }
    }
    for (const auto& [key, count] : attacked_seen) {
        if (!attacks_made.count(key)) {
            violations.push_back({std::get<2>(key), std::get<0>(key),
                                  "ATTACKED with no matching attack in A" + std::to_string(std::get<1>(key))});
        }
    }
    for (const auto& [key, count] : mate_said) {
        const PairKey mirror{std::get<0>(key), std::get<2>(key), std::get<1>(key)};
        const auto it = mate_said.find(mirror);
        const int echoed = it == mate_said.end() ? 0 : it->second;
        if (echoed != count) {
            note_mismatch(violations, key, std::get<1>(key), "MATE not mirrored by partner", count, echoed);
        }
    }
    for (const auto& [key, count] : birth_said) {
        const auto it = born_said.find(key);
        const int seen = it == born_said.end() ? 0 : it->second;
        if (seen != count) {
            note_mismatch(violations, key, std::get<1>(key), "BIRTH without matching BORN", count, seen);
        }
    }
    for (const auto& [key, count] : born_said) {
        if (!birth_said.count(key)) {
            violations.push_back({std::get<2>(key), std::get<0>(key),
                                  "BORN names parent A" + std::to_string(std::get<1>(key)) +
                                      " whose log has no matching BIRTH"});
        }
    }

    return violations;
}

} // namespace saga
