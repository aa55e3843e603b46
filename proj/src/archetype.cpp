#include "saga/archetype.hpp"

#include <stdexcept>

namespace saga {

const std::vector<ArchetypeSpec>& builtin_specs() {
    static const std::vector<ArchetypeSpec> specs = {
        {
            "downtrodden",
            R"((?s)(?=(?:.*?\|ATTACKED\|){2})(?=.*?\|DEFENDED\|))",
            std::nullopt,
            "attacked at least twice and stood their ground at least once",
        },
        {
            "warrior",
            R"((?s)(?:.*?\|ATTACK_OK\|){5})",
            std::nullopt,
            "landed five or more successful attacks",
        },
        {
            "helpless",
            R"((?s)(?:.*?\|ATTACKED\|){10})",
            R"(\|DEFENDED\|)",
            "attacked ten or more times without ever defending",
        },
        {
            "bad_warrior",
            R"((?s)(?:.*?\|ATTACK_FAIL\|){10})",
            std::nullopt,
            "botched ten or more attacks",
        },
        {
            "avenger",
            R"((?s)\|ATTACKED\|(A\d+)\b.*\|ATTACK_OK\|\1\b)",
            std::nullopt,
            "was attacked and later struck back at the same agent",
        },
    };
    return specs;
}

const ArchetypeSpec* find_builtin(std::string_view name) {
    for (const ArchetypeSpec& s : builtin_specs()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

bool oracle_tag(const Chronicle& chronicle, std::string_view archetype_name) {
    int attacked = 0, defended = 0, attack_ok = 0, attack_fail = 0;
    for (const Event& ev : chronicle.events) {
        switch (ev.kind) {
        case EventKind::Attacked:
            ++attacked;
            break;
        case EventKind::Defended:
            ++defended;
            break;
        case EventKind::AttackOk:
            ++attack_ok;
            break;
        case EventKind::AttackFail:
            ++attack_fail;
            break;
        default:
            break;
        }
    }

    if (archetype_name == "downtrodden") return attacked >= 2 && defended >= 1;
    if (archetype_name == "warrior") return attack_ok >= 5;
    if (archetype_name == "helpless") return attacked >= 10 && defended == 0;
    if (archetype_name == "bad_warrior") return attack_fail >= 10;
    if (archetype_name == "avenger") {
        // A hit on anyone who attacked this agent earlier in the log
        // (same id, attack strictly after in event order).
        for (std::size_t i = 0; i < chronicle.events.size(); ++i) {
            if (chronicle.events[i].kind != EventKind::Attacked) continue;
            const auto foe = parse_agent_arg(first_arg(chronicle.events[i]));
            if (!foe) continue;
            for (std::size_t j = i + 1; j < chronicle.events.size(); ++j) {
                if (chronicle.events[j].kind != EventKind::AttackOk) continue;
                const auto target = parse_agent_arg(first_arg(chronicle.events[j]));
                if (target && *target == *foe) return true;
            }
        }
        return false;
    }
    throw std::invalid_argument("no oracle for archetype '" + std::string(archetype_name) + "'");
}

namespace {

struct CompiledSpec {
    const ArchetypeSpec* spec = nullptr;
    std::optional<rx::Regex> matcher;
    std::optional<rx::Regex> rejecter;
    bool usable = false;
};

std::vector<CompiledSpec> compile_specs(const std::vector<ArchetypeSpec>& specs,
                                        TagReport& report) {
    // Life-log patterns always get dotall and multiline; the point of an
    // archetype is to read across a whole life.
    const rx::Flags flags{/*dotall=*/true, /*multiline=*/true};
    std::vector<CompiledSpec> out;
    out.reserve(specs.size());
    for (const ArchetypeSpec& spec : specs) {
        CompiledSpec c;
        c.spec = &spec;
        try {
            c.matcher.emplace(rx::Regex::compile(spec.pattern, flags));
            if (spec.forbidden_pattern) {
                c.rejecter.emplace(rx::Regex::compile(*spec.forbidden_pattern, flags));
            }
            c.usable = true;
        } catch (const rx::CompileError& e) {
            report.warnings.push_back("archetype '" + spec.name + "' skipped: " + e.what() +
                                      " at offset " + std::to_string(e.pos));
        }
        report.tagged.emplace(spec.name, std::set<AgentId>{});
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace

TagReport tag_chronicles(const std::vector<Chronicle>& chronicles,
                         const std::vector<ArchetypeSpec>& specs) {
    TagReport report;
    report.total_born = static_cast<int>(chronicles.size());
    auto compiled = compile_specs(specs, report);

    std::string rendered;
    for (const Chronicle& chronicle : chronicles) {
        rendered = render_log(chronicle);
        for (CompiledSpec& c : compiled) {
            if (!c.usable) continue;

            const rx::Outcome hit = c.matcher->search(rendered);
            bool carries;
            if (hit == rx::Outcome::BudgetExhausted) {
                // A builtin that blows the budget still has a ground
                // truth; custom patterns just miss this agent.
                if (find_builtin(c.spec->name)) {
                    carries = oracle_tag(chronicle, c.spec->name);
                    report.warnings.push_back("archetype '" + c.spec->name + "' hit the step budget on A" +
                                              std::to_string(chronicle.agent_id) +
                                              "; counted by fallback");
                } else {
                    report.warnings.push_back("archetype '" + c.spec->name + "' hit the step budget on A" +
                                              std::to_string(chronicle.agent_id) + "; not tagged");
                    carries = false;
                }
            } else {
                carries = hit == rx::Outcome::Match;
            }

            if (carries && c.rejecter) {
                const rx::Outcome veto = c.rejecter->search(rendered);
                if (veto == rx::Outcome::BudgetExhausted) {
                    report.warnings.push_back("forbidden pattern of '" + c.spec->name +
                                              "' hit the step budget on A" +
                                              std::to_string(chronicle.agent_id));
                    carries = find_builtin(c.spec->name) ? oracle_tag(chronicle, c.spec->name) : false;
                } else if (veto == rx::Outcome::Match) {
                    carries = false;
                }
            }

            if (carries) {
                report.tagged[c.spec->name].insert(chronicle.agent_id);
            }
        }
    }
    return report;
}

TagReport tag_run(const WorldRun& run, const std::vector<ArchetypeSpec>& specs) {
    TagReport report = tag_chronicles(run.chronicles, specs);
    report.alive_at_end = run.alive_at_end;
    return report;
}

} // namespace saga
