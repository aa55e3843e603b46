#include <doctest.h>

#include "saga/chronicle.hpp"
#include "saga/rng.hpp"

using namespace saga;

namespace {

Chronicle sample_chronicle() {
    Chronicle c;
    c.agent_id = 3;
    c.profile_index = 1;
    c.events = {
        make_event(0, EventKind::Born),
        make_event(1, EventKind::Move, "4,7"),
        make_event(2, EventKind::Hungry),
        make_event(2, EventKind::Eat, "4,7"),
        make_event(3, EventKind::Attacked, "A12"),
        make_event(3, EventKind::Defended, "A12"),
        make_event(5, EventKind::Die, "starvation"),
    };
    return c;
}

} // namespace

TEST_CASE("render writes one pipe-separated line per event") {
    const std::string text = render_log(sample_chronicle());
    CHECK(text ==
          "0|BORN|\n"
          "1|MOVE|4,7\n"
          "2|HUNGRY|\n"
          "2|EAT|4,7\n"
          "3|ATTACKED|A12\n"
          "3|DEFENDED|A12\n"
          "5|DIE|starvation\n");
}

TEST_CASE("parse inverts render exactly") {
    const Chronicle original = sample_chronicle();
    const ParsedLog parsed = parse_log(render_log(original));
    REQUIRE(parsed.ok());
    CHECK(parsed.events == original.events);
}

TEST_CASE("round trip holds for randomly generated logs") {
    RngStream rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        Chronicle c;
        c.agent_id = static_cast<AgentId>(trial);
        const int n = 1 + static_cast<int>(rng.uniform_below(40));
        std::int32_t day = 0;
        for (int i = 0; i < n; ++i) {
            day += static_cast<std::int32_t>(rng.uniform_below(3));
            const auto kind = static_cast<EventKind>(rng.uniform_below(kEventKindCount));
            std::string args;
            switch (rng.uniform_below(4)) {
            case 0: args = ""; break;
            case 1: args = agent_arg(static_cast<AgentId>(rng.uniform_below(500))); break;
            case 2:
                args = std::to_string(rng.uniform_below(10)) + "," +
                       std::to_string(rng.uniform_below(10));
                break;
            default: args = "starvation"; break;
            }
            c.events.push_back(make_event(day, kind, std::move(args)));
        }
        const ParsedLog parsed = parse_log(render_log(c));
        REQUIRE(parsed.ok());
        REQUIRE(parsed.events == c.events);
    }
}

TEST_CASE("every event kind survives the name round trip") {
    for (int k = 0; k < kEventKindCount; ++k) {
        const auto kind = static_cast<EventKind>(k);
        const auto back = event_kind_from(to_string(kind));
        REQUIRE(back.has_value());
        CHECK(*back == kind);
    }
    CHECK_FALSE(event_kind_from("NOT_A_KIND").has_value());
    CHECK_FALSE(event_kind_from("").has_value());
    CHECK_FALSE(event_kind_from("born").has_value());
}

TEST_CASE("malformed lines are reported with their line number") {
    const std::string text =
        "0|BORN|\n"
        "not a line\n"
        "2|NO_SUCH_KIND|\n"
        "-3|MOVE|1,1\n"
        "x|MOVE|1,1\n"
        "4|MOVE|1|1\n"
        "5|EAT|3,3\n";
    const ParsedLog parsed = parse_log(text);
    CHECK(parsed.events.size() == 2); // the BORN and the EAT
    REQUIRE(parsed.issues.size() == 5);
    CHECK(parsed.issues[0].line_no == 2);
    CHECK(parsed.issues[1].line_no == 3);
    CHECK(parsed.issues[2].line_no == 4);
    CHECK(parsed.issues[3].line_no == 5);
    CHECK(parsed.issues[4].line_no == 6);
}

TEST_CASE("agent argument helpers") {
    CHECK(agent_arg(0) == "A0");
    CHECK(agent_arg(71) == "A71");
    CHECK(parse_agent_arg("A71") == AgentId{71});
    CHECK(parse_agent_arg("A0") == AgentId{0});
    CHECK_FALSE(parse_agent_arg("71").has_value());
    CHECK_FALSE(parse_agent_arg("A").has_value());
    CHECK_FALSE(parse_agent_arg("A7x").has_value());
    CHECK_FALSE(parse_agent_arg("B7").has_value());
    CHECK_FALSE(parse_agent_arg("").has_value());

    Event ev = make_event(1, EventKind::Move, "3,9");
    CHECK(first_arg(ev) == "3");
    ev.args = "A12";
    CHECK(first_arg(ev) == "A12");
    ev.args = "";
    CHECK(first_arg(ev) == "");
}

TEST_CASE("structural validation flags broken logs") {
    Chronicle c = sample_chronicle();
    CHECK(validate_chronicle(c).empty());

    Chronicle no_born = c;
    no_born.events.erase(no_born.events.begin());
    CHECK_FALSE(validate_chronicle(no_born).empty());

    Chronicle time_travel = c;
    time_travel.events[3].day = 1; // EAT jumps back before HUNGRY
    CHECK_FALSE(validate_chronicle(time_travel).empty());

    Chronicle undead = c;
    undead.events.push_back(make_event(6, EventKind::Move, "1,1"));
    CHECK_FALSE(validate_chronicle(undead).empty());

    Chronicle empty;
    CHECK_FALSE(validate_chronicle(empty).empty());
}

TEST_CASE("coherence accepts a consistent attack pair") {
    Chronicle a;
    a.agent_id = 0;
    a.events = {make_event(0, EventKind::Born), make_event(2, EventKind::AttackOk, "A1")};
    Chronicle b;
    b.agent_id = 1;
    b.events = {make_event(0, EventKind::Born), make_event(2, EventKind::Attacked, "A0")};
    CHECK(check_coherence({a, b}).empty());
}

TEST_CASE("coherence catches one-sided records") {
    Chronicle a;
    a.agent_id = 0;
    a.events = {make_event(0, EventKind::Born), make_event(2, EventKind::AttackOk, "A1")};
    Chronicle b;
    b.agent_id = 1;
    b.events = {make_event(0, EventKind::Born)};

    SUBCASE("attack without ATTACKED") {
        const auto violations = check_coherence({a, b});
        REQUIRE_FALSE(violations.empty());
        CHECK(violations.front().agent == 0);
    }

    SUBCASE("ATTACKED without attack") {
        b.events.push_back(make_event(2, EventKind::Attacked, "A0"));
        a.events.pop_back();
        CHECK_FALSE(check_coherence({a, b}).empty());
    }

    SUBCASE("day mismatch breaks the pairing") {
        b.events.push_back(make_event(3, EventKind::Attacked, "A0"));
        CHECK_FALSE(check_coherence({a, b}).empty());
    }

    SUBCASE("double attack needs double ATTACKED") {
        a.events.push_back(make_event(2, EventKind::AttackFail, "A1"));
        b.events.push_back(make_event(2, EventKind::Attacked, "A0"));
        CHECK_FALSE(check_coherence({a, b}).empty());
        b.events.push_back(make_event(2, EventKind::Attacked, "A0"));
        CHECK(check_coherence({a, b}).empty());
    }
}

TEST_CASE("coherence pairs MATE, PREGNANT parents, and BIRTH/BORN") {
    Chronicle mother;
    mother.agent_id = 0;
    mother.events = {make_event(0, EventKind::Born), make_event(4, EventKind::Mate, "A1"),
                     make_event(4, EventKind::Pregnant, "A1"),
                     make_event(9, EventKind::Birth, "A2")};
    Chronicle father;
    father.agent_id = 1;
    father.events = {make_event(0, EventKind::Born), make_event(4, EventKind::Mate, "A0")};
    Chronicle child;
    child.agent_id = 2;
    child.events = {make_event(9, EventKind::Born, "A0")};

    CHECK(check_coherence({mother, father, child}).empty());

    SUBCASE("unilateral MATE is flagged") {
        father.events.pop_back();
        CHECK_FALSE(check_coherence({mother, father, child}).empty());
    }

    SUBCASE("BIRTH without the child's BORN is flagged") {
        child.events.clear();
        child.events.push_back(make_event(9, EventKind::Born)); // parentless
        CHECK_FALSE(check_coherence({mother, father, child}).empty());
    }

    SUBCASE("BORN naming a parent with no BIRTH is flagged") {
        mother.events.pop_back();
        CHECK_FALSE(check_coherence({mother, father, child}).empty());
    }
}
