#pragma once

#include <bitset>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Backtracking regular-expression engine.
//
// Built in-house for two reasons. First, matching must be deterministic
// and abortable: patterns supplied in archetype files are untrusted and can
// blow up combinatorially, so the matcher charges every VM step against an
// explicit budget and reports exhaustion as a distinct outcome instead of
// hanging (a wall-clock cutoff would make results machine-dependent).
// Second, std::regex lacks dotall mode entirely, and life logs are
// multi-line texts that the shipped patterns deliberately scan across
// lines.
//
// Supported syntax (ECMAScript-flavoured):
//   literals, '.', classes [...] with ranges and negation, escapes
//   \d \D \w \W \s \S \n \t \r \0 and escaped punctuation, anchors ^ $,
//   word boundaries \b \B, groups (...) and (?:...), alternation '|',
//   quantifiers * + ? {n} {n,} {n,m} each with a lazy '?' variant,
//   lookaheads (?=...) (?!...), backreferences \1..\9, and the inline
//   flags (?s) (?m) (?sm) at the start of the pattern.
//
// The matcher is an iterative VM with an explicit backtrack stack, so deep
// backtracking cannot overflow the call stack no matter what the pattern
// or subject looks like.

namespace saga::rx {

struct CompileError : std::runtime_error {
    CompileError(const std::string& what, std::size_t position)
        : std::runtime_error(what), pos(position) {}
    std::size_t pos;
};

struct Flags {
    bool dotall = false;    // '.' also matches '\n'
    bool multiline = false; // '^'/'$' also match at line breaks
};

enum class Outcome {
    NoMatch,
    Match,
    BudgetExhausted,
};

// Default step allowance. Generous for legitimate patterns (the shipped
// archetype set needs well under 10^5 steps per log) while bounding
// pathological ones to a few milliseconds.
inline constexpr std::uint64_t kDefaultStepBudget = 20'000'000;

class Regex {
public:
    // Throws CompileError on malformed patterns.
    static Regex compile(std::string_view pattern, Flags flags = {});

    // True-false search anywhere in the subject.
    Outcome search(std::string_view subject, std::uint64_t step_budget = kDefaultStepBudget) const;

    // Search without the start-position pruning and literal-skip fast
    // paths. Same language, slower; exists so tests can check that the
    // optimized path never changes an answer.
    Outcome search_unoptimized(std::string_view subject,
                               std::uint64_t step_budget = kDefaultStepBudget) const;

    const std::string& pattern() const { return pattern_; }

private:
    friend struct Compiler;
    friend struct Vm;

    enum class Op : std::uint8_t {
        Char,      // a == byte
        Any,       // dot (b != 0 means dotall)
        Class,     // a == class index, b != 0 means negated
        Bol,       // begin of line/subject (b != 0 means multiline)
        Eol,
        WordB,     // b != 0 means \B
        Split,     // try a first, then b
        Jmp,       // goto a
        Save,      // a == capture slot
        Backref,   // a == group number
        LookStart, // a == end-of-body pc, b != 0 means negative
        LookEnd,
        MarkPos,   // a == mark slot; records the position entering a loop body
        LoopBack,  // a == loop head, b == exit, c == mark slot; exits when stuck
        ScanLit,   // a == literal index; skip-ahead form of ".*?lit" / ".*lit" (b: 1 = greedy)
        Accept,
    };

    struct Inst {
        Op op;
        std::uint8_t flag = 0;
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        std::uint32_t c = 0;
    };

    std::string pattern_;
    Flags flags_;
    std::vector<Inst> prog_;
    std::vector<std::bitset<256>> classes_;
    std::vector<std::string> literals_;
    int group_count_ = 0;
    // Loop progress marks live in the same undo-logged slot array as
    // captures, one slot per emitted unbounded loop; backtracking restores
    // them exactly instead of guessing from stack depths.
    int mark_count_ = 0;
    // When set, a successful match starting at any position implies one
    // starting at position 0, so search() only needs one attempt.
    bool anchored_equivalent_ = false;
    // First byte every match must start with (enables memchr skipping);
    // -1 when unknown.
    int first_byte_ = -1;

    Outcome run(std::string_view subject, std::uint64_t budget, bool optimized) const;
};

} // namespace saga::rx
