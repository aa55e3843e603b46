#include "saga/regex.hpp"

#include <algorithm>
#include <cstring>

namespace saga::rx {

namespace {

constexpr std::size_t kMaxProgramSize = 50'000;
constexpr std::size_t kMaxNesting = 200;
constexpr std::size_t kMaxBacktrackFrames = 1'000'000;

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::bitset<256> digit_set() {
    std::bitset<256> b;
    for (int c = '0'; c <= '9'; ++c) b.set(c);
    return b;
}

std::bitset<256> word_set() {
    std::bitset<256> b;
    for (int c = 0; c < 256; ++c) {
        if (is_word_byte(static_cast<unsigned char>(c))) b.set(c);
    }
    return b;
}

std::bitset<256> space_set() {
    std::bitset<256> b;
    for (unsigned char c : {' ', '\t', '\n', '\r', '\f', '\v'}) b.set(c);
    return b;
}

// --- syntax tree ---------------------------------------------------------

struct Node;
using NodePtr = std::unique_ptr<Node>;

struct Node {
    enum class Type {
        Lit,
        Any,
        Class,
        Concat,
        Alt,
        Rep,
        Group, // capture_index == 0 means non-capturing
        Look,
        Bol,
        Eol,
        WordB,
        Backref,
    };

    Type type;
    unsigned char lit = 0;
    int class_index = 0;
    bool negated = false; // Class, Look, WordB (\B)
    std::vector<NodePtr> kids;
    NodePtr child;
    int rep_min = 0;
    int rep_max = -1; // -1 means unbounded
    bool lazy = false;
    int capture_index = 0;
    int backref = 0;
};

NodePtr make_node(Node::Type type) {
    auto n = std::make_unique<Node>();
    n->type = type;
    return n;
}

} // namespace

// --- compiler ------------------------------------------------------------

struct Compiler {
    using Op = Regex::Op;
    using Inst = Regex::Inst;

    std::string_view pat;
    std::size_t pos = 0;
    std::size_t depth = 0;
    Regex out;

    explicit Compiler(std::string_view pattern, Flags flags) : pat(pattern) {
        out.pattern_ = std::string(pattern);
        out.flags_ = flags;
    }

    [[noreturn]] void fail(const std::string& what) const { throw CompileError(what, pos); }

    bool eof() const { return pos >= pat.size(); }
    char peek() const { return pat[pos]; }
    char take() { return pat[pos++]; }
    bool eat(char c) {
        if (!eof() && pat[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Regex compile() {
        parse_inline_flags();
        NodePtr root = parse_alternation();
        if (!eof()) {
            fail(std::string("unexpected '") + peek() + "'");
        }
        for (int ref : pending_backrefs_) {
            if (ref > group_count_) {
                fail("backreference \\" + std::to_string(ref) + " has no group");
            }
        }
        out.group_count_ = group_count_;
        analyze(root.get());
        emit(root.get());
        push(Op::Accept);
        return std::move(out);
    }

    // (?s) / (?m) / (?sm) accepted only as a pattern prefix; scoped flags
    // are deliberately out of the supported language.
    void parse_inline_flags() {
        while (pat.size() - pos >= 4 && pat[pos] == '(' && pat[pos + 1] == '?') {
            std::size_t p = pos + 2;
            bool s = false, m = false;
            while (p < pat.size() && (pat[p] == 's' || pat[p] == 'm')) {
                (pat[p] == 's' ? s : m) = true;
                ++p;
            }
            if (p == pos + 2 || p >= pat.size() || pat[p] != ')') {
                return; // a group, not a flag block
            }
            out.flags_.dotall |= s;
            out.flags_.multiline |= m;
            pos = p + 1;
        }
    }

    // --- recursive descent ---

    NodePtr parse_alternation() {
        if (++depth > kMaxNesting) fail("pattern nested too deeply");
        NodePtr first = parse_concat();
        if (eof() || peek() != '|') {
            --depth;
            return first;
        }
        NodePtr alt = make_node(Node::Type::Alt);
        alt->kids.push_back(std::move(first));
        while (eat('|')) {
            alt->kids.push_back(parse_concat());
        }
        --depth;
        return alt;
    }

    NodePtr parse_concat() {
        NodePtr cat = make_node(Node::Type::Concat);
        while (!eof() && peek() != '|' && peek() != ')') {
            cat->kids.push_back(parse_repeat());
        }
        return cat;
    }

    // At most one quantifier per atom; a second in a row lands back in
    // parse_atom, which rejects it as having nothing to repeat.
    NodePtr parse_repeat() {
        NodePtr atom = parse_atom();
        int mn = 0, mx = -1;
        if (eat('*')) {
            mn = 0;
        } else if (eat('+')) {
            mn = 1;
        } else if (eat('?')) {
            mn = 0;
            mx = 1;
        } else if (!eof() && peek() == '{') {
            if (!parse_brace(mn, mx)) return atom; // literal '{'
        } else {
            return atom;
        }
        if (is_zero_width(atom.get())) {
            fail("cannot repeat a zero-width assertion");
        }
        NodePtr rep = make_node(Node::Type::Rep);
        rep->rep_min = mn;
        rep->rep_max = mx;
        rep->lazy = eat('?');
        rep->child = std::move(atom);
        return rep;
    }

    static bool is_zero_width(const Node* n) {
        switch (n->type) {
        case Node::Type::Bol:
        case Node::Type::Eol:
        case Node::Type::WordB:
        case Node::Type::Look:
            return true;
        default:
            return false;
        }
    }

    // Parses {n} {n,} {n,m}. Returns false (consuming nothing) when the
    // braces do not form a quantifier, in which case '{' stays literal.
    bool parse_brace(int& mn, int& mx) {
        const std::size_t start = pos;
        ++pos; // '{'
        int lo = parse_number();
        if (lo < 0) {
            pos = start;
            return false;
        }
        int hi;
        if (eat('}')) {
            hi = lo;
        } else if (eat(',')) {
            if (eat('}')) {
                hi = -1;
            } else {
                hi = parse_number();
                if (hi < 0 || !eat('}')) {
                    pos = start;
                    return false;
                }
            }
        } else {
            pos = start;
            return false;
        }
        if (hi != -1 && hi < lo) {
            fail("bad repetition range {" + std::to_string(lo) + "," + std::to_string(hi) + "}");
        }
        mn = lo;
        mx = hi;
        return true;
    }

    int parse_number() {
        if (eof() || peek() < '0' || peek() > '9') return -1;
        long v = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            v = v * 10 + (take() - '0');
            if (v > 10'000) fail("repetition count too large");
        }
        return static_cast<int>(v);
    }

    NodePtr parse_atom() {
        if (eof()) fail("pattern ends where a term was expected");
        const char c = take();
        switch (c) {
        case '(':
            return parse_group();
        case '[':
            return parse_class();
        case '.': {
            return make_node(Node::Type::Any);
        }
        case '^':
            return make_node(Node::Type::Bol);
        case '$':
            return make_node(Node::Type::Eol);
        case '\\':
            return parse_escape();
        case '*':
        case '+':
            fail("quantifier with nothing to repeat");
        case '?':
            fail("quantifier with nothing to repeat");
        default: {
            NodePtr lit = make_node(Node::Type::Lit);
            lit->lit = static_cast<unsigned char>(c);
            return lit;
        }
        }
    }

    NodePtr parse_group() {
        bool capturing = true;
        bool look = false;
        bool look_neg = false;
        if (eat('?')) {
            if (eat(':')) {
                capturing = false;
            } else if (eat('=')) {
                look = true;
            } else if (eat('!')) {
                look = true;
                look_neg = true;
            } else if (!eof() && (peek() == 's' || peek() == 'm')) {
                fail("inline flags are only supported at the start of the pattern");
            } else {
                fail("unsupported group modifier");
            }
        }
        int index = 0;
        if (!look && capturing) {
            index = ++group_count_;
        }
        NodePtr body = parse_alternation();
        if (!eat(')')) fail("unbalanced '('");
        if (look) {
            NodePtr n = make_node(Node::Type::Look);
            n->negated = look_neg;
            n->child = std::move(body);
            return n;
        }
        NodePtr n = make_node(Node::Type::Group);
        n->capture_index = index;
        n->child = std::move(body);
        return n;
    }

    NodePtr parse_escape() {
        if (eof()) fail("trailing backslash");
        const char c = take();
        if (c >= '1' && c <= '9') {
            NodePtr n = make_node(Node::Type::Backref);
            n->backref = c - '0';
            pending_backrefs_.push_back(n->backref);
            return n;
        }
        switch (c) {
        case 'd':
        case 'D':
            return class_node(digit_set(), c == 'D');
        case 'w':
        case 'W':
            return class_node(word_set(), c == 'W');
        case 's':
        case 'S':
            return class_node(space_set(), c == 'S');
        case 'b': {
            NodePtr n = make_node(Node::Type::WordB);
            return n;
        }
        case 'B': {
            NodePtr n = make_node(Node::Type::WordB);
            n->negated = true;
            return n;
        }
        case 'n':
            return lit_node('\n');
        case 't':
            return lit_node('\t');
        case 'r':
            return lit_node('\r');
        case 'f':
            return lit_node('\f');
        case 'v':
            return lit_node('\v');
        case '0':
            return lit_node('\0');
        default:
            if (is_word_byte(static_cast<unsigned char>(c))) {
                fail(std::string("unknown escape \\") + c);
            }
            return lit_node(c);
        }
    }

    static NodePtr lit_node(char c) {
        NodePtr n = make_node(Node::Type::Lit);
        n->lit = static_cast<unsigned char>(c);
        return n;
    }

    NodePtr class_node(std::bitset<256> bits, bool negated) {
        NodePtr n = make_node(Node::Type::Class);
        n->class_index = intern_class(bits);
        n->negated = negated;
        return n;
    }

    int intern_class(const std::bitset<256>& bits) {
        for (std::size_t i = 0; i < out.classes_.size(); ++i) {
            if (out.classes_[i] == bits) return static_cast<int>(i);
        }
        out.classes_.push_back(bits);
        return static_cast<int>(out.classes_.size() - 1);
    }

    NodePtr parse_class() {
        std::bitset<256> bits;
        const bool negated = eat('^');
        bool first = true;
        while (true) {
            if (eof()) fail("unterminated character class");
            if (peek() == ']' && !first) {
                ++pos;
                break;
            }
            first = false;
            int lo = parse_class_char(bits);
            if (lo < 0) continue; // a \d-style escape, no range allowed off it
            if (!eof() && peek() == '-' && pos + 1 < pat.size() && pat[pos + 1] != ']') {
                ++pos;
                int hi = parse_class_char(bits);
                if (hi < 0) fail("invalid range endpoint in character class");
                if (hi < lo) fail("reversed range in character class");
                for (int b = lo; b <= hi; ++b) bits.set(static_cast<std::size_t>(b));
            } else {
                bits.set(static_cast<std::size_t>(lo));
            }
        }
        NodePtr n = make_node(Node::Type::Class);
        n->class_index = intern_class(bits);
        n->negated = negated;
        return n;
    }

    // Returns the literal byte parsed, or -1 after folding a multi-char
    // escape (\d and friends) straight into `bits`.
    int parse_class_char(std::bitset<256>& bits) {
        char c = take();
        if (c != '\\') {
            return static_cast<unsigned char>(c);
        }
        if (eof()) fail("trailing backslash in character class");
        c = take();
        switch (c) {
        case 'd':
            bits |= digit_set();
            return -1;
        case 'w':
            bits |= word_set();
            return -1;
        case 's':
            bits |= space_set();
            return -1;
        case 'D':
            bits |= ~digit_set();
            return -1;
        case 'W':
            bits |= ~word_set();
            return -1;
        case 'S':
            bits |= ~space_set();
            return -1;
        case 'n':
            return '\n';
        case 't':
            return '\t';
        case 'r':
            return '\r';
        case 'f':
            return '\f';
        case 'v':
            return '\v';
        case '0':
            return 0;
        case 'b':
            return 0x08;
        default:
            if (is_word_byte(static_cast<unsigned char>(c))) {
                fail(std::string("unknown escape \\") + c + " in character class");
            }
            return static_cast<unsigned char>(c);
        }
    }

    // --- static analysis ---
    //
    // absorbs(n): n matching the span [s, t) implies n can also match
    // [s', t) for every s' <= s, because its leading element swallows any
    // amount of extra prefix. The canonical absorber is a dotall ".*".
    // A pattern whose match attempt at a later start is subsumed by the
    // attempt at start 0 lets search() stop after a single anchor attempt;
    // patterns dominated by unbounded scans become O(n) instead of O(n^2).

    bool absorbs(const Node* n) const {
        switch (n->type) {
        case Node::Type::Rep:
            if (is_universal_gap(n)) return true;
            return n->rep_min >= 1 && absorbs(n->child.get());
        case Node::Type::Concat:
            for (const auto& kid : n->kids) {
                if (kid->type == Node::Type::Look) {
                    if (kid->negated || !absorbs(kid->child.get())) return false;
                    continue; // zero-width, keep scanning
                }
                return absorbs(kid.get());
            }
            return true; // nothing consumes; trivially position-free
        case Node::Type::Alt:
            return std::all_of(n->kids.begin(), n->kids.end(),
                               [&](const NodePtr& k) { return absorbs(k.get()); });
        case Node::Type::Group:
            return absorbs(n->child.get());
        default:
            return false;
        }
    }

    bool is_universal_gap(const Node* n) const {
        return n->type == Node::Type::Rep && n->rep_min == 0 && n->rep_max == -1 &&
               n->child->type == Node::Type::Any && out.flags_.dotall;
    }

    void analyze(const Node* root) {
        // A leading '^' outside multiline mode pins the match to offset 0
        // outright; otherwise an absorbing pattern makes extra start
        // offsets redundant.
        if (starts_with_hard_anchor(root) || absorbs(root)) {
            out.anchored_equivalent_ = true;
            return;
        }
        out.first_byte_ = required_first_byte(root);
    }

    bool starts_with_hard_anchor(const Node* n) const {
        switch (n->type) {
        case Node::Type::Bol:
            return !out.flags_.multiline;
        case Node::Type::Concat:
            return !n->kids.empty() && starts_with_hard_anchor(n->kids.front().get());
        case Node::Type::Group:
            return starts_with_hard_anchor(n->child.get());
        case Node::Type::Alt:
            return std::all_of(n->kids.begin(), n->kids.end(),
                               [&](const NodePtr& k) { return starts_with_hard_anchor(k.get()); });
        default:
            return false;
        }
    }

    int required_first_byte(const Node* n) const {
        switch (n->type) {
        case Node::Type::Lit:
            return n->lit;
        case Node::Type::Concat:
            for (const auto& kid : n->kids) {
                if (kid->type == Node::Type::Look || kid->type == Node::Type::Bol ||
                    kid->type == Node::Type::Eol || kid->type == Node::Type::WordB) {
                    continue; // zero-width, does not fix the first byte
                }
                return required_first_byte(kid.get());
            }
            return -1;
        case Node::Type::Group:
            return required_first_byte(n->child.get());
        case Node::Type::Rep:
            return n->rep_min >= 1 ? required_first_byte(n->child.get()) : -1;
        case Node::Type::Alt: {
            int common = -2;
            for (const auto& kid : n->kids) {
                const int b = required_first_byte(kid.get());
                if (b < 0) return -1;
                if (common == -2) common = b;
                if (b != common) return -1;
            }
            return common == -2 ? -1 : common;
        }
        default:
            return -1;
        }
    }

    // --- code generation ---

    std::size_t push(Op op, std::uint8_t flag = 0, std::uint32_t a = 0, std::uint32_t b = 0,
                     std::uint32_t c = 0) {
        if (out.prog_.size() >= kMaxProgramSize) {
            throw CompileError("compiled pattern too large", pos);
        }
        out.prog_.push_back(Inst{op, flag, a, b, c});
        return out.prog_.size() - 1;
    }

    std::size_t here() const { return out.prog_.size(); }

    void emit(const Node* n) {
        switch (n->type) {
        case Node::Type::Lit:
            push(Op::Char, 0, n->lit);
            break;
        case Node::Type::Any:
            push(Op::Any, out.flags_.dotall ? 1 : 0);
            break;
        case Node::Type::Class:
            push(Op::Class, n->negated ? 1 : 0, static_cast<std::uint32_t>(n->class_index));
            break;
        case Node::Type::Bol:
            push(Op::Bol, out.flags_.multiline ? 1 : 0);
            break;
        case Node::Type::Eol:
            push(Op::Eol, out.flags_.multiline ? 1 : 0);
            break;
        case Node::Type::WordB:
            push(Op::WordB, n->negated ? 1 : 0);
            break;
        case Node::Type::Backref:
            push(Op::Backref, 0, static_cast<std::uint32_t>(n->backref));
            break;
        case Node::Type::Concat:
            emit_concat(n);
            break;
        case Node::Type::Alt:
            emit_alt(n);
            break;
        case Node::Type::Rep:
            emit_rep(n);
            break;
        case Node::Type::Group:
            if (n->capture_index > 0) {
                push(Op::Save, 0, static_cast<std::uint32_t>(2 * n->capture_index));
                emit(n->child.get());
                push(Op::Save, 0, static_cast<std::uint32_t>(2 * n->capture_index + 1));
            } else {
                emit(n->child.get());
            }
            break;
        case Node::Type::Look: {
            const std::size_t start = push(Op::LookStart, n->negated ? 1 : 0);
            emit(n->child.get());
            const std::size_t end = push(Op::LookEnd);
            out.prog_[start].a = static_cast<std::uint32_t>(end);
            break;
        }
        }
    }

    void emit_concat(const Node* n) {
        const auto& kids = n->kids;
        for (std::size_t i = 0; i < kids.size(); ++i) {
            // Fuse a dotall ".*?" / ".*" followed by literal characters
            // into a single substring scan. The scan enumerates the same
            // cut points the loop would, it just finds them with memchr
            // instead of one backtrack frame per byte.
            if (is_universal_gap(kids[i].get()) && i + 1 < kids.size() &&
                kids[i + 1]->type == Node::Type::Lit) {
                std::string lit;
                std::size_t j = i + 1;
                while (j < kids.size() && kids[j]->type == Node::Type::Lit) {
                    lit.push_back(static_cast<char>(kids[j]->lit));
                    ++j;
                }
                out.literals_.push_back(std::move(lit));
                push(Op::ScanLit, kids[i]->lazy ? 0 : 1,
                     static_cast<std::uint32_t>(out.literals_.size() - 1));
                i = j - 1;
                continue;
            }
            emit(kids[i].get());
        }
    }

    void emit_alt(const Node* n) {
        std::vector<std::size_t> jumps;
        for (std::size_t i = 0; i < n->kids.size(); ++i) {
            const bool last = i + 1 == n->kids.size();
            if (last) {
                emit(n->kids[i].get());
            } else {
                const std::size_t split = push(Op::Split);
                out.prog_[split].a = static_cast<std::uint32_t>(here());
                emit(n->kids[i].get());
                jumps.push_back(push(Op::Jmp));
                out.prog_[split].b = static_cast<std::uint32_t>(here());
            }
        }
        for (std::size_t j : jumps) {
            out.prog_[j].a = static_cast<std::uint32_t>(here());
        }
    }

    void emit_rep(const Node* n) {
        for (int i = 0; i < n->rep_min; ++i) {
            emit(n->child.get());
        }
        if (n->rep_max == -1) {
            emit_star(n);
        } else {
            emit_options(n, n->rep_max - n->rep_min);
        }
    }

    // Unbounded tail of a repetition, with a progress guard so bodies that
    // match the empty string cannot loop forever. Every emitted loop owns
    // one mark slot; a copy of the same syntax node (from {n,m} expansion)
    // gets its own.
    void emit_star(const Node* n) {
        const auto slot = static_cast<std::uint32_t>(2 * (group_count_ + 1) + out.mark_count_);
        ++out.mark_count_;
        const std::size_t head = push(Op::Split);
        push(Op::MarkPos, 0, slot);
        emit(n->child.get());
        const std::size_t back = push(Op::LoopBack, 0, static_cast<std::uint32_t>(head), 0, slot);
        const std::uint32_t exit = static_cast<std::uint32_t>(here());
        out.prog_[back].b = exit;
        if (n->lazy) {
            out.prog_[head].a = exit;
            out.prog_[head].b = static_cast<std::uint32_t>(head + 1);
        } else {
            out.prog_[head].a = static_cast<std::uint32_t>(head + 1);
            out.prog_[head].b = exit;
        }
    }

    // Bounded optional tail: {n,m} beyond the mandatory copies becomes
    // nested optionals so that declining one occurrence skips the rest.
    void emit_options(const Node* n, int count) {
        std::vector<std::size_t> splits;
        for (int i = 0; i < count; ++i) {
            splits.push_back(push(Op::Split));
            out.prog_[splits.back()].a = static_cast<std::uint32_t>(here());
            emit(n->child.get());
        }
        const std::uint32_t exit = static_cast<std::uint32_t>(here());
        for (std::size_t s : splits) {
            if (n->lazy) {
                out.prog_[s].b = out.prog_[s].a;
                out.prog_[s].a = exit;
            } else {
                out.prog_[s].b = exit;
            }
        }
    }

    int group_count_ = 0;
    std::vector<int> pending_backrefs_;
};

Regex Regex::compile(std::string_view pattern, Flags flags) {
    Compiler c(pattern, flags);
    return c.compile();
}

// --- virtual machine ------------------------------------------------------

namespace {

std::size_t find_lit(std::string_view subject, std::size_t from, const std::string& lit) {
    if (from > subject.size()) return std::string_view::npos;
    return subject.find(lit, from);
}

} // namespace

struct Vm {
    using Op = Regex::Op;
    using Inst = Regex::Inst;

    enum class FrameKind : std::uint8_t { Alt, Scan };

    struct Frame {
        FrameKind kind;
        std::uint32_t pc;   // Alt: resume pc. Scan: the ScanLit instruction.
        std::uint32_t pos;  // Alt: subject position. Scan: next search offset.
        std::uint32_t undo_size;
    };

    struct LookFrame {
        std::uint32_t resume_pc; // the LookEnd instruction
        std::uint32_t saved_pos;
        bool negated;
        std::uint32_t bt_size;
        std::uint32_t undo_size;
    };

    struct UndoEntry {
        std::uint32_t slot;
        std::int64_t old_value;
    };

    const Regex& re;
    std::string_view subject;
    std::uint64_t steps_left;

    std::vector<Frame> bt;
    std::vector<LookFrame> looks;
    std::vector<UndoEntry> undo;
    // Capture slots first, then one progress-mark slot per loop; both are
    // restored through the undo log, so backtracking is always exact.
    std::vector<std::int64_t> captures;

    Vm(const Regex& r, std::string_view s, std::uint64_t budget)
        : re(r), subject(s), steps_left(budget) {
        captures.assign(static_cast<std::size_t>(2 * (re.group_count_ + 1) + re.mark_count_), -1);
    }

    bool charge(std::uint64_t cost) {
        if (steps_left < cost) {
            steps_left = 0;
            return false;
        }
        steps_left -= cost;
        return true;
    }

    void undo_to(std::uint32_t size) {
        while (undo.size() > size) {
            captures[undo.back().slot] = undo.back().old_value;
            undo.pop_back();
        }
    }

    bool at_word_boundary(std::size_t pos) const {
        const bool before = pos > 0 && is_word_byte(static_cast<unsigned char>(subject[pos - 1]));
        const bool after = pos < subject.size() && is_word_byte(static_cast<unsigned char>(subject[pos]));
        return before != after;
    }

    // Runs the program against one start offset. Leaves the budget drained
    // in place so the caller's next attempt continues against the same
    // allowance.
    Outcome attempt(std::size_t start) {
        bt.clear();
        looks.clear();
        undo.clear();
        std::fill(captures.begin(), captures.end(), -1);

        std::uint32_t pc = 0;
        std::uint32_t pos = static_cast<std::uint32_t>(start);

        const auto n = static_cast<std::uint32_t>(subject.size());
        const std::vector<Inst>& prog = re.prog_;

        for (;;) {
            if (!charge(1)) return Outcome::BudgetExhausted;
            const Inst& in = prog[pc];
            switch (in.op) {
            case Op::Char:
                if (pos < n && static_cast<unsigned char>(subject[pos]) == in.a) {
                    ++pos;
                    ++pc;
                    continue;
                }
                break;
            case Op::Any:
                if (pos < n && (in.flag || subject[pos] != '\n')) {
                    ++pos;
                    ++pc;
                    continue;
                }
                break;
            case Op::Class:
                if (pos < n &&
                    re.classes_[in.a].test(static_cast<unsigned char>(subject[pos])) != (in.flag != 0)) {
                    ++pos;
                    ++pc;
                    continue;
                }
                break;
            case Op::Bol:
                if (pos == 0 || (in.flag && subject[pos - 1] == '\n')) {
                    ++pc;
                    continue;
                }
                break;
            case Op::Eol:
                if (pos == n || (in.flag && subject[pos] == '\n')) {
                    ++pc;
                    continue;
                }
                break;
            case Op::WordB:
                if (at_word_boundary(pos) != (in.flag != 0)) {
                    ++pc;
                    continue;
                }
                break;
            case Op::Split:
                if (bt.size() >= kMaxBacktrackFrames) return Outcome::BudgetExhausted;
                bt.push_back(Frame{FrameKind::Alt, in.b, pos,
                                   static_cast<std::uint32_t>(undo.size())});
                pc = in.a;
                continue;
            case Op::Jmp:
                pc = in.a;
                continue;
            case Op::Save:
                undo.push_back(UndoEntry{in.a, captures[in.a]});
                captures[in.a] = pos;
                ++pc;
                continue;
            case Op::Backref: {
                const std::int64_t lo = captures[2 * in.a];
                const std::int64_t hi = captures[2 * in.a + 1];
                if (lo < 0 || hi < 0) {
                    ++pc; // unset group matches the empty string
                    continue;
                }
                const auto len = static_cast<std::uint32_t>(hi - lo);
                if (!charge(len)) return Outcome::BudgetExhausted;
                if (pos + len <= n &&
                    subject.compare(pos, len, subject, static_cast<std::size_t>(lo), len) == 0) {
                    pos += len;
                    ++pc;
                    continue;
                }
                break;
            }
            case Op::LookStart:
                looks.push_back(LookFrame{in.a, pos, in.flag != 0,
                                          static_cast<std::uint32_t>(bt.size()),
                                          static_cast<std::uint32_t>(undo.size())});
                ++pc;
                continue;
            case Op::LookEnd: {
                // The lookahead body matched.
                LookFrame f = looks.back();
                looks.pop_back();
                bt.resize(f.bt_size);
                if (f.negated) {
                    undo_to(f.undo_size);
                    break; // (?!...) saw a match: fail outward
                }
                pos = f.saved_pos;
                ++pc;
                continue;
            }
            case Op::MarkPos:
                undo.push_back(UndoEntry{in.a, captures[in.a]});
                captures[in.a] = pos;
                ++pc;
                continue;
            case Op::LoopBack:
                pc = static_cast<std::int64_t>(pos) > captures[in.c] ? in.a : in.b;
                continue;
            case Op::ScanLit: {
                const std::string& lit = re.literals_[in.a];
                const std::size_t found = find_lit(subject, pos, lit);
                if (!charge((found == std::string_view::npos ? n - pos : found - pos) + 1)) {
                    return Outcome::BudgetExhausted;
                }
                if (found == std::string_view::npos) break;
                if (bt.size() >= kMaxBacktrackFrames) return Outcome::BudgetExhausted;
                bt.push_back(Frame{FrameKind::Scan, pc, static_cast<std::uint32_t>(found + 1),
                                   static_cast<std::uint32_t>(undo.size())});
                pos = static_cast<std::uint32_t>(found + lit.size());
                ++pc;
                continue;
            }
            case Op::Accept:
                return Outcome::Match;
            }

            // Fall through: the current thread failed, backtrack.
            for (;;) {
                // A lookahead body that ran out of alternatives resolves
                // the assertion before ordinary frames continue.
                if (!looks.empty() && bt.size() == looks.back().bt_size) {
                    LookFrame f = looks.back();
                    looks.pop_back();
                    undo_to(f.undo_size);
                    if (f.negated) {
                        pos = f.saved_pos;
                        pc = f.resume_pc + 1; // (?!...) verified: step past LookEnd
                        goto resumed;
                    }
                    continue; // (?=...) failed: keep unwinding
                }
                if (bt.empty()) return Outcome::NoMatch;

                Frame fr = bt.back();
                bt.pop_back();
                undo_to(fr.undo_size);
                if (fr.kind == FrameKind::Alt) {
                    pc = fr.pc;
                    pos = fr.pos;
                    goto resumed;
                }
                // Scan frame: take the next occurrence of the literal.
                const std::string& lit = re.literals_[prog[fr.pc].a];
                const std::size_t found = find_lit(subject, fr.pos, lit);
                if (!charge((found == std::string_view::npos ? n - std::min<std::uint32_t>(fr.pos, n)
                                                             : found - fr.pos) +
                            1)) {
                    return Outcome::BudgetExhausted;
                }
                if (found == std::string_view::npos) continue;
                if (bt.size() >= kMaxBacktrackFrames) return Outcome::BudgetExhausted;
                bt.push_back(Frame{FrameKind::Scan, fr.pc, static_cast<std::uint32_t>(found + 1),
                                   fr.undo_size});
                pos = static_cast<std::uint32_t>(found + lit.size());
                pc = fr.pc + 1;
                goto resumed;
            }
        resumed:;
        }
    }
};

Outcome Regex::run(std::string_view subject, std::uint64_t budget, bool optimized) const {
    Vm vm(*this, subject, budget);
    const std::size_t n = subject.size();

    if (optimized && anchored_equivalent_) {
        return vm.attempt(0);
    }

    for (std::size_t start = 0; start <= n; ++start) {
        if (optimized && first_byte_ >= 0) {
            if (start >= n) {
                // No byte left to hold the required first character.
                return Outcome::NoMatch;
            }
            const void* hit = std::memchr(subject.data() + start, first_byte_, n - start);
            if (hit == nullptr) return Outcome::NoMatch;
            start = static_cast<std::size_t>(static_cast<const char*>(hit) - subject.data());
        }
        const Outcome o = vm.attempt(start);
        if (o != Outcome::NoMatch) return o;
    }
    return Outcome::NoMatch;
}

Outcome Regex::search(std::string_view subject, std::uint64_t step_budget) const {
    return run(subject, step_budget, true);
}

Outcome Regex::search_unoptimized(std::string_view subject, std::uint64_t step_budget) const {
    return run(subject, step_budget, false);
}

} // namespace saga::rx
