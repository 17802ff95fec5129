#include "caymaze/dsl.hpp"

#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace caymaze {
namespace dsl {

namespace {

struct Token {
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize_line(const std::string& line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        std::size_t j = i;
        while (j < line.size() &&
               !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        out.push_back({line.substr(i, j - i), line_no,
                       static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

struct RawSlot {
    int slot = 0;  // 1-based
    enum class Kind { Theta, Any, Exact } kind = Kind::Any;
    std::string ref_name;  // Exact
    int state = 0;         // Exact
    Token token;
};

struct RawRule {
    int state = 0;
    std::vector<RawSlot> slots;
    Direction move;
    int next_state = 0;
    Token token;
};

struct RawAutomaton {
    std::string name;
    int state_count = 0;
    int start_state = 0;
    std::vector<RawRule> rules;
};

struct Parser {
    std::optional<ParseError> error;

    void fail(const Token& tok, const std::string& msg) {
        if (!error)
            error = ParseError{tok.line, tok.column, msg, tok.text};
    }
    void fail_line(int line, const std::string& msg) {
        if (!error) error = ParseError{line, 1, msg, ""};
    }

    std::optional<long long> parse_int(const Token& tok) {
        long long v = 0;
        auto [p, ec] = std::from_chars(tok.text.data(),
                                       tok.text.data() + tok.text.size(), v);
        if (ec != std::errc() || p != tok.text.data() + tok.text.size()) {
            fail(tok, "expected an integer");
            return std::nullopt;
        }
        return v;
    }
};

// A dot-separated word of generator letters (`s2'` = inverse of s2), or `e`.
std::optional<GroupElement> eval_word(Parser& p, const GroupBackend& backend,
                                      const Token& tok) {
    if (tok.text == "e") return backend.identity();
    GroupElement v = backend.identity();
    std::istringstream in(tok.text);
    std::string part;
    while (std::getline(in, part, '.')) {
        bool inverse = false;
        if (!part.empty() && part.back() == '\'') {
            inverse = true;
            part.pop_back();
        }
        if (part.size() < 2 || part[0] != 's') {
            p.fail(tok, "bad generator letter '" + part + "' in word");
            return std::nullopt;
        }
        int idx = 0;
        auto [q, ec] = std::from_chars(part.data() + 1,
                                       part.data() + part.size(), idx);
        if (ec != std::errc() || q != part.data() + part.size() || idx < 1 ||
            idx > backend.generator_count()) {
            p.fail(tok, "generator index out of range in word");
            return std::nullopt;
        }
        v = backend.apply(v, inverse ? Direction::inv_gen(idx)
                                     : Direction::gen(idx));
    }
    return v;
}

std::optional<GroupBackend> parse_group(Parser& p,
                                        const std::vector<Token>& toks) {
    if (toks.size() < 2) {
        p.fail(toks[0], "group line needs a family");
        return std::nullopt;
    }
    const std::string& fam = toks[1].text;
    try {
        if (fam == "free-abelian" || fam == "free") {
            if (toks.size() != 3) {
                p.fail(toks[1], "expected: group " + fam + " <rank>");
                return std::nullopt;
            }
            auto k = p.parse_int(toks[2]);
            if (!k) return std::nullopt;
            if (*k < 1) {
                p.fail(toks[2], "rank must be >= 1");
                return std::nullopt;
            }
            return fam == "free-abelian"
                       ? GroupBackend::free_abelian(static_cast<int>(*k))
                       : GroupBackend::free_group(static_cast<int>(*k));
        }
        if (fam == "finite-abelian") {
            std::vector<long long> mods;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                auto n = p.parse_int(toks[i]);
                if (!n) return std::nullopt;
                if (*n < 2) {
                    p.fail(toks[i], "modulus must be >= 2");
                    return std::nullopt;
                }
                mods.push_back(*n);
            }
            if (mods.empty()) {
                p.fail(toks[1], "finite-abelian needs at least one modulus");
                return std::nullopt;
            }
            return GroupBackend::finite_abelian(std::move(mods));
        }
        if (fam == "heisenberg") {
            if (toks.size() != 3) {
                p.fail(toks[1], "expected: group heisenberg <p>");
                return std::nullopt;
            }
            auto q = p.parse_int(toks[2]);
            if (!q) return std::nullopt;
            return GroupBackend::heisenberg_mod_p(*q);
        }
        if (fam == "table") {
            if (toks.size() != 3) {
                p.fail(toks[1], "expected: group table <file>");
                return std::nullopt;
            }
            std::ifstream f(toks[2].text);
            if (!f) {
                p.fail(toks[2], "cannot open table file");
                return std::nullopt;
            }
            std::ostringstream body;
            body << f.rdbuf();
            return GroupBackend::mult_table(
                GroupBackend::parse_mult_table(body.str()));
        }
    } catch (const GroupError& e) {
        p.fail(toks[1], e.what());
        return std::nullopt;
    }
    p.fail(toks[1], "unknown group family");
    return std::nullopt;
}

std::optional<RawSlot> parse_slot(Parser& p, const Token& tok) {
    // slot<i>=<theta|any|name.q>
    if (tok.text.rfind("slot", 0) != 0) {
        p.fail(tok, "expected slot<i>=<...>");
        return std::nullopt;
    }
    const auto eq = tok.text.find('=');
    if (eq == std::string::npos) {
        p.fail(tok, "slot spec is missing '='");
        return std::nullopt;
    }
    RawSlot s;
    s.token = tok;
    {
        const std::string num = tok.text.substr(4, eq - 4);
        int idx = 0;
        auto [q, ec] =
            std::from_chars(num.data(), num.data() + num.size(), idx);
        if (ec != std::errc() || q != num.data() + num.size() || idx < 1) {
            p.fail(tok, "bad slot index");
            return std::nullopt;
        }
        s.slot = idx;
    }
    const std::string val = tok.text.substr(eq + 1);
    if (val == "theta") {
        s.kind = RawSlot::Kind::Theta;
        return s;
    }
    if (val == "any") {
        s.kind = RawSlot::Kind::Any;
        return s;
    }
    const auto dot = val.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= val.size()) {
        p.fail(tok, "slot value must be theta, any, or <automaton>.<state>");
        return std::nullopt;
    }
    s.kind = RawSlot::Kind::Exact;
    s.ref_name = val.substr(0, dot);
    const std::string st = val.substr(dot + 1);
    auto [q, ec] = std::from_chars(st.data(), st.data() + st.size(), s.state);
    if (ec != std::errc() || q != st.data() + st.size() || s.state < 0) {
        p.fail(tok, "bad state number in slot value");
        return std::nullopt;
    }
    return s;
}

std::optional<RawRule> parse_rule(Parser& p, const std::vector<Token>& toks) {
    // rule <state> [slots...] -> move <gen i|inv i|stay> next <state>
    RawRule r;
    r.token = toks[0];
    if (toks.size() < 2) {
        p.fail(toks[0], "rule line needs a state");
        return std::nullopt;
    }
    auto st = p.parse_int(toks[1]);
    if (!st) return std::nullopt;
    r.state = static_cast<int>(*st);
    std::size_t i = 2;
    while (i < toks.size() && toks[i].text != "->") {
        auto s = parse_slot(p, toks[i]);
        if (!s) return std::nullopt;
        r.slots.push_back(std::move(*s));
        ++i;
    }
    if (i >= toks.size()) {
        p.fail(toks.back(), "rule is missing '->'");
        return std::nullopt;
    }
    ++i;  // skip ->
    if (i >= toks.size() || toks[i].text != "move") {
        p.fail(i < toks.size() ? toks[i] : toks.back(), "expected 'move'");
        return std::nullopt;
    }
    ++i;
    if (i >= toks.size()) {
        p.fail(toks.back(), "move needs a direction");
        return std::nullopt;
    }
    if (toks[i].text == "stay") {
        r.move = Direction::stay();
        ++i;
    } else if (toks[i].text == "gen" || toks[i].text == "inv") {
        const bool inv = toks[i].text == "inv";
        ++i;
        if (i >= toks.size()) {
            p.fail(toks.back(), "direction needs a generator index");
            return std::nullopt;
        }
        auto g = p.parse_int(toks[i]);
        if (!g) return std::nullopt;
        if (*g < 1) {
            p.fail(toks[i], "generator index must be >= 1");
            return std::nullopt;
        }
        r.move = inv ? Direction::inv_gen(static_cast<int>(*g))
                     : Direction::gen(static_cast<int>(*g));
        ++i;
    } else {
        p.fail(toks[i], "direction must be gen <i>, inv <i>, or stay");
        return std::nullopt;
    }
    if (i >= toks.size() || toks[i].text != "next") {
        p.fail(i < toks.size() ? toks[i] : toks.back(), "expected 'next'");
        return std::nullopt;
    }
    ++i;
    if (i >= toks.size()) {
        p.fail(toks.back(), "next needs a state");
        return std::nullopt;
    }
    auto ns = p.parse_int(toks[i]);
    if (!ns) return std::nullopt;
    r.next_state = static_cast<int>(*ns);
    ++i;
    if (i != toks.size()) {
        p.fail(toks[i], "trailing tokens after rule");
        return std::nullopt;
    }
    return r;
}

}  // namespace

std::string ParseError::render() const {
    std::ostringstream os;
    os << "parse error at " << line << ":" << column << ": " << message;
    if (!offending.empty()) os << " (near '" << offending << "')";
    return os.str();
}

ParseResult parse_spec(const std::string& text) {
    Parser p;
    std::optional<GroupBackend> backend;
    std::vector<RawAutomaton> automata;
    std::vector<std::pair<Token, Token>> members;  // (name, word)
    int collective_line = 0;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize_line(line, line_no);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;
        if (kw == "group") {
            if (backend) {
                p.fail(toks[0], "duplicate group line");
                break;
            }
            backend = parse_group(p, toks);
            if (!backend) break;
        } else if (kw == "automaton") {
            if (toks.size() < 4 || toks[2].text != "states") {
                p.fail(toks[0],
                       "expected: automaton <name> states <k> [start <q>]");
                break;
            }
            RawAutomaton a;
            a.name = toks[1].text;
            auto k = p.parse_int(toks[3]);
            if (!k) break;
            if (*k < 1) {
                p.fail(toks[3], "state count must be >= 1");
                break;
            }
            a.state_count = static_cast<int>(*k);
            if (toks.size() == 6 && toks[4].text == "start") {
                auto s = p.parse_int(toks[5]);
                if (!s) break;
                a.start_state = static_cast<int>(*s);
            } else if (toks.size() != 4) {
                p.fail(toks[4], "unexpected tokens on automaton line");
                break;
            }
            for (const auto& other : automata)
                if (other.name == a.name) {
                    p.fail(toks[1], "duplicate automaton name");
                    break;
                }
            if (p.error) break;
            automata.push_back(std::move(a));
        } else if (kw == "rule") {
            if (automata.empty()) {
                p.fail(toks[0], "rule before any automaton declaration");
                break;
            }
            auto r = parse_rule(p, toks);
            if (!r) break;
            automata.back().rules.push_back(std::move(*r));
        } else if (kw == "collective") {
            if (collective_line) {
                p.fail(toks[0], "duplicate collective line");
                break;
            }
            collective_line = line_no;
            std::size_t i = 1;
            while (i < toks.size()) {
                if (i + 2 >= toks.size() || toks[i + 1].text != "@") {
                    p.fail(toks[i], "expected: <automaton> @ <word>");
                    break;
                }
                members.emplace_back(toks[i], toks[i + 2]);
                i += 3;
            }
            if (p.error) break;
            if (members.empty()) {
                p.fail(toks[0], "collective needs at least one member");
                break;
            }
        } else {
            p.fail(toks[0], "unknown directive");
            break;
        }
    }
    if (p.error) return *p.error;
    if (!backend) {
        p.fail_line(line_no + 1, "missing group line");
        return *p.error;
    }
    if (members.empty()) {
        p.fail_line(line_no + 1, "missing collective line");
        return *p.error;
    }

    const std::size_t m = members.size();
    SpecDocument doc{*backend, {}, {}};
    std::vector<const RawAutomaton*> picked;
    for (const auto& [name_tok, word_tok] : members) {
        const RawAutomaton* found = nullptr;
        for (const auto& a : automata)
            if (a.name == name_tok.text) found = &a;
        if (!found) {
            p.fail(name_tok, "unknown automaton '" + name_tok.text + "'");
            return *p.error;
        }
        picked.push_back(found);
        auto v = eval_word(p, *backend, word_tok);
        if (!v) return *p.error;
        doc.collective.start_positions.push_back(std::move(*v));
        doc.collective.start_states.push_back(found->start_state);
        doc.member_names.push_back(found->name);
    }

    // Materialize the rules per member position: the own slot becomes self,
    // unspecified slots default to any.
    for (std::size_t j = 0; j < m; ++j) {
        const RawAutomaton& raw = *picked[j];
        Automaton a;
        a.name = raw.name;
        a.state_count = raw.state_count;
        for (const RawRule& rr : raw.rules) {
            TransitionRule tr;
            tr.state = rr.state;
            tr.next_state = rr.next_state;
            tr.move = rr.move;
            tr.pattern.assign(m, PatternSlot::any());
            tr.pattern[j] = PatternSlot::self();
            for (const RawSlot& s : rr.slots) {
                if (s.slot > static_cast<int>(m)) {
                    p.fail(s.token, "pattern arity: slot index exceeds m=" +
                                        std::to_string(m));
                    return *p.error;
                }
                const std::size_t k = static_cast<std::size_t>(s.slot - 1);
                if (k == j) {
                    if (s.kind != RawSlot::Kind::Theta) {
                        p.fail(s.token, "own slot can only be theta");
                        return *p.error;
                    }
                    continue;  // stays self
                }
                switch (s.kind) {
                    case RawSlot::Kind::Theta:
                        tr.pattern[k] = PatternSlot::theta();
                        break;
                    case RawSlot::Kind::Any:
                        tr.pattern[k] = PatternSlot::any();
                        break;
                    case RawSlot::Kind::Exact:
                        if (picked[k]->name != s.ref_name) {
                            p.fail(s.token, "slot " + std::to_string(s.slot) +
                                                " holds '" + picked[k]->name +
                                                "', not '" + s.ref_name + "'");
                            return *p.error;
                        }
                        tr.pattern[k] = PatternSlot::exact(s.state);
                        break;
                }
            }
            a.rules.push_back(std::move(tr));
        }
        doc.collective.members.push_back(std::move(a));
    }

    const AdmissibilityReport adm =
        admissibility_check(doc.collective, doc.backend);
    if (!adm.valid()) {
        p.fail_line(collective_line, adm.violations.front());
        return *p.error;
    }
    return doc;
}

namespace {

void append_letters(std::vector<std::string>& parts, int gen, long long count,
                    bool inverse) {
    const std::string letter =
        "s" + std::to_string(gen) + (inverse ? "'" : "");
    for (long long k = 0; k < count; ++k) parts.push_back(letter);
}

// A generator word evaluating to g, in the dot syntax eval_word accepts.
std::string render_word(const GroupBackend& backend, const GroupElement& g) {
    std::vector<std::string> parts;
    switch (backend.family()) {
        case GroupFamily::FreeAbelian:
        case GroupFamily::FiniteAbelian: {
            const auto& c = g.coords();
            for (std::size_t i = 0; i < c.size(); ++i)
                append_letters(parts, static_cast<int>(i) + 1,
                               std::llabs(c[i]), c[i] < 0);
            break;
        }
        case GroupFamily::HeisenbergModP: {
            // (a,b,c) = s1^a s2^b [s1,s2]^(c - a*b); residues keep every
            // count in [0, p)
            const auto& c = g.coords();
            append_letters(parts, 1, c[0], false);
            append_letters(parts, 2, c[1], false);
            GroupElement probe = backend.identity();
            for (long long k = 0; k < c[0]; ++k)
                probe = backend.apply(probe, Direction::gen(1));
            for (long long k = 0; k < c[1]; ++k)
                probe = backend.apply(probe, Direction::gen(2));
            long long rem = c[2] - probe.coords()[2];
            while (rem < 0) rem += *backend.exponent();
            for (long long k = 0; k < rem; ++k) {
                parts.push_back("s1");
                parts.push_back("s2");
                parts.push_back("s1'");
                parts.push_back("s2'");
            }
            break;
        }
        case GroupFamily::FreeGroup: {
            for (int letter : g.word())
                append_letters(parts, std::abs(letter), 1, letter < 0);
            break;
        }
        case GroupFamily::MultTable: {
            // BFS from the identity, remembering the last letter
            std::unordered_map<GroupElement,
                               std::pair<GroupElement, Direction>,
                               GroupElementHash>
                parent;
            std::deque<GroupElement> frontier;
            const GroupElement e = backend.identity();
            parent.emplace(e, std::make_pair(e, Direction::stay()));
            frontier.push_back(e);
            while (!frontier.empty() && !parent.count(g)) {
                GroupElement cur = frontier.front();
                frontier.pop_front();
                for (int i = 1; i <= backend.generator_count(); ++i)
                    for (Direction d :
                         {Direction::gen(i), Direction::inv_gen(i)}) {
                        GroupElement nxt = backend.apply(cur, d);
                        if (parent.emplace(nxt, std::make_pair(cur, d))
                                .second)
                            frontier.push_back(nxt);
                    }
            }
            std::vector<std::string> rev;
            GroupElement cur = g;
            while (!(cur == e)) {
                const auto& [prev, d] = parent.at(cur);
                rev.push_back("s" + std::to_string(d.generator_index()) +
                              (d.is_inverse() ? "'" : ""));
                cur = prev;
            }
            parts.assign(rev.rbegin(), rev.rend());
            break;
        }
    }
    if (parts.empty()) return "e";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += "." + parts[i];
    return out;
}

}  // namespace

std::string pretty_print(const SpecDocument& doc) {
    std::ostringstream os;
    os << "group " << doc.backend.description() << "\n";
    const std::size_t m = doc.collective.size();
    // emit each distinct member once
    std::vector<std::string> emitted;
    for (std::size_t j = 0; j < m; ++j) {
        const Automaton& a = doc.collective.members[j];
        bool done = false;
        for (const auto& n : emitted) done |= n == a.name;
        if (done) continue;
        emitted.push_back(a.name);
        os << "automaton " << a.name << " states " << a.state_count
           << " start " << doc.collective.start_states[j] << "\n";
        for (const auto& r : a.rules) {
            os << "rule " << r.state;
            for (std::size_t k = 0; k < r.pattern.size(); ++k) {
                const PatternSlot& s = r.pattern[k];
                switch (s.kind) {
                    case PatternSlot::Kind::Theta:
                        os << " slot" << (k + 1) << "=theta";
                        break;
                    case PatternSlot::Kind::ExactState:
                        os << " slot" << (k + 1) << "="
                           << doc.collective.members[k].name << "."
                           << s.state;
                        break;
                    case PatternSlot::Kind::AnyState:
                    case PatternSlot::Kind::SelfSlot:
                        break;  // defaults
                }
            }
            os << " -> move ";
            if (r.move.is_stay())
                os << "stay";
            else
                os << (r.move.is_inverse() ? "inv " : "gen ")
                   << r.move.generator_index();
            os << " next " << r.next_state << "\n";
        }
    }
    os << "collective";
    for (std::size_t j = 0; j < m; ++j) {
        os << " " << doc.member_names[j] << " @ "
           << render_word(doc.backend, doc.collective.start_positions[j]);
    }
    os << "\n";
    return os.str();
}

}  // namespace dsl
}  // namespace caymaze
