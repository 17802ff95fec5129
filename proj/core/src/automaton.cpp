#include "caymaze/automaton.hpp"

#include <sstream>

namespace caymaze {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool slot_matches(const PatternSlot& p, int obs_slot) {
    switch (p.kind) {
        case PatternSlot::Kind::Theta:
            return obs_slot == Observation::kTheta;
        case PatternSlot::Kind::AnyState:
            return true;
        case PatternSlot::Kind::ExactState:
            return obs_slot == p.state;
        case PatternSlot::Kind::SelfSlot:
            return obs_slot == Observation::kTheta;
    }
    return false;
}

bool rule_matches(const TransitionRule& r, int state, const Observation& obs) {
    if (r.state != state) return false;
    for (std::size_t j = 0; j < r.pattern.size(); ++j)
        if (!slot_matches(r.pattern[j], obs.slots[j])) return false;
    return true;
}

}  // namespace

std::vector<int> partition_from_positions(
    const std::vector<GroupElement>& positions) {
    const std::size_t m = positions.size();
    std::vector<int> leaders(m);
    for (std::size_t i = 0; i < m; ++i) {
        leaders[i] = static_cast<int>(i);
        for (std::size_t j = 0; j < i; ++j)
            if (positions[j] == positions[i]) {
                leaders[i] = leaders[j];
                break;
            }
    }
    return leaders;
}

Observation observe(std::size_t i, const std::vector<int>& states,
                    const std::vector<int>& leaders) {
    Observation obs;
    obs.slots.assign(states.size(), Observation::kTheta);
    for (std::size_t j = 0; j < states.size(); ++j)
        if (j != i && leaders[j] == leaders[i]) obs.slots[j] = states[j];
    return obs;
}

std::optional<TransitionResult> lookup_transition(const Automaton& aut,
                                                  int state,
                                                  const Observation& obs) {
    for (const auto& r : aut.rules)
        if (rule_matches(r, state, obs))
            return TransitionResult{r.next_state, r.move};
    return std::nullopt;
}

AdmissibilityReport admissibility_check(const Collective& c,
                                        const GroupBackend& backend) {
    AdmissibilityReport rep;
    auto fail = [&](const std::string& s) { rep.violations.push_back(s); };
    const std::size_t m = c.size();
    if (m == 0) {
        fail("collective is empty");
        return rep;
    }
    if (c.start_states.size() != m) fail("start state count != m");
    if (c.start_positions.size() != m) fail("start position count != m");

    for (std::size_t i = 0; i < m; ++i) {
        const Automaton& a = c.members[i];
        const std::string who = "automaton '" + a.name + "'";
        if (a.state_count < 1) {
            fail(who + ": state count must be >= 1");
            continue;
        }
        if (i < c.start_states.size() &&
            (c.start_states[i] < 0 || c.start_states[i] >= a.state_count))
            fail(who + ": start state out of range");

        for (std::size_t r = 0; r < a.rules.size(); ++r) {
            const TransitionRule& rule = a.rules[r];
            const std::string where =
                who + " rule " + std::to_string(r + 1);
            if (rule.state < 0 || rule.state >= a.state_count)
                fail(where + ": state out of range");
            if (rule.next_state < 0 || rule.next_state >= a.state_count)
                fail(where + ": next state out of range");
            if (!rule.move.is_stay() &&
                (rule.move.generator_index() < 1 ||
                 rule.move.generator_index() > backend.generator_count()))
                fail(where + ": direction out of range");
            if (rule.pattern.size() != m) {
                fail(where + ": pattern arity != m");
                continue;
            }
            for (std::size_t j = 0; j < m; ++j) {
                const PatternSlot& p = rule.pattern[j];
                if (j == i && p.kind != PatternSlot::Kind::SelfSlot &&
                    p.kind != PatternSlot::Kind::Theta)
                    fail(where + ": own slot must be self/theta");
                if (j != i && p.kind == PatternSlot::Kind::SelfSlot)
                    fail(where + ": self slot at foreign index");
                if (p.kind == PatternSlot::Kind::ExactState &&
                    (p.state < 0 || p.state >= c.members[j].state_count))
                    fail(where + ": exact-state slot out of range");
            }
        }
    }
    if (!rep.valid()) return rep;

    // Totality: every (state, concrete observation) must resolve. The
    // concrete observation space for automaton i is the product over j != i
    // of (|Q_j| + 1) slot values.
    constexpr unsigned long long kEnumCap = 1u << 20;
    for (std::size_t i = 0; i < m; ++i) {
        const Automaton& a = c.members[i];
        unsigned long long space = 1;
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) space *= c.members[j].state_count + 1;
        if (space > kEnumCap) {
            // fall back to a per-state catch-all scan
            for (int q = 0; q < a.state_count; ++q) {
                bool has_catch_all = false;
                for (const auto& r : a.rules) {
                    if (r.state != q) continue;
                    bool all_any = true;
                    for (std::size_t j = 0; j < m; ++j)
                        if (j != i &&
                            r.pattern[j].kind != PatternSlot::Kind::AnyState)
                            all_any = false;
                    if (all_any) {
                        has_catch_all = true;
                        break;
                    }
                }
                if (!has_catch_all)
                    rep.violations.push_back(
                        "automaton '" + a.name +
                        "': observation space too large to prove totality");
            }
            continue;
        }
        Observation obs;
        obs.slots.assign(m, Observation::kTheta);
        for (int q = 0; q < a.state_count; ++q) {
            for (unsigned long long code = 0; code < space; ++code) {
                unsigned long long rest = code;
                for (std::size_t j = 0; j < m; ++j) {
                    if (j == i) continue;
                    const unsigned long long base =
                        c.members[j].state_count + 1;
                    const int digit = static_cast<int>(rest % base);
                    rest /= base;
                    obs.slots[j] =
                        digit == 0 ? Observation::kTheta : digit - 1;
                }
                if (!lookup_transition(a, q, obs)) {
                    std::ostringstream os;
                    os << "automaton '" << a.name << "': not total at state "
                       << q;
                    rep.violations.push_back(os.str());
                    break;
                }
            }
        }
    }
    return rep;
}

std::size_t CollectiveStateKey::hash() const {
    std::size_t h = 0;
    for (int q : states) h = hash_combine(h, std::hash<int>{}(q));
    for (int l : leaders) h = hash_combine(h, std::hash<int>{}(l + 1000003));
    return h;
}

CollectiveStateKey encode_collective_state(const std::vector<int>& states,
                                           const std::vector<int>& leaders) {
    return CollectiveStateKey{states, leaders};
}

std::string render_partition(const std::vector<int>& leaders) {
    // blocks in leader order, 1-based indices
    std::ostringstream os;
    os << "[";
    bool first_block = true;
    for (std::size_t l = 0; l < leaders.size(); ++l) {
        if (leaders[l] != static_cast<int>(l)) continue;
        if (!first_block) os << " ";
        first_block = false;
        os << "{";
        bool first = true;
        for (std::size_t j = 0; j < leaders.size(); ++j)
            if (leaders[j] == static_cast<int>(l)) {
                if (!first) os << ",";
                first = false;
                os << (j + 1);
            }
        os << "}";
    }
    os << "]";
    return os.str();
}

}  // namespace caymaze
