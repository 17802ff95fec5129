#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caymaze/group.hpp"

namespace caymaze {

// One slot of a transition-rule pattern. A rule matches an observation
// slot-wise: Theta matches only theta, AnyState matches anything,
// ExactState matches exactly one state, SelfSlot sits at the automaton's
// own index and matches theta (an automaton never observes itself).
struct PatternSlot {
    enum class Kind { Theta, AnyState, ExactState, SelfSlot };
    Kind kind = Kind::AnyState;
    int state = 0;  // ExactState only

    static PatternSlot theta() { return {Kind::Theta, 0}; }
    static PatternSlot any() { return {Kind::AnyState, 0}; }
    static PatternSlot exact(int q) { return {Kind::ExactState, q}; }
    static PatternSlot self() { return {Kind::SelfSlot, 0}; }

    bool operator==(const PatternSlot&) const = default;
};

struct TransitionRule {
    int state = 0;
    std::vector<PatternSlot> pattern;  // length m
    int next_state = 0;
    Direction move;
};

// What automaton i sees at one step: per slot, theta (-1) or the state of a
// co-located automaton. Slot i itself is always theta.
struct Observation {
    static constexpr int kTheta = -1;
    std::vector<int> slots;

    bool is_theta(std::size_t j) const { return slots[j] == kTheta; }
    bool operator==(const Observation&) const = default;
};

struct Automaton {
    std::string name;
    int state_count = 0;
    std::vector<TransitionRule> rules;
};

struct Collective {
    std::vector<Automaton> members;
    std::vector<int> start_states;
    std::vector<GroupElement> start_positions;

    std::size_t size() const { return members.size(); }
};

// leaders[i] = smallest index j with v_j = v_i; encodes the co-location
// partition F. Indices are 0-based internally, 1-based in rendered output.
std::vector<int> partition_from_positions(
    const std::vector<GroupElement>& positions);

Observation observe(std::size_t i, const std::vector<int>& states,
                    const std::vector<int>& leaders);

struct TransitionResult {
    int next_state;
    Direction move;
};

// First-match lookup over the rule list; nullopt when no rule matches
// (a non-total automaton slipping past validation).
std::optional<TransitionResult> lookup_transition(const Automaton& aut,
                                                  int state,
                                                  const Observation& obs);

struct AdmissibilityReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
};

AdmissibilityReport admissibility_check(const Collective& c,
                                        const GroupBackend& backend);

// Hashable key for the collective state I = (state vector, partition).
struct CollectiveStateKey {
    std::vector<int> states;
    std::vector<int> leaders;

    bool operator==(const CollectiveStateKey&) const = default;
    std::size_t hash() const;
};

struct CollectiveStateKeyHash {
    std::size_t operator()(const CollectiveStateKey& k) const {
        return k.hash();
    }
};

CollectiveStateKey encode_collective_state(const std::vector<int>& states,
                                           const std::vector<int>& leaders);

std::string render_partition(const std::vector<int>& leaders);

}  // namespace caymaze
