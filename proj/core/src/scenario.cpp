#include "caymaze/scenario.hpp"

#include <random>

namespace caymaze {
namespace scenario {

Scenario build_line_explorer() {
    // Walker: two states. In seek-right it always moves +1 and flips to
    // seek-left on meeting the right pebble; symmetrically for seek-left.
    // A pebble moves exactly when the walker stands on it in the matching
    // seek state, so the push and the flip happen in the same step.
    Automaton walker;
    walker.name = "walker";
    walker.state_count = 2;
    walker.rules = {
        {kSeekRight,
         {PatternSlot::self(), PatternSlot::any(), PatternSlot::exact(0)},
         kSeekLeft,
         Direction::gen(1)},
        {kSeekRight,
         {PatternSlot::self(), PatternSlot::any(), PatternSlot::any()},
         kSeekRight,
         Direction::gen(1)},
        {kSeekLeft,
         {PatternSlot::self(), PatternSlot::exact(0), PatternSlot::any()},
         kSeekRight,
         Direction::inv_gen(1)},
        {kSeekLeft,
         {PatternSlot::self(), PatternSlot::any(), PatternSlot::any()},
         kSeekLeft,
         Direction::inv_gen(1)},
    };

    Automaton pebble_left;
    pebble_left.name = "pebble-left";
    pebble_left.state_count = 1;
    pebble_left.rules = {
        {0,
         {PatternSlot::exact(kSeekLeft), PatternSlot::self(),
          PatternSlot::any()},
         0,
         Direction::inv_gen(1)},
        {0,
         {PatternSlot::any(), PatternSlot::self(), PatternSlot::any()},
         0,
         Direction::stay()},
    };

    Automaton pebble_right;
    pebble_right.name = "pebble-right";
    pebble_right.state_count = 1;
    pebble_right.rules = {
        {0,
         {PatternSlot::exact(kSeekRight), PatternSlot::any(),
          PatternSlot::self()},
         0,
         Direction::gen(1)},
        {0,
         {PatternSlot::any(), PatternSlot::any(), PatternSlot::self()},
         0,
         Direction::stay()},
    };

    Scenario s{
        "line-explorer",
        GroupBackend::free_abelian(1),
        {},
        "walker plus two pebbles covering the integer line sweep by sweep",
    };
    s.collective.members = {walker, pebble_left, pebble_right};
    s.collective.start_states = {kSeekRight, 0, 0};
    const GroupElement origin = s.backend.identity();
    s.collective.start_positions = {origin, origin, origin};
    return s;
}

Automaton build_stayer() {
    Automaton a;
    a.name = "stayer";
    a.state_count = 1;
    a.rules = {{0, {PatternSlot::self()}, 0, Direction::stay()}};
    return a;
}

Automaton build_drifter(int generator) {
    Automaton a;
    a.name = "drifter";
    a.state_count = 1;
    a.rules = {{0, {PatternSlot::self()}, 0, Direction::gen(generator)}};
    return a;
}

Automaton build_looper(const std::vector<int>& word) {
    Automaton a;
    a.name = "looper";
    a.state_count = static_cast<int>(word.size());
    for (int q = 0; q < a.state_count; ++q) {
        const int letter = word[q];
        const Direction d = letter > 0 ? Direction::gen(letter)
                                       : Direction::inv_gen(-letter);
        a.rules.push_back(
            {q, {PatternSlot::self()}, (q + 1) % a.state_count, d});
    }
    return a;
}

Collective random_collective(std::uint64_t seed, int m, int q_max,
                             const GroupBackend& backend) {
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    const int n = backend.generator_count();
    auto random_direction = [&]() {
        const int c = uniform(-n, n);
        return Direction{c};
    };

    Collective col;
    for (int i = 0; i < m; ++i) {
        Automaton a;
        a.name = "rnd" + std::to_string(i + 1);
        a.state_count = uniform(1, q_max);
        col.members.push_back(std::move(a));
    }
    for (int i = 0; i < m; ++i) {
        Automaton& a = col.members[i];
        for (int q = 0; q < a.state_count; ++q) {
            // optional meeting-triggered rule, tried before the catch-all
            if (m > 1 && uniform(0, 1) == 1) {
                int other = uniform(0, m - 2);
                if (other >= i) ++other;
                TransitionRule r;
                r.state = q;
                r.pattern.assign(m, PatternSlot::any());
                r.pattern[i] = PatternSlot::self();
                r.pattern[other] = PatternSlot::exact(
                    uniform(0, col.members[other].state_count - 1));
                r.next_state = uniform(0, a.state_count - 1);
                r.move = random_direction();
                a.rules.push_back(std::move(r));
            }
            TransitionRule r;
            r.state = q;
            r.pattern.assign(m, PatternSlot::any());
            r.pattern[i] = PatternSlot::self();
            r.next_state = uniform(0, a.state_count - 1);
            r.move = random_direction();
            a.rules.push_back(std::move(r));
        }
    }
    for (int i = 0; i < m; ++i) {
        col.start_states.push_back(0);
        col.start_positions.push_back(backend.identity());
    }
    return col;
}

}  // namespace scenario
}  // namespace caymaze
