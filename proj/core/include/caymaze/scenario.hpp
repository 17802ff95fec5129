#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "caymaze/automaton.hpp"
#include "caymaze/group.hpp"

namespace caymaze {
namespace scenario {

struct Scenario {
    std::string name;
    GroupBackend backend;
    Collective collective;
    std::string description;
};

// The classic Z explorer: one walker shuttling between two pebbles,
// pushing each one step outward per sweep. Walker is member 1, the left
// and right pebbles are members 2 and 3; everyone starts at 0.
Scenario build_line_explorer();

// Walker state indices in the line explorer, exposed for tests.
inline constexpr int kSeekRight = 0;
inline constexpr int kSeekLeft = 1;

Automaton build_stayer();
Automaton build_drifter(int generator);
// One state per letter, emitting the word cyclically. Letters are signed
// 1-based generator indices.
Automaton build_looper(const std::vector<int>& word);

// Seed-deterministic collective: per state one catch-all rule plus, with
// probability 1/2, a meeting-triggered rule ahead of it. Total by
// construction; all members start co-located at the identity.
Collective random_collective(std::uint64_t seed, int m, int q_max,
                             const GroupBackend& backend);

}  // namespace scenario
}  // namespace caymaze
