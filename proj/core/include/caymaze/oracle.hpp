#pragma once

#include <optional>
#include <vector>

#include "caymaze/simulator.hpp"

namespace caymaze {
namespace oracle {

// Brute-force verifiers, deliberately sharing no cycle-detection code with
// the simulator.

struct SingleAutomatonAnalysis {
    long long preperiod = 0;   // U_exact
    long long period = 0;      // T_exact
    std::vector<Direction> cycle_outputs;
    GroupElement cycle_displacement;  // g_T = product of the cycle outputs
};

// Walks the state functional graph q -> phi(q, all-theta) of a lone
// automaton and reads off the exact tail and cycle by direct bookkeeping.
SingleAutomatonAnalysis single_automaton_oracle(const GroupBackend& backend,
                                                const Automaton& automaton,
                                                int start_state);

struct OrbitAnalysis {
    long long preperiod = 0;   // U_exact of the raw pair dynamics
    long long pair_period = 0; // T_pair_exact
};

// Stores every raw Configuration with its time until one repeats.
// nullopt = CapExceeded (more than `cap` stored configurations).
std::optional<OrbitAnalysis> exhaustive_orbit_oracle(
    const GroupBackend& backend, const Collective& collective,
    const Configuration& start, std::size_t cap = 10'000'000);

struct SeparationResult {
    bool holds = true;
    long long violated_at = -1;  // first cross-block meeting after the window
    bool window_found = false;
    long long window_start = -1;
};

// Once `h_window` consecutive steps pass without a cross-block meeting,
// no later step of the trace may contain one.
SeparationResult separation_check(const std::vector<Configuration>& trace,
                                  const std::vector<int>& block_a,
                                  const std::vector<int>& block_b,
                                  long long h_window);

}  // namespace oracle
}  // namespace caymaze
