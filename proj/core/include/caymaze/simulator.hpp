#pragma once

#include <optional>
#include <unordered_set>
#include <vector>

#include "caymaze/automaton.hpp"
#include "caymaze/group.hpp"

namespace caymaze {

// The full (state vector, position vector) pair; determines the entire
// future trajectory.
struct Configuration {
    std::vector<int> states;
    std::vector<GroupElement> positions;
    long long time = 0;

    bool same_pair(const Configuration& o) const {
        return states == o.states && positions == o.positions;
    }
};

Configuration start_configuration(const Collective& c);

// Configuration with positions rewritten relative to automaton 1:
// rel[i] = v_1^-1 * v_i. Invariant under left translation of all positions,
// which is what makes cycle detection possible on drifting collectives.
struct NormalizedConfiguration {
    std::vector<int> states;
    std::vector<int> leaders;
    std::vector<GroupElement> relative_positions;

    bool operator==(const NormalizedConfiguration&) const = default;
    std::size_t hash() const;
};

struct NormalizedConfigurationHash {
    std::size_t operator()(const NormalizedConfiguration& n) const {
        return n.hash();
    }
};

NormalizedConfiguration normalize(const GroupBackend& backend,
                                  const Configuration& config);

class SimulationError : public std::exception {
public:
    explicit SimulationError(std::string msg) : msg_(std::move(msg)) {}
    const char* what() const noexcept override { return msg_.c_str(); }

private:
    std::string msg_;
};

// One synchronous step of the collective. All transitions read the time-t
// states; updates are simultaneous.
Configuration step(const GroupBackend& backend, const Collective& collective,
                   const Configuration& config);

using VisitedSet = std::unordered_set<GroupElement, GroupElementHash>;

struct Trace {
    std::vector<Configuration> configurations;  // t = 0 .. steps
    std::vector<VisitedSet> visited_per_automaton;
    VisitedSet visited;  // Int = union over automata
};

Trace run_trace(const GroupBackend& backend, const Collective& collective,
                long long steps);

struct CycleInfo {
    long long preperiod = 0;       // U: first index on the quotient cycle
    long long quotient_period = 0;  // T_q
    GroupElement holonomy;          // v_1(U)^-1 * v_1(U + T_q)
    long long steps_used = 0;
};

// Brent cycle detection on the left-translation quotient of the dynamics,
// followed by minimization of the preperiod and period. nullopt when no
// quotient repeat occurs within `budget` steps of the underlying dynamics.
std::optional<CycleInfo> detect_cycle(const GroupBackend& backend,
                                      const Collective& collective,
                                      const Configuration& start,
                                      long long budget);

struct HolonomyOrder {
    enum class Kind { Finite, Infinite, CapExceeded };
    Kind kind;
    long long order = 0;  // Finite only
};

HolonomyOrder holonomy_order(const GroupBackend& backend,
                             const GroupElement& h, long long cap);

enum class Verdict { FiniteExploration, DriftUnbounded, BudgetExhausted };

std::string to_string(Verdict v);

struct ExplorationReport {
    Verdict verdict = Verdict::BudgetExhausted;
    long long preperiod = 0;                       // U
    std::optional<long long> state_period;          // T_state
    std::optional<long long> quotient_period;       // T_q
    std::optional<GroupElement> holonomy;
    std::optional<HolonomyOrder> holonomy_order;
    std::optional<long long> pair_period;           // T_pair
    long long visited_count = 0;
    long long steps_used = 0;
};

// Full trap-certification pipeline: quotient cycle detection, holonomy
// order, exact pair period, exact visited set.
ExplorationReport certify(const GroupBackend& backend,
                          const Collective& collective,
                          const Configuration& start, long long budget);

// Trace line rendering: `t=<n> q=[...] v=[...] F=[...]`.
std::string render_configuration(const GroupBackend& backend,
                                 const Configuration& config);

}  // namespace caymaze
