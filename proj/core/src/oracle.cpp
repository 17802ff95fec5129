#include "caymaze/oracle.hpp"

#include <unordered_map>

namespace caymaze {
namespace oracle {

SingleAutomatonAnalysis single_automaton_oracle(const GroupBackend& backend,
                                                const Automaton& automaton,
                                                int start_state) {
    // With no companions the observation is all-theta, so the transition
    // function restricted to it is a map Q -> Q. Record the visit order and
    // the step that closes the rho.
    Observation all_theta;
    all_theta.slots.assign(1, Observation::kTheta);

    std::vector<long long> first_seen(automaton.state_count, -1);
    std::vector<int> sequence;
    std::vector<Direction> outputs;
    int q = start_state;
    long long t = 0;
    while (first_seen[q] < 0) {
        first_seen[q] = t;
        sequence.push_back(q);
        auto tr = lookup_transition(automaton, q, all_theta);
        if (!tr) throw SimulationError("oracle: automaton is not total");
        outputs.push_back(tr->move);
        q = tr->next_state;
        ++t;
    }

    SingleAutomatonAnalysis out;
    out.preperiod = first_seen[q];
    out.period = t - first_seen[q];
    GroupElement g_t = backend.identity();
    for (long long k = out.preperiod; k < t; ++k) {
        out.cycle_outputs.push_back(outputs[k]);
        g_t = backend.apply(g_t, outputs[k]);
    }
    out.cycle_displacement = g_t;
    return out;
}

namespace {

struct ConfigKey {
    std::vector<int> states;
    std::vector<GroupElement> positions;
    bool operator==(const ConfigKey&) const = default;
};

struct ConfigKeyHash {
    std::size_t operator()(const ConfigKey& k) const {
        std::size_t h = 0;
        auto mix = [&h](std::size_t v) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        };
        for (int q : k.states) mix(std::hash<int>{}(q));
        for (const auto& g : k.positions) mix(g.hash());
        return h;
    }
};

}  // namespace

std::optional<OrbitAnalysis> exhaustive_orbit_oracle(
    const GroupBackend& backend, const Collective& collective,
    const Configuration& start, std::size_t cap) {
    std::unordered_map<ConfigKey, long long, ConfigKeyHash> seen;
    Configuration cur = start;
    long long t = 0;
    for (;;) {
        ConfigKey key{cur.states, cur.positions};
        auto [it, inserted] = seen.emplace(std::move(key), t);
        if (!inserted)
            return OrbitAnalysis{it->second, t - it->second};
        if (seen.size() > cap) return std::nullopt;
        cur = step(backend, collective, cur);
        ++t;
    }
}

namespace {

bool cross_meeting(const Configuration& c, const std::vector<int>& block_a,
                   const std::vector<int>& block_b) {
    for (int a : block_a)
        for (int b : block_b)
            if (c.positions[a] == c.positions[b]) return true;
    return false;
}

}  // namespace

SeparationResult separation_check(const std::vector<Configuration>& trace,
                                  const std::vector<int>& block_a,
                                  const std::vector<int>& block_b,
                                  long long h_window) {
    SeparationResult out;
    const long long n = static_cast<long long>(trace.size());
    std::vector<bool> meets(n);
    for (long long t = 0; t < n; ++t)
        meets[t] = cross_meeting(trace[t], block_a, block_b);

    long long clean = 0;
    for (long long t = 0; t < n; ++t) {
        if (meets[t]) {
            clean = 0;
            continue;
        }
        if (++clean == h_window) {
            out.window_found = true;
            out.window_start = t - h_window + 1;
            for (long long u = t + 1; u < n; ++u)
                if (meets[u]) {
                    out.holds = false;
                    out.violated_at = u;
                    return out;
                }
            return out;
        }
    }
    return out;  // no clean window: nothing asserted, vacuously holds
}

}  // namespace oracle
}  // namespace caymaze
