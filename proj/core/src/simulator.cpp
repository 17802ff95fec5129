#include "caymaze/simulator.hpp"

#include <sstream>

namespace caymaze {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Configuration start_configuration(const Collective& c) {
    return Configuration{c.start_states, c.start_positions, 0};
}

std::size_t NormalizedConfiguration::hash() const {
    std::size_t h = 0;
    for (int q : states) h = hash_combine(h, std::hash<int>{}(q));
    for (int l : leaders) h = hash_combine(h, std::hash<int>{}(l + 7919));
    for (const auto& g : relative_positions) h = hash_combine(h, g.hash());
    return h;
}

NormalizedConfiguration normalize(const GroupBackend& backend,
                                  const Configuration& config) {
    NormalizedConfiguration n;
    n.states = config.states;
    n.leaders = partition_from_positions(config.positions);
    n.relative_positions.reserve(config.positions.size());
    const GroupElement anchor_inv = backend.inverse(config.positions.front());
    for (const auto& v : config.positions)
        n.relative_positions.push_back(backend.multiply(anchor_inv, v));
    return n;
}

Configuration step(const GroupBackend& backend, const Collective& collective,
                   const Configuration& config) {
    const std::size_t m = collective.size();
    const std::vector<int> leaders = partition_from_positions(config.positions);
    Configuration next;
    next.states.resize(m);
    next.positions.resize(m);
    next.time = config.time + 1;
    for (std::size_t i = 0; i < m; ++i) {
        const Observation obs = observe(i, config.states, leaders);
        const auto tr =
            lookup_transition(collective.members[i], config.states[i], obs);
        if (!tr)
            throw SimulationError("no matching rule for automaton " +
                                  std::to_string(i + 1) + " at t=" +
                                  std::to_string(config.time));
        next.states[i] = tr->next_state;
        next.positions[i] = backend.apply(config.positions[i], tr->move);
    }
    return next;
}

Trace run_trace(const GroupBackend& backend, const Collective& collective,
                long long steps) {
    Trace tr;
    const std::size_t m = collective.size();
    tr.visited_per_automaton.resize(m);
    Configuration cur = start_configuration(collective);
    auto record = [&](const Configuration& c) {
        tr.configurations.push_back(c);
        for (std::size_t i = 0; i < m; ++i) {
            tr.visited_per_automaton[i].insert(c.positions[i]);
            tr.visited.insert(c.positions[i]);
        }
    };
    record(cur);
    for (long long t = 0; t < steps; ++t) {
        cur = step(backend, collective, cur);
        record(cur);
    }
    return tr;
}

namespace {

// Step the quotient dynamics: the normalized representative is itself a
// valid configuration (anchor at the identity), so step it and renormalize.
NormalizedConfiguration quotient_step(const GroupBackend& backend,
                                      const Collective& collective,
                                      const NormalizedConfiguration& n) {
    Configuration rep{n.states, n.relative_positions, 0};
    return normalize(backend, step(backend, collective, rep));
}

}  // namespace

std::optional<CycleInfo> detect_cycle(const GroupBackend& backend,
                                      const Collective& collective,
                                      const Configuration& start,
                                      long long budget) {
    if (budget < 1) throw SimulationError("detect_cycle: budget must be >= 1");
    const NormalizedConfiguration x0 = normalize(backend, start);
    long long evals = 0;
    const long long eval_cap = 3 * budget + 8;
    auto f = [&](const NormalizedConfiguration& n) {
        ++evals;
        return quotient_step(backend, collective, n);
    };

    // Brent: find the minimal period lam.
    long long power = 1, lam = 1;
    NormalizedConfiguration tortoise = x0;
    NormalizedConfiguration hare = f(x0);
    while (!(tortoise == hare)) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = f(hare);
        ++lam;
        if (lam > budget || evals > eval_cap) return std::nullopt;
    }

    // Align two pointers lam apart to find the minimal preperiod mu.
    tortoise = x0;
    hare = x0;
    for (long long i = 0; i < lam; ++i) hare = f(hare);
    long long mu = 0;
    while (!(tortoise == hare)) {
        tortoise = f(tortoise);
        hare = f(hare);
        ++mu;
        if (mu + lam > budget || evals > eval_cap) return std::nullopt;
    }
    if (mu + lam > budget) return std::nullopt;

    // Holonomy from the raw trajectory: h = v1(U)^-1 * v1(U + T).
    Configuration cur = start;
    GroupElement v1_at_u = start.positions.front();
    for (long long t = 0; t < mu + lam; ++t) {
        if (t == mu) v1_at_u = cur.positions.front();
        cur = step(backend, collective, cur);
    }
    if (mu == 0) v1_at_u = start.positions.front();
    const GroupElement h =
        backend.multiply(backend.inverse(v1_at_u), cur.positions.front());

    CycleInfo info;
    info.preperiod = mu;
    info.quotient_period = lam;
    info.holonomy = h;
    info.steps_used = evals + mu + lam;
    return info;
}

HolonomyOrder holonomy_order(const GroupBackend& backend,
                             const GroupElement& h, long long cap) {
    if (cap < 1) throw SimulationError("holonomy_order: cap must be >= 1");
    const GroupElement e = backend.identity();
    if (h == e) return {HolonomyOrder::Kind::Finite, 1};
    if (backend.family() == GroupFamily::FreeAbelian ||
        backend.family() == GroupFamily::FreeGroup)
        return {HolonomyOrder::Kind::Infinite, 0};
    GroupElement acc = h;
    for (long long k = 1; k <= cap; ++k) {
        if (acc == e) {
            if (auto m = backend.exponent(); m && *m % k != 0)
                throw SimulationError(
                    "holonomy order does not divide the group exponent");
            return {HolonomyOrder::Kind::Finite, k};
        }
        acc = backend.multiply(acc, h);
    }
    if (acc == e) {
        if (auto m = backend.exponent(); m && *m % cap != 0)
            throw SimulationError(
                "holonomy order does not divide the group exponent");
        return {HolonomyOrder::Kind::Finite, cap};
    }
    return {HolonomyOrder::Kind::CapExceeded, 0};
}

namespace {

long long minimal_state_period(const GroupBackend& backend,
                               const Collective& collective,
                               const Configuration& start, long long mu,
                               long long lam) {
    // collective-state sequence along the quotient cycle
    std::vector<CollectiveStateKey> cycle;
    cycle.reserve(lam);
    Configuration cur = start;
    for (long long t = 0; t < mu; ++t) cur = step(backend, collective, cur);
    for (long long t = 0; t < lam; ++t) {
        cycle.push_back(encode_collective_state(
            cur.states, partition_from_positions(cur.positions)));
        cur = step(backend, collective, cur);
    }
    for (long long d = 1; d <= lam; ++d) {
        if (lam % d != 0) continue;
        bool ok = true;
        for (long long t = 0; t < lam && ok; ++t)
            ok = cycle[t] == cycle[(t + d) % lam];
        if (ok) return d;
    }
    return lam;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::FiniteExploration: return "FiniteExploration";
        case Verdict::DriftUnbounded: return "DriftUnbounded";
        case Verdict::BudgetExhausted: return "BudgetExhausted";
    }
    return "?";
}

ExplorationReport certify(const GroupBackend& backend,
                          const Collective& collective,
                          const Configuration& start, long long budget) {
    ExplorationReport rep;
    auto cyc = detect_cycle(backend, collective, start, budget);
    if (!cyc) {
        rep.verdict = Verdict::BudgetExhausted;
        rep.steps_used = budget;
        return rep;
    }
    rep.preperiod = cyc->preperiod;
    rep.quotient_period = cyc->quotient_period;
    rep.holonomy = cyc->holonomy;
    rep.steps_used = cyc->steps_used;
    rep.state_period = minimal_state_period(backend, collective, start,
                                            cyc->preperiod,
                                            cyc->quotient_period);
    rep.steps_used += cyc->preperiod + cyc->quotient_period;

    long long order_cap = budget;
    if (auto m = backend.exponent())
        order_cap = *m;
    else if (auto n = backend.order())
        order_cap = static_cast<long long>(*n);
    const HolonomyOrder ord =
        holonomy_order(backend, cyc->holonomy, order_cap);
    rep.holonomy_order = ord;

    const std::size_t m = collective.size();
    if (ord.kind == HolonomyOrder::Kind::Infinite) {
        rep.verdict = Verdict::DriftUnbounded;
        // Int = finite prefix plus one period of the drift orbit
        VisitedSet visited;
        Configuration cur = start;
        for (long long t = 0;; ++t) {
            for (std::size_t i = 0; i < m; ++i) visited.insert(cur.positions[i]);
            if (t == cyc->preperiod + cyc->quotient_period) break;
            cur = step(backend, collective, cur);
        }
        rep.visited_count = static_cast<long long>(visited.size());
        rep.steps_used += cyc->preperiod + cyc->quotient_period;
        return rep;
    }
    if (ord.kind == HolonomyOrder::Kind::CapExceeded) {
        rep.verdict = Verdict::BudgetExhausted;
        return rep;
    }

    // Finite holonomy: the exact pair repeats. T_pair is the first return
    // to the configuration at t = U; it divides order * T_q.
    const long long bound = ord.order * cyc->quotient_period;
    Configuration cur = start;
    VisitedSet visited;
    for (long long t = 0; t < cyc->preperiod; ++t) {
        for (std::size_t i = 0; i < m; ++i) visited.insert(cur.positions[i]);
        cur = step(backend, collective, cur);
    }
    const Configuration at_u = cur;
    long long t_pair = 0;
    do {
        for (std::size_t i = 0; i < m; ++i) visited.insert(cur.positions[i]);
        cur = step(backend, collective, cur);
        ++t_pair;
        if (t_pair > bound)
            throw SimulationError(
                "pair period exceeds holonomy_order * quotient_period");
    } while (!cur.same_pair(at_u));
    if (bound % t_pair != 0)
        throw SimulationError(
            "pair period does not divide holonomy_order * quotient_period");

    rep.verdict = Verdict::FiniteExploration;
    rep.pair_period = t_pair;
    rep.visited_count = static_cast<long long>(visited.size());
    rep.steps_used += cyc->preperiod + t_pair;
    return rep;
}

std::string render_configuration(const GroupBackend& backend,
                                 const Configuration& config) {
    std::ostringstream os;
    os << "t=" << config.time << " q=[";
    for (std::size_t i = 0; i < config.states.size(); ++i) {
        if (i) os << ",";
        os << config.states[i];
    }
    os << "] v=[";
    for (std::size_t i = 0; i < config.positions.size(); ++i) {
        if (i) os << ",";
        os << backend.render(config.positions[i]);
    }
    os << "] F=" << render_partition(partition_from_positions(config.positions));
    return os.str();
}

}  // namespace caymaze
