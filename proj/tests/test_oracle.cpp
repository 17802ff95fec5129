#include <doctest.h>

#include "caymaze/oracle.hpp"
#include "caymaze/scenario.hpp"

using namespace caymaze;

namespace {

Collective lone(const Automaton& a, const GroupBackend& b) {
    Collective c;
    c.members = {a};
    c.start_states = {0};
    c.start_positions = {b.identity()};
    return c;
}

}  // namespace

TEST_CASE("single_automaton_oracle: 1-state machine") {
    const auto b = GroupBackend::free_abelian(1);
    const auto r =
        oracle::single_automaton_oracle(b, scenario::build_stayer(), 0);
    CHECK(r.preperiod == 0);
    CHECK(r.period == 1);
    CHECK(r.cycle_displacement == b.identity());
}

TEST_CASE("single_automaton_oracle: 3-state chain with a 2-cycle") {
    // q0 -> q1 -> q2 -> q1
    const auto b = GroupBackend::free_abelian(1);
    Automaton a;
    a.name = "chain";
    a.state_count = 3;
    a.rules = {
        {0, {PatternSlot::self()}, 1, Direction::gen(1)},
        {1, {PatternSlot::self()}, 2, Direction::gen(1)},
        {2, {PatternSlot::self()}, 1, Direction::inv_gen(1)},
    };
    const auto r = oracle::single_automaton_oracle(b, a, 0);
    CHECK(r.preperiod == 1);
    CHECK(r.period == 2);
    CHECK(r.cycle_outputs.size() == 2);
    CHECK(r.cycle_displacement == b.identity());  // +1 then -1
}

TEST_CASE("oracle equals detect_cycle on seeded single automata") {
    const auto h3 = GroupBackend::heisenberg_mod_p(3);
    const auto z44 = GroupBackend::finite_abelian({4, 4});
    for (const GroupBackend* b : {&h3, &z44}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const Collective c = scenario::random_collective(seed, 1, 6, *b);
            const auto exact = oracle::single_automaton_oracle(
                *b, c.members[0], c.start_states[0]);
            const auto cyc =
                detect_cycle(*b, c, start_configuration(c), 1000);
            REQUIRE(cyc.has_value());
            CHECK(exact.preperiod == cyc->preperiod);
            CHECK(exact.period == cyc->quotient_period);
        }
    }
}

TEST_CASE("g_T^M = identity and the M*T return on exponent backends") {
    const auto b = GroupBackend::heisenberg_mod_p(3);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Collective c = scenario::random_collective(seed, 1, 6, b);
        const auto r = oracle::single_automaton_oracle(b, c.members[0],
                                                       c.start_states[0]);
        CHECK(r.preperiod < c.members[0].state_count);
        CHECK(r.period <= c.members[0].state_count);
        CHECK(b.power(r.cycle_displacement, 3) == b.identity());
        // the walker is back at its t=U vertex after M*T more steps
        const Trace tr =
            run_trace(b, c, r.preperiod + 3 * r.period);
        CHECK(tr.configurations[r.preperiod].positions[0] ==
              tr.configurations.back().positions[0]);
    }
}

TEST_CASE("exhaustive_orbit_oracle basics") {
    const auto z5 = GroupBackend::finite_abelian({5});
    const auto stay = lone(scenario::build_stayer(), z5);
    auto r = oracle::exhaustive_orbit_oracle(z5, stay,
                                             start_configuration(stay));
    REQUIRE(r.has_value());
    CHECK(r->preperiod == 0);
    CHECK(r->pair_period == 1);

    const auto drift = lone(scenario::build_drifter(1), z5);
    r = oracle::exhaustive_orbit_oracle(z5, drift,
                                        start_configuration(drift));
    REQUIRE(r.has_value());
    CHECK(r->preperiod == 0);
    CHECK(r->pair_period == 5);

    // cap smaller than the orbit
    CHECK(oracle::exhaustive_orbit_oracle(z5, drift,
                                          start_configuration(drift), 3) ==
          std::nullopt);
}

TEST_CASE("orbit oracle agrees with certify on seeded m=2 collectives") {
    const auto b = GroupBackend::heisenberg_mod_p(3);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Collective c = scenario::random_collective(seed, 2, 3, b);
        const auto exact = oracle::exhaustive_orbit_oracle(
            b, c, start_configuration(c));
        REQUIRE(exact.has_value());
        const auto rep = certify(b, c, start_configuration(c), 1'000'000);
        REQUIRE(rep.verdict == Verdict::FiniteExploration);
        CHECK(exact->preperiod == rep.preperiod);
        CHECK(exact->pair_period == *rep.pair_period);
        CHECK((3 * *rep.quotient_period) % exact->pair_period == 0);
    }
}

TEST_CASE("separation_check") {
    const auto b = GroupBackend::free_abelian(1);

    // two stayers apart: never meet
    Collective c;
    c.members = {scenario::build_stayer(), scenario::build_stayer()};
    for (auto& m : c.members)
        m.rules[0].pattern = {PatternSlot::any(), PatternSlot::any()};
    c.members[0].rules[0].pattern[0] = PatternSlot::self();
    c.members[1].rules[0].pattern[1] = PatternSlot::self();
    c.start_states = {0, 0};
    c.start_positions = {b.identity(), GroupElement(GroupElement::Coords{5})};
    const Trace tr = run_trace(b, c, 50);
    const auto res =
        oracle::separation_check(tr.configurations, {0}, {1}, 10);
    CHECK(res.holds);
    CHECK(res.window_found);

    // constructed collision: two drifters approaching each other
    Collective crash;
    crash.members = {scenario::build_drifter(1), scenario::build_drifter(1)};
    crash.members[1].rules[0].move = Direction::inv_gen(1);
    for (auto& m : crash.members)
        m.rules[0].pattern = {PatternSlot::any(), PatternSlot::any()};
    crash.members[0].rules[0].pattern[0] = PatternSlot::self();
    crash.members[1].rules[0].pattern[1] = PatternSlot::self();
    crash.start_states = {0, 0};
    crash.start_positions = {b.identity(),
                             GroupElement(GroupElement::Coords{20})};
    const Trace tr2 = run_trace(b, crash, 30);  // they meet at t=10
    const auto res2 =
        oracle::separation_check(tr2.configurations, {0}, {1}, 5);
    CHECK(!res2.holds);
    CHECK(res2.violated_at == 10);

    // window longer than the collision-free prefix: nothing is asserted
    const auto res3 =
        oracle::separation_check(tr2.configurations, {0}, {1}, 25);
    CHECK(res3.holds);
    CHECK(!res3.window_found);
}

TEST_CASE("empirical separation lemma on heisenberg pairs") {
    // h = max(O_1,O_1) + M^2*O_1*O_1 + 1 with O_1 = Q_A = 3, M = 3
    const long long h_window = 3 + 9 * 3 * 3 + 1;
    const auto b = GroupBackend::heisenberg_mod_p(3);
    int windows_seen = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Collective c = scenario::random_collective(seed, 2, 3, b);
        // spread the two automata so clean windows actually occur
        c.start_positions[1] = GroupElement(GroupElement::Coords{1, 1, 1});
        const Trace tr = run_trace(b, c, 2000);
        const auto res =
            oracle::separation_check(tr.configurations, {0}, {1}, h_window);
        CHECK(res.holds);
        if (res.window_found) ++windows_seen;
    }
    CHECK(windows_seen > 0);
}
