#include <doctest.h>

#include <random>
#include <unordered_set>

#include "caymaze/automaton.hpp"
#include "caymaze/scenario.hpp"

using namespace caymaze;

TEST_CASE("partition_from_positions") {
    const auto b = GroupBackend::free_abelian(1);
    const GroupElement zero(GroupElement::Coords{0});
    const GroupElement one(GroupElement::Coords{1});
    CHECK(partition_from_positions({zero, one,
                                    GroupElement(GroupElement::Coords{2})}) ==
          std::vector<int>{0, 1, 2});
    CHECK(partition_from_positions({zero, one, zero}) ==
          std::vector<int>{0, 1, 0});
    CHECK(partition_from_positions({zero}) == std::vector<int>{0});
    (void)b;
}

TEST_CASE("observe: co-located states, theta elsewhere and at self") {
    // m=3, automata 1 and 3 together
    const std::vector<int> leaders{0, 1, 0};
    const std::vector<int> states{4, 5, 6};
    const Observation o1 = observe(0, states, leaders);
    CHECK(o1.slots == std::vector<int>{Observation::kTheta, Observation::kTheta,
                                       6});
    const Observation o2 = observe(1, states, leaders);
    CHECK(o2.slots == std::vector<int>{Observation::kTheta, Observation::kTheta,
                                       Observation::kTheta});
    // m=2 both together, observer is automaton 2
    const Observation o3 = observe(1, {7, 8}, {0, 0});
    CHECK(o3.slots == std::vector<int>{7, Observation::kTheta});
}

TEST_CASE("lookup_transition: first match wins") {
    Automaton a;
    a.name = "t";
    a.state_count = 2;
    a.rules = {
        {0,
         {PatternSlot::self(), PatternSlot::exact(0)},
         1,
         Direction::gen(1)},
        {0, {PatternSlot::self(), PatternSlot::any()}, 0, Direction::stay()},
    };
    Observation meeting;
    meeting.slots = {Observation::kTheta, 0};
    Observation alone;
    alone.slots = {Observation::kTheta, Observation::kTheta};

    auto r1 = lookup_transition(a, 0, meeting);
    REQUIRE(r1.has_value());
    CHECK(r1->next_state == 1);
    CHECK(r1->move == Direction::gen(1));

    auto r2 = lookup_transition(a, 0, alone);
    REQUIRE(r2.has_value());
    CHECK(r2->next_state == 0);
    CHECK(r2->move.is_stay());

    CHECK(lookup_transition(a, 1, alone) == std::nullopt);
}

TEST_CASE("admissibility_check") {
    const auto b = GroupBackend::free_abelian(2);

    Collective good;
    good.members = {scenario::build_stayer()};
    good.start_states = {0};
    good.start_positions = {b.identity()};
    CHECK(admissibility_check(good, b).valid());

    Collective bad_dir = good;
    bad_dir.members[0].rules[0].move = Direction::gen(3);
    const auto rep = admissibility_check(bad_dir, b);
    REQUIRE(!rep.valid());
    CHECK(rep.violations.front().find("direction out of range") !=
          std::string::npos);

    // missing (state, observation) combination: two states, rules for one
    Collective not_total = good;
    not_total.members[0].state_count = 2;
    const auto rep2 = admissibility_check(not_total, b);
    REQUIRE(!rep2.valid());
    CHECK(rep2.violations.front().find("not total") != std::string::npos);
}

TEST_CASE("collective state keys distinguish partitions") {
    const auto k1 = encode_collective_state({0, 0}, {0, 1});
    const auto k2 = encode_collective_state({0, 0}, {0, 0});
    const auto k3 = encode_collective_state({0, 0}, {0, 1});
    CHECK(!(k1 == k2));
    CHECK(k1 == k3);
    CHECK(k1.hash() == k3.hash());
}

TEST_CASE("reachable collective-state count stays under (Q_A m)^m") {
    // all (state vector, partition) pairs for m=2, |Q|=2 each
    std::unordered_set<CollectiveStateKey, CollectiveStateKeyHash> keys;
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2)
            for (const auto& leaders :
                 {std::vector<int>{0, 0}, std::vector<int>{0, 1}})
                keys.insert(encode_collective_state({q1, q2}, leaders));
    CHECK(keys.size() == 8);
    CHECK(keys.size() <= 16);  // (2*2)^2
}

TEST_CASE("partition validity properties on random position vectors") {
    const auto b = GroupBackend::finite_abelian({3});
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long long> pick(0, 2);
    for (int it = 0; it < 200; ++it) {
        std::vector<GroupElement> positions;
        const int m = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < m; ++i)
            positions.push_back(GroupElement(GroupElement::Coords{pick(rng)}));
        const auto leaders = partition_from_positions(positions);
        for (int i = 0; i < m; ++i) {
            CHECK(leaders[leaders[i]] == leaders[i]);
            CHECK(leaders[i] <= i);
            // same leader iff same position
            for (int j = 0; j < m; ++j)
                CHECK((leaders[i] == leaders[j]) ==
                      (positions[i] == positions[j]));
        }
        // observation self-slot is theta for every member
        std::vector<int> states(m, 0);
        for (int i = 0; i < m; ++i)
            CHECK(observe(i, states, leaders).is_theta(i));
    }
}
