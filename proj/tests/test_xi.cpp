#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

using tw::Word;

TEST_CASE("nearest-neighbour orbits are the six letter pairs") {
    tw::XiSystem xs = tw::enumerate_xi_orbits(walk_nn3());
    const tw::GroupSpec& g = xs.mu.group;
    CHECK(xs.k == 1);
    REQUIRE(xs.orbits.size() == 6);
    // from xy the walk can only re-enter the ball at x, so the orbits are
    // exactly (xy, x), ordered by a
    std::vector<std::pair<std::string, std::string>> expect{
        {"ab", "a"}, {"ac", "a"}, {"ba", "b"}, {"bc", "b"}, {"ca", "c"}, {"cb", "c"}};
    for (size_t i = 0; i < expect.size(); ++i) {
        CHECK(xs.orbits[i].id == static_cast<int>(i));
        CHECK(xs.orbits[i].a == W(g, expect[i].first));
        CHECK(xs.orbits[i].b == W(g, expect[i].second));
        CHECK(xs.orbits[i].x == W(g, expect[i].second));  // x is the letter toward eps
    }
    CHECK(xs.orbit_id(W(g, "ab"), W(g, "a")) == 0);
    CHECK(xs.orbit_id(W(g, "ab"), W(g, "b")) == -1);
}

TEST_CASE("orbit counts across the walks") {
    CHECK(tw::enumerate_xi_orbits(walk_w1()).orbits.size() == 14);
    CHECK(tw::enumerate_xi_orbits(walk_w2()).orbits.size() == 16);
    CHECK(tw::enumerate_xi_orbits(walk_w3()).orbits.size() == 16);
    CHECK(tw::enumerate_xi_orbits(walk_f2()).orbits.size() == 12);
}

TEST_CASE("every orbit ships a valid witness path") {
    for (const tw::StepMeasure& m :
         {walk_nn3(), walk_w1(), walk_w2(), walk_w3(), walk_f2()}) {
        tw::XiSystem xs = tw::enumerate_xi_orbits(m);
        REQUIRE(!xs.orbits.empty());
        for (const tw::XiOrbit& o : xs.orbits) {
            CHECK(static_cast<int>(o.a.size()) == xs.k + 1);
            CHECK(static_cast<int>(o.b.size()) <= xs.k);
            CHECK(!o.b.empty());
            CHECK(o.x == Word(1, o.a[0]));
            const std::vector<Word>& path = xs.witness[static_cast<size_t>(o.id)];
            CHECK(admissible_for_orbit(m, path, o.a, o.b));
        }
    }
}

TEST_CASE("orbit lookup is invariant under left translation") {
    tw::StepMeasure m = walk_w2();
    tw::XiSystem xs = tw::enumerate_xi_orbits(m);
    const tw::GroupSpec& g = m.group;
    std::vector<Word> shifts{W(g, "a"), W(g, "cb"), W(g, "bac"), tw::kEpsilon};
    for (const tw::XiOrbit& o : xs.orbits)
        for (const Word& t : shifts) {
            int found = xs.orbit_of(tw::multiply(g, t, o.a), tw::multiply(g, t, o.b), t);
            CHECK(found == o.id);
        }
}

TEST_CASE("crossing tuples of the nearest-neighbour walk") {
    tw::StepMeasure m = walk_nn3();
    tw::XiSystem xs = tw::enumerate_xi_orbits(m);
    const tw::GroupSpec& g = m.group;

    // one descent record: ba -> b is itself the only tuple
    std::vector<tw::CrossingTuple> direct =
        tw::crossing_tuples(xs, W(g, "ba"), W(g, "b"), tw::kEpsilon);
    REQUIRE(direct.size() == 1);
    CHECK(direct[0].vertices == std::vector<Word>{W(g, "ba"), W(g, "b")});
    REQUIRE(direct[0].factors.size() == 1);
    CHECK(direct[0].factors[0] == xs.orbit_id(W(g, "ba"), W(g, "b")));
    CHECK(direct[0].anchors == std::vector<Word>{tw::kEpsilon});

    // two records: bab must first descend to ba, then to b
    std::vector<tw::CrossingTuple> two =
        tw::crossing_tuples(xs, W(g, "bab"), W(g, "b"), tw::kEpsilon);
    REQUIRE(two.size() == 1);
    CHECK(two[0].vertices == std::vector<Word>{W(g, "bab"), W(g, "ba"), W(g, "b")});
    REQUIRE(two[0].factors.size() == 2);
    CHECK(two[0].factors[0] == xs.orbit_id(W(g, "ab"), W(g, "a")));
    CHECK(two[0].factors[1] == xs.orbit_id(W(g, "ba"), W(g, "b")));
    CHECK(two[0].anchors == std::vector<Word>{W(g, "b"), tw::kEpsilon});

    CHECK_THROWS_AS(tw::crossing_tuples(xs, W(g, "a"), W(g, "b"), tw::kEpsilon),
                    tw::ComputeError);
    CHECK_THROWS_AS(tw::crossing_tuples(xs, W(g, "ba"), W(g, "ab"), tw::kEpsilon),
                    tw::ComputeError);
}

TEST_CASE("tuple anchors sit on the geodesic toward y, in order") {
    tw::StepMeasure m = walk_w3();
    tw::XiSystem xs = tw::enumerate_xi_orbits(m);
    const tw::GroupSpec& g = m.group;
    int checked = 0;
    for (const Word& c : tw::ball(g, tw::kEpsilon, 4)) {
        if (static_cast<int>(c.size()) <= xs.k) continue;
        for (const Word& b : tw::ball(g, tw::kEpsilon, xs.k)) {
            if (b.empty()) continue;
            for (const tw::CrossingTuple& t : tw::crossing_tuples(xs, c, b, tw::kEpsilon)) {
                REQUIRE(t.vertices.size() == t.factors.size() + 1);
                REQUIRE(t.anchors.size() == t.factors.size());
                CHECK(t.vertices.front() == c);
                CHECK(t.vertices.back() == b);
                for (size_t j = 0; j < t.anchors.size(); ++j) {
                    CHECK(tw::on_geodesic(g, c, t.anchors[j], tw::kEpsilon));
                    CHECK(t.indices[j] == tw::distance(g, c, t.anchors[j]));
                    // anchor at distance k+1 from the previous vertex
                    CHECK(tw::distance(g, t.vertices[j], t.anchors[j]) == xs.k + 1);
                    // the j-th factor is the canonicalized pair of vertices
                    int id = xs.orbit_of(t.vertices[j], t.vertices[j + 1], t.anchors[j]);
                    CHECK(id == t.factors[j]);
                    if (j > 0) CHECK(t.indices[j] > t.indices[j - 1]);
                }
                // heights strictly descend along the records
                for (size_t j = 0; j + 1 < t.vertices.size(); ++j)
                    CHECK(tw::distance(g, t.vertices[j + 1], tw::kEpsilon) <
                          tw::distance(g, t.vertices[j], tw::kEpsilon));
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("bounded search agrees with the exact emptiness closure") {
    for (const tw::StepMeasure& m : {walk_w2(), walk_w3()}) {
        tw::XiSystem xs = tw::enumerate_xi_orbits(m);
        const tw::GroupSpec& g = m.group;
        const int D = tw::stagnation_bound(m) + 2 * xs.k + 1;
        int disagreements = 0, pairs = 0;
        for (const Word& c : tw::ball(g, tw::kEpsilon, xs.k + 2)) {
            if (static_cast<int>(c.size()) <= xs.k) continue;
            for (const Word& b : tw::ball(g, tw::kEpsilon, xs.k)) {
                if (b.empty()) continue;
                ++pairs;
                bool fast = tw::restricted_reachable(m, c, b, tw::kEpsilon, D);
                bool exact = tw::restricted_nonempty(xs, c, b, tw::kEpsilon);
                if (fast != exact) ++disagreements;
            }
        }
        CHECK(disagreements == 0);
        CHECK(pairs > 50);
    }
}

TEST_CASE("orbit enumeration matches the bounded search on the defining pairs") {
    for (const tw::StepMeasure& m : {walk_nn3(), walk_w1(), walk_w2(), walk_f2()}) {
        tw::XiSystem xs = tw::enumerate_xi_orbits(m);
        const tw::GroupSpec& g = m.group;
        const int D = tw::stagnation_bound(m) + 2 * xs.k + 1;
        std::set<std::pair<Word, Word>> enumerated;
        for (const tw::XiOrbit& o : xs.orbits) enumerated.emplace(o.a, o.b);
        std::set<std::pair<Word, Word>> searched;
        for (const Word& a : tw::ball(g, tw::kEpsilon, xs.k + 1)) {
            if (static_cast<int>(a.size()) != xs.k + 1) continue;
            for (const Word& b : tw::ball(g, tw::kEpsilon, xs.k)) {
                if (b.empty()) continue;
                if (tw::restricted_reachable(m, a, b, tw::kEpsilon, D)) searched.emplace(a, b);
            }
        }
        CHECK(enumerated == searched);
    }
}
