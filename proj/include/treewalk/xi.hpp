#pragma once

#include <map>
#include <utility>
#include <vector>

#include "treewalk/measure.hpp"

namespace treewalk {

// An element (a,b)_{x,y}: d(a,y) = k+1, b in ball(y,k), x the neighbour of y
// on [a,y]; it stands for the restricted paths a -> b whose vertices stay
// outside ball(y,k) until the final one. Left translations act freely, so a
// canonical representative has y = eps; orbits are (a,b) pairs with |a| = k+1.
struct XiOrbit {
    int id = 0;
    Word a, b;
    Word x;  // length-1 prefix of a
};

// One crossing tuple (c_0, ..., c_l): the successive descent records of a
// restricted path from c_0 to b = c_l. Factor j is the element
// (c_{j-1}, c_j) anchored at the vertex of [c_{j-1}, y] at distance k+1 from
// c_{j-1}; all anchors lie on [c_0, y].
struct CrossingTuple {
    std::vector<Word> vertices;   // c_0..c_l, in the caller's frame
    std::vector<Word> anchors;    // y_1..y_l
    std::vector<int> indices;     // position of each anchor on [c_0, y]
    std::vector<int> factors;     // orbit ids of the canonicalized factors
};

struct XiSystem {
    StepMeasure mu;
    int k = 0;
    std::vector<XiOrbit> orbits;               // ordered by (|a|,a,|b|,b)
    std::map<std::pair<Word, Word>, int> ids;  // canonical (a,b) -> orbit id
    std::vector<std::vector<Word>> witness;    // one admissible path per orbit (y = eps)

    int orbit_id(const Word& canon_a, const Word& canon_b) const;  // -1 if absent
    // canonicalize (a,b)_y and look it up
    int orbit_of(const Word& a, const Word& b, const Word& y) const;
};

// Bounded BFS over the complement of ball(y,k), searched inside ball(y,D):
// true iff some admissible path a -> b with all vertices except the final one
// outside the ball is found there. With D = stagnation bound + 2k + 1 a
// negative answer is treated as definitive; enumerate_xi_orbits additionally
// certifies emptiness by an exact closure, and the two are compared in tests.
bool restricted_reachable(const StepMeasure& m, const Word& a, const Word& b,
                          const Word& y, int truncation_D);

// All nonempty orbits, found as a least fixed point: an orbit is nonempty iff
// a direct step a -> b exists, or some first step a -> c continues by a
// crossing tuple all of whose factors are already known nonempty. Witness
// paths are assembled along the way.
XiSystem enumerate_xi_orbits(const StepMeasure& m);

// every crossing tuple from c to b relative to ball(y,k), built by descending
// record candidates; factors are restricted to nonempty orbits
std::vector<CrossingTuple> crossing_tuples(const XiSystem& xs, const Word& c,
                                           const Word& b, const Word& y);

// exact counterpart of restricted_reachable for c outside / b inside the ball:
// nonempty iff some crossing tuple from c to b exists (early exit, no radius cap)
bool restricted_nonempty(const XiSystem& xs, const Word& c, const Word& b, const Word& y);

}  // namespace treewalk
