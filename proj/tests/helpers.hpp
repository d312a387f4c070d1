#pragma once

#include <string>
#include <vector>

#include "treewalk/cavern.hpp"
#include "treewalk/config.hpp"
#include "treewalk/curve.hpp"
#include "treewalk/digraph.hpp"
#include "treewalk/errors.hpp"
#include "treewalk/group.hpp"
#include "treewalk/measure.hpp"
#include "treewalk/oracle.hpp"
#include "treewalk/psi.hpp"
#include "treewalk/xi.hpp"

namespace tw = treewalk;

// ---- the five walks used throughout the suite -------------------------------
//
// nn3: nearest-neighbour on (Z/2Z)*(Z/2Z)*(Z/2Z), everything has a closed form
// w1..w3: range-2 walks on the same group exercising all digraph shapes
// f2: nearest-neighbour on the free group F2 (period 1, valence 4)

inline tw::GroupSpec group_abc() {
    return tw::GroupSpec::make({{'a', true}, {'b', true}, {'c', true}});
}

inline tw::GroupSpec group_f2() {
    return tw::GroupSpec::make({{'x', false}, {'y', false}});
}

inline tw::Word W(const tw::GroupSpec& g, const std::string& text) {
    return tw::parse_word(g, text);
}

inline tw::StepMeasure measure_of(const tw::GroupSpec& g,
                                  const std::vector<std::pair<std::string, tw::Rat>>& entries) {
    std::vector<std::pair<tw::Word, tw::Rat>> atoms;
    for (const auto& [text, wt] : entries) atoms.emplace_back(W(g, text), wt);
    return tw::StepMeasure::make(g, std::move(atoms));
}

inline tw::StepMeasure walk_nn3() {
    return measure_of(group_abc(),
                      {{"a", tw::Rat(1, 3)}, {"b", tw::Rat(1, 3)}, {"c", tw::Rat(1, 3)}});
}

inline tw::StepMeasure walk_w1() {
    return measure_of(group_abc(), {{"a", tw::Rat(1, 4)},
                                    {"b", tw::Rat(1, 4)},
                                    {"c", tw::Rat(1, 4)},
                                    {"ab", tw::Rat(1, 4)}});
}

inline tw::StepMeasure walk_w2() {
    return measure_of(group_abc(),
                      {{"a", tw::Rat(1, 3)}, {"ac", tw::Rat(1, 3)}, {"ba", tw::Rat(1, 3)}});
}

inline tw::StepMeasure walk_w3() {
    return measure_of(group_abc(),
                      {{"a", tw::Rat(1, 3)}, {"ab", tw::Rat(1, 3)}, {"ac", tw::Rat(1, 3)}});
}

inline tw::StepMeasure walk_f2() {
    return measure_of(group_f2(), {{"x", tw::Rat(1, 4)},
                                   {"x^", tw::Rat(1, 4)},
                                   {"y", tw::Rat(1, 4)},
                                   {"y^", tw::Rat(1, 4)}});
}

// true iff `path` realizes the orbit (a,b) in the frame y = eps: starts at a,
// ends at b, every step has positive weight, and every vertex but the last
// stays outside ball(eps, k)
inline bool admissible_for_orbit(const tw::StepMeasure& m, const std::vector<tw::Word>& path,
                                 const tw::Word& a, const tw::Word& b) {
    if (path.empty() || path.front() != a || path.back() != b) return false;
    const int k = m.range_k;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        if (static_cast<int>(path[i].size()) <= k) return false;
        if (m.p(path[i], path[i + 1]) == 0) return false;
    }
    return static_cast<int>(path.back().size()) <= k && !path.back().empty();
}
