#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "treewalk/group.hpp"
#include "treewalk/rational.hpp"

namespace treewalk {

// Finitely supported step distribution mu on the group; the walk moves
// x -> x * s with probability mu(s). Left translations preserve the kernel
// p(x,y) = mu(x^-1 y), so everything downstream can be computed at epsilon.
struct StepMeasure {
    GroupSpec group;
    std::vector<std::pair<Word, Rat>> atoms;  // sorted by (length, lex), weights > 0
    int range_k = 0;                          // max |s| over the support

    static StepMeasure make(const GroupSpec& g, std::vector<std::pair<Word, Rat>> entries);

    const Rat& mu(const Word& s) const;
    Rat p(const Word& x, const Word& y) const;  // mu(x^-1 y)

    // all admissible successors x*s with their weights
    std::vector<std::pair<Word, Rat>> steps_from(const Word& x) const;

    // mu(s) = f(|s|) with full spheres in the support (needed for the
    // distance-chain oracle)
    bool is_radial() const;

  private:
    std::unordered_map<Word, Rat> lookup_;
    Rat zero_;
};

enum class Irreducibility { Yes, No, Inconclusive };

struct KernelInfo {
    int range_k = 0;
    int period_d = 0;
    Irreducibility irreducible = Irreducibility::Inconclusive;
};

// Semigroup reachability test. Reaching every vertex of ball(eps, k+1) from
// eps certifies irreducibility exactly (longer words split into blocks of
// length <= k+1 that concatenate without cancellation). "No" is returned when
// the walk provably never returns to eps within the searched depth; otherwise
// "Inconclusive".
Irreducibility check_irreducible(const StepMeasure& m, int depth_D = -1);

// gcd of admissible loop lengths at eps; computed from step-graph potentials
// on a region grown until the gcd stabilizes. Requires irreducibility.
int period(const StepMeasure& m);

// d(x,y) mod period: the residue class of every admissible path length x->y
int cocycle_r(const StepMeasure& m, const Word& x, const Word& y, int period_d);

KernelInfo kernel_info(const StepMeasure& m);

}  // namespace treewalk
