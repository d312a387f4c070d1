#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "treewalk/psi.hpp"

namespace treewalk {

// dependency digraph: edge (source, aim) iff J[source] is a factor of some
// monomial of the component psi(.)(aim)
struct Digraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // sorted, deduplicated
    std::vector<std::vector<int>> out, in;   // adjacency by source / by aim
};

Digraph build_digraph(const PsiSystem& ps);

struct Condensation {
    std::vector<int> comp;                      // orbit id -> SCC index (topological, sink last)
    std::vector<std::vector<int>> members;      // SCC index -> sorted orbit ids
    std::vector<std::pair<int, int>> dag_edges;  // between SCC indices, sorted
    std::vector<std::vector<bool>> reach;       // reflexive reachability between SCCs
    int sink = -1;                              // the unique absorbing SCC

    int n_sccs() const { return static_cast<int>(members.size()); }
    bool preceq(int alpha, int beta) const { return reach[alpha][beta]; }
};

// SCC condensation; throws InvariantViolation("absorbency violated") unless
// there is exactly one sink SCC and every vertex reaches it
Condensation condense(const Digraph& d);

// max excursion of chosen connecting paths over edge-orbit representatives,
// plus k; heights above this bound certify unbounded excursions
int stagnation_bound(const StepMeasure& m);

struct OrbitClass {
    bool infinite = false;
    int level = 0;  // sup of excursions when finite
};

// excursion-based classification, independent of the digraph: infinite iff
// some restricted path for the orbit reaches height > M
OrbitClass classify_orbit(const XiSystem& xs, int orbit, int M);

void emit_dot(const PsiSystem& ps, const Digraph& d, const Condensation& c, std::ostream& os);

// sandwich witness: for ANY restricted path gamma' of the source orbit (in its
// canonical frame), concat(gamma1, anchor.gamma', gamma2) is a restricted path
// for the aim orbit (in its canonical frame)
struct EcluseWitness {
    bool connected = false;
    std::vector<Word> gamma1, gamma2;
    Word anchor;
};

EcluseWitness ecluse_check(const PsiSystem& ps, const Digraph& d, int source, int aim);

struct RealizedPath {
    std::vector<Word> gamma;                    // admissible path for the aim orbit, y = eps
    std::vector<std::pair<int, int>> intervals;  // slot [start,end] per level, root (aim) first
    std::vector<int> orbit_ids;                 // orbit per level, root (aim) first
};

// orbit_path lists orbit ids from source to aim; each consecutive pair must be
// an edge of the digraph
RealizedPath realize_digraph_path(const PsiSystem& ps, const std::vector<int>& orbit_path);

}  // namespace treewalk
