#pragma once

#include <utility>
#include <vector>

#include "treewalk/measure.hpp"

namespace treewalk {

// Integer height profile g(0..n). An interval [a,b] (of cardinality >= 2) is
// a vertex of the cavern forest iff g(t) >= g(a) > g(b) for all a <= t < b:
// flood the profile with water and [a,b] is a basin whose wall is at height
// g(a) and whose drain sits at b.
struct CavernFunction {
    std::vector<int> g;
};

struct CavernTree {
    struct Node {
        int a = 0, b = 0;            // closed index interval [a,b]
        int parent = -1;             // immediate enclosing interval
        std::vector<int> children;   // immediately enclosed intervals
    };
    std::vector<Node> nodes;  // sorted by (a, b)
    std::vector<int> roots;   // maximal intervals (a single root for path profiles)

    int find(int a, int b) const;  // node index or -1
    int depth_below(int node, int ancestor) const;  // edges on the up-path, -1 if none
};

// all admissible intervals with immediate-inclusion edges
CavernTree build_cavern(const CavernFunction& f);

// the children of an admissible interval [a,b], leftmost first: starting at
// i_0 = a+1, each child runs from i_s to i_{s+1} = min{t > i_s : g(t) < g(i_s)}
// until the chain reaches b
std::vector<std::pair<int, int>> decompose(const CavernFunction& f, int a, int b);

// sources of directed length-m paths ending at the root interval [0,n]
// (depth-m descendants of the root), sorted by (a,b)
std::vector<std::pair<int, int>> theta_m(const CavernTree& t, int m);

// Cavern tree of an admissible restricted path: heights g(i) = d(w_i, y);
// every interval [i,j] carries the label (w_i, w_j) anchored at the vertex
// y_I of [w_i, y] at distance k+1 from w_i.
struct LabeledCavernTree {
    CavernTree tree;
    struct Label {
        Word a, b, y, x;          // the element (a,b)_{x,y} in place
        Word canon_a, canon_b;    // left-translated so the anchor is eps
    };
    std::vector<Label> labels;  // parallel to tree.nodes
};

LabeledCavernTree cavern_of_path(const StepMeasure& m, const std::vector<Word>& path,
                                 const Word& y);

}  // namespace treewalk
