#include "treewalk/cavern.hpp"

#include <algorithm>

#include "treewalk/errors.hpp"

namespace treewalk {

int CavernTree::find(int a, int b) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), std::make_pair(a, b),
                               [](const Node& n, const std::pair<int, int>& key) {
                                   return std::make_pair(n.a, n.b) < key;
                               });
    if (it == nodes.end() || it->a != a || it->b != b) return -1;
    return static_cast<int>(it - nodes.begin());
}

int CavernTree::depth_below(int node, int ancestor) const {
    int d = 0;
    while (node >= 0) {
        if (node == ancestor) return d;
        node = nodes[static_cast<size_t>(node)].parent;
        ++d;
    }
    return -1;
}

CavernTree build_cavern(const CavernFunction& f) {
    const std::vector<int>& g = f.g;
    const int n = static_cast<int>(g.size());
    CavernTree t;
    if (n == 0) return t;
    // each left endpoint a owns at most one admissible interval: [a, t] with
    // t the first index after a where g drops strictly below g(a)
    std::vector<int> nsm(static_cast<size_t>(n), -1);
    std::vector<int> stack;
    for (int i = 0; i < n; ++i) {
        while (!stack.empty() && g[static_cast<size_t>(stack.back())] > g[static_cast<size_t>(i)]) {
            nsm[static_cast<size_t>(stack.back())] = i;
            stack.pop_back();
        }
        stack.push_back(i);
    }
    for (int a = 0; a < n; ++a)
        if (nsm[static_cast<size_t>(a)] >= 0) {
            CavernTree::Node node;
            node.a = a;
            node.b = nsm[static_cast<size_t>(a)];
            t.nodes.push_back(node);
        }
    // nodes are sorted by a (unique per a); nest them with a sweep
    std::vector<int> open;
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        CavernTree::Node& node = t.nodes[i];
        while (!open.empty() && t.nodes[static_cast<size_t>(open.back())].b <= node.a)
            open.pop_back();
        if (!open.empty() && t.nodes[static_cast<size_t>(open.back())].b >= node.b) {
            node.parent = open.back();
            t.nodes[static_cast<size_t>(open.back())].children.push_back(static_cast<int>(i));
        }
        open.push_back(static_cast<int>(i));
    }
    for (size_t i = 0; i < t.nodes.size(); ++i)
        if (t.nodes[i].parent < 0) t.roots.push_back(static_cast<int>(i));
    return t;
}

std::vector<std::pair<int, int>> decompose(const CavernFunction& f, int a, int b) {
    const std::vector<int>& g = f.g;
    const int n = static_cast<int>(g.size());
    if (a < 0 || b >= n || a >= b)
        throw ComputeError("decompose: bad interval");
    for (int t = a; t < b; ++t)
        if (g[static_cast<size_t>(t)] < g[static_cast<size_t>(a)])
            throw ComputeError("decompose: interval not admissible (interior dips below wall)");
    if (g[static_cast<size_t>(b)] >= g[static_cast<size_t>(a)])
        throw ComputeError("decompose: interval not admissible (no drop at the drain)");
    std::vector<std::pair<int, int>> children;
    int i = a + 1;
    while (i < b) {
        int t = i + 1;
        while (g[static_cast<size_t>(t)] >= g[static_cast<size_t>(i)]) ++t;  // exists: g(b) < g(i)
        children.emplace_back(i, t);
        i = t;
    }
    return children;
}

std::vector<std::pair<int, int>> theta_m(const CavernTree& t, int m) {
    if (t.roots.size() != 1)
        throw ComputeError("theta_m: profile has no unique root interval");
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < t.nodes.size(); ++i)
        if (t.depth_below(static_cast<int>(i), t.roots[0]) == m)
            out.emplace_back(t.nodes[i].a, t.nodes[i].b);
    std::sort(out.begin(), out.end());
    return out;
}

LabeledCavernTree cavern_of_path(const StepMeasure& m, const std::vector<Word>& path,
                                 const Word& y) {
    const GroupSpec& g = m.group;
    const int k = m.range_k;
    if (path.size() < 2) throw ComputeError("cavern_of_path: need at least one step");
    if (distance(g, path.front(), y) != k + 1)
        throw ComputeError("cavern_of_path: d(start, y) must be k+1");
    if (distance(g, path.back(), y) > k)
        throw ComputeError("cavern_of_path: path must end inside ball(y,k)");
    CavernFunction f;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i + 1 < path.size() && distance(g, path[i], y) <= k)
            throw ComputeError("cavern_of_path: path enters ball(y,k) before its final vertex");
        if (i > 0 && m.p(path[i - 1], path[i]) == 0)
            throw ComputeError("cavern_of_path: step " + std::to_string(i) + " not admissible");
        f.g.push_back(distance(g, path[i], y));
    }
    LabeledCavernTree out;
    out.tree = build_cavern(f);
    out.labels.resize(out.tree.nodes.size());
    for (size_t i = 0; i < out.tree.nodes.size(); ++i) {
        const CavernTree::Node& node = out.tree.nodes[i];
        LabeledCavernTree::Label& lab = out.labels[i];
        lab.a = path[static_cast<size_t>(node.a)];
        lab.b = path[static_cast<size_t>(node.b)];
        std::vector<Word> geo = geodesic(g, lab.a, y);
        lab.y = geo[static_cast<size_t>(k + 1)];
        lab.x = geo[static_cast<size_t>(k)];
        const Word t = inverse_word(g, lab.y);
        lab.canon_a = multiply(g, t, lab.a);
        lab.canon_b = multiply(g, t, lab.b);
    }
    return out;
}

}  // namespace treewalk
