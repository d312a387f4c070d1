#include "treewalk/digraph.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>
#include <unordered_set>

#include "treewalk/errors.hpp"

namespace treewalk {

Digraph build_digraph(const PsiSystem& ps) {
    Digraph d;
    d.n = ps.size();
    std::set<std::pair<int, int>> edges;
    for (int aim = 0; aim < ps.size(); ++aim)
        for (const Monomial& m : ps.comps[aim].monos)
            for (int v : m.vars) edges.insert({v, aim});
    d.edges.assign(edges.begin(), edges.end());
    d.out.resize(d.n);
    d.in.resize(d.n);
    for (auto& [s, a] : d.edges) {
        d.out[s].push_back(a);
        d.in[a].push_back(s);
    }
    return d;
}

namespace {

// iterative Tarjan; returns comp ids with SCCs numbered in reverse topological
// order (sinks get low numbers)
std::vector<int> tarjan_scc(const Digraph& d, int& n_sccs) {
    const int n = d.n;
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    n_sccs = 0;

    struct Frame {
        int v;
        size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.child < d.out[f.v].size()) {
                int w = d.out[f.v][f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = n_sccs;
                        if (w == f.v) break;
                    }
                    ++n_sccs;
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return comp;
}

}  // namespace

Condensation condense(const Digraph& d) {
    int n_sccs = 0;
    std::vector<int> rev = tarjan_scc(d, n_sccs);
    Condensation c;
    // renumber into topological order, sink last
    c.comp.resize(d.n);
    for (int v = 0; v < d.n; ++v) c.comp[v] = n_sccs - 1 - rev[v];
    c.members.resize(n_sccs);
    for (int v = 0; v < d.n; ++v) c.members[c.comp[v]].push_back(v);
    std::set<std::pair<int, int>> dag;
    for (auto& [s, a] : d.edges)
        if (c.comp[s] != c.comp[a]) dag.insert({c.comp[s], c.comp[a]});
    c.dag_edges.assign(dag.begin(), dag.end());

    c.reach.assign(n_sccs, std::vector<bool>(n_sccs, false));
    for (int i = 0; i < n_sccs; ++i) c.reach[i][i] = true;
    // topological order makes a reverse sweep sufficient
    for (int i = n_sccs - 1; i >= 0; --i)
        for (auto& [s, a] : c.dag_edges)
            if (s == i)
                for (int t = 0; t < n_sccs; ++t)
                    if (c.reach[a][t]) c.reach[i][t] = true;

    std::vector<int> sinks;
    for (int i = 0; i < n_sccs; ++i) {
        bool has_out = false;
        for (auto& [s, a] : c.dag_edges) has_out = has_out || (s == i);
        if (!has_out) sinks.push_back(i);
    }
    if (sinks.size() != 1) throw InvariantViolation("absorbency violated: sink SCC not unique");
    c.sink = sinks.front();
    for (int i = 0; i < n_sccs; ++i)
        if (!c.reach[i][c.sink])
            throw InvariantViolation("absorbency violated: vertex cannot reach the sink SCC");
    return c;
}

namespace {

// shortest admissible path from `from` to `to` whose vertices stay within
// ball(eps, radius); empty when none exists
std::vector<Word> connecting_path(const StepMeasure& m, const Word& from, const Word& to,
                                  int radius) {
    if (from == to) return {from};
    std::map<Word, Word> parent;
    parent[from] = from;
    std::deque<Word> queue{from};
    while (!queue.empty()) {
        Word u = queue.front();
        queue.pop_front();
        for (auto& [v, wt] : m.steps_from(u)) {
            if (static_cast<int>(v.size()) > radius || parent.count(v)) continue;
            parent[v] = u;
            if (v == to) {
                std::vector<Word> path{v};
                Word w = v;
                while (w != from) {
                    w = parent[w];
                    path.push_back(w);
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(std::move(v));
        }
    }
    return {};
}

}  // namespace

int stagnation_bound(const StepMeasure& m) {
    const GroupSpec& g = m.group;
    const int rcap = 6 * (m.range_k + 1);
    int worst = 0;
    for (int s = 0; s < g.n_sids(); ++s) {
        if (g.inverse(s) < s) continue;  // one representative per undirected edge orbit
        const Word target(1, static_cast<char>(s));
        for (int dir = 0; dir < 2; ++dir) {
            // dir 0: eps -> s; dir 1: s -> eps, translated so the start is eps
            const Word to = dir == 0 ? target : Word(1, static_cast<char>(g.inverse(s)));
            std::vector<Word> path;
            for (int r = 1; r <= rcap && path.empty(); ++r)
                path = connecting_path(m, kEpsilon, to, r);
            if (path.empty())
                throw ComputeError("stagnation bound: no connecting path for a tree edge "
                                   "(measure may not be irreducible)");
            for (const Word& w : path) worst = std::max(worst, static_cast<int>(w.size()));
        }
    }
    return worst + m.range_k;
}

OrbitClass classify_orbit(const XiSystem& xs, int orbit, int M) {
    const StepMeasure& m = xs.mu;
    const GroupSpec& g = m.group;
    const int k = xs.k;
    const int cap = M + k;
    const XiOrbit& orb = xs.orbits[orbit];

    // forward region: reachable from a, outside the ball, height <= cap
    std::vector<Word> order{orb.a};
    std::unordered_set<Word> fwd{orb.a};
    for (size_t head = 0; head < order.size(); ++head) {
        Word u = order[head];
        for (auto& [v, wt] : m.steps_from(u)) {
            const int h = static_cast<int>(v.size());
            if (h <= k || h > cap) continue;
            if (fwd.insert(v).second) order.push_back(std::move(v));
        }
    }
    for (const Word& w : order)
        if (static_cast<int>(w.size()) > M && restricted_nonempty(xs, w, orb.b, kEpsilon))
            return {true, 0};

    // finite: collect the vertices that can still reach b inside the region
    std::unordered_set<Word> bwd{orb.b};
    std::deque<Word> queue{orb.b};
    while (!queue.empty()) {
        Word v = queue.front();
        queue.pop_front();
        for (auto& [step, wt] : m.steps_from(kEpsilon)) {
            Word u = multiply(g, v, inverse_word(g, step));
            const int h = static_cast<int>(u.size());
            if (h <= k || h > cap) continue;
            if (bwd.insert(u).second) queue.push_back(std::move(u));
        }
    }
    int level = 0;
    for (const Word& w : order)
        if (bwd.count(w)) level = std::max(level, static_cast<int>(w.size()));
    return {false, level};
}

void emit_dot(const PsiSystem& ps, const Digraph& d, const Condensation& c, std::ostream& os) {
    const GroupSpec& g = ps.xs.mu.group;
    os << "digraph V {\n";
    for (int i = 0; i < c.n_sccs(); ++i) {
        os << "  subgraph cluster_scc" << i << " {\n";
        if (i == c.sink)
            os << "    label=\"scc" << i << " (sink)\";\n    style=bold;\n";
        else
            os << "    label=\"scc" << i << "\";\n";
        for (int v : c.members[i]) {
            const XiOrbit& o = ps.xs.orbits[v];
            os << "    o" << v << " [label=\"" << v << ":(" << word_str(g, o.a) << ","
               << word_str(g, o.b) << ")\"];\n";
        }
        os << "  }\n";
    }
    for (auto& [s, a] : d.edges) os << "  o" << s << " -> o" << a << ";\n";
    os << "}\n";
}

namespace {

// concatenate paths sharing a joint vertex
void concat_into(std::vector<Word>& acc, const std::vector<Word>& next) {
    if (acc.empty()) {
        acc = next;
        return;
    }
    if (next.empty()) return;
    if (acc.back() != next.front())
        throw InvariantViolation("path concatenation: joint vertices differ");
    acc.insert(acc.end(), next.begin() + 1, next.end());
}

std::vector<Word> translate_path(const GroupSpec& g, const Word& t, const std::vector<Word>& p) {
    std::vector<Word> out;
    out.reserve(p.size());
    for (const Word& w : p) out.push_back(multiply(g, t, w));
    return out;
}

// sandwich pieces of one edge witness, in the aim orbit's frame:
// gamma1 runs from aim.a to the slot start, gamma2 from the slot end to aim.b
struct EdgePieces {
    std::vector<Word> gamma1, gamma2;
    Word anchor;
};

EdgePieces edge_pieces(const PsiSystem& ps, const EdgeWitness& ew) {
    const GroupSpec& g = ps.xs.mu.group;
    const XiOrbit& aim = ps.xs.orbits[ew.aim];
    EdgePieces out;
    out.gamma1 = {aim.a, ew.c};
    const CrossingTuple& tup = ew.tuple;
    for (int t = 0; t < ew.j; ++t)
        concat_into(out.gamma1,
                    translate_path(g, tup.anchors[t], ps.xs.witness[tup.factors[t]]));
    out.anchor = tup.anchors[ew.j];
    out.gamma2 = {tup.vertices[ew.j + 1]};
    for (size_t t = ew.j + 1; t < tup.factors.size(); ++t)
        concat_into(out.gamma2,
                    translate_path(g, tup.anchors[t], ps.xs.witness[tup.factors[t]]));
    return out;
}

}  // namespace

EcluseWitness ecluse_check(const PsiSystem& ps, const Digraph& d, int source, int aim) {
    // shortest digraph path source -> aim with at least one edge
    std::vector<int> prev(d.n, -2);
    std::deque<int> queue;
    for (int nb : d.out[source])
        if (prev[nb] == -2) {
            prev[nb] = source;
            queue.push_back(nb);
        }
    // mark the start only after seeding so that source -> ... -> source cycles count
    while (!queue.empty() && prev[aim] == -2) {
        int v = queue.front();
        queue.pop_front();
        for (int nb : d.out[v])
            if (prev[nb] == -2) {
                prev[nb] = v;
                queue.push_back(nb);
            }
    }
    EcluseWitness w;
    if (prev[aim] == -2) return w;
    w.connected = true;
    std::vector<int> chain{aim};  // aim first, walked back to source
    int v = aim;
    do {
        v = prev[v];
        chain.push_back(v);
    } while (v != source);
    // compose edge witnesses from the aim outward
    const GroupSpec& g = ps.xs.mu.group;
    w.anchor = kEpsilon;
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        const EdgeWitness& ew = ps.edges.at({chain[i + 1], chain[i]});
        EdgePieces pieces = edge_pieces(ps, ew);
        concat_into(w.gamma1, translate_path(g, w.anchor, pieces.gamma1));
        std::vector<Word> g2 = translate_path(g, w.anchor, pieces.gamma2);
        concat_into(g2, w.gamma2);
        w.gamma2 = std::move(g2);
        w.anchor = multiply(g, w.anchor, pieces.anchor);
    }
    return w;
}

RealizedPath realize_digraph_path(const PsiSystem& ps, const std::vector<int>& orbit_path) {
    if (orbit_path.size() < 2)
        throw ComputeError("realize_digraph_path: need at least one edge (no path of length zero)");
    for (size_t i = 0; i + 1 < orbit_path.size(); ++i)
        if (!ps.edges.count({orbit_path[i], orbit_path[i + 1]}))
            throw ComputeError("realize_digraph_path: consecutive orbits are not an edge");

    const GroupSpec& g = ps.xs.mu.group;
    RealizedPath out;
    // build from the deepest level (the source orbit's own witness) outward
    const int m = static_cast<int>(orbit_path.size()) - 1;
    std::vector<Word> sub = ps.xs.witness[orbit_path[0]];
    std::vector<std::pair<int, int>> intervals{{0, static_cast<int>(sub.size()) - 1}};
    for (int i = 0; i < m; ++i) {
        // wrap sub (a path for orbit_path[i]) by the edge (orbit_path[i] -> orbit_path[i+1])
        const EdgeWitness& ew = ps.edges.at({orbit_path[i], orbit_path[i + 1]});
        EdgePieces pieces = edge_pieces(ps, ew);
        const int shift = static_cast<int>(pieces.gamma1.size()) - 1;
        std::vector<Word> whole = pieces.gamma1;
        concat_into(whole, translate_path(g, pieces.anchor, sub));
        concat_into(whole, pieces.gamma2);
        for (auto& [s, e] : intervals) {
            s += shift;
            e += shift;
        }
        intervals.push_back({0, static_cast<int>(whole.size()) - 1});
        sub = std::move(whole);
    }
    out.gamma = std::move(sub);
    // root (aim) first
    std::reverse(intervals.begin(), intervals.end());
    out.intervals = std::move(intervals);
    out.orbit_ids.assign(orbit_path.rbegin(), orbit_path.rend());
    return out;
}

}  // namespace treewalk
