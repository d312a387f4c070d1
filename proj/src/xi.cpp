#include "treewalk/xi.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "treewalk/errors.hpp"

namespace treewalk {

int XiSystem::orbit_id(const Word& canon_a, const Word& canon_b) const {
    auto it = ids.find({canon_a, canon_b});
    return it == ids.end() ? -1 : it->second;
}

int XiSystem::orbit_of(const Word& a, const Word& b, const Word& y) const {
    const Word t = inverse_word(mu.group, y);
    return orbit_id(multiply(mu.group, t, a), multiply(mu.group, t, b));
}

bool restricted_reachable(const StepMeasure& m, const Word& a, const Word& b,
                          const Word& y, int truncation_D) {
    const GroupSpec& g = m.group;
    const int k = m.range_k;
    if (distance(g, a, y) <= k) return false;  // the start already sits in the ball
    if (distance(g, a, y) > truncation_D) throw ComputeError("restricted_reachable: start outside the search region");
    std::unordered_set<Word> seen{a};
    std::deque<Word> queue{a};
    while (!queue.empty()) {
        Word u = queue.front();
        queue.pop_front();
        if (m.p(u, b) > 0) return true;
        for (auto& [v, wt] : m.steps_from(u)) {
            const int h = distance(g, v, y);
            if (h <= k || h > truncation_D) continue;
            if (seen.insert(v).second) queue.push_back(std::move(v));
        }
    }
    return false;
}

namespace {

// frame: y = eps throughout. A chain is a crossing tuple without its leading
// vertex context: vertices after c_0, their anchors, and the canonical factor
// pairs.
struct Chain {
    std::vector<Word> vertices;                  // c_1..c_l (c_l = b)
    std::vector<Word> anchors;                   // y_1..y_l
    std::vector<std::pair<Word, Word>> factors;  // canonical (a,b) per factor
};

template <typename Known>
class ChainFinder {
  public:
    ChainFinder(const GroupSpec& g, int k, const Word& b, const Known& known, bool all)
        : g_(g), k_(k), b_(b), known_(known), all_(all) {}

    std::vector<Chain> run(const Word& c) {
        found_.clear();
        dfs(c);
        return std::move(found_);
    }

  private:
    void dfs(const Word& cur) {
        if (!all_ && !found_.empty()) return;
        const size_t alen = cur.size() - static_cast<size_t>(k_) - 1;
        extend(cur.substr(0, alen), cur.substr(alen), Word());
    }

    void extend(const Word& anchor, const Word& canon_a, const Word& u) {
        if (!all_ && !found_.empty()) return;
        for (int s = 0; s < g_.n_sids(); ++s) {
            if (u.empty()) {
                if (!anchor.empty() &&
                    g_.inverse(static_cast<unsigned char>(anchor.back())) == s)
                    continue;  // would cancel into the anchor
            } else if (g_.inverse(static_cast<unsigned char>(u.back())) == s) {
                continue;  // not reduced
            }
            Word u2 = u;
            u2.push_back(static_cast<char>(s));
            const Word v = anchor + u2;  // reduced by construction
            if (known_(canon_a, u2)) {
                if (v.size() <= static_cast<size_t>(k_)) {
                    if (v == b_) emit(v, anchor, canon_a, u2);
                } else {
                    verts_.push_back(v);
                    ancs_.push_back(anchor);
                    facs_.emplace_back(canon_a, u2);
                    dfs(v);
                    verts_.pop_back();
                    ancs_.pop_back();
                    facs_.pop_back();
                }
            }
            if (u2.size() < static_cast<size_t>(k_)) extend(anchor, canon_a, u2);
            if (!all_ && !found_.empty()) return;
        }
    }

    void emit(const Word& v, const Word& anchor, const Word& canon_a, const Word& u) {
        Chain c;
        c.vertices = verts_;
        c.vertices.push_back(v);
        c.anchors = ancs_;
        c.anchors.push_back(anchor);
        c.factors = facs_;
        c.factors.emplace_back(canon_a, u);
        found_.push_back(std::move(c));
    }

    const GroupSpec& g_;
    int k_;
    Word b_;
    const Known& known_;
    bool all_;
    std::vector<Word> verts_, ancs_;
    std::vector<std::pair<Word, Word>> facs_;
    std::vector<Chain> found_;
};

}  // namespace

XiSystem enumerate_xi_orbits(const StepMeasure& m) {
    const GroupSpec& g = m.group;
    const int k = m.range_k;
    XiSystem xs;
    xs.mu = m;
    xs.k = k;

    // candidate canonical pairs: |a| = k+1, b in ball(eps,k) \ {eps}
    std::vector<Word> sphere;
    for (const Word& w : ball(g, kEpsilon, k + 1))
        if (static_cast<int>(w.size()) == k + 1) sphere.push_back(w);
    std::vector<Word> inner;
    for (const Word& w : ball(g, kEpsilon, k))
        if (!w.empty()) inner.push_back(w);

    std::map<std::pair<Word, Word>, std::vector<Word>> known;  // pair -> witness path
    auto is_known = [&known](const Word& a, const Word& b) {
        return known.count({a, b}) > 0;
    };

    bool grew = true;
    while (grew) {
        grew = false;
        for (const Word& a : sphere)
            for (const Word& b : inner) {
                if (known.count({a, b})) continue;
                if (m.p(a, b) > 0) {
                    known.emplace(std::make_pair(a, b), std::vector<Word>{a, b});
                    grew = true;
                    continue;
                }
                for (auto& [c, wt] : m.steps_from(a)) {
                    if (c.size() <= static_cast<size_t>(k)) continue;
                    ChainFinder finder(g, k, b, is_known, /*all=*/false);
                    std::vector<Chain> chains = finder.run(c);
                    if (chains.empty()) continue;
                    const Chain& ch = chains.front();
                    std::vector<Word> path{a, c};
                    for (size_t j = 0; j < ch.factors.size(); ++j) {
                        const std::vector<Word>& sub = known.at(ch.factors[j]);
                        for (size_t t = 0; t < sub.size(); ++t) {
                            Word v = multiply(g, ch.anchors[j], sub[t]);
                            if (t == 0) {
                                // pieces chain end-to-start
                                if (v != path.back())
                                    throw InvariantViolation("xi witness: pieces do not chain");
                            } else {
                                path.push_back(std::move(v));
                            }
                        }
                    }
                    if (path.back() != b)
                        throw InvariantViolation("xi witness: endpoint mismatch");
                    known.emplace(std::make_pair(a, b), std::move(path));
                    grew = true;
                    break;
                }
            }
    }

    for (const auto& [pair, path] : known) {
        XiOrbit orb;
        orb.id = static_cast<int>(xs.orbits.size());
        orb.a = pair.first;
        orb.b = pair.second;
        orb.x = pair.first.substr(0, 1);
        xs.ids.emplace(pair, orb.id);
        xs.orbits.push_back(orb);
        xs.witness.push_back(path);
    }
    return xs;
}

bool restricted_nonempty(const XiSystem& xs, const Word& c, const Word& b, const Word& y) {
    const GroupSpec& g = xs.mu.group;
    if (distance(g, c, y) <= xs.k)
        throw ComputeError("restricted_nonempty: c must lie outside ball(y,k)");
    if (distance(g, b, y) > xs.k)
        throw ComputeError("restricted_nonempty: b must lie inside ball(y,k)");
    const Word t = inverse_word(g, y);
    auto is_orbit = [&xs](const Word& a, const Word& bb) {
        return xs.orbit_id(a, bb) >= 0;
    };
    ChainFinder finder(g, xs.k, multiply(g, t, b), is_orbit, /*all=*/false);
    return !finder.run(multiply(g, t, c)).empty();
}

std::vector<CrossingTuple> crossing_tuples(const XiSystem& xs, const Word& c,
                                           const Word& b, const Word& y) {
    const GroupSpec& g = xs.mu.group;
    const int k = xs.k;
    if (distance(g, c, y) <= k)
        throw ComputeError("crossing_tuples: c must lie outside ball(y,k)");
    if (distance(g, b, y) > k)
        throw ComputeError("crossing_tuples: b must lie inside ball(y,k)");
    const Word t = inverse_word(g, y);
    const Word c0 = multiply(g, t, c), b0 = multiply(g, t, b);
    auto is_orbit = [&xs](const Word& a, const Word& bb) {
        return xs.orbit_id(a, bb) >= 0;
    };
    ChainFinder finder(g, k, b0, is_orbit, /*all=*/true);
    std::vector<Chain> chains = finder.run(c0);
    std::vector<CrossingTuple> out;
    out.reserve(chains.size());
    for (const Chain& ch : chains) {
        CrossingTuple tup;
        tup.vertices.push_back(c);
        for (const Word& v : ch.vertices) tup.vertices.push_back(multiply(g, y, v));
        for (const Word& a : ch.anchors) {
            tup.anchors.push_back(multiply(g, y, a));
            tup.indices.push_back(static_cast<int>(c0.size() - a.size()));
        }
        for (const auto& f : ch.factors) tup.factors.push_back(xs.orbit_id(f.first, f.second));
        out.push_back(std::move(tup));
    }
    return out;
}

}  // namespace treewalk
