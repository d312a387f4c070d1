#include "treewalk/measure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "treewalk/errors.hpp"

namespace treewalk {

StepMeasure StepMeasure::make(const GroupSpec& g, std::vector<std::pair<Word, Rat>> entries) {
    StepMeasure m;
    m.group = g;
    if (entries.empty()) throw ConfigError("measure: empty support");
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    Rat total = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& [w, wt] = entries[i];
        if (reduce(g, w) != w) throw ConfigError("measure: support word not reduced");
        if (i > 0 && entries[i - 1].first == w)
            throw ConfigError("measure: duplicate support word '" + word_str(g, w) + "'");
        if (wt <= 0) throw ConfigError("measure: weight of '" + word_str(g, w) +
                                       "' must be positive");
        total += wt;
        m.range_k = std::max(m.range_k, static_cast<int>(w.size()));
    }
    if (total != 1)
        throw ConfigError("measure not stochastic: weights sum to " + rat_str(total) + ", not 1");
    if (m.range_k == 0) throw ConfigError("measure: support is only the identity, walk cannot move");
    m.atoms = std::move(entries);
    for (const auto& [w, wt] : m.atoms) m.lookup_.emplace(w, wt);
    m.zero_ = 0;
    return m;
}

const Rat& StepMeasure::mu(const Word& s) const {
    auto it = lookup_.find(s);
    return it == lookup_.end() ? zero_ : it->second;
}

Rat StepMeasure::p(const Word& x, const Word& y) const {
    return mu(multiply(group, inverse_word(group, x), y));
}

std::vector<std::pair<Word, Rat>> StepMeasure::steps_from(const Word& x) const {
    std::vector<std::pair<Word, Rat>> out;
    out.reserve(atoms.size());
    for (const auto& [s, wt] : atoms) out.emplace_back(multiply(group, x, s), wt);
    return out;
}

bool StepMeasure::is_radial() const {
    // group by support word length; every sphere touched must be complete
    // with a single common weight
    std::vector<std::pair<int, Rat>> by_len;  // length -> weight
    std::vector<long long> count;
    for (const auto& [w, wt] : atoms) {
        int l = static_cast<int>(w.size());
        auto it = std::find_if(by_len.begin(), by_len.end(),
                               [&](const auto& p) { return p.first == l; });
        if (it == by_len.end()) {
            by_len.emplace_back(l, wt);
            count.push_back(1);
        } else {
            if (it->second != wt) return false;
            ++count[static_cast<size_t>(it - by_len.begin())];
        }
    }
    for (size_t i = 0; i < by_len.size(); ++i) {
        int l = by_len[i].first;
        long long sphere = 1;
        if (l > 0) {
            sphere = group.n_sids();
            for (int j = 1; j < l; ++j) sphere *= group.n_sids() - 1;
        }
        if (count[i] != sphere) return false;
    }
    return true;
}

Irreducibility check_irreducible(const StepMeasure& m, int depth_D) {
    const GroupSpec& g = m.group;
    if (depth_D < 0) depth_D = 4 * (m.range_k + 1);
    std::unordered_set<Word> seen{kEpsilon};
    std::deque<Word> queue{kEpsilon};
    bool returns = false;
    while (!queue.empty()) {
        Word x = queue.front();
        queue.pop_front();
        for (auto& [y, wt] : m.steps_from(x)) {
            if (y.empty() && !x.empty()) returns = true;
            if (static_cast<int>(y.size()) > depth_D) continue;
            if (seen.insert(y).second) queue.push_back(std::move(y));
        }
    }
    bool all = true;
    for (const Word& w : ball(g, kEpsilon, m.range_k + 1))
        if (!seen.count(w)) {
            all = false;
            break;
        }
    if (all) return Irreducibility::Yes;
    if (!returns) return Irreducibility::No;
    return Irreducibility::Inconclusive;
}

namespace {

// gcd of closed-walk lengths through eps in the step graph restricted to
// ball(eps, radius): assign BFS potentials on the strongly connected part
// containing eps and fold every edge into the gcd
int period_in_region(const StepMeasure& m, int radius) {
    const GroupSpec& g = m.group;
    std::vector<Word> region = ball(g, kEpsilon, radius);
    std::unordered_map<Word, int> index;
    for (size_t i = 0; i < region.size(); ++i) index.emplace(region[i], static_cast<int>(i));
    const int n = static_cast<int>(region.size());
    std::vector<std::vector<int>> out(static_cast<size_t>(n)), in(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (auto& [y, wt] : m.steps_from(region[static_cast<size_t>(i)])) {
            auto it = index.find(y);
            if (it == index.end()) continue;
            out[static_cast<size_t>(i)].push_back(it->second);
            in[static_cast<size_t>(it->second)].push_back(i);
        }
    // restrict to vertices both reachable and co-reachable from eps
    auto reach = [&](const std::vector<std::vector<int>>& adj) {
        std::vector<char> vis(static_cast<size_t>(n), 0);
        std::deque<int> q{0};
        vis[0] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : adj[static_cast<size_t>(u)])
                if (!vis[static_cast<size_t>(v)]) {
                    vis[static_cast<size_t>(v)] = 1;
                    q.push_back(v);
                }
        }
        return vis;
    };
    std::vector<char> fwd = reach(out), bwd = reach(in);
    std::vector<int> pot(static_cast<size_t>(n), -1);
    pot[0] = 0;
    std::deque<int> q{0};
    long long gcd = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : out[static_cast<size_t>(u)]) {
            if (!fwd[static_cast<size_t>(v)] || !bwd[static_cast<size_t>(v)]) continue;
            if (pot[static_cast<size_t>(v)] < 0) {
                pot[static_cast<size_t>(v)] = pot[static_cast<size_t>(u)] + 1;
                q.push_back(v);
            } else {
                gcd = std::gcd(gcd, static_cast<long long>(pot[static_cast<size_t>(u)]) + 1 -
                                        pot[static_cast<size_t>(v)]);
            }
        }
    }
    return static_cast<int>(gcd < 0 ? -gcd : gcd);
}

}  // namespace

int period(const StepMeasure& m) {
    if (check_irreducible(m) == Irreducibility::No)
        throw ComputeError("period: walk is not irreducible");
    int last = 0, stable = 0;
    for (int radius = m.range_k + 1;
         radius <= 8 * (m.range_k + 1) && ball_size(m.group, radius) <= 300000; ++radius) {
        int d = period_in_region(m, radius);
        if (d == last && d > 0) {
            if (++stable >= 2) return d;
        } else {
            stable = 0;
            last = d;
        }
    }
    if (last > 0) return last;
    throw ComputeError("period: no loop at eps found in the searched region");
}

int cocycle_r(const StepMeasure& m, const Word& x, const Word& y, int period_d) {
    if (period_d <= 0) throw ComputeError("cocycle_r: period must be positive");
    const GroupSpec& g = m.group;
    const Word target = multiply(g, inverse_word(g, x), y);
    // Path lengths x->y are a single residue class mod d, so any admissible
    // path will do. Split the target into blocks of length <= k+1 (plain
    // concatenation, no cancellation), walk each block by a path found inside
    // a small ball, and sum the lengths. This stays bounded for far targets.
    const int depth_D = 4 * (m.range_k + 1);
    std::unordered_map<Word, int> steps{{kEpsilon, 0}};
    std::deque<Word> queue{kEpsilon};
    while (!queue.empty()) {
        Word u = queue.front();
        queue.pop_front();
        int du = steps[u];
        for (auto& [v, wt] : m.steps_from(u)) {
            if (static_cast<int>(v.size()) > depth_D) continue;
            if (steps.emplace(v, du + 1).second) queue.push_back(std::move(v));
        }
    }
    long long total = 0;
    const size_t block = static_cast<size_t>(m.range_k) + 1;
    for (size_t i = 0; i < target.size(); i += block) {
        Word piece = target.substr(i, block);
        auto it = steps.find(piece);
        if (it == steps.end())
            throw ComputeError("cocycle_r: block '" + word_str(g, piece) +
                               "' unreachable (walk irreducible?)");
        total += it->second;
    }
    return static_cast<int>(total % period_d);
}

KernelInfo kernel_info(const StepMeasure& m) {
    KernelInfo info;
    info.range_k = m.range_k;
    info.irreducible = check_irreducible(m);
    info.period_d = info.irreducible == Irreducibility::No ? 0 : period(m);
    return info;
}

}  // namespace treewalk
