// Acceptance suite: ten numbered criteria, each timed and reported as a
// single PASS/FAIL line. The process exits 0 only when every criterion holds.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "helpers.hpp"

using tw::Word;

namespace {

// ---- tiny assertion collector ----------------------------------------------

struct Check {
    int total = 0;
    int failed = 0;
    std::vector<std::string> messages;

    void that(bool ok, const std::string& what) {
        ++total;
        if (ok) return;
        ++failed;
        if (messages.size() < 6) messages.push_back(what);
    }
    template <typename T>
    std::string str(const T& v) {
        std::ostringstream os;
        os << v;
        return os.str();
    }
};

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// ---- criterion 1: closed-form radius on the three-involution walk -----------

void criterion_1(Check& c) {
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(walk_nn3()));
    tw::RadiusResult rr = tw::find_R(ps);
    const double R_exact = 3.0 / (2.0 * std::sqrt(2.0));
    c.that(std::abs(rr.R - R_exact) < 1e-9,
           "R = " + c.str(rr.R) + " not within 1e-9 of 3/(2*sqrt 2)");
    c.that(std::abs(rr.R * rr.rho - 1.0) < 1e-9,
           "R*rho = " + c.str(rr.R * rr.rho) + " not within 1e-9 of 1");
    const double v_exact = std::sqrt(2.0) / 2.0;
    for (size_t i = 0; i < rr.v_R.size(); ++i)
        c.that(std::abs(rr.v_R[i] - v_exact) < 1e-8,
               "v_R[" + c.str(i) + "] = " + c.str(rr.v_R[i]) + " off sqrt(2)/2");
}

// ---- criterion 2: free-group radius with a Cauchy-Hadamard cross-check ------

void criterion_2(Check& c) {
    tw::StepMeasure m = walk_f2();
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(m));
    tw::RadiusResult rr = tw::find_R(ps);
    const double R_exact = 2.0 / std::sqrt(3.0);
    c.that(std::abs(rr.R - R_exact) < 1e-3,
           "solver R = " + c.str(rr.R) + " not within 1e-3 of 2/sqrt 3");

    // root test on the exact return coefficients, with the n^{-3/2} factor
    // removed so the limit is reached at polynomial speed
    const int n = 4000;
    std::vector<double> p = tw::dp_isotropic(m, n);
    c.that(p[static_cast<size_t>(n)] > 0, "p_n vanished at n = " + c.str(n));
    double r_ch = std::exp(-(std::log(p[static_cast<size_t>(n)]) +
                             1.5 * std::log(static_cast<double>(n))) /
                           n);
    c.that(std::abs(r_ch - R_exact) < 1e-3,
           "Cauchy-Hadamard estimate " + c.str(r_ch) + " not within 1e-3 of 2/sqrt 3");
    c.that(std::abs(r_ch - rr.R) < 2e-3,
           "root test and curve solver disagree: " + c.str(r_ch) + " vs " + c.str(rr.R));
}

// ---- criterion 3: formal series equals exact path counts --------------------

void criterion_3(Check& c) {
    const int order = 16;
    for (const tw::StepMeasure& m : {walk_w1(), walk_w2(), walk_w3(), walk_nn3()}) {
        tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(m));
        std::vector<std::vector<tw::Rat>> series = tw::series_iterate(ps, order);
        for (const tw::XiOrbit& o : ps.xs.orbits) {
            tw::SeriesTable ref = tw::dp_restricted(m, o.a, o.b, tw::kEpsilon, order);
            for (int n = 0; n <= order; ++n)
                c.that(series[static_cast<size_t>(o.id)][static_cast<size_t>(n)] ==
                           ref.exact[static_cast<size_t>(n)],
                       "coefficient mismatch at orbit " + c.str(o.id) + ", order " +
                           c.str(n));
        }
    }
}

// ---- criterion 4: asymptotic law of the return probabilities ----------------

void criterion_4(Check& c) {
    tw::StepMeasure m = walk_nn3();
    std::vector<double> p = tw::dp_isotropic(m, 10000);
    tw::AsymptoticFit fit = tw::fit_asymptotics(p, 2, 0);
    c.that(std::abs(fit.exponent - 1.5) <= 0.03,
           "fitted exponent " + c.str(fit.exponent) + " outside 1.5 +- 0.03");
    const double R_exact = 3.0 / (2.0 * std::sqrt(2.0));
    c.that(std::abs(fit.R - R_exact) < 1e-3,
           "fitted R " + c.str(fit.R) + " not within 1e-3 of the closed form");

    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(m));
    tw::RadiusResult rr = tw::find_R(ps);
    tw::LeadingConstant lc = tw::leading_constant(ps, tw::kEpsilon, tw::kEpsilon, rr.R, 2);
    c.that(rel_gap(fit.C, lc.C) <= 0.02, "fitted C " + c.str(fit.C) +
                                             " more than 2% away from predicted " +
                                             c.str(lc.C));
}

// ---- criterion 5: digraph structure and grading ------------------------------

void criterion_5(Check& c) {
    {
        tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(walk_nn3()));
        tw::Condensation cond = tw::condense(tw::build_digraph(ps));
        c.that(cond.n_sccs() == 1, "nearest-neighbour digraph is not strongly connected");
    }
    {
        tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(walk_w3()));
        tw::Digraph d = tw::build_digraph(ps);
        tw::Condensation cond = tw::condense(d);
        c.that(cond.n_sccs() >= 2, "third walk should split into several components");
        int sinks = 0;
        for (int s = 0; s < cond.n_sccs(); ++s) {
            bool has_out = false;
            for (const auto& [a, b] : cond.dag_edges) has_out = has_out || a == s;
            if (!has_out) ++sinks;
        }
        c.that(sinks == 1, "sink component is not unique");
    }
    for (const tw::StepMeasure& m : {walk_w1(), walk_w2(), walk_w3()}) {
        tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(m));
        tw::Digraph d = tw::build_digraph(ps);
        tw::Condensation cond = tw::condense(d);
        const int M = tw::stagnation_bound(m);
        std::vector<tw::OrbitClass> cls;
        for (int o = 0; o < d.n; ++o) cls.push_back(tw::classify_orbit(ps.xs, o, M));
        for (int o = 0; o < d.n; ++o)
            c.that(cls[static_cast<size_t>(o)].infinite ==
                       (cond.comp[static_cast<size_t>(o)] == cond.sink),
                   "orbit " + c.str(o) + ": classification disagrees with sink membership");
        for (const auto& [s, a] : d.edges) {
            const tw::OrbitClass& src = cls[static_cast<size_t>(s)];
            const tw::OrbitClass& aim = cls[static_cast<size_t>(a)];
            if (!aim.infinite)
                c.that(!src.infinite && src.level <= aim.level,
                       "edge " + c.str(s) + "->" + c.str(a) + " violates the level grading");
        }
    }
}

// ---- criterion 6: cavern trees, brute force and path labels -----------------

using Interval = std::pair<int, int>;

bool admissible_interval(const std::vector<int>& g, int a, int b) {
    if (g[static_cast<size_t>(a)] <= g[static_cast<size_t>(b)]) return false;
    for (int t = a; t < b; ++t)
        if (g[static_cast<size_t>(t)] < g[static_cast<size_t>(a)]) return false;
    return true;
}

void check_profile(Check& c, const std::vector<int>& g) {
    const int n = static_cast<int>(g.size()) - 1;
    tw::CavernTree t = tw::build_cavern(tw::CavernFunction{g});

    // brute force enumeration + immediate-superset parents
    std::vector<Interval> ref;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b <= n; ++b)
            if (admissible_interval(g, a, b)) ref.emplace_back(a, b);
    std::sort(ref.begin(), ref.end());
    std::vector<Interval> got;
    for (const auto& nd : t.nodes) got.emplace_back(nd.a, nd.b);
    c.that(got == ref, "interval set differs from brute force");
    if (got != ref) return;
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        int best = -1;
        for (size_t j = 0; j < t.nodes.size(); ++j) {
            if (i == j) continue;
            if (t.nodes[j].a <= t.nodes[i].a && t.nodes[i].b <= t.nodes[j].b &&
                (best < 0 ||
                 t.nodes[static_cast<size_t>(best)].b - t.nodes[static_cast<size_t>(best)].a >
                     t.nodes[j].b - t.nodes[j].a))
                best = static_cast<int>(j);
        }
        c.that(t.nodes[i].parent == best, "parent differs from smallest superset");
    }

    // the six structural properties (the full interval is admissible here)
    bool rooted = t.roots.size() == 1 && t.nodes[static_cast<size_t>(t.roots[0])].a == 0 &&
                  t.nodes[static_cast<size_t>(t.roots[0])].b == n;
    c.that(rooted, "profile with admissible domain lacks a unique full root");
    for (size_t i = 0; i < t.nodes.size(); ++i)
        for (size_t j = 0; j < t.nodes.size(); ++j) {
            if (i == j) continue;
            bool up = t.depth_below(static_cast<int>(i), static_cast<int>(j)) > 0;
            bool strict = t.nodes[j].a <= t.nodes[i].a && t.nodes[i].b <= t.nodes[j].b &&
                          (t.nodes[j].a != t.nodes[i].a || t.nodes[j].b != t.nodes[i].b);
            c.that(up == strict, "ancestry differs from strict inclusion");
        }
    std::set<Interval> leaves, card2, descents;
    for (const auto& nd : t.nodes) {
        if (nd.children.empty()) leaves.emplace(nd.a, nd.b);
        if (nd.b == nd.a + 1) card2.emplace(nd.a, nd.b);
    }
    for (int i = 0; i < n; ++i)
        if (g[static_cast<size_t>(i)] > g[static_cast<size_t>(i + 1)]) descents.emplace(i, i + 1);
    c.that(leaves == card2 && leaves == descents,
           "leaves are not exactly the cardinality-two descents");
    for (size_t i = 0; i < t.nodes.size(); ++i)
        for (size_t j = i + 1; j < t.nodes.size(); ++j) {
            const auto& u = t.nodes[i];
            const auto& v = t.nodes[j];
            int lo = std::max(u.a, v.a), hi = std::min(u.b, v.b);
            if (lo > hi) continue;
            bool nested = (u.a <= v.a && v.b <= u.b) || (v.a <= u.a && u.b <= v.b);
            if (nested) continue;
            c.that(lo == hi && u.parent == v.parent && u.parent >= 0,
                   "touching intervals are not siblings");
        }
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& nd = t.nodes[i];
        std::vector<Interval> kids;
        for (int ch : nd.children)
            kids.emplace_back(t.nodes[static_cast<size_t>(ch)].a,
                              t.nodes[static_cast<size_t>(ch)].b);
        std::sort(kids.begin(), kids.end());
        c.that(kids == tw::decompose(tw::CavernFunction{g}, nd.a, nd.b),
               "children differ from the decomposition chain");
        std::vector<int> sub(g.begin() + nd.a, g.begin() + nd.b + 1);
        tw::CavernTree st = tw::build_cavern(tw::CavernFunction{sub});
        size_t below = 0;
        for (size_t j = 0; j < t.nodes.size(); ++j)
            if (t.depth_below(static_cast<int>(j), static_cast<int>(i)) >= 0) ++below;
        c.that(st.nodes.size() == below, "restricted profile subtree has a different size");
    }
}

// exact DP path sampler: counts the restricted paths of each length inside a
// height-capped region, then draws one uniformly; falls back to the stored
// witness when no capped path exists
struct PathSampler {
    const tw::StepMeasure& m;
    Word b;
    int lmax;
    std::vector<Word> region;                       // outside the ball, height-capped
    std::map<Word, std::vector<long long>> counts;  // word -> per-length suffix counts

    PathSampler(const tw::StepMeasure& mm, const Word& target, int cap, int lengths)
        : m(mm), b(target), lmax(lengths) {
        for (const Word& w : tw::ball(m.group, tw::kEpsilon, cap))
            if (static_cast<int>(w.size()) > m.range_k) region.push_back(w);
        for (const Word& w : region) counts[w].assign(static_cast<size_t>(lmax) + 1, 0);
        for (int l = 1; l <= lmax; ++l)
            for (const Word& w : region) {
                long long acc = 0;
                for (const auto& [nxt, wt] : m.steps_from(w)) {
                    (void)wt;
                    if (l == 1 && nxt == b) acc += 1;
                    if (l > 1) {
                        auto it = counts.find(nxt);
                        if (it != counts.end()) acc += it->second[static_cast<size_t>(l - 1)];
                    }
                }
                counts[w][static_cast<size_t>(l)] = acc;
            }
    }

    std::vector<Word> draw(const Word& a, std::mt19937& rng) {
        std::vector<int> feasible;
        auto it = counts.find(a);
        if (it != counts.end())
            for (int l = 1; l <= lmax; ++l)
                if (it->second[static_cast<size_t>(l)] > 0) feasible.push_back(l);
        if (feasible.empty()) return {};
        int L = feasible[std::uniform_int_distribution<size_t>(0, feasible.size() - 1)(rng)];
        std::vector<Word> path{a};
        Word v = a;
        for (int l = L; l > 1; --l) {
            // pick the next vertex proportionally to its suffix count
            std::vector<std::pair<Word, long long>> opts;
            long long total = 0;
            for (const auto& [nxt, wt] : m.steps_from(v)) {
                (void)wt;
                auto jt = counts.find(nxt);
                if (jt == counts.end()) continue;
                long long k = jt->second[static_cast<size_t>(l - 1)];
                if (k > 0) {
                    opts.emplace_back(nxt, k);
                    total += k;
                }
            }
            long long pick = std::uniform_int_distribution<long long>(0, total - 1)(rng);
            for (const auto& [nxt, k] : opts) {
                if (pick < k) {
                    v = nxt;
                    break;
                }
                pick -= k;
            }
            path.push_back(v);
        }
        path.push_back(b);
        return path;
    }
};

void criterion_6(Check& c) {
    std::mt19937 rng(190814);
    std::uniform_int_distribution<int> len(1, 11), wall(1, 3), bump(0, 4);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = len(rng);
        std::vector<int> g(static_cast<size_t>(n) + 1);
        g[0] = wall(rng);
        g[static_cast<size_t>(n)] = g[0] - 1;
        for (int i = 1; i < n; ++i) {
            int b = bump(rng);
            g[static_cast<size_t>(i)] = b == 0 ? g[0] : g[0] + b;
        }
        check_profile(c, g);
    }

    for (const tw::StepMeasure& m : {walk_nn3(), walk_w1(), walk_w2(), walk_w3()}) {
        tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(m));
        const tw::GroupSpec& g = m.group;
        const int cap = ps.xs.k + tw::stagnation_bound(m) + 1;
        std::map<Word, PathSampler> samplers;  // one per target b
        int produced = 0;
        for (int i = 0; produced < 200; ++i) {
            const tw::XiOrbit& o =
                ps.xs.orbits[static_cast<size_t>(i) % ps.xs.orbits.size()];
            auto it = samplers.find(o.b);
            if (it == samplers.end())
                it = samplers.emplace(o.b, PathSampler(m, o.b, cap, 12)).first;
            std::vector<Word> path = it->second.draw(o.a, rng);
            if (path.empty()) path = ps.xs.witness[static_cast<size_t>(o.id)];
            ++produced;

            tw::LabeledCavernTree lt = tw::cavern_of_path(m, path, tw::kEpsilon);
            c.that(!lt.tree.nodes.empty(), "path cavern came out empty");
            c.that(lt.tree.roots.size() == 1, "path cavern is not rooted");
            for (size_t v = 0; v < lt.tree.nodes.size(); ++v) {
                const tw::LabeledCavernTree::Label& lab = lt.labels[v];
                int id = ps.xs.orbit_id(lab.canon_a, lab.canon_b);
                c.that(id >= 0, "cavern label is not a live orbit");
                c.that(tw::distance(g, lab.a, lab.y) == ps.xs.k + 1,
                       "label anchor at the wrong depth");
                c.that(tw::on_geodesic(g, lab.a, lab.y, tw::kEpsilon),
                       "label anchor off the geodesic");
                c.that(tw::distance(g, lab.x, lab.y) == 1, "label x not adjacent to anchor");
                int parent = lt.tree.nodes[v].parent;
                if (parent >= 0) {
                    int pid = ps.xs.orbit_id(lt.labels[static_cast<size_t>(parent)].canon_a,
                                             lt.labels[static_cast<size_t>(parent)].canon_b);
                    c.that(pid >= 0 && ps.edges.count({id, pid}) == 1,
                           "cavern edge has no matching dependency edge");
                }
            }
            // the root interval carries the defining pair of the sampled orbit
            int root = lt.tree.roots.front();
            c.that(lt.labels[static_cast<size_t>(root)].canon_a == o.a &&
                       lt.labels[static_cast<size_t>(root)].canon_b == o.b,
                   "root label differs from the sampled orbit");
        }
    }
}

// ---- criterion 7: tangent direction and derivative data at the fold ---------

void criterion_7(Check& c) {
    std::mt19937 rng(424242);
    for (const tw::StepMeasure& m :
         {walk_nn3(), walk_w1(), walk_w2(), walk_w3(), walk_f2()}) {
        tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(m));
        tw::Condensation cond = tw::condense(tw::build_digraph(ps));
        tw::RadiusResult rr = tw::find_R(ps);

        for (int o = 0; o < ps.size(); ++o) {
            if (cond.comp[static_cast<size_t>(o)] == cond.sink)
                c.that(rr.nu[static_cast<size_t>(o)] > 0,
                       "tangent vanishes on an infinite orbit");
            else
                c.that(std::abs(rr.nu[static_cast<size_t>(o)]) < 1e-8,
                       "tangent leaks onto a finite orbit");
        }

        double dl = tw::lambda_derivative(ps, rr.R, rr.v_R);
        c.that(dl < 1e-10, "z-projection derivative " + c.str(dl) + " not flat");

        double r2 = tw::second_derivative(ps, rr.R, rr.v_R, rr.nu, rr.left);
        c.that(std::abs(r2) > 1e-6, "second derivative suspiciously small");
        double r2fd = tw::second_derivative_fd(ps, rr.R, rr.v_R, rr.nu);
        c.that(rel_gap(r2fd, r2) < 1e-4, "finite differences disagree: " + c.str(r2) +
                                             " vs " + c.str(r2fd));

        std::vector<Word> pool = tw::ball(m.group, tw::kEpsilon, 2);
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        for (int s = 0; s < 10; ++s) {
            Word x = pool[pick(rng)], y = pool[pick(rng)];
            double gd = tw::g_derivative(ps, x, y, rr.R, rr.v_R, rr.nu);
            c.that(std::abs(gd) > 1e-8, "Green derivative vanished at a sampled pair");
        }
    }

    // the closed-form value of the scalar model
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(walk_nn3()));
    tw::RadiusResult rr = tw::find_R(ps);
    double r2 = tw::second_derivative(ps, rr.R, rr.v_R, rr.nu, rr.left);
    c.that(std::abs(r2 - (-3.0 * std::sqrt(2.0) / 2.0)) < 1e-6,
           "r''(0) = " + c.str(r2) + " off the closed form -3*sqrt(2)/2");
}

// ---- criterion 8: dichotomy for the first-passage radius --------------------

void criterion_8(Check& c) {
    for (const tw::StepMeasure& m :
         {walk_w1(), walk_w2(), walk_w3(), walk_nn3(), walk_f2()}) {
        tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(m));
        tw::RadiusResult rr = tw::find_R(ps);
        const int M = tw::stagnation_bound(m);
        const tw::GroupSpec& g = m.group;
        int pairs = 0, agreed = 0;
        std::vector<Word> ys{tw::kEpsilon, m.atoms.front().first};
        for (const Word& y : ys)
            for (const Word& x : tw::ball(g, y, ps.xs.k + 2)) {
                ++pairs;
                try {
                    tw::FRadiusClass fr =
                        tw::classify_f_radius(ps, x, y, M, rr.R, rr.v_R, rr.nu);
                    // the walk leaves every punctured tree unboundedly, so
                    // only x == y keeps the radius strictly beyond R
                    if (fr.beyond_R == (x == y)) ++agreed;
                } catch (const tw::InvariantViolation&) {
                    // disagreement between the excursion and derivative tests
                }
            }
        c.that(pairs > 0 && agreed == pairs, "agreement only " + c.str(agreed) + "/" +
                                                 c.str(pairs) + " on a walk");
    }
}

// ---- criterion 9: spectral comparison lemmas --------------------------------

void criterion_9(Check& c) {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> dims(2, 8);

    for (int trial = 0; trial < 500; ++trial) {
        int n = dims(rng);
        Eigen::MatrixXd B(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                B(i, j) = unif(rng) < 0.3 ? 0.0 : unif(rng);
        Eigen::MatrixXcd A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                A(i, j) = std::polar(B(i, j) * unif(rng), 2 * M_PI * unif(rng));
        c.that(tw::spectral_radius(A) <= tw::spectral_radius(B) + 1e-9,
               "dominated matrix exceeded the spectral radius bound");
    }

    for (int trial = 0; trial < 500; ++trial) {
        int n = dims(rng);
        Eigen::MatrixXd B(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                B(i, j) = unif(rng) < 0.5 ? 0.0 : unif(rng);
        for (int i = 0; i < n; ++i) B(i, (i + 1) % n) = 0.5 + unif(rng);  // irreducible
        Eigen::MatrixXd A = B;
        int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
        A(i, (i + 1) % n) *= 0.4;  // one strictly smaller entry
        c.that(tw::spectral_radius(A) < tw::spectral_radius(B) - 1e-9,
               "strict domination did not contract the spectral radius");
    }
}

// ---- criterion 10: periodicity and residue classes --------------------------

void criterion_10(Check& c) {
    c.that(tw::period(walk_nn3()) == 2, "nearest-neighbour period is not 2");
    c.that(tw::period(walk_w1()) == 1, "lazy-range walk period is not 1");

    for (const tw::StepMeasure& m :
         {walk_nn3(), walk_w1(), walk_w2(), walk_w3(), walk_f2()}) {
        const int d = tw::period(m);
        const tw::GroupSpec& g = m.group;
        int radius = g.valence() == 3 ? 2 : 1;
        std::vector<Word> pool = tw::ball(g, tw::kEpsilon, radius);
        for (const Word& x : pool)
            for (const Word& y : pool) {
                int r = d == 1 ? 0 : tw::cocycle_r(m, x, y, d);
                tw::SeriesTable s = tw::dp_full(m, x, y, 14);
                bool hit = false;
                for (int n = 0; n <= 14; ++n) {
                    const tw::Rat& pn = s.exact[static_cast<size_t>(n)];
                    if (n % d != r)
                        c.that(pn == 0, "off-class probability at n = " + c.str(n));
                    hit = hit || pn != 0;
                }
                c.that(hit, "no admissible path found at all within 14 steps");
            }
    }
}

struct Criterion {
    int id;
    const char* what;
    double budget_s;
    std::function<void(Check&)> run;
};

}  // namespace

int main() {
    std::vector<Criterion> all{
        {1, "closed-form radius of the nearest-neighbour walk", 1.0, criterion_1},
        {2, "free-group radius with Cauchy-Hadamard cross-check", 10.0, criterion_2},
        {3, "formal series equal exact path counts to order 16", 120.0, criterion_3},
        {4, "fitted asymptotic law matches the predicted constant", 60.0, criterion_4},
        {5, "digraph connectivity, sink and level grading", 60.0, criterion_5},
        {6, "cavern trees: brute force, properties, path labels", 30.0, criterion_6},
        {7, "tangent support and derivative data at the fold", 30.0, criterion_7},
        {8, "first-passage radius dichotomy", 60.0, criterion_8},
        {9, "spectral comparison on random matrix pairs", 10.0, criterion_9},
        {10, "periods and residue-class vanishing", 10.0, criterion_10},
    };

    int failures = 0;
    for (const Criterion& cr : all) {
        Check c;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.that(false, std::string("unhandled exception: ") + e.what());
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt > cr.budget_s)
            c.that(false, "runtime " + c.str(dt) + "s exceeds budget " +
                              c.str(cr.budget_s) + "s");
        bool pass = c.failed == 0;
        failures += pass ? 0 : 1;
        std::printf("%s criterion %2d: %-55s %7.2fs (%d checks)\n", pass ? "PASS" : "FAIL",
                    cr.id, cr.what, dt, c.total);
        for (const std::string& msg : c.messages) std::printf("      - %s\n", msg.c_str());
        if (c.failed > static_cast<int>(c.messages.size()))
            std::printf("      - ... and %d more failed checks\n",
                        c.failed - static_cast<int>(c.messages.size()));
    }
    if (failures == 0) {
        std::printf("all 10 acceptance criteria hold\n");
        return 0;
    }
    std::printf("%d criterion/criteria failed\n", failures);
    return 1;
}
