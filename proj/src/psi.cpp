#include "treewalk/psi.hpp"

#include <algorithm>
#include <sstream>

namespace treewalk {

PsiSystem build_psi(const XiSystem& xs) {
    PsiSystem ps;
    ps.xs = xs;
    ps.comps.resize(xs.orbits.size());
    for (const XiOrbit& orb : xs.orbits) {
        PsiComponent& comp = ps.comps[orb.id];
        comp.constant = xs.mu.p(orb.a, orb.b);
        std::map<std::vector<int>, Rat> merged;
        for (auto& [c, wt] : xs.mu.steps_from(orb.a)) {
            if (c.size() <= static_cast<size_t>(xs.k)) continue;  // step into the ball
            for (const CrossingTuple& tup : crossing_tuples(xs, c, orb.b, kEpsilon)) {
                std::vector<int> vars = tup.factors;
                std::sort(vars.begin(), vars.end());
                merged[vars] += wt;
                for (size_t j = 0; j < tup.factors.size(); ++j) {
                    std::pair<int, int> key{tup.factors[j], orb.id};
                    if (ps.edges.count(key)) continue;
                    EdgeWitness ew;
                    ew.source = tup.factors[j];
                    ew.aim = orb.id;
                    ew.c = c;
                    ew.tuple = tup;
                    ew.j = static_cast<int>(j);
                    ps.edges.emplace(key, std::move(ew));
                }
            }
        }
        for (auto& [vars, coeff] : merged) comp.monos.push_back(Monomial{coeff, vars});
    }
    return ps;
}

std::string psi_component_str(const PsiSystem& ps, int id) {
    const GroupSpec& g = ps.xs.mu.group;
    auto orb_label = [&](int oid) {
        const XiOrbit& o = ps.xs.orbits[oid];
        return "J[(" + word_str(g, o.a) + "," + word_str(g, o.b) + ")]";
    };
    const PsiComponent& comp = ps.comps[id];
    std::ostringstream os;
    os << orb_label(id) << " = " << rat_str(comp.constant);
    for (const Monomial& m : comp.monos) {
        os << " + " << rat_str(m.coeff);
        for (int v : m.vars) os << "*" << orb_label(v);
    }
    return os.str();
}

namespace {

// truncated series product, coefficients indexed 0..nmax
std::vector<Rat> series_mul(const std::vector<Rat>& a, const std::vector<Rat>& b, int nmax) {
    std::vector<Rat> out(nmax + 1, Rat(0));
    for (int i = 0; i <= nmax; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= nmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

}  // namespace

std::vector<std::vector<Rat>> series_iterate(const PsiSystem& ps, int nmax) {
    const int n = ps.size();
    std::vector<std::vector<Rat>> J(n, std::vector<Rat>(nmax + 1, Rat(0)));
    // coefficients of z^m stabilize once m <= iteration count
    for (int it = 0; it < nmax; ++it) {
        std::vector<std::vector<Rat>> next(n, std::vector<Rat>(nmax + 1, Rat(0)));
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> acc(nmax + 1, Rat(0));
            acc[0] = ps.comps[i].constant;
            for (const Monomial& m : ps.comps[i].monos) {
                std::vector<Rat> term(nmax + 1, Rat(0));
                term[0] = m.coeff;
                for (int v : m.vars) term = series_mul(term, J[v], nmax);
                for (int t = 0; t <= nmax; ++t) acc[t] += term[t];
            }
            // multiply by z: shift up one degree
            for (int t = nmax; t >= 1; --t) next[i][t] = acc[t - 1];
            next[i][0] = 0;
        }
        if (next == J) break;  // fixed point of the truncation reached early
        J = std::move(next);
    }
    return J;
}

}  // namespace treewalk
