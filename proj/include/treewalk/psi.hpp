#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "treewalk/errors.hpp"
#include "treewalk/rational.hpp"
#include "treewalk/xi.hpp"

namespace treewalk {

// coeff * prod_{v in vars} J[v]; vars is a sorted multiset of orbit ids
struct Monomial {
    Rat coeff;
    std::vector<int> vars;
};

// one component of psi: p(a,b) + sum of monomials
struct PsiComponent {
    Rat constant;
    std::vector<Monomial> monos;
};

// a concrete realization of the dependency of component `aim` on J[source]:
// first step c out of aim's a, and a crossing tuple whose j-th factor is source
struct EdgeWitness {
    int source = -1, aim = -1;
    Word c;
    CrossingTuple tuple;
    int j = 0;
};

struct PsiSystem {
    XiSystem xs;
    std::vector<PsiComponent> comps;                 // indexed by orbit id
    std::map<std::pair<int, int>, EdgeWitness> edges;  // (source, aim) -> witness

    int size() const { return static_cast<int>(comps.size()); }
};

PsiSystem build_psi(const XiSystem& xs);

// "J[(ba,b)] = 1/3 + 1/3*J[(ab,a)]*J[(ba,b)] + ..."; deterministic
std::string psi_component_str(const PsiSystem& ps, int id);

// truncated power series of the formal fixed point J = z*psi(J), exact
// coefficients; result[orbit][n] = coefficient of z^n, n <= nmax
std::vector<std::vector<Rat>> series_iterate(const PsiSystem& ps, int nmax);

template <typename T>
std::vector<T> psi_eval(const PsiSystem& ps, const std::vector<T>& J) {
    if (static_cast<int>(J.size()) != ps.size()) throw ComputeError("psi_eval: dimension mismatch");
    std::vector<T> out(J.size());
    for (int i = 0; i < ps.size(); ++i) {
        T acc = T(rat_double(ps.comps[i].constant));
        for (const Monomial& m : ps.comps[i].monos) {
            T term = T(rat_double(m.coeff));
            for (int v : m.vars) term *= J[v];
            acc += term;
        }
        out[i] = acc;
    }
    return out;
}

template <typename T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> psi_jacobian(const PsiSystem& ps,
                                                              const std::vector<T>& J) {
    if (static_cast<int>(J.size()) != ps.size()) throw ComputeError("psi_jacobian: dimension mismatch");
    const int n = ps.size();
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> M(n, n);
    M.setZero();
    for (int i = 0; i < n; ++i)
        for (const Monomial& m : ps.comps[i].monos) {
            const T c = T(rat_double(m.coeff));
            // d/dJ[v] of the monomial, per distinct v
            for (size_t p = 0; p < m.vars.size(); ++p) {
                if (p > 0 && m.vars[p] == m.vars[p - 1]) continue;
                T term = c;
                int mult = 0;
                for (size_t q = 0; q < m.vars.size(); ++q) {
                    if (m.vars[q] == m.vars[p]) {
                        ++mult;
                        continue;  // one factor removed per multiplicity
                    }
                    term *= J[m.vars[q]];
                }
                for (int e = 0; e < mult - 1; ++e) term *= J[m.vars[p]];
                M(i, m.vars[p]) += T(static_cast<double>(mult)) * term;
            }
        }
    return M;
}

// bilinear second derivative: out_i = sum_{v,w} d2 psi_i / dJ_v dJ_w * u_v * w_w
template <typename T>
std::vector<T> psi_d2(const PsiSystem& ps, const std::vector<T>& J, const std::vector<T>& u,
                      const std::vector<T>& w) {
    if (static_cast<int>(J.size()) != ps.size() || u.size() != J.size() || w.size() != J.size())
        throw ComputeError("psi_d2: dimension mismatch");
    std::vector<T> out(J.size(), T(0));
    for (int i = 0; i < ps.size(); ++i) {
        T acc = T(0);
        for (const Monomial& m : ps.comps[i].monos) {
            const size_t deg = m.vars.size();
            if (deg < 2) continue;
            const T c = T(rat_double(m.coeff));
            // sum over ordered pairs of distinct positions (p,q)
            for (size_t p = 0; p < deg; ++p)
                for (size_t q = 0; q < deg; ++q) {
                    if (p == q) continue;
                    T term = c * u[m.vars[p]] * w[m.vars[q]];
                    for (size_t r = 0; r < deg; ++r)
                        if (r != p && r != q) term *= J[m.vars[r]];
                    acc += term;
                }
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace treewalk
