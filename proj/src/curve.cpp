#include "treewalk/curve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "treewalk/errors.hpp"

namespace treewalk {

namespace {

constexpr double kDivergenceCap = 1e8;

double sup_norm(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double sup_norm_c(const std::vector<Cplx>& v) {
    double m = 0;
    for (const Cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> residual_vec(const PsiSystem& ps, double z, const std::vector<double>& J) {
    std::vector<double> r = psi_eval(ps, J);
    for (size_t i = 0; i < r.size(); ++i) r[i] = J[i] - z * r[i];
    return r;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

std::vector<double> from_eigen(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

// Hessian of psi contracted with nu: T(i,m) = sum_l d2 psi_i / dJ_m dJ_l nu_l
Eigen::MatrixXd contract_hessian(const PsiSystem& ps, const std::vector<double>& J,
                                 const std::vector<double>& nu) {
    const int n = ps.size();
    Eigen::MatrixXd T(n, n);
    std::vector<double> unit(n, 0.0);
    for (int m = 0; m < n; ++m) {
        unit[m] = 1.0;
        std::vector<double> col = psi_d2(ps, J, nu, unit);
        for (int i = 0; i < n; ++i) T(i, m) = col[i];
        unit[m] = 0.0;
    }
    return T;
}

// shifted power iteration for the Perron vector of a nonnegative matrix whose
// spectral radius is expected to be simple
Eigen::VectorXd perron_vector(const Eigen::MatrixXd& B, double& residual) {
    const int n = static_cast<int>(B.rows());
    Eigen::MatrixXd C = B + Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n) / n;
    double lam = 0;
    for (int it = 0; it < 20000; ++it) {
        Eigen::VectorXd y = C * x;
        lam = y.norm();
        if (lam == 0) break;
        y /= lam;
        const double delta = (y - x).cwiseAbs().maxCoeff();
        x = y;
        if (delta < 1e-15) break;
    }
    // orient positively and normalize to unit sup norm
    int arg = 0;
    x.cwiseAbs().maxCoeff(&arg);
    if (x[arg] < 0) x = -x;
    x /= x.cwiseAbs().maxCoeff();
    residual = (B * x - (lam - 1.0) * x).cwiseAbs().maxCoeff();
    return x;
}

}  // namespace

double spectral_radius(const Eigen::MatrixXd& A) {
    if (A.rows() == 0) return 0.0;
    if (A.rows() != A.cols()) throw ComputeError("spectral_radius: non-square input");
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const Eigen::MatrixXcd& A) {
    if (A.rows() == 0) return 0.0;
    if (A.rows() != A.cols()) throw ComputeError("spectral_radius: non-square input");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// monotone iteration from 0 with Newton polish; real z >= 0
SolveStatus solve_real(const PsiSystem& ps, double z, double tol, std::vector<double>& J_out) {
    const int n = ps.size();
    std::vector<double> J(n, 0.0);
    if (z == 0) {
        J_out = J;
        return SolveStatus::Converged;
    }
    const int budget = 200000;
    for (int it = 0; it < budget; ++it) {
        std::vector<double> Jn = psi_eval(ps, J);
        for (int i = 0; i < n; ++i) Jn[i] *= z;
        if (sup_norm(Jn) > kDivergenceCap) return SolveStatus::Diverged;
        double delta = 0;
        for (int i = 0; i < n; ++i) delta = std::max(delta, std::abs(Jn[i] - J[i]));
        J = std::move(Jn);
        if (delta < 0.1 * tol) break;
        // periodic Newton acceleration once the iterates have settled a bit
        if (it > 0 && it % 400 == 0) {
            std::vector<double> trial = J;
            bool ok = true;
            for (int nit = 0; nit < 30; ++nit) {
                Eigen::VectorXd r = to_eigen(residual_vec(ps, z, trial));
                if (r.cwiseAbs().maxCoeff() < 0.1 * tol) break;
                Eigen::MatrixXd A =
                    Eigen::MatrixXd::Identity(n, n) - z * psi_jacobian(ps, trial);
                Eigen::VectorXd step = A.partialPivLu().solve(r);
                if (!step.allFinite()) {
                    ok = false;
                    break;
                }
                for (int i = 0; i < n; ++i) trial[i] -= step[i];
            }
            // accept only a nearby nonnegative solution (stay on the lower branch)
            if (ok && sup_norm(residual_vec(ps, z, trial)) < 0.1 * tol) {
                double far = 0;
                bool nonneg = true;
                for (int i = 0; i < n; ++i) {
                    far = std::max(far, std::abs(trial[i] - J[i]));
                    nonneg = nonneg && trial[i] > -1e-12;
                }
                if (nonneg && far < 0.05 * (1.0 + sup_norm(J))) {
                    J = trial;
                    break;
                }
            }
        }
    }
    if (sup_norm(residual_vec(ps, z, J)) > tol) return SolveStatus::NoConvergence;
    J_out = J;
    return SolveStatus::Converged;
}

// complex Newton corrector
bool newton_complex(const PsiSystem& ps, Cplx z, std::vector<Cplx>& J, double tol) {
    const int n = ps.size();
    for (int it = 0; it < 50; ++it) {
        std::vector<Cplx> r = psi_eval(ps, J);
        double rn = 0;
        for (int i = 0; i < n; ++i) {
            r[i] = J[i] - z * r[i];
            rn = std::max(rn, std::abs(r[i]));
        }
        if (rn < tol) return true;
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n) - z * psi_jacobian(ps, J);
        Eigen::VectorXcd rv(n);
        for (int i = 0; i < n; ++i) rv[i] = r[i];
        Eigen::VectorXcd step = A.partialPivLu().solve(rv);
        if (!step.allFinite()) return false;
        for (int i = 0; i < n; ++i) J[i] -= step[i];
        if (sup_norm_c(J) > kDivergenceCap) return false;
    }
    return false;
}

}  // namespace

SolveResult try_solve_v(const PsiSystem& ps, Cplx z, double tol) {
    SolveResult res;
    const int n = ps.size();
    res.point.z = z;
    if (std::abs(z) < 1e-300) {
        res.status = SolveStatus::Converged;
        res.point.J.assign(n, Cplx(0));
        res.point.residual = 0;
        return res;
    }
    if (z.imag() == 0 && z.real() > 0) {
        std::vector<double> J;
        res.status = solve_real(ps, z.real(), tol, J);
        if (res.status != SolveStatus::Converged) return res;
        res.point.J.assign(J.begin(), J.end());
        std::vector<double> r = residual_vec(ps, z.real(), J);
        res.point.residual = sup_norm(r);
        return res;
    }
    // homotopy along the ray t*z, t: 0 -> 1
    std::vector<Cplx> J(n, Cplx(0));
    double t = 0, step = 0.1;
    while (t < 1.0) {
        const double tn = std::min(1.0, t + step);
        std::vector<Cplx> trial = J;
        if (newton_complex(ps, z * tn, trial, tol)) {
            J = std::move(trial);
            t = tn;
            if (step < 0.1) step *= 2;
        } else {
            step /= 2;
            if (step < 1e-5) {
                res.status = sup_norm_c(J) > 0.5 * kDivergenceCap ? SolveStatus::Diverged
                                                                  : SolveStatus::NoConvergence;
                return res;
            }
        }
    }
    res.status = SolveStatus::Converged;
    res.point.J = J;
    std::vector<Cplx> r = psi_eval(ps, J);
    double rn = 0;
    for (int i = 0; i < n; ++i) rn = std::max(rn, std::abs(J[i] - z * r[i]));
    res.point.residual = rn;
    return res;
}

CurvePoint solve_v(const PsiSystem& ps, Cplx z, double tol) {
    SolveResult res = try_solve_v(ps, z, tol);
    if (res.status == SolveStatus::Diverged)
        throw ComputeError("solve_v: iteration diverged (z beyond the curve branch)");
    if (res.status == SolveStatus::NoConvergence)
        throw ComputeError("solve_v: no convergence within the iteration budget");
    return res.point;
}

std::vector<double> newton_solve(const PsiSystem& ps, double z, std::vector<double> J,
                                 double tol) {
    const int n = ps.size();
    for (int it = 0; it < 100; ++it) {
        Eigen::VectorXd r = to_eigen(residual_vec(ps, z, J));
        if (r.cwiseAbs().maxCoeff() < tol) return J;
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - z * psi_jacobian(ps, J);
        Eigen::VectorXd step = A.partialPivLu().solve(r);
        if (!step.allFinite()) throw ComputeError("newton_solve: singular Jacobian");
        for (int i = 0; i < n; ++i) J[i] -= step[i];
        if (sup_norm(J) > kDivergenceCap) throw ComputeError("newton_solve: diverged");
    }
    throw ComputeError("newton_solve: no convergence");
}

RadiusResult find_R(const PsiSystem& ps, double tol) {
    const int n = ps.size();
    const double probe_tol = 1e-10;

    auto predicate = [&](double r, std::vector<double>& J) {
        SolveStatus st = solve_real(ps, r, probe_tol, J);
        if (st != SolveStatus::Converged) return false;
        const double rho = spectral_radius(psi_jacobian(ps, J));
        return r * rho < 1.0;
    };

    // bracket [lo, hi] with predicate true at lo, false at hi
    double lo = 0.5, hi = 0;
    std::vector<double> J_lo;
    {
        std::vector<double> J;
        if (!predicate(lo, J)) throw ComputeError("find_R: predicate fails at r = 0.5");
        J_lo = J;
        double r = 1.0;
        const double r_max = 64.0;
        while (hi == 0 && r <= r_max) {
            if (predicate(r, J)) {
                lo = r;
                J_lo = J;
                r *= 1.5;
            } else {
                hi = r;
            }
        }
        if (hi == 0) throw ComputeError("find_R: bracket not found below r_max");
    }
    for (int it = 0; it < 40 && hi - lo > 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        std::vector<double> J;
        if (predicate(mid, J)) {
            lo = mid;
            J_lo = J;
        } else {
            hi = mid;
        }
    }

    // Newton on the fold system [J - z psi(J); (I - z Dpsi) nu; sum(nu) - 1]
    Eigen::VectorXd J = to_eigen(J_lo);
    double z = lo;
    double res_perron = 0;
    Eigen::VectorXd nu = perron_vector(z * psi_jacobian(ps, J_lo), res_perron);
    nu /= nu.sum();
    double fold_residual = 0;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> Jv = from_eigen(J);
        std::vector<double> nuv = from_eigen(nu);
        Eigen::MatrixXd D = psi_jacobian(ps, Jv);
        Eigen::VectorXd psi_v = to_eigen(psi_eval(ps, Jv));
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - z * D;

        Eigen::VectorXd F(2 * n + 1);
        F.segment(0, n) = J - z * psi_v;
        F.segment(n, n) = A * nu;
        F[2 * n] = nu.sum() - 1.0;
        fold_residual = F.cwiseAbs().maxCoeff();
        if (fold_residual < tol * 1e-2) {
            converged = true;
            break;
        }

        Eigen::MatrixXd T = contract_hessian(ps, Jv, nuv);
        Eigen::MatrixXd Big = Eigen::MatrixXd::Zero(2 * n + 1, 2 * n + 1);
        Big.block(0, 0, n, n) = A;
        Big.block(0, 2 * n, n, 1) = -psi_v;
        Big.block(n, 0, n, n) = -z * T;
        Big.block(n, n, n, n) = A;
        Big.block(n, 2 * n, n, 1) = -(D * nu);
        Big.block(2 * n, n, 1, n) = Eigen::MatrixXd::Ones(1, n);
        Eigen::VectorXd step = Big.partialPivLu().solve(F);
        if (!step.allFinite()) throw ComputeError("find_R: fold Newton produced non-finite step");
        J -= step.segment(0, n);
        nu -= step.segment(n, n);
        z -= step[2 * n];
    }
    if (!converged) throw ComputeError("find_R: fold Newton did not converge");

    RadiusResult out;
    out.R = z;
    out.v_R = from_eigen(J);
    out.fold_residual = fold_residual;
    Eigen::MatrixXd D = psi_jacobian(ps, out.v_R);
    out.rho = spectral_radius(D);
    double res_r = 0, res_l = 0;
    Eigen::VectorXd right = perron_vector(z * D, res_r);
    Eigen::VectorXd left = perron_vector(Eigen::MatrixXd(z * D.transpose()), res_l);
    out.nu = from_eigen(right);
    out.left = from_eigen(left);
    return out;
}

SpectralReport block_spectra(const PsiSystem& ps, const Condensation& c, double z,
                             const std::vector<double>& J) {
    const int n = ps.size();
    Eigen::MatrixXd D = psi_jacobian(ps, J);
    // triangularity: a nonzero entry (i, m) needs comp(m) preceq comp(i)
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < n; ++m)
            if (std::abs(D(i, m)) > 1e-14 && !c.preceq(c.comp[m], c.comp[i]))
                throw InvariantViolation("block triangularity violated");

    SpectralReport rep;
    rep.rho = spectral_radius(D);
    for (int alpha = 0; alpha < c.n_sccs(); ++alpha) {
        const std::vector<int>& idx = c.members[alpha];
        const int m = static_cast<int>(idx.size());
        Eigen::MatrixXd B(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) B(i, j) = D(idx[i], idx[j]);
        BlockSpectrum bs;
        bs.scc = alpha;
        bs.dim = m;
        bs.rho_scaled = z * spectral_radius(B);
        bs.is_sink = alpha == c.sink;
        // boolean reachability within the block
        std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) reach[i][j] = B(i, j) != 0.0;
        for (int mid = 0; mid < m; ++mid)
            for (int i = 0; i < m; ++i)
                if (reach[i][mid])
                    for (int j = 0; j < m; ++j)
                        if (reach[mid][j]) reach[i][j] = true;
        bs.irreducible = true;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) bs.irreducible = bs.irreducible && reach[i][j];
        rep.blocks.push_back(bs);
    }
    return rep;
}

Tangent tangent_at_R(const PsiSystem& ps, const Condensation& c, double R,
                     const std::vector<double>& v_R) {
    const int n = ps.size();
    Eigen::MatrixXd B = R * psi_jacobian(ps, v_R);
    Tangent t;
    double res_r = 0, res_l = 0;
    Eigen::VectorXd nu = perron_vector(B, res_r);
    Eigen::VectorXd left = perron_vector(Eigen::MatrixXd(B.transpose()), res_l);
    t.nu = from_eigen(nu);
    t.left = from_eigen(left);
    t.eigen_residual = std::max(res_r, res_l);

    Eigen::MatrixXd K = Eigen::MatrixXd::Identity(n, n) - B;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
    Eigen::VectorXd sv = svd.singularValues();  // descending
    const double smallest = sv[n - 1];
    const double second = n >= 2 ? sv[n - 2] : 1.0;
    t.kernel_gap = second;
    if (smallest > 1e-8 || (n >= 2 && second < 1e-8))
        throw InvariantViolation("tangent_at_R: eigenvalue 1/R is not simple to tolerance");
    (void)c;
    return t;
}

double second_derivative(const PsiSystem& ps, double R, const std::vector<double>& v_R,
                         const std::vector<double>& nu, const std::vector<double>& left) {
    std::vector<double> d2 = psi_d2(ps, v_R, nu, nu);
    std::vector<double> pv = psi_eval(ps, v_R);
    double num = 0, den = 0;
    for (size_t i = 0; i < d2.size(); ++i) {
        num += left[i] * d2[i];
        den += left[i] * pv[i];
    }
    if (std::abs(den) < 1e-13) throw ComputeError("second_derivative: degenerate denominator");
    const double r2 = -R * num / den;
    if (std::abs(r2) < 1e-9)
        throw InvariantViolation("second_derivative: r''(0) vanishes to tolerance");
    return r2;
}

double second_derivative_fd(const PsiSystem& ps, double R, const std::vector<double>& v_R,
                            const std::vector<double>& nu) {
    const int n = ps.size();
    double nu_dot = 0;
    for (double x : nu) nu_dot += x * x;

    std::vector<double> ss, zs;
    const double deltas[] = {2e-5, 5e-5, 1e-4, 2e-4, 4e-4, 8e-4};
    for (double delta : deltas) {
        const double z = R * (1.0 - delta);
        std::vector<double> lower;
        if (solve_real(ps, z, 1e-13, lower) != SolveStatus::Converged)
            throw ComputeError("second_derivative_fd: lower branch solve failed");
        // reflected initial guess lands on the upper branch of the fold
        std::vector<double> upper(n);
        for (int i = 0; i < n; ++i) upper[i] = 2 * v_R[i] - lower[i];
        upper = newton_solve(ps, z, upper);
        for (const std::vector<double>* J : {&lower, &upper}) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += nu[i] * ((*J)[i] - v_R[i]);
            s /= nu_dot;
            ss.push_back(s);
            zs.push_back(z);
        }
    }
    // fit z = c0 + c1 s + ... + c4 s^4; the quartic term absorbs the
    // next curvature correction so 2*c2 is clean to ~1e-5 relative
    const int m = static_cast<int>(ss.size());
    Eigen::MatrixXd X(m, 5);
    Eigen::VectorXd Y(m);
    for (int i = 0; i < m; ++i) {
        double p = 1;
        for (int j = 0; j < 5; ++j) {
            X(i, j) = p;
            p *= ss[i];
        }
        Y[i] = zs[i];
    }
    Eigen::VectorXd coef = X.colPivHouseholderQr().solve(Y);
    return 2.0 * coef[2];
}

double lambda_derivative(const PsiSystem& ps, double R, const std::vector<double>& v_R) {
    const int n = ps.size();
    Eigen::MatrixXd A(n, n + 1);
    A.col(0) = -to_eigen(psi_eval(ps, v_R));
    A.block(0, 1, n, n) = Eigen::MatrixXd::Identity(n, n) - R * psi_jacobian(ps, v_R);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    Eigen::VectorXd kernel = svd.matrixV().col(n);  // smallest singular value last
    const double jmax = kernel.tail(n).cwiseAbs().maxCoeff();
    if (jmax < 1e-12)
        throw ComputeError("lambda_derivative: kernel vector has no J component");
    return std::abs(kernel[0]) / jmax;
}

double g_derivative(const PsiSystem& ps, const Word& x, const Word& y, double R,
                    const std::vector<double>& v_R, const std::vector<double>& nu) {
    const double h = 1e-6;
    std::vector<Cplx> Jp(v_R.size()), Jm(v_R.size());
    for (size_t i = 0; i < v_R.size(); ++i) {
        Jp[i] = v_R[i] + h * nu[i];
        Jm[i] = v_R[i] - h * nu[i];
    }
    const Cplx gp = g_function(ps, x, y, Cplx(R), Jp);
    const Cplx gm = g_function(ps, x, y, Cplx(R), Jm);
    return (gp.real() - gm.real()) / (2 * h);
}

Cplx j_bracket(const PsiSystem& ps, const std::vector<Cplx>& J, const Word& c, const Word& y,
               const Word& b) {
    const GroupSpec& g = ps.xs.mu.group;
    const int k = ps.xs.k;
    if (distance(g, c, y) <= k) {
        if (c == b) return Cplx(1);
        throw ComputeError("j_bracket: c inside the ball with c != b");
    }
    Cplx acc(0);
    for (const CrossingTuple& tup : crossing_tuples(ps.xs, c, b, y)) {
        Cplx prod(1);
        for (int f : tup.factors) prod *= J[f];
        acc += prod;
    }
    return acc;
}

namespace {

// solve the ball linear system for all f_{c,y}, c in ball(y,k) \ {y}
std::vector<Cplx> f_ball_values(const PsiSystem& ps, const Word& y, Cplx z,
                                const std::vector<Cplx>& J, std::vector<Word>& verts) {
    const StepMeasure& mu = ps.xs.mu;
    const GroupSpec& g = mu.group;
    const int k = ps.xs.k;
    verts.clear();
    for (const Word& w : ball(g, y, k))
        if (w != y) verts.push_back(w);
    const int m = static_cast<int>(verts.size());
    std::map<Word, int> index;
    for (int i = 0; i < m; ++i) index[verts[i]] = i;

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        // direct steps within the ball plus excursions re-entering at d
        for (auto& [c1, wt] : mu.steps_from(verts[i])) {
            const double p = rat_double(wt);
            if (distance(g, c1, y) <= k) {
                auto it = index.find(c1);
                if (it != index.end()) M(i, it->second) += p;
                // steps to y itself belong to pbar, not to M
            } else {
                for (int j = 0; j < m; ++j) {
                    Cplx br = j_bracket(ps, J, c1, y, verts[j]);
                    if (br != Cplx(0)) M(i, j) += p * br;
                }
            }
        }
    }
    Eigen::VectorXcd pbar(m);
    for (int i = 0; i < m; ++i) pbar[i] = rat_double(mu.p(verts[i], y));
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(m, m) - z * M;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    Eigen::VectorXcd f = lu.solve(z * pbar);
    if (!f.allFinite()) throw ComputeError("f_function: singular linear system");
    return std::vector<Cplx>(f.data(), f.data() + m);
}

}  // namespace

Cplx f_function(const PsiSystem& ps, const Word& x, const Word& y, Cplx z,
                const std::vector<Cplx>& J) {
    if (x == y) return Cplx(1);
    const GroupSpec& g = ps.xs.mu.group;
    const int k = ps.xs.k;
    std::vector<Word> verts;
    std::vector<Cplx> f = f_ball_values(ps, y, z, J, verts);
    if (distance(g, x, y) <= k) {
        for (size_t i = 0; i < verts.size(); ++i)
            if (verts[i] == x) return f[i];
        throw ComputeError("f_function: ball vertex not indexed");
    }
    Cplx acc(0);
    for (size_t i = 0; i < verts.size(); ++i) {
        Cplx br = j_bracket(ps, J, x, y, verts[i]);
        if (br != Cplx(0)) acc += br * f[i];
    }
    return acc;
}

Cplx g_function(const PsiSystem& ps, const Word& x, const Word& y, Cplx z,
                const std::vector<Cplx>& J) {
    const StepMeasure& mu = ps.xs.mu;
    Cplx acc(0);
    for (auto& [c, wt] : mu.steps_from(y)) acc += z * rat_double(wt) * f_function(ps, c, y, z, J);
    const Cplx den = Cplx(1) - acc;
    if (std::abs(den) < 1e-12) throw ComputeError("g_function: vanishing denominator");
    const Cplx gyy = Cplx(1) / den;
    if (x == y) return gyy;
    return f_function(ps, x, y, z, J) * gyy;
}

FRadiusClass classify_f_radius(const PsiSystem& ps, const Word& x, const Word& y, int M,
                               double R, const std::vector<double>& v_R,
                               const std::vector<double>& nu, double deriv_threshold) {
    const StepMeasure& mu = ps.xs.mu;
    const GroupSpec& g = mu.group;
    const int k = ps.xs.k;
    FRadiusClass out;
    if (x == y) {
        out.beyond_R = true;
        out.derivative = 0.0;
        return out;
    }
    // first-passage paths avoid only {y}; excursion measured from y
    bool deep = distance(g, x, y) > M;
    if (!deep) {
        const int cap = M + k;
        std::deque<Word> queue{x};
        std::unordered_set<Word> seen{x};
        while (!queue.empty() && !deep) {
            Word u = queue.front();
            queue.pop_front();
            for (auto& [v, wt] : mu.steps_from(u)) {
                if (v == y) continue;
                const int h = distance(g, v, y);
                if (h > cap) continue;
                if (!seen.insert(v).second) continue;
                if (h > M) {
                    deep = true;
                    break;
                }
                queue.push_back(std::move(v));
            }
        }
    }
    out.beyond_R = !deep;

    const double h = 1e-6;
    std::vector<Cplx> Jp(v_R.size()), Jm(v_R.size());
    for (size_t i = 0; i < v_R.size(); ++i) {
        Jp[i] = v_R[i] + h * nu[i];
        Jm[i] = v_R[i] - h * nu[i];
    }
    const Cplx fp = f_function(ps, x, y, Cplx(R), Jp);
    const Cplx fm = f_function(ps, x, y, Cplx(R), Jm);
    out.derivative = (fp.real() - fm.real()) / (2 * h);
    const bool flat = std::abs(out.derivative) < deriv_threshold;
    if (flat != out.beyond_R)
        throw InvariantViolation("classify_f_radius: excursion test and derivative test disagree");
    return out;
}

LeadingConstant leading_constant(const PsiSystem& ps, const Word& x, const Word& y, double R,
                                 int d) {
    const int points = 12;
    std::vector<double> deltas(points), G(points);
    std::vector<double> J;
    for (int i = 0; i < points; ++i) {
        // log-spaced delta from 10^-2.5 down to 10^-5
        const double expo = -2.5 - 2.5 * i / (points - 1);
        deltas[i] = std::pow(10.0, expo);
        const double z = R * (1.0 - deltas[i]);
        if (J.empty()) {
            if (solve_real(ps, z, 1e-13, J) != SolveStatus::Converged)
                throw ComputeError("leading_constant: curve solve failed");
        } else {
            J = newton_solve(ps, z, J);
        }
        std::vector<Cplx> Jc(J.begin(), J.end());
        G[i] = g_function(ps, x, y, Cplx(z), Jc).real();
    }
    // fit G = c0 + c1 sqrt(delta) + c2 delta + c3 delta^(3/2) + c4 delta^2
    Eigen::MatrixXd X(points, 5);
    Eigen::VectorXd Y(points);
    for (int i = 0; i < points; ++i) {
        const double r = std::sqrt(deltas[i]);
        X(i, 0) = 1;
        X(i, 1) = r;
        X(i, 2) = deltas[i];
        X(i, 3) = deltas[i] * r;
        X(i, 4) = deltas[i] * deltas[i];
        Y[i] = G[i];
    }
    Eigen::VectorXd coef = X.colPivHouseholderQr().solve(Y);
    LeadingConstant out;
    out.G_R = coef[0];
    out.g1 = -coef[1];
    out.C = d * out.g1 / (2.0 * std::sqrt(M_PI));
    out.fit_residual = (X * coef - Y).cwiseAbs().maxCoeff();
    if (out.fit_residual > 1e-5 * (1.0 + std::abs(out.G_R)))
        throw ComputeError("leading_constant: fit residual above threshold");
    return out;
}

std::vector<CircleSample> circle_spectrum_scan(const PsiSystem& ps, double R, int d,
                                               int samples, double eps) {
    std::vector<CircleSample> rows;
    const double r = R * (1.0 - eps);
    std::vector<double> J_real;
    if (solve_real(ps, r, 1e-12, J_real) != SolveStatus::Converged)
        throw ComputeError("circle_spectrum_scan: real base point failed");
    for (int j = 0; j < samples; ++j) {
        CircleSample row;
        row.phi = 2.0 * M_PI * j / samples;
        const Cplx z = std::polar(r, row.phi);
        SolveResult sr = try_solve_v(ps, z, 1e-12);
        row.converged = sr.status == SolveStatus::Converged;
        if (row.converged) {
            Eigen::MatrixXcd D = psi_jacobian(ps, sr.point.J);
            row.rho_scaled = r * spectral_radius(D);
            double ratio = 0;
            for (size_t i = 0; i < J_real.size(); ++i)
                if (J_real[i] > 1e-300)
                    ratio = std::max(ratio, std::abs(sr.point.J[i]) / J_real[i]);
            row.max_ratio = ratio;
        }
        rows.push_back(row);
    }
    (void)d;
    return rows;
}

}  // namespace treewalk
