#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "treewalk/digraph.hpp"
#include "treewalk/psi.hpp"

namespace treewalk {

using Cplx = std::complex<double>;

struct CurvePoint {
    Cplx z;
    std::vector<Cplx> J;
    double residual = 0.0;  // sup norm of J - z*psi(J)
};

enum class SolveStatus { Converged, Diverged, NoConvergence };

struct SolveResult {
    SolveStatus status = SolveStatus::NoConvergence;
    CurvePoint point;
};

// fixed point of J = z*psi(J): monotone iteration from 0 for real z, homotopy
// continuation along the ray for complex z; Diverged reports a z beyond the
// curve branch
SolveResult try_solve_v(const PsiSystem& ps, Cplx z, double tol = 1e-12);

// throwing wrapper around try_solve_v
CurvePoint solve_v(const PsiSystem& ps, Cplx z, double tol = 1e-12);

// real Newton refinement from an initial guess (used for the upper branch)
std::vector<double> newton_solve(const PsiSystem& ps, double z, std::vector<double> J,
                                 double tol = 1e-13);

double spectral_radius(const Eigen::MatrixXd& A);
double spectral_radius(const Eigen::MatrixXcd& A);

struct RadiusResult {
    double R = 0.0;
    std::vector<double> v_R;        // curve point at z = R
    double rho = 0.0;               // spectral radius of D_{v_R} psi
    std::vector<double> nu;         // right Perron vector, sup norm 1
    std::vector<double> left;       // left Perron vector, sup norm 1
    double fold_residual = 0.0;     // final residual of the augmented fold system
};

// bisection on "converges and r*rho < 1", then Newton on the fold system
// [J - z psi(J); (I - z Dpsi)nu; <c,nu> - 1]
RadiusResult find_R(const PsiSystem& ps, double tol = 1e-12);

struct BlockSpectrum {
    int scc = 0;
    int dim = 0;
    double rho_scaled = 0.0;  // z * rho(diagonal Jacobian block)
    bool is_sink = false;
    bool irreducible = false;  // strictly positive iterate sum (checked on the sink)
};

struct SpectralReport {
    double rho = 0.0;  // spectral radius of the full Jacobian at the point
    std::vector<BlockSpectrum> blocks;
};

// per-SCC diagonal block spectral data at a real curve point; verifies block
// lower-triangularity of the Jacobian in the condensation order
SpectralReport block_spectra(const PsiSystem& ps, const Condensation& c, double z,
                             const std::vector<double>& J);

struct Tangent {
    std::vector<double> nu;    // right Perron vector of D_{v_R} psi, sup norm 1
    std::vector<double> left;  // left Perron vector, sup norm 1
    double eigen_residual = 0.0;
    double kernel_gap = 0.0;  // second smallest singular value of I - R*Dpsi
};

// power iteration for both Perron vectors at z = R; throws when the eigenvalue
// 1/R is not simple to tolerance
Tangent tangent_at_R(const PsiSystem& ps, const Condensation& c, double R,
                     const std::vector<double>& v_R);

// r''(0) = -R <u, D2psi(nu,nu)> / <u, psi(v_R)> with J'(0) = nu, ||nu||_inf = 1
double second_derivative(const PsiSystem& ps, double R, const std::vector<double>& v_R,
                         const std::vector<double>& nu, const std::vector<double>& left);

// finite-difference cross-check: parabola/cubic fit of z against the tangent
// coordinate s = <nu, J - v_R>/<nu, nu> across both branches of the fold
double second_derivative_fd(const PsiSystem& ps, double R, const std::vector<double>& v_R,
                            const std::vector<double>& nu);

// |z-component| of the curve tangent at the fold: the kernel vector of
// [-psi(v_R) | I - R Dpsi(v_R)], normalized to unit sup norm on the J slots.
// The z-coordinate map is linear, so this is |D lambda| on the tangent space
// and must vanish.
double lambda_derivative(const PsiSystem& ps, double R, const std::vector<double>& v_R);

// directional derivative of g_{x,y} along nu at (R, v_R), by central FD
double g_derivative(const PsiSystem& ps, const Word& x, const Word& y, double R,
                    const std::vector<double>& v_R, const std::vector<double>& nu);

// sum over crossing tuples c -> b of products of J factors; 1 when c = b
// inside the ball (degenerate convention)
Cplx j_bracket(const PsiSystem& ps, const std::vector<Cplx>& J, const Word& c, const Word& y,
               const Word& b);

// first-passage generating value f_{x,y}(z, J) and Green value g_{x,y}(z, J)
Cplx f_function(const PsiSystem& ps, const Word& x, const Word& y, Cplx z,
                const std::vector<Cplx>& J);
Cplx g_function(const PsiSystem& ps, const Word& x, const Word& y, Cplx z,
                const std::vector<Cplx>& J);

struct FRadiusClass {
    bool beyond_R = false;  // R_F(x,y) > R
    double derivative = 0.0;  // directional derivative of f_{x,y} along nu at u(R)
};

// excursion dichotomy for the radius of f_{x,y}, cross-checked against the
// derivative along the tangent direction
FRadiusClass classify_f_radius(const PsiSystem& ps, const Word& x, const Word& y, int M,
                               double R, const std::vector<double>& v_R,
                               const std::vector<double>& nu, double deriv_threshold = 1e-6);

struct LeadingConstant {
    double C = 0.0;   // p^(n) ~ C R^{-n} n^{-3/2} on the admissible residue class
    double g1 = 0.0;  // G ~ G_R - g1 sqrt(1 - z/R)
    double G_R = 0.0;
    double fit_residual = 0.0;
};

LeadingConstant leading_constant(const PsiSystem& ps, const Word& x, const Word& y, double R,
                                 int d);

struct CircleSample {
    double phi = 0.0;
    double rho_scaled = 0.0;  // |z| * rho(D_{v_z} psi)
    double max_ratio = 0.0;   // max_theta |v_z(theta)| / v_|z|(theta)
    bool converged = false;
};

// samples z = (1-eps) R e^{i phi}; near phi = 2 pi j / d the scaled spectral
// radius approaches 1, strictly below elsewhere
std::vector<CircleSample> circle_spectrum_scan(const PsiSystem& ps, double R, int d,
                                               int samples, double eps = 1e-3);

}  // namespace treewalk
