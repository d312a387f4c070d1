#pragma once

#include <vector>

#include "treewalk/measure.hpp"

namespace treewalk {

// Exact n-step probabilities p^(n), n = 0..nmax, from straight dynamic
// programming over the tree. Used as the ground truth the algebraic side is
// checked against.
struct SeriesTable {
    std::vector<Rat> exact;  // index n
    std::vector<double> approx() const;
    // partial sum of p^(n) z^n
    double eval(double z) const;
};

// all paths x -> y
SeriesTable dp_full(const StepMeasure& m, const Word& x, const Word& y, int nmax);

// paths a -> b whose vertices, except the final one, stay outside ball(y, k)
SeriesTable dp_restricted(const StepMeasure& m, const Word& a, const Word& b,
                          const Word& y, int nmax);

// paths x -> y avoiding y until the final step (first-passage series; the
// n = 0 entry is 1 when x == y by convention)
SeriesTable dp_first_passage(const StepMeasure& m, const Word& x, const Word& y, int nmax);

// Float fast path for radial measures: the distance from eps is a Markov
// chain on the nonnegative integers, so return probabilities p^(n)(eps,eps)
// reach n ~ 1e5 without touching the tree. Internally log-scaled per layer
// to dodge underflow.
std::vector<double> dp_isotropic(const StepMeasure& m, int nmax);

// least-squares fit of log p_n = log C - n log R - e log n over the allowed
// residue class (n = dq + r), using the top decade of available n
struct AsymptoticFit {
    double R = 0;         // from the regression slope
    double C = 0;
    double exponent = 0;  // e, expected ~ 3/2
    double resid_rms = 0;
    double resid_trend = 0;  // mean(second half) - mean(first half)
    double R_ratio = 0;      // cruder cross-check: median of (p_n / p_{n+d})^(1/d)
    int n_used = 0;
};

AsymptoticFit fit_asymptotics(const std::vector<double>& p, int period_d, int residue_r);

}  // namespace treewalk
