#include "treewalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Dense>

#include "treewalk/errors.hpp"

namespace treewalk {

std::vector<double> SeriesTable::approx() const {
    std::vector<double> out;
    out.reserve(exact.size());
    for (const Rat& r : exact) out.push_back(rat_double(r));
    return out;
}

double SeriesTable::eval(double z) const {
    double sum = 0, zn = 1;
    for (const Rat& r : exact) {
        sum += rat_double(r) * zn;
        zn *= z;
    }
    return sum;
}

namespace {

// one forward layer sweep with pruning: drop vertices that cannot reach the
// target within the remaining steps, or violate the caller's constraint
template <typename Allowed>
SeriesTable dp_generic(const StepMeasure& m, const Word& start, const Word& target,
                       int nmax, Allowed&& allowed_intermediate) {
    const GroupSpec& g = m.group;
    SeriesTable table;
    table.exact.assign(static_cast<size_t>(nmax) + 1, Rat(0));
    if (start == target) table.exact[0] = 1;
    std::unordered_map<Word, Rat> layer;
    if (allowed_intermediate(start) || start == target) layer.emplace(start, Rat(1));
    for (int n = 1; n <= nmax && !layer.empty(); ++n) {
        std::unordered_map<Word, Rat> next;
        const int remaining = (nmax - n) * m.range_k;
        for (const auto& [u, prob] : layer) {
            // paths continue only from vertices satisfying the constraint
            if (!allowed_intermediate(u)) continue;
            for (const auto& [v, wt] : m.steps_from(u)) {
                if (v == target) {
                    table.exact[static_cast<size_t>(n)] += prob * wt;
                    if (!allowed_intermediate(v)) continue;  // recorded, cannot continue
                }
                if (!allowed_intermediate(v) && v != target) continue;
                if (distance(g, v, target) > remaining) continue;
                next[v] += prob * wt;
            }
        }
        layer = std::move(next);
    }
    return table;
}

}  // namespace

SeriesTable dp_full(const StepMeasure& m, const Word& x, const Word& y, int nmax) {
    return dp_generic(m, x, y, nmax, [](const Word&) { return true; });
}

SeriesTable dp_restricted(const StepMeasure& m, const Word& a, const Word& b,
                          const Word& y, int nmax) {
    const GroupSpec& g = m.group;
    const int k = m.range_k;
    if (distance(g, a, y) <= k)
        throw ComputeError("dp_restricted: a must lie outside ball(y,k)");
    if (distance(g, b, y) > k)
        throw ComputeError("dp_restricted: b must lie in ball(y,k)");
    return dp_generic(m, a, b, nmax,
                      [&](const Word& u) { return distance(g, u, y) > k; });
}

SeriesTable dp_first_passage(const StepMeasure& m, const Word& x, const Word& y, int nmax) {
    return dp_generic(m, x, y, nmax, [&](const Word& u) { return u != y; });
}

std::vector<double> dp_isotropic(const StepMeasure& m, int nmax) {
    if (!m.is_radial())
        throw ComputeError("dp_isotropic: measure is not radial");
    const GroupSpec& g = m.group;
    const int k = m.range_k;
    // distance-chain rows T[h][h'] for h = 0..k-1 (boundary) plus a
    // translation-invariant row, built from explicit representatives
    auto representative = [&](int len) {
        Word w;
        int prev = -1;
        for (int i = 0; i < len; ++i) {
            int s = 0;
            while (g.inverse(s) == prev) ++s;
            w.push_back(static_cast<char>(s));
            prev = s;
        }
        return w;
    };
    const int boundary = k;  // rows are shift-invariant from height k on
    std::vector<std::vector<std::pair<int, double>>> row(static_cast<size_t>(boundary) + 1);
    for (int h = 0; h <= boundary; ++h) {
        Word x = representative(h);
        std::unordered_map<int, double> acc;
        for (const auto& [v, wt] : m.steps_from(x))
            acc[static_cast<int>(v.size())] += rat_double(wt);
        for (const auto& [j, p] : acc) row[static_cast<size_t>(h)].emplace_back(j, p);
        std::sort(row[static_cast<size_t>(h)].begin(), row[static_cast<size_t>(h)].end());
    }

    std::vector<double> result(static_cast<size_t>(nmax) + 1, 0.0);
    result[0] = 1.0;
    // q[h] = P(distance = h after n steps) / scale, log(scale) tracked apart
    std::vector<double> q{1.0};
    double logscale = 0;
    for (int n = 1; n <= nmax; ++n) {
        const int dmax = std::min(n, nmax - n + 1) * k;
        std::vector<double> next(static_cast<size_t>(dmax) + 1, 0.0);
        for (int h = 0; h < static_cast<int>(q.size()); ++h) {
            if (q[static_cast<size_t>(h)] == 0) continue;
            const auto& r = row[static_cast<size_t>(std::min(h, boundary))];
            const int shift = h - std::min(h, boundary);
            for (const auto& [j, p] : r) {
                int h2 = j + shift;
                if (h2 <= dmax) next[static_cast<size_t>(h2)] += q[static_cast<size_t>(h)] * p;
            }
        }
        double mass = 0;
        for (double v : next) mass = std::max(mass, v);
        if (mass > 0 && (mass < 1e-150 || mass > 1e150)) {
            const double f = 1.0 / mass;
            for (double& v : next) v *= f;
            logscale -= std::log(f);
        }
        q = std::move(next);
        if (!q.empty()) {
            double v = q[0] == 0 ? 0 : std::exp(std::log(q[0]) + logscale);
            result[static_cast<size_t>(n)] = q[0] == 0 ? 0.0 : v;
        }
    }
    return result;
}

AsymptoticFit fit_asymptotics(const std::vector<double>& p, int period_d, int residue_r) {
    if (period_d <= 0) throw ComputeError("fit_asymptotics: period must be positive");
    std::vector<int> ns;
    const int nmax = static_cast<int>(p.size()) - 1;
    for (int n = std::max(2, nmax / 10); n <= nmax; ++n)
        if (n % period_d == residue_r % period_d && p[static_cast<size_t>(n)] > 0)
            ns.push_back(n);
    if (ns.size() < 8)
        throw ComputeError("fit_asymptotics: not enough positive terms in the residue class");
    // regress log p_n on (1, -n, -log n, 1/n); the 1/n regressor soaks up the
    // next-order correction, which otherwise biases the exponent and C
    const size_t cnt = ns.size();
    Eigen::MatrixXd X(static_cast<long>(cnt), 4);
    Eigen::VectorXd Y(static_cast<long>(cnt));
    for (size_t i = 0; i < cnt; ++i) {
        const double n = ns[i];
        X(static_cast<long>(i), 0) = 1.0;
        X(static_cast<long>(i), 1) = -n;
        X(static_cast<long>(i), 2) = -std::log(n);
        X(static_cast<long>(i), 3) = 1.0 / n;
        Y[static_cast<long>(i)] = std::log(p[static_cast<size_t>(ns[i])]);
    }
    Eigen::VectorXd coef = X.colPivHouseholderQr().solve(Y);
    AsymptoticFit fit;
    const double logC = coef[0];
    const double logR = coef[1];
    fit.exponent = coef[2];
    fit.C = std::exp(logC);
    fit.R = std::exp(logR);
    fit.n_used = static_cast<int>(cnt);
    // residual diagnostics
    Eigen::VectorXd rv = Y - X * coef;
    std::vector<double> res(rv.data(), rv.data() + rv.size());
    double rms = 0;
    for (double r2 : res) rms += r2 * r2;
    fit.resid_rms = std::sqrt(rms / static_cast<double>(cnt));
    double first = 0, second = 0;
    const size_t half = cnt / 2;
    for (size_t i = 0; i < half; ++i) first += res[i];
    for (size_t i = half; i < cnt; ++i) second += res[i];
    fit.resid_trend = second / static_cast<double>(cnt - half) - first / static_cast<double>(half);
    // ratio-based radius cross-check
    std::vector<double> ratios;
    for (size_t i = 0; i + 1 < cnt; ++i) {
        double num = p[static_cast<size_t>(ns[i])], den = p[static_cast<size_t>(ns[i + 1])];
        // strip the polynomial factor before taking the root
        double corr = std::pow(static_cast<double>(ns[i + 1]) / ns[i], -fit.exponent);
        ratios.push_back(std::pow(num / den * corr,
                                  1.0 / static_cast<double>(ns[i + 1] - ns[i])));
    }
    if (!ratios.empty()) {
        std::nth_element(ratios.begin(), ratios.begin() + static_cast<long>(ratios.size() / 2),
                         ratios.end());
        fit.R_ratio = ratios[ratios.size() / 2];
    }
    return fit;
}

}  // namespace treewalk
