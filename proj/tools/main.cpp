// command line front end: loads a walk config and exposes the library
// pipeline as subcommands with deterministic text/CSV/DOT output
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treewalk/cavern.hpp"
#include "treewalk/config.hpp"
#include "treewalk/curve.hpp"
#include "treewalk/digraph.hpp"
#include "treewalk/errors.hpp"
#include "treewalk/oracle.hpp"
#include "treewalk/psi.hpp"
#include "treewalk/xi.hpp"

namespace tw = treewalk;

namespace {

struct Options {
    std::string config_path;
    double tol = -1;  // <0 = take from config
    int nmax = -1;
    unsigned long seed = 0;
    bool seed_set = false;
    std::string dot_path, csv_path;
    std::string z_text, x_text = "e", y_text = "e";
    std::string g_text, path_text;
};

struct Context {
    tw::RunConfig cfg;
    Options opt;

    double tol() const { return opt.tol > 0 ? opt.tol : cfg.tol; }
    int nmax() const { return opt.nmax > 0 ? opt.nmax : cfg.nmax; }
    unsigned long seed() const { return opt.seed_set ? opt.seed : cfg.seed; }
    std::string dot_path() const { return !opt.dot_path.empty() ? opt.dot_path : cfg.dot_path; }
    std::string csv_path() const { return !opt.csv_path.empty() ? opt.csv_path : cfg.csv_path; }
};

tw::Cplx parse_z(const std::string& text) {
    if (text.empty()) throw tw::ConfigError("--z is required for this command");
    std::istringstream in(text);
    double re = 0, im = 0;
    char comma = 0;
    if (!(in >> re)) throw tw::ConfigError("malformed --z value '" + text + "'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw tw::ConfigError("malformed --z value '" + text + "'");
    }
    std::string rest;
    if (in >> rest) throw tw::ConfigError("malformed --z value '" + text + "'");
    return {re, im};
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_cplx(tw::Cplx v) {
    if (v.imag() == 0) return fmt(v.real());
    return fmt(v.real()) + (v.imag() < 0 ? "-" : "+") + fmt(std::abs(v.imag())) + "i";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw tw::ComputeError("cannot open output file '" + path + "'");
    return out;
}

std::vector<int> parse_profile(const std::string& text) {
    std::vector<int> g;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            g.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw tw::ConfigError("malformed profile entry '" + item + "'");
        }
    }
    if (g.size() < 2) throw tw::ConfigError("profile needs at least two entries");
    return g;
}

std::string orbit_label(const tw::PsiSystem& ps, int id) {
    const tw::XiOrbit& o = ps.xs.orbits[static_cast<size_t>(id)];
    return "(" + word_str(ps.xs.mu.group, o.a) + "," + word_str(ps.xs.mu.group, o.b) + ")";
}

// ---------------------------------------------------------------- commands

int cmd_xi(const Context& ctx) {
    tw::XiSystem xs = tw::enumerate_xi_orbits(ctx.cfg.measure);
    const tw::GroupSpec& g = ctx.cfg.group;
    for (const tw::XiOrbit& o : xs.orbits)
        std::cout << "orbit " << o.id << ": (" << word_str(g, o.a) << "," << word_str(g, o.b)
                  << ") x=" << word_str(g, o.x) << " witness_len="
                  << xs.witness[static_cast<size_t>(o.id)].size() - 1 << "\n";
    std::cout << xs.orbits.size() << " orbits, range k=" << xs.k << "\n";
    return 0;
}

int cmd_psi(const Context& ctx) {
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(ctx.cfg.measure));
    for (int i = 0; i < ps.size(); ++i) std::cout << psi_component_str(ps, i) << "\n";
    std::cout << ps.size() << " components, " << ps.edges.size() << " dependency edges\n";
    return 0;
}

int cmd_digraph(const Context& ctx) {
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(ctx.cfg.measure));
    tw::Digraph d = tw::build_digraph(ps);
    tw::Condensation c = tw::condense(d);
    std::cout << "vertices " << d.n << ", edges " << d.edges.size() << ", sccs " << c.n_sccs()
              << ", sink scc" << c.sink << "\n";
    for (int s = 0; s < c.n_sccs(); ++s) {
        std::cout << "scc" << s << (s == c.sink ? " (sink):" : ":");
        for (int v : c.members[static_cast<size_t>(s)]) std::cout << " " << orbit_label(ps, v);
        std::cout << "\n";
    }
    if (!ctx.dot_path().empty()) {
        std::ofstream out = open_out(ctx.dot_path());
        tw::emit_dot(ps, d, c, out);
        std::cout << "dot written to " << ctx.dot_path() << "\n";
    }
    return 0;
}

int cmd_classify(const Context& ctx) {
    tw::XiSystem xs = tw::enumerate_xi_orbits(ctx.cfg.measure);
    tw::PsiSystem ps = tw::build_psi(xs);
    tw::Condensation c = tw::condense(tw::build_digraph(ps));
    const int M = tw::stagnation_bound(ctx.cfg.measure);
    std::cout << "stagnation bound M = " << M << "\n";
    for (const tw::XiOrbit& o : xs.orbits) {
        tw::OrbitClass oc = tw::classify_orbit(xs, o.id, M);
        const bool in_sink = c.comp[static_cast<size_t>(o.id)] == c.sink;
        std::cout << "orbit " << o.id << " " << orbit_label(ps, o.id) << ": "
                  << (oc.infinite ? "infinite" : "finite level " + std::to_string(oc.level))
                  << ", scc" << c.comp[static_cast<size_t>(o.id)]
                  << (in_sink ? " (sink)" : "") << "\n";
        if (oc.infinite != in_sink)
            throw tw::InvariantViolation("classification disagrees with sink membership on orbit " +
                                         std::to_string(o.id));
    }
    std::cout << "classification matches sink membership on all orbits\n";
    return 0;
}

int cmd_cavern(const Context& ctx) {
    if (!ctx.opt.g_text.empty()) {
        tw::CavernFunction f{parse_profile(ctx.opt.g_text)};
        tw::CavernTree t = tw::build_cavern(f);
        for (size_t i = 0; i < t.nodes.size(); ++i) {
            const auto& nd = t.nodes[i];
            std::cout << "node " << i << ": [" << nd.a << "," << nd.b << "] parent "
                      << nd.parent << "\n";
        }
        std::cout << t.nodes.size() << " intervals, " << t.roots.size() << " roots\n";
        return 0;
    }
    if (!ctx.opt.path_text.empty()) {
        const tw::GroupSpec& g = ctx.cfg.group;
        std::vector<tw::Word> path;
        std::istringstream in(ctx.opt.path_text);
        std::string item;
        while (std::getline(in, item, ',')) path.push_back(parse_word(g, item));
        tw::Word y = parse_word(g, ctx.opt.y_text);
        tw::LabeledCavernTree lt = tw::cavern_of_path(ctx.cfg.measure, path, y);
        for (size_t i = 0; i < lt.tree.nodes.size(); ++i) {
            const auto& nd = lt.tree.nodes[i];
            const auto& lb = lt.labels[i];
            std::cout << "node " << i << ": [" << nd.a << "," << nd.b << "] parent " << nd.parent
                      << " label (" << word_str(g, lb.canon_a) << "," << word_str(g, lb.canon_b)
                      << ")\n";
        }
        std::cout << lt.tree.nodes.size() << " intervals\n";
        return 0;
    }
    throw tw::ConfigError("cavern needs --g (height profile) or --path (comma-joined words)");
}

int cmd_radius(const Context& ctx) {
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(ctx.cfg.measure));
    tw::RadiusResult rr = tw::find_R(ps, ctx.tol());
    std::cout << "R = " << fmt(rr.R) << "\n";
    std::cout << "rho(Dpsi(v_R)) = " << fmt(rr.rho) << "\n";
    std::cout << "R*rho = " << fmt(rr.R * rr.rho) << "\n";
    if (!ctx.csv_path().empty()) {
        std::ofstream out = open_out(ctx.csv_path());
        out << "quantity,value,tolerance\n";
        out << "R," << fmt(rr.R) << "," << fmt(ctx.tol()) << "\n";
        out << "rho," << fmt(rr.rho) << "," << fmt(ctx.tol()) << "\n";
        out << "R_times_rho," << fmt(rr.R * rr.rho) << "," << fmt(ctx.tol()) << "\n";
        out << "fold_residual," << fmt(rr.fold_residual) << "," << fmt(ctx.tol()) << "\n";
        // orbit labels contain commas, so the quantity field is quoted
        for (int i = 0; i < ps.size(); ++i)
            out << "\"v_R" << orbit_label(ps, i) << "\","
                << fmt(rr.v_R[static_cast<size_t>(i)]) << "," << fmt(ctx.tol()) << "\n";
        std::cout << "csv written to " << ctx.csv_path() << "\n";
    }
    return 0;
}

int cmd_green(const Context& ctx) {
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(ctx.cfg.measure));
    const tw::GroupSpec& g = ctx.cfg.group;
    tw::Cplx z = parse_z(ctx.opt.z_text);
    tw::Word x = parse_word(g, ctx.opt.x_text), y = parse_word(g, ctx.opt.y_text);
    tw::CurvePoint cp = tw::solve_v(ps, z, ctx.tol());
    tw::Cplx G = tw::g_function(ps, x, y, z, cp.J);
    tw::Cplx F = tw::f_function(ps, x, y, z, cp.J);
    std::cout << "z = " << fmt_cplx(z) << "\n";
    std::cout << "G(" << word_str(g, x) << "," << word_str(g, y) << ") = " << fmt_cplx(G) << "\n";
    std::cout << "F(" << word_str(g, x) << "," << word_str(g, y) << ") = " << fmt_cplx(F) << "\n";
    if (!ctx.csv_path().empty()) {
        std::ofstream out = open_out(ctx.csv_path());
        out << "z,x,y,G,F\n";
        out << fmt_cplx(z) << "," << word_str(g, x) << "," << word_str(g, y) << ","
            << fmt_cplx(G) << "," << fmt_cplx(F) << "\n";
        std::cout << "csv written to " << ctx.csv_path() << "\n";
    }
    return 0;
}

int cmd_spectral(const Context& ctx) {
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(ctx.cfg.measure));
    tw::Condensation c = tw::condense(tw::build_digraph(ps));
    tw::RadiusResult rr = tw::find_R(ps, ctx.tol());
    double z = ctx.opt.z_text.empty() ? rr.R : parse_z(ctx.opt.z_text).real();
    std::vector<double> J = rr.v_R;
    if (z != rr.R) {
        tw::CurvePoint cp = tw::solve_v(ps, tw::Cplx(z), ctx.tol());
        J.assign(cp.J.size(), 0.0);
        for (size_t i = 0; i < cp.J.size(); ++i) J[i] = cp.J[i].real();
    }
    tw::SpectralReport rep = tw::block_spectra(ps, c, z, J);
    std::cout << "z = " << fmt(z) << ", global rho = " << fmt(rep.rho) << ", z*rho = "
              << fmt(z * rep.rho) << "\n";
    for (const tw::BlockSpectrum& b : rep.blocks)
        std::cout << "scc" << b.scc << (b.is_sink ? " (sink)" : "") << ": dim " << b.dim
                  << ", z*rho = " << fmt(b.rho_scaled)
                  << (b.irreducible ? ", irreducible" : ", reducible") << "\n";
    return 0;
}

int cmd_derivatives(const Context& ctx) {
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(ctx.cfg.measure));
    tw::Condensation c = tw::condense(tw::build_digraph(ps));
    tw::RadiusResult rr = tw::find_R(ps, ctx.tol());
    tw::Tangent t = tw::tangent_at_R(ps, c, rr.R, rr.v_R);
    const double r2 = tw::second_derivative(ps, rr.R, rr.v_R, t.nu, t.left);
    const double r2fd = tw::second_derivative_fd(ps, rr.R, rr.v_R, t.nu);
    const double dl = tw::lambda_derivative(ps, rr.R, rr.v_R);
    std::cout << "R = " << fmt(rr.R) << "\n";
    std::cout << "|Dlambda(nu)| = " << fmt(dl) << "\n";
    std::cout << "r''(0) = " << fmt(r2) << "\n";
    std::cout << "r''(0) finite-difference = " << fmt(r2fd) << " (relative gap "
              << fmt(std::abs(r2fd - r2) / std::abs(r2)) << ")\n";
    const tw::GroupSpec& g = ctx.cfg.group;
    std::vector<tw::Word> words = ball(g, tw::kEpsilon, 2);
    int shown = 0;
    for (const tw::Word& x : words) {
        if (shown >= 10) break;
        double d = tw::g_derivative(ps, x, tw::kEpsilon, rr.R, rr.v_R, t.nu);
        std::cout << "Dg(" << word_str(g, x) << ",e)(nu) = " << fmt(d) << "\n";
        ++shown;
    }
    return 0;
}

int cmd_asymptotics(const Context& ctx) {
    const tw::StepMeasure& mu = ctx.cfg.measure;
    tw::KernelInfo ki = tw::kernel_info(mu);
    const bool radial = mu.is_radial();
    const int nmax = ctx.opt.nmax > 0 ? ctx.opt.nmax : (radial ? 10000 : 2000);
    std::vector<double> p;
    if (radial) {
        p = tw::dp_isotropic(mu, nmax);
    } else {
        p = tw::dp_full(mu, tw::kEpsilon, tw::kEpsilon, nmax).approx();
    }
    tw::AsymptoticFit fit = tw::fit_asymptotics(p, ki.period_d, 0);
    std::cout << "n = 0.." << nmax << ", period " << ki.period_d << "\n";
    std::cout << "R_fit = " << fmt(fit.R) << "\n";
    std::cout << "exponent = " << fmt(fit.exponent) << "\n";
    std::cout << "C_fit = " << fmt(fit.C) << "\n";
    std::cout << "residual rms = " << fmt(fit.resid_rms) << ", trend = " << fmt(fit.resid_trend)
              << ", n_used = " << fit.n_used << "\n";
    tw::PsiSystem ps = tw::build_psi(tw::enumerate_xi_orbits(mu));
    tw::RadiusResult rr = tw::find_R(ps, ctx.tol());
    tw::LeadingConstant lc = tw::leading_constant(ps, tw::kEpsilon, tw::kEpsilon, rr.R,
                                                  ki.period_d);
    std::cout << "R = " << fmt(rr.R) << " (fit gap " << fmt(std::abs(fit.R - rr.R)) << ")\n";
    std::cout << "C = " << fmt(lc.C) << " (fit gap " << fmt(std::abs(fit.C - lc.C) / lc.C)
              << " relative)\n";
    if (!ctx.csv_path().empty()) {
        std::ofstream out = open_out(ctx.csv_path());
        out << "n,p_n,fit_residual\n";
        const double logC = std::log(fit.C), logR = std::log(fit.R);
        const int fit_lo = std::max(2, nmax / 10);  // the window fit_asymptotics uses
        for (int n = 0; n <= nmax; ++n) {
            out << n << "," << fmt(p[static_cast<size_t>(n)]) << ",";
            if (n >= fit_lo && n % ki.period_d == 0 && p[static_cast<size_t>(n)] > 0) {
                const double model = logC - n * logR - fit.exponent * std::log(double(n));
                out << fmt(std::log(p[static_cast<size_t>(n)]) - model);
            }
            out << "\n";
        }
        std::cout << "csv written to " << ctx.csv_path() << "\n";
    }
    return 0;
}

// named theorem-level checks over the loaded walk; any failure exits 3
int cmd_validate(const Context& ctx) {
    const tw::StepMeasure& mu = ctx.cfg.measure;
    int failures = 0;
    auto check = [&](const std::string& id, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << id << "\n";
        if (!ok) ++failures;
    };

    tw::KernelInfo ki = tw::kernel_info(mu);
    check("irreducible", ki.irreducible != tw::Irreducibility::No);

    tw::XiSystem xs = tw::enumerate_xi_orbits(mu);
    tw::PsiSystem ps = tw::build_psi(xs);
    check("orbits_nonempty", !xs.orbits.empty());

    {  // series equality against the path-counting oracle, quick order
        bool ok = true;
        std::vector<std::vector<tw::Rat>> series = tw::series_iterate(ps, 10);
        for (const tw::XiOrbit& o : xs.orbits) {
            tw::SeriesTable dp = tw::dp_restricted(mu, o.a, o.b, tw::kEpsilon, 10);
            for (int n = 0; n <= 10 && ok; ++n)
                ok = series[static_cast<size_t>(o.id)][static_cast<size_t>(n)] ==
                     dp.exact[static_cast<size_t>(n)];
            if (!ok) break;
        }
        check("series_matches_path_counts", ok);
    }

    tw::Digraph d = tw::build_digraph(ps);
    bool sink_ok = true;
    tw::Condensation c;
    try {
        c = tw::condense(d);
    } catch (const tw::InvariantViolation&) {
        sink_ok = false;
    }
    check("sink_unique", sink_ok);
    if (!sink_ok) {
        std::cout << failures << " check(s) failed\n";
        return 3;
    }

    {  // excursion classification vs sink membership, and the level grading
        const int M = tw::stagnation_bound(mu);
        bool agree = true;
        std::vector<tw::OrbitClass> cls;
        for (const tw::XiOrbit& o : xs.orbits) {
            cls.push_back(tw::classify_orbit(xs, o.id, M));
            if (cls.back().infinite != (c.comp[static_cast<size_t>(o.id)] == c.sink))
                agree = false;
        }
        check("classification_matches_sink", agree);
        bool grading = true;
        for (const auto& [src, aim] : d.edges) {
            if (cls[static_cast<size_t>(aim)].infinite) continue;
            if (cls[static_cast<size_t>(src)].infinite ||
                cls[static_cast<size_t>(src)].level > cls[static_cast<size_t>(aim)].level)
                grading = false;
        }
        check("edge_grading", grading);
    }

    tw::RadiusResult rr = tw::find_R(ps, ctx.tol());
    check("fold_at_R", std::abs(rr.R * rr.rho - 1.0) < 1e-9);

    {
        bool tri_ok = true, sink_irred = true, nonsink_sub = true;
        try {
            tw::SpectralReport rep = tw::block_spectra(ps, c, rr.R, rr.v_R);
            for (const tw::BlockSpectrum& b : rep.blocks) {
                if (b.is_sink) {
                    sink_irred = b.irreducible && std::abs(b.rho_scaled - 1.0) < 1e-8;
                } else {
                    nonsink_sub = nonsink_sub && b.rho_scaled < 1.0 - 1e-10;
                }
            }
        } catch (const tw::InvariantViolation&) {
            tri_ok = false;
        }
        check("jacobian_block_triangular", tri_ok);
        check("sink_block_critical_irreducible", sink_irred);
        check("nonsink_blocks_subcritical", nonsink_sub);
    }

    tw::Tangent t = tw::tangent_at_R(ps, c, rr.R, rr.v_R);
    {
        bool support = true;
        for (const tw::XiOrbit& o : xs.orbits) {
            const double v = t.nu[static_cast<size_t>(o.id)];
            if (c.comp[static_cast<size_t>(o.id)] == c.sink)
                support = support && v > 0;
            else
                support = support && std::abs(v) < 1e-8;
        }
        check("tangent_supported_on_sink", support);
    }
    check("lambda_derivative_zero", tw::lambda_derivative(ps, rr.R, rr.v_R) < 1e-10);
    {
        double r2 = 0, r2fd = 0;
        bool ok = true;
        try {
            r2 = tw::second_derivative(ps, rr.R, rr.v_R, t.nu, t.left);
            r2fd = tw::second_derivative_fd(ps, rr.R, rr.v_R, t.nu);
        } catch (const std::exception&) {
            ok = false;
        }
        check("second_derivative_nonzero", ok && std::abs(r2) > 1e-6);
        check("second_derivative_fd_agrees",
              ok && std::abs(r2fd - r2) / std::abs(r2) < 1e-4);
    }
    {
        bool ok = true;
        const int M = tw::stagnation_bound(mu);
        for (const tw::Word& x : ball(mu.group, tw::kEpsilon, 2)) {
            try {
                tw::classify_f_radius(ps, x, tw::kEpsilon, M, rr.R, rr.v_R, t.nu);
            } catch (const tw::InvariantViolation&) {
                ok = false;
            }
        }
        check("f_radius_dichotomy", ok);
    }
    {
        bool ok = true;
        int shown = 0;
        for (const tw::Word& x : ball(mu.group, tw::kEpsilon, 2)) {
            if (shown >= 10) break;
            ok = ok && std::abs(tw::g_derivative(ps, x, tw::kEpsilon, rr.R, rr.v_R, t.nu)) > 1e-8;
            ++shown;
        }
        check("g_derivative_nonzero", ok);
    }
    {  // admissible path lengths stay on the residue class
        bool ok = true;
        for (const tw::Word& y : ball(mu.group, tw::kEpsilon, 2)) {
            const int r = tw::cocycle_r(mu, tw::kEpsilon, y, ki.period_d);
            tw::SeriesTable st = tw::dp_full(mu, tw::kEpsilon, y, 12);
            for (int n = 0; n <= 12; ++n)
                if (n % ki.period_d != r && st.exact[static_cast<size_t>(n)] != 0) ok = false;
        }
        check("period_residue_class", ok);
    }

    if (failures) {
        std::cout << failures << " check(s) failed\n";
        return 3;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random walks on trees: fixed-point systems, spectra and asymptotics"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* o = sub->add_option("--config", opt.config_path, "walk configuration file");
        if (need_config) o->required();
        sub->add_option("--tol", opt.tol, "numeric tolerance override");
        sub->add_option("--nmax", opt.nmax, "series / DP truncation override");
        sub->add_option("--seed", opt.seed, "RNG seed override")
            ->each([&](const std::string&) { opt.seed_set = true; });
        sub->add_option("--dot", opt.dot_path, "write a DOT file here");
        sub->add_option("--csv", opt.csv_path, "write a CSV file here");
        sub->add_option("--z", opt.z_text, "evaluation point RE or RE,IM");
        sub->add_option("--x", opt.x_text, "source word");
        sub->add_option("--y", opt.y_text, "target word");
        sub->add_option("--g", opt.g_text, "cavern height profile, comma separated");
        sub->add_option("--path", opt.path_text, "comma separated path words");
    };

    std::map<std::string, int (*)(const Context&)> handlers{
        {"xi", cmd_xi},           {"psi", cmd_psi},
        {"digraph", cmd_digraph}, {"classify", cmd_classify},
        {"cavern", cmd_cavern},   {"radius", cmd_radius},
        {"green", cmd_green},     {"spectral", cmd_spectral},
        {"derivatives", cmd_derivatives}, {"asymptotics", cmd_asymptotics},
        {"validate", cmd_validate}};
    std::map<std::string, std::string> blurbs{
        {"xi", "enumerate the orbit variables of the fixed-point system"},
        {"psi", "print the polynomial system"},
        {"digraph", "dependency digraph and its condensation"},
        {"classify", "excursion classification of every orbit"},
        {"cavern", "cavern tree of a height profile or a path"},
        {"radius", "convergence radius R and the critical point"},
        {"green", "Green and first-passage values at a point"},
        {"spectral", "per-block Jacobian spectra"},
        {"derivatives", "tangent data and curvature at the critical point"},
        {"asymptotics", "DP coefficients, asymptotic fit, leading constant"},
        {"validate", "run every theorem-level check for this walk"}};
    for (auto& [name, fn] : handlers)
        add_common(app.add_subcommand(name, blurbs[name]), true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Context ctx{tw::load_config(opt.config_path), opt};
        for (auto& [name, fn] : handlers)
            if (app.got_subcommand(name)) return fn(ctx);
        throw tw::ConfigError("unknown command");
    } catch (const tw::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const tw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const tw::ComputeError& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
