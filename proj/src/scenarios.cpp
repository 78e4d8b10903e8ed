#include "plap/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "plap/closed_forms.hpp"
#include "plap/elliptic.hpp"
#include "plap/errors.hpp"
#include "plap/kernels.hpp"
#include "plap/parabolic.hpp"

namespace plap {

namespace {

std::string fmt(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

struct Params {
    int n = 0;
    int m = 0;
    unsigned long seed = 0;
    std::string dir;
};

struct Ctx {
    ScenarioResult res;
    std::string dir;

    Ctx(const char* name, const char* claim, const Params& pr) : dir(pr.dir) {
        res.name = name;
        res.claim = claim;
        res.pass = true;
    }
    void fact(const std::string& k, const std::string& v) { res.facts.emplace_back(k, v); }
    void fact(const std::string& k, double v) { fact(k, fmt(v)); }
    void check(const std::string& what, bool ok) {
        fact("check." + what, ok ? "1" : "0");
        if (!ok) res.pass = false;
    }
    const PrincipleReport& report(const PrincipleReport& r) {
        res.reports.push_back(r);
        return res.reports.back();
    }
    void evid(Regime r, PClass c, Principle p, char s) { res.evidence.push_back({r, c, p, s}); }
    std::string path(const std::string& file) const { return dir + "/" + res.name + "-" + file; }
    template <class F> void save(const std::string& file, const F& f) {
        if (dir.empty()) return;
        const std::string p = path(file);
        write_csv_file(p, f);
        res.artifacts.push_back(p);
    }
    void save_text(const std::string& file, const std::string& text) {
        if (dir.empty()) return;
        const std::string p = path(file);
        std::ofstream o(p);
        o << text;
        res.artifacts.push_back(p);
    }
};

// w(x) * v(t + shift) with v the closed-form nontrivial root of v' = v^{p-1}
SpaceTimeField separable_field(const Field& w, const TimeMesh& tm, double p, double shift) {
    SpaceTimeField s = make_space_time_field(w.grid, tm);
    for (int j = 0; j < s.slices(); ++j) {
        const double v = cauchy_solution(tm.time(j) + shift, p);
        for (int i = 0; i < w.grid.n; ++i) s.at(j, i) = w[i] * v;
    }
    return s;
}

double region_residual_sup(const SpaceTimeField& r, double lo_abs, double hi_abs) {
    double s = 0.0;
    for (int j = 1; j < r.slices() - 1; ++j) {
        for (int i = 1; i < r.grid.n - 1; ++i) {
            const double ax = std::abs(r.grid.node(i));
            if (ax + 1e-12 < lo_abs || ax - 1e-12 > hi_abs) continue;
            s = std::max(s, std::abs(r.at(j, i)));
        }
    }
    return s;
}

int total_newton(const std::vector<StepReport>& reps) {
    int s = 0;
    for (const auto& r : reps) s += r.newton_iters;
    return s;
}

// ---------------------------------------------------------------------------
// barenblatt-smp-failure: slow diffusion from compactly supported data; the
// front is tracked against the closed form, interior zeros persist.
ScenarioResult scenario_barenblatt(const Params& pr) {
    Ctx cx("barenblatt-smp-failure",
           "finite propagation keeps interior zeros, so strict positivity fails for p > 2 "
           "while the weak maximum principle holds",
           pr);
    const Grid g = make_interval_grid(-6.0, 6.0, pr.n);
    const TimeMesh tm = make_time_mesh(0.0, 1.0, pr.m);
    const BarenblattParams bp = make_barenblatt_params(3.0, 1, 1.0, 1.0);

    ProblemSpec spec;
    spec.p = 3.0;
    spec.lambda = 0.0;
    spec.grid = g;
    spec.initial = sample(g, [&](double x) { return barenblatt(x, 0.0, bp); });
    spec.eps_reg = 0.0;
    spec.newton_tol = 1e-10;

    ParabolicSolution sol = solve_parabolic(spec, tm);
    const double tol = default_tolerance(g, spec.newton_tol);

    const PrincipleReport wmp = cx.report(check_wmp(sol.u, tol));
    const PrincipleReport smp = cx.report(check_smp(sol.u, tol));

    const double support_tol = 1e-6; // front detection wants the raw zero set, not the h^2 band
    double max_dev = 0.0;
    std::ostringstream sup_csv;
    sup_csv << "t,numeric,exact\n";
    for (int j = 0; j < sol.u.slices(); ++j) {
        const double rn = support_radius(sol.u.slice(j), support_tol);
        const double re = barenblatt_support_radius(tm.time(j), bp);
        max_dev = std::max(max_dev, std::abs(rn - re));
        char line[120];
        std::snprintf(line, sizeof line, "%.15g,%.15g,%.15g\n", tm.time(j), rn, re);
        sup_csv << line;
    }
    const auto [t_bar, t_star] = positivity_time(sol.u, tol);

    cx.fact("tolerance", tol);
    cx.fact("support_tolerance", support_tol);
    cx.fact("max_support_deviation", max_dev);
    cx.fact("support_deviation_budget", 2.0 * g.h);
    cx.fact("t_bar", t_bar);
    cx.fact("t_star", t_star);
    cx.fact("wmp_margin", wmp.margin);
    cx.fact("smp_margin", smp.margin);
    cx.fact("newton_total", total_newton(sol.reports));

    const PrincipleReport hopf = cx.report(check_hopf(sol.u, sol.u.slices() - 1, tol));
    cx.fact("hopf_margin", hopf.margin);
    cx.fact("hopf_verdict", to_string(hopf.verdict));

    cx.check("wmp_holds", wmp.verdict == Verdict::holds);
    cx.check("smp_violated", smp.verdict == Verdict::violated);
    cx.check("support_within_2h", max_dev <= 2.0 * g.h);
    cx.check("t_bar_small", t_bar < 3.0 * tm.dt);

    if (wmp.verdict == Verdict::holds) cx.evid(Regime::le0, PClass::gt2, Principle::WMP, '+');
    if (smp.verdict == Verdict::violated) cx.evid(Regime::le0, PClass::gt2, Principle::SMP, '-');

    cx.save("initial.csv", sol.u.slice(0));
    cx.save("final.csv", sol.u.slice(sol.u.slices() - 1));
    cx.save_text("support.csv", sup_csv.str());
    return cx.res;
}

// ---------------------------------------------------------------------------
// extinction: fast diffusion from separable data dies in finite time; strict
// positivity degrades near the boundary on the way out.
ScenarioResult scenario_extinction(const Params& pr) {
    Ctx cx("extinction",
           "fast diffusion from separable data becomes extinct at t0/(2-p); near the boundary "
           "strict positivity fails first, while ordering against zero survives",
           pr);
    const Grid g = make_interval_grid(-1.0, 1.0, pr.n);
    const TimeMesh tm = make_time_mesh(0.0, 1.05, pr.m);
    const ExtinctionParams ep = make_extinction_params(1.5, 0.5, pr.n);
    const double t_exact = extinction_time(ep);

    ProblemSpec spec;
    spec.p = 1.5;
    spec.lambda = 0.0;
    spec.grid = g;
    spec.initial = make_field(g);
    const double a0 = extinction_time_factor(0.0, ep);
    for (int i = 0; i < g.n; ++i) spec.initial[i] = a0 * ep.profile[i];
    spec.eps_reg = 1e-9;
    spec.newton_tol = 3e-6;

    ParabolicSolution sol = solve_parabolic(spec, tm);
    const double tol = default_tolerance(g, spec.newton_tol);

    const double tol_ext = 1e-3;
    const double est = extinction_time_estimate(sol.u, tol_ext);
    double sup_early_min = std::numeric_limits<double>::infinity();
    std::ostringstream sup_csv;
    sup_csv << "t,sup\n";
    for (int j = 0; j < sol.u.slices(); ++j) {
        const double s = sup_norm(sol.u.slice(j));
        if (tm.time(j) < 0.9 - 1e-12) sup_early_min = std::min(sup_early_min, s);
        char line[80];
        std::snprintf(line, sizeof line, "%.15g,%.15g\n", tm.time(j), s);
        sup_csv << line;
    }

    const PrincipleReport wmp = cx.report(check_wmp(sol.u, tol));
    const PrincipleReport smp = cx.report(check_smp(sol.u, tol));
    SpaceTimeField zero = make_space_time_field(g, tm);
    const PrincipleReport scp = cx.report(check_scp(zero, sol.u, tol));
    const auto [t_bar, t_star] = positivity_time(sol.u, tol);

    cx.fact("tolerance", tol);
    cx.fact("extinction_exact", t_exact);
    cx.fact("extinction_estimate", est);
    cx.fact("estimate_budget", 2.0 * tm.dt);
    cx.fact("sup_min_before_0.9", sup_early_min);
    cx.fact("t_bar", t_bar);
    cx.fact("t_star", t_star);
    cx.fact("smp_margin", smp.margin);
    cx.fact("scp_margin", scp.margin);
    cx.fact("newton_total", total_newton(sol.reports));

    cx.check("estimate_within_2dt", std::abs(est - t_exact) <= 2.0 * tm.dt);
    cx.check("sup_above_1e-2_before_0.9", sup_early_min > 1e-2);
    cx.check("wmp_holds", wmp.verdict == Verdict::holds);
    cx.check("smp_violated", smp.verdict == Verdict::violated);
    cx.check("scp_vs_zero_holds", scp.verdict == Verdict::holds);

    if (wmp.verdict == Verdict::holds) cx.evid(Regime::le0, PClass::lt2, Principle::WMP, '+');
    if (smp.verdict == Verdict::violated) cx.evid(Regime::le0, PClass::lt2, Principle::SMP, '-');
    if (scp.verdict == Verdict::holds) cx.evid(Regime::le0, PClass::lt2, Principle::SCP, '+');

    cx.save("profile.csv", ep.profile);
    cx.save("final.csv", sol.u.slice(sol.u.slices() - 1));
    cx.save_text("sup.csv", sup_csv.str());
    return cx.res;
}

// ---------------------------------------------------------------------------
// smp-positivity: a nonnegative source keeps the solution strictly positive
// inside and pushes it off the boundary with a strictly negative slope.
ScenarioResult scenario_smp_positivity(const Params& pr) {
    Ctx cx("smp-positivity",
           "with a unit source and zero data the solution is strictly positive inside and "
           "leaves the boundary with strictly negative outward slope",
           pr);
    const Grid g = make_interval_grid(-1.0, 1.0, pr.n);
    const TimeMesh tm = make_time_mesh(0.0, 0.6, pr.m);

    ProblemSpec spec;
    spec.p = 1.5;
    spec.lambda = 0.0;
    spec.grid = g;
    spec.initial = make_field(g);
    spec.source = [](double, double) { return 1.0; };
    spec.newton_tol = 1e-10;

    ParabolicSolution sol = solve_parabolic(spec, tm);
    const double tol = default_tolerance(g, spec.newton_tol);

    const PrincipleReport wmp = cx.report(check_wmp(sol.u, tol));
    const PrincipleReport smp = cx.report(check_smp(sol.u, tol));
    int k = static_cast<int>(std::llround(0.5 / tm.dt));
    k = std::min(std::max(k, 1), sol.u.slices() - 1);
    const PrincipleReport hopf = cx.report(check_hopf(sol.u, k, tol));

    cx.fact("tolerance", tol);
    cx.fact("hopf_time", tm.time(k));
    cx.fact("hopf_margin", hopf.margin);
    cx.fact("smp_margin", smp.margin);
    cx.fact("newton_total", total_newton(sol.reports));

    cx.check("wmp_holds", wmp.verdict == Verdict::holds);
    cx.check("smp_holds", smp.verdict == Verdict::holds);
    cx.check("hopf_holds", hopf.verdict == Verdict::holds);

    if (wmp.verdict == Verdict::holds) cx.evid(Regime::le0, PClass::lt2, Principle::WMP, '+');
    if (smp.verdict == Verdict::holds) cx.evid(Regime::le0, PClass::lt2, Principle::SMP, '+');

    cx.save("mid.csv", sol.u.slice(k));
    cx.save("final.csv", sol.u.slice(sol.u.slices() - 1));
    return cx.res;
}

// ---------------------------------------------------------------------------
// saddle-nonuniqueness: an explicit critical point w0 of the energy is not a
// local minimum; the true minimizer w1 gives a second solution with the same
// data and defeats weak comparison.
ScenarioResult scenario_saddle(const Params& pr) {
    Ctx cx("saddle-nonuniqueness",
           "two distinct certified solutions share identical data and source, so weak "
           "comparison fails for 1 < p < 2 and 0 < lambda <= lambda1 once the source "
           "changes sign",
           pr);
    const double p = 1.5, lambda = 1.0, eps = 0.15, eps1 = 0.4995;
    const Grid g = make_interval_grid(-1.0, 1.0, pr.n);
    const TimeMesh tm = make_time_mesh(0.0, 1.0, pr.m);

    const SaddleConstruction sc = build_saddle_construction(g, p, lambda, eps, eps1);
    EnergySpec es{p, lambda, sc.h_src};
    const double E0 = energy(sc.w0, es);

    const double z1 = zeta(1e-2, sc, p, lambda);
    const double z2 = zeta(1e-3, sc, p, lambda);
    const double z3 = zeta(1e-4, sc, p, lambda);
    Field probe = sc.w0;
    for (int i = 0; i < g.n; ++i) probe[i] += 1e-3 * sc.z[i];
    const double dE = energy(probe, es) - E0;

    // global minimizer by multistart descent from parabolic bumps
    Field w1;
    double E1 = std::numeric_limits<double>::infinity();
    int winners = 0;
    for (const double amp : {-0.5, 0.5, -2.0}) {
        Field init = sample(g, [&](double x) { return amp * (1.0 - x * x); });
        try {
            Field w = minimize_energy(es, g, init);
            const double E = energy(w, es);
            ++winners;
            if (E < E1) {
                E1 = E;
                w1 = w;
            }
        } catch (const ConvergenceFailure&) {
            // a stalled start is simply not a candidate
        }
    }
    if (winners == 0)
        fail(ErrKind::convergence_failure, "saddle scenario: every minimization start stalled");

    ProblemSpec fs;
    fs.p = p;
    fs.lambda = lambda;
    fs.grid = g;
    fs.initial = make_field(g);
    fs.eps_reg = 1e-150; // keeps the exactly-flat tail off the singular-flux guard
    fs.source = [hs = sc.h_src, g, p](double x, double t) {
        const int i = static_cast<int>(std::llround((x - g.a) / g.h));
        return hs[i] * std::pow(cauchy_solution(t, p), p - 1.0);
    };

    const SpaceTimeField u0 = separable_field(sc.w0, tm, p, 0.0);
    const SpaceTimeField u1 = separable_field(w1, tm, p, 0.0);
    const SpaceTimeField r0 = residual_field(u0, fs);
    const SpaceTimeField r1 = residual_field(u1, fs);
    const double cert0 = region_residual_sup(r0, 0.02, 0.4795); // core, away from hinge and seam
    const double cert1 = region_residual_sup(r1, 0.0, 2.0);     // everywhere inside

    const double sep = sup_diff(u0.slice(u0.slices() - 1), u1.slice(u1.slices() - 1));
    const double tol = default_tolerance(g, 1e-10);
    const PrincipleReport c01 = cx.report(check_wcp(u0, u1, tol));
    const PrincipleReport c10 = cx.report(check_wcp(u1, u0, tol));
    const bool wcp_broken =
        c01.verdict == Verdict::violated || c10.verdict == Verdict::violated;

    // strict comparison needs ordered data; test it only when the fields are ordered
    double w_order = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n; ++i) w_order = std::min(w_order, w1[i] - sc.w0[i]);
    if (w_order >= 0.0) {
        const PrincipleReport scp = cx.report(check_scp(u0, u1, tol));
        cx.fact("scp_verdict", to_string(scp.verdict));
        if (scp.verdict == Verdict::violated)
            cx.evid(Regime::mid, PClass::lt2, Principle::SCP, '-');
    }

    cx.fact("E_w0", E0);
    cx.fact("E_w1", E1);
    cx.fact("zeta_1e-2", z1);
    cx.fact("zeta_1e-3", z2);
    cx.fact("zeta_1e-4", z3);
    cx.fact("dE_probe", dE);
    cx.fact("residual_sup_w0_core", cert0);
    cx.fact("residual_sup_w1", cert1);
    cx.fact("separation_final", sep);
    cx.fact("sup_w0_w1_gap", sup_diff(sc.w0, w1));
    cx.fact("min_w1_minus_w0", w_order);

    cx.check("w0_certified_core", cert0 < 1e-3);
    cx.check("w1_certified", cert1 < 1e-3);
    cx.check("zeta_negative_at_1e-3", z2 < 0.0);
    cx.check("zeta_decreasing", z3 < z2);
    cx.check("energy_drops_along_z", dE < 0.0);
    cx.check("solutions_separate", sep > 1e-2);
    cx.check("wcp_violated_one_ordering", wcp_broken);

    if (wcp_broken) cx.evid(Regime::mid, PClass::lt2, Principle::WCP, '-');

    std::ostringstream ztab;
    ztab << "t,zeta\n";
    for (int k = 0; k <= 12; ++k) {
        const double t = std::pow(10.0, -(1.0 + 0.5 * k));
        char line[80];
        std::snprintf(line, sizeof line, "%.15g,%.15g\n", t, zeta(t, sc, p, lambda));
        ztab << line;
    }
    cx.save("w0.csv", sc.w0);
    cx.save("w1.csv", w1);
    cx.save("z.csv", sc.z);
    cx.save("h.csv", sc.h_src);
    cx.save_text("zeta.csv", ztab.str());
    return cx.res;
}

// ---------------------------------------------------------------------------
// logistic-nonuniqueness: above lambda1 the trivial solution coexists with
// +-w(x) v(t); the negative branch kills both maximum principles.
ScenarioResult scenario_logistic(const Params& pr) {
    Ctx cx("logistic-nonuniqueness",
           "above the first eigenvalue the zero solution coexists with a growing branch of "
           "either sign, so weak and strong maximum principles both fail",
           pr);
    const double p = 1.5;
    const Grid g = make_interval_grid(-1.0, 1.0, pr.n);
    const double lambda = 2.0 * lambda1_interval(p, g.b - g.a);
    const TimeMesh tm = make_time_mesh(0.0, 1.0, pr.m);

    const Field w = solve_logistic(g, p, lambda);
    double w_min = std::numeric_limits<double>::infinity();
    for (int i = 1; i < g.n - 1; ++i) w_min = std::min(w_min, w[i]);

    ProblemSpec fs;
    fs.p = p;
    fs.lambda = lambda;
    fs.grid = g;
    fs.initial = make_field(g);
    fs.eps_reg = 1e-150;

    const SpaceTimeField zero = make_space_time_field(g, tm);
    const SpaceTimeField up = separable_field(w, tm, p, 0.0);
    Field wneg = w;
    for (int i = 0; i < g.n; ++i) wneg[i] = -w[i];
    const SpaceTimeField um = separable_field(wneg, tm, p, 0.0);

    const double cert_zero = region_residual_sup(residual_field(zero, fs), 0.0, 2.0);
    const double cert_up = region_residual_sup(residual_field(up, fs), 0.0, 2.0);
    const double cert_um = region_residual_sup(residual_field(um, fs), 0.0, 2.0);

    const double tol = default_tolerance(g, 1e-10);
    const PrincipleReport wmp = cx.report(check_wmp(um, tol));
    const PrincipleReport smp = cx.report(check_smp(um, tol));
    const PrincipleReport wcp = cx.report(check_wcp(zero, um, tol));

    cx.fact("lambda", lambda);
    cx.fact("w_center", w[(g.n - 1) / 2]);
    cx.fact("w_interior_min", w_min);
    cx.fact("residual_sup_zero", cert_zero);
    cx.fact("residual_sup_plus", cert_up);
    cx.fact("residual_sup_minus", cert_um);
    cx.fact("wmp_margin", wmp.margin);
    cx.fact("wcp_margin", wcp.margin);

    cx.check("w_positive_inside", w_min > 0.0);
    cx.check("zero_certified", cert_zero < 1e-3);
    cx.check("plus_certified", cert_up < 1e-3);
    cx.check("minus_certified", cert_um < 1e-3);
    cx.check("wmp_violated", wmp.verdict == Verdict::violated);
    cx.check("smp_violated", smp.verdict == Verdict::violated);
    cx.check("wcp_violated", wcp.verdict == Verdict::violated);

    if (wmp.verdict == Verdict::violated) cx.evid(Regime::gt, PClass::lt2, Principle::WMP, '-');
    if (smp.verdict == Verdict::violated) cx.evid(Regime::gt, PClass::lt2, Principle::SMP, '-');
    if (wcp.verdict == Verdict::violated) cx.evid(Regime::gt, PClass::lt2, Principle::WCP, '-');

    cx.save("w.csv", w);
    cx.save("minus-final.csv", um.slice(um.slices() - 1));
    return cx.res;
}

// ---------------------------------------------------------------------------
// wcp-regimes: randomized ordered-data sweep over the status-table grid plus
// three deterministic strict-positivity probes for the lambda > 0 rows.
ScenarioResult scenario_wcp_regimes(const Params& pr) {
    Ctx cx("wcp-regimes",
           "ordered data stays ordered in every regime where the published table asserts "
           "weak comparison, and nonnegative data stays nonnegative where it asserts the "
           "weak maximum principle",
           pr);
    const Grid g = make_interval_grid(-1.0, 1.0, pr.n);
    const TimeMesh tm = make_time_mesh(0.0, 0.5, pr.m);
    std::mt19937_64 rng(pr.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    struct CellDef {
        const char* tag;
        double p;
        double lam;
        Regime reg;
        double cap;
    };
    std::vector<CellDef> cells;
    for (const double p : {1.5, 3.0}) {
        const double l1 = lambda1_interval(p, 2.0);
        cells.push_back({p < 2.0 ? "p15.neg" : "p30.neg", p, -1.0, Regime::le0, 1.0});
        cells.push_back({p < 2.0 ? "p15.zero" : "p30.zero", p, 0.0, Regime::le0, 1.0});
        cells.push_back({p < 2.0 ? "p15.mid" : "p30.mid", p, 0.5 * l1, Regime::mid, 0.1});
        cells.push_back({p < 2.0 ? "p15.high" : "p30.high", p, 2.0 * l1, Regime::gt, 0.1});
    }

    const int pairs = 10;
    const double ntol = 1e-10;
    bool all_plus_ok = true;
    for (const auto& cell : cells) {
        const PClass pc = cell.p < 2.0 ? PClass::lt2 : PClass::gt2;
        const bool paper_wmp_plus = !(cell.reg == Regime::gt && pc == PClass::lt2);
        const bool paper_wcp_plus = cell.reg == Regime::le0 || pc == PClass::gt2;

        double wcp_min = std::numeric_limits<double>::infinity();
        double wmp_min = std::numeric_limits<double>::infinity();
        for (int k = 0; k < pairs; ++k) {
            const double a1 = uni(rng), a2 = uni(rng), b1 = uni(rng), b2 = uni(rng);
            const double c1 = uni(rng), d1 = uni(rng);
            auto bump = [](double x) {
                const double c = std::cos(0.5 * M_PI * x);
                return c * c;
            };
            auto wave = [](double x) {
                const double s = std::sin(M_PI * x);
                return s * s;
            };
            ProblemSpec su;
            su.p = cell.p;
            su.lambda = cell.lam;
            su.grid = g;
            su.newton_tol = ntol;
            su.initial = sample(g, [&](double x) {
                return cell.cap * (a1 * bump(x) + a2 * wave(x));
            });
            su.source = [=](double x, double) { return cell.cap * c1 * bump(x); };
            ProblemSpec sv = su;
            sv.initial = sample(g, [&](double x) {
                return su.initial[static_cast<int>(std::llround((x - g.a) / g.h))] +
                       0.5 * cell.cap * (b1 * bump(x) + b2 * wave(x));
            });
            sv.source = [=](double x, double) {
                return cell.cap * (c1 * bump(x) + 0.5 * d1 * wave(x));
            };
            const ParabolicSolution u = solve_parabolic(su, tm);
            const ParabolicSolution v = solve_parabolic(sv, tm);
            const PrincipleReport rw = check_wcp(u.u, v.u, 10.0 * ntol);
            wcp_min = std::min(wcp_min, rw.margin);
            const PrincipleReport mu = check_wmp(u.u, 10.0 * ntol);
            const PrincipleReport mv = check_wmp(v.u, 10.0 * ntol);
            wmp_min = std::min({wmp_min, mu.margin, mv.margin});
        }
        const bool wcp_ok = wcp_min >= -10.0 * ntol;
        const bool wmp_ok = wmp_min >= -10.0 * ntol;
        cx.fact(std::string("wcp_min.") + cell.tag, wcp_min);
        cx.fact(std::string("wmp_min.") + cell.tag, wmp_min);
        if (paper_wcp_plus) {
            if (wcp_ok) cx.evid(cell.reg, pc, Principle::WCP, '+');
            all_plus_ok = all_plus_ok && wcp_ok;
        }
        if (paper_wmp_plus) {
            if (wmp_ok) cx.evid(cell.reg, pc, Principle::WMP, '+');
            all_plus_ok = all_plus_ok && wmp_ok;
        }
    }
    cx.check("paper_plus_cells_hold", all_plus_ok);

    // strict-positivity probes for the lambda > 0 rows
    {
        // fast diffusion at lambda1/2 from the extinction profile: decays and
        // loses strict positivity near the boundary
        const ExtinctionParams ep = make_extinction_params(1.5, 0.5, pr.n);
        ProblemSpec ps;
        ps.p = 1.5;
        ps.lambda = 0.5 * lambda1_interval(1.5, 2.0);
        ps.grid = g;
        ps.initial = make_field(g);
        const double a0 = extinction_time_factor(0.0, ep);
        for (int i = 0; i < g.n; ++i) ps.initial[i] = a0 * ep.profile[i];
        const TimeMesh tl = make_time_mesh(0.0, 2.5, 250);
        const ParabolicSolution run = solve_parabolic(ps, tl);
        const double tol = default_tolerance(g, ps.newton_tol);
        const PrincipleReport smp = check_smp(run.u, tol);
        cx.fact("probe_smp_p15_mid", to_string(smp.verdict));
        cx.fact("probe_smp_p15_mid_margin", smp.margin);
        if (smp.verdict == Verdict::violated)
            cx.evid(Regime::mid, PClass::lt2, Principle::SMP, '-');
    }
    for (const bool high : {false, true}) {
        // slow diffusion from compact data: interior zeros persist at any lambda
        ProblemSpec ps;
        ps.p = 3.0;
        const double l1 = lambda1_interval(3.0, 2.0);
        ps.lambda = high ? 2.0 * l1 : 0.5 * l1;
        ps.grid = g;
        ps.initial = sample(g, [](double x) {
            const double s = 0.25 - x * x;
            return s > 0.0 ? 6.4 * s * s * s : 0.0;
        });
        ps.eps_reg = 0.0;
        const ParabolicSolution run = solve_parabolic(ps, tm);
        const double tol = default_tolerance(g, ps.newton_tol);
        const PrincipleReport smp = check_smp(run.u, tol);
        const char* key = high ? "probe_smp_p30_high" : "probe_smp_p30_mid";
        cx.fact(key, to_string(smp.verdict));
        if (smp.verdict == Verdict::violated)
            cx.evid(high ? Regime::gt : Regime::mid, PClass::gt2, Principle::SMP, '-');
    }

    cx.fact("seed", static_cast<double>(pr.seed));
    cx.fact("pairs_per_cell", pairs);
    return cx.res;
}

// ---------------------------------------------------------------------------
// scp-slow-diffusion: for p > 2 the strict ordering survives when the larger
// solution is pushed by a source that keeps its boundary flux strictly
// negative.
ScenarioResult scenario_scp_slow(const Params& pr) {
    Ctx cx("scp-slow-diffusion",
           "for slow diffusion, strict comparison holds against zero when the data keeps the "
           "outward boundary flux of the larger solution strictly negative",
           pr);
    const Grid g = make_interval_grid(-1.0, 1.0, pr.n);
    const TimeMesh tm = make_time_mesh(0.0, 0.5, pr.m);

    ProblemSpec su;
    su.p = 3.0;
    su.lambda = 0.0;
    su.grid = g;
    su.initial = make_field(g);
    su.eps_reg = 0.0;

    ProblemSpec sv = su;
    sv.source = [](double, double) { return 1.0; };

    const ParabolicSolution u = solve_parabolic(su, tm);
    const ParabolicSolution v = solve_parabolic(sv, tm);
    const double tol = default_tolerance(g, su.newton_tol);

    const PrincipleReport scp = cx.report(check_scp(u.u, v.u, tol));
    const PrincipleReport wcp = cx.report(check_wcp(u.u, v.u, tol));
    const PrincipleReport hopf = cx.report(check_hopf(v.u, v.u.slices() - 1, tol));

    cx.fact("tolerance", tol);
    cx.fact("scp_margin", scp.margin);
    cx.fact("wcp_margin", wcp.margin);
    cx.fact("hopf_margin", hopf.margin);

    cx.check("scp_holds", scp.verdict == Verdict::holds);
    cx.check("wcp_holds", wcp.verdict == Verdict::holds);
    cx.check("hopf_holds", hopf.verdict == Verdict::holds);

    if (scp.verdict == Verdict::holds) cx.evid(Regime::le0, PClass::gt2, Principle::SCP, '+');
    if (wcp.verdict == Verdict::holds) cx.evid(Regime::le0, PClass::gt2, Principle::WCP, '+');

    cx.save("pushed-final.csv", v.u.slice(v.u.slices() - 1));
    return cx.res;
}

// ---------------------------------------------------------------------------

struct Entry {
    const char* name;
    int def_n, def_m, min_n, min_m;
    ScenarioResult (*fn)(const Params&);
};

const Entry kRegistry[] = {
    {"barenblatt-smp-failure", 2049, 500, 257, 50, scenario_barenblatt},
    {"extinction", 2049, 70, 129, 40, scenario_extinction},
    {"smp-positivity", 1025, 300, 65, 50, scenario_smp_positivity},
    {"saddle-nonuniqueness", 4097, 64, 1025, 16, scenario_saddle},
    {"logistic-nonuniqueness", 4097, 64, 257, 16, scenario_logistic},
    {"wcp-regimes", 257, 100, 65, 20, scenario_wcp_regimes},
    {"scp-slow-diffusion", 1025, 200, 65, 20, scenario_scp_slow},
};

// published status of the four principles, rows (regime, p-class); the '?'
// marks cells the source table leaves open
struct PaperRow {
    Regime reg;
    PClass pc;
    const char* sym[4]; // WMP, SMP, WCP, SCP
};

const PaperRow kPaper[] = {
    {Regime::le0, PClass::lt2, {"+", "-/±", "+", "-/±/?"}},
    {Regime::le0, PClass::gt2, {"+", "-/±", "+", "-/±"}},
    {Regime::mid, PClass::lt2, {"+", "-/±", "-/?", "-/?"}},
    {Regime::mid, PClass::gt2, {"+", "-/±", "+", "-/±"}},
    {Regime::gt, PClass::lt2, {"-", "-", "-", "-"}},
    {Regime::gt, PClass::gt2, {"+", "-/±", "+", "-/±"}},
};

const Principle kCols[4] = {Principle::WMP, Principle::SMP, Principle::WCP, Principle::SCP};

int visible_len(const std::string& s) {
    int len = 0;
    for (const char c : s)
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++len;
    return len;
}

std::string pad(const std::string& s, int width) {
    std::string out = s;
    for (int k = visible_len(s); k < width; ++k) out += ' ';
    return out;
}

Regime parse_regime(const std::string& s) {
    if (s == "le0") return Regime::le0;
    if (s == "mid") return Regime::mid;
    if (s == "gt") return Regime::gt;
    fail(ErrKind::config_error, "unknown regime token '" + s + "'");
}

PClass parse_pclass(const std::string& s) {
    if (s == "lt2") return PClass::lt2;
    if (s == "gt2") return PClass::gt2;
    fail(ErrKind::config_error, "unknown p-class token '" + s + "'");
}

Principle parse_principle(const std::string& s) {
    if (s == "WMP") return Principle::WMP;
    if (s == "SMP") return Principle::SMP;
    if (s == "WCP") return Principle::WCP;
    if (s == "SCP") return Principle::SCP;
    if (s == "HMP") return Principle::HMP;
    fail(ErrKind::config_error, "unknown principle token '" + s + "'");
}

Verdict parse_verdict(const std::string& s) {
    if (s == "holds") return Verdict::holds;
    if (s == "violated") return Verdict::violated;
    if (s == "inconclusive") return Verdict::inconclusive;
    fail(ErrKind::config_error, "unknown verdict token '" + s + "'");
}

const char* regime_token(Regime r) {
    switch (r) {
    case Regime::le0: return "le0";
    case Regime::mid: return "mid";
    case Regime::gt: return "gt";
    }
    return "?";
}

const char* pclass_token(PClass c) { return c == PClass::lt2 ? "lt2" : "gt2"; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

const char* to_string(Regime r) {
    switch (r) {
    case Regime::le0: return "lambda<=0";
    case Regime::mid: return "0<lambda<=lambda1";
    case Regime::gt: return "lambda>lambda1";
    }
    return "?";
}

const char* to_string(PClass c) { return c == PClass::lt2 ? "p<2" : "p>2"; }

std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const auto& e : kRegistry) names.push_back(e.name);
    return names;
}

ScenarioResult run_scenario(const std::string& name, const ScenarioOverrides& ov) {
    const Entry* entry = nullptr;
    for (const auto& e : kRegistry)
        if (name == e.name) entry = &e;
    if (!entry) {
        std::string all;
        for (const auto& e : kRegistry) all += std::string(all.empty() ? "" : ", ") + e.name;
        fail(ErrKind::unknown_scenario, "no scenario named '" + name + "' (available: " + all + ")");
    }
    Params pr;
    pr.n = ov.n > 0 ? ov.n : entry->def_n;
    pr.m = ov.mT > 0 ? ov.mT : entry->def_m;
    pr.seed = ov.seed != 0 ? ov.seed : 12345UL;
    pr.dir = ov.out_dir;
    if (pr.n < entry->min_n || pr.m < entry->min_m)
        fail(ErrKind::mesh_too_coarse, "scenario '" + name + "' needs n >= " +
                                           std::to_string(entry->min_n) + " and mT >= " +
                                           std::to_string(entry->min_m) + " (got n=" +
                                           std::to_string(pr.n) + ", mT=" +
                                           std::to_string(pr.m) + ")");
    if (!pr.dir.empty()) std::filesystem::create_directories(pr.dir);
    ScenarioResult res = entry->fn(pr);
    if (!pr.dir.empty()) {
        const std::string rp = pr.dir + "/" + res.name + ".result";
        std::ofstream o(rp);
        o << serialize_result(res);
    }
    return res;
}

std::string serialize_result(const ScenarioResult& r) {
    std::ostringstream o;
    o << "name=" << r.name << "\n";
    o << "claim=" << r.claim << "\n";
    o << "pass=" << (r.pass ? 1 : 0) << "\n";
    for (size_t k = 0; k < r.reports.size(); ++k) {
        const auto& p = r.reports[k];
        o << "report." << k << "=" << to_string(p.principle) << "," << to_string(p.verdict)
          << "," << fmt(p.margin) << "," << p.witness_time << "," << p.witness_node << ","
          << fmt(p.tolerance) << "\n";
    }
    for (size_t k = 0; k < r.evidence.size(); ++k) {
        const auto& e = r.evidence[k];
        o << "evidence." << k << "=" << regime_token(e.regime) << "," << pclass_token(e.pclass)
          << "," << to_string(e.principle) << "," << e.symbol << "\n";
    }
    for (const auto& [k, v] : r.facts) o << "fact." << k << "=" << v << "\n";
    for (size_t k = 0; k < r.artifacts.size(); ++k)
        o << "artifact." << k << "=" << r.artifacts[k] << "\n";
    return o.str();
}

ScenarioResult parse_result_text(const std::string& text) {
    ScenarioResult r;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrKind::config_error, "result line without '=': " + line);
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key == "name") {
            r.name = val;
        } else if (key == "claim") {
            r.claim = val;
        } else if (key == "pass") {
            r.pass = val == "1";
        } else if (key.rfind("report.", 0) == 0) {
            const auto parts = split(val, ',');
            if (parts.size() != 6)
                fail(ErrKind::config_error, "malformed report entry: " + val);
            PrincipleReport p;
            p.principle = parse_principle(parts[0]);
            p.verdict = parse_verdict(parts[1]);
            p.margin = std::strtod(parts[2].c_str(), nullptr);
            p.witness_time = static_cast<int>(std::strtol(parts[3].c_str(), nullptr, 10));
            p.witness_node = static_cast<int>(std::strtol(parts[4].c_str(), nullptr, 10));
            p.tolerance = std::strtod(parts[5].c_str(), nullptr);
            r.reports.push_back(p);
        } else if (key.rfind("evidence.", 0) == 0) {
            const auto parts = split(val, ',');
            if (parts.size() != 4 || parts[3].size() != 1)
                fail(ErrKind::config_error, "malformed evidence entry: " + val);
            r.evidence.push_back({parse_regime(parts[0]), parse_pclass(parts[1]),
                                  parse_principle(parts[2]), parts[3][0]});
        } else if (key.rfind("fact.", 0) == 0) {
            r.facts.emplace_back(key.substr(5), val);
        } else if (key.rfind("artifact.", 0) == 0) {
            r.artifacts.push_back(val);
        }
        // unknown keys are ignored so the format can grow
    }
    if (r.name.empty()) fail(ErrKind::config_error, "result text has no name line");
    return r;
}

StatusTable status_report(const std::vector<ScenarioResult>& results) {
    StatusTable table;
    table.matches = true;

    char cell[6][4]; // merged evidence symbol per (row, principle); 0 = untested
    for (auto& row : cell)
        for (char& c : row) c = 0;
    for (const auto& res : results) {
        for (const auto& e : res.evidence) {
            int row = -1;
            for (int r = 0; r < 6; ++r)
                if (kPaper[r].reg == e.regime && kPaper[r].pc == e.pclass) row = r;
            int col = -1;
            for (int c = 0; c < 4; ++c)
                if (kCols[c] == e.principle) col = c;
            if (row < 0 || col < 0) continue; // boundary-point reports have no column
            char& slot = cell[row][col];
            if (e.symbol == '-' || slot == 0) {
                if (slot != '-') slot = e.symbol; // a counterexample outranks compliance
            }
        }
    }

    std::ostringstream text, csv;
    csv << "regime,p,principle,empirical,paper\n";
    text << "status of the maximum and comparison principles: empirical vs published\n\n";
    text << pad("regime", 19) << pad("p", 6);
    for (const auto& p : kCols) text << pad(to_string(p), 13);
    text << "\n";
    for (int r = 0; r < 6; ++r) {
        text << pad(to_string(kPaper[r].reg), 19) << pad(to_string(kPaper[r].pc), 6);
        for (int c = 0; c < 4; ++c) {
            const std::string paper = kPaper[r].sym[c];
            std::string emp;
            if (cell[r][c] != 0) {
                emp = std::string(1, cell[r][c]);
                const bool ok = cell[r][c] == '-'
                                    ? paper.find('-') != std::string::npos
                                    : paper.find('+') != std::string::npos ||
                                          paper.find("±") != std::string::npos;
                if (!ok) table.matches = false;
            } else {
                emp = paper.find('?') != std::string::npos ? "?" : "n/a";
            }
            text << pad(emp + " [" + paper + "]", 13);
            csv << to_string(kPaper[r].reg) << "," << to_string(kPaper[r].pc) << ","
                << to_string(kCols[c]) << "," << emp << "," << paper << "\n";
        }
        text << "\n";
    }
    text << "\nempirical: + every targeted run complied; - a counterexample run was produced;\n"
            "? untested here and open in the published table; n/a untested here.\n"
            "published (bracketed): + satisfied; - counterexample known; ± satisfied under\n"
            "additional assumptions; ? no satisfactory information.\n";
    if (!table.matches) text << "\nWARNING: some tested cell contradicts the published symbol.\n";

    table.text = text.str();
    table.csv = csv.str();
    return table;
}

} // namespace plap
