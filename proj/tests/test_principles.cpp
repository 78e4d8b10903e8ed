#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "plap/closed_forms.hpp"
#include "plap/errors.hpp"
#include "plap/parabolic.hpp"
#include "plap/principles.hpp"

using namespace plap;

namespace {

SpaceTimeField constant_in_time(const Field& u, int m) {
    TimeMesh tm = make_time_mesh(0.0, 1.0, m);
    SpaceTimeField stf = make_space_time_field(u.grid, tm);
    for (int j = 0; j <= m; ++j) stf.set_slice(j, u);
    return stf;
}

} // namespace

TEST_CASE("default tolerance is the coarser of solver and mesh resolution") {
    Grid g = make_interval_grid(-1.0, 1.0, 257);
    CHECK(default_tolerance(g, 1e-10) == doctest::Approx(g.h * g.h));
    CHECK(default_tolerance(g, 1e-3) == doctest::Approx(1e-2));
}

TEST_CASE("weak positivity margins and witnesses") {
    Grid g = make_interval_grid(-1.0, 1.0, 9);
    Field u = sample(g, [](double x) { return 1.0 - x * x; });
    SpaceTimeField stf = constant_in_time(u, 3);
    stf.at(2, 5) = -0.02;

    PrincipleReport rep = check_wmp(stf, 1e-8);
    CHECK(rep.principle == Principle::WMP);
    CHECK(rep.verdict == Verdict::violated);
    CHECK(rep.margin == doctest::Approx(-0.02));
    CHECK(rep.witness_time == 2);
    CHECK(rep.witness_node == 5);

    stf.at(2, 5) = -1e-9; // inside the tolerance band
    CHECK(check_wmp(stf, 1e-8).verdict == Verdict::holds);
}

TEST_CASE("strict interior positivity skips empty slices") {
    Grid g = make_interval_grid(-1.0, 1.0, 9);
    SpaceTimeField zero = constant_in_time(make_field(g), 3);
    PrincipleReport rep = check_smp(zero, 1e-8);
    CHECK(rep.verdict == Verdict::inconclusive);
    CHECK(rep.margin == 0.0);

    Field u = sample(g, [](double x) { return 1.0 - x * x; });
    SpaceTimeField pos = constant_in_time(u, 3);
    rep = check_smp(pos, 1e-8);
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.margin > 0.0);

    pos.at(1, 4) = 0.0; // an interior zero on a nontrivial slice
    rep = check_smp(pos, 1e-8);
    CHECK(rep.verdict == Verdict::violated);
    CHECK(rep.witness_time == 1);
    CHECK(rep.witness_node == 4);

    // boundary values are never inspected
    SpaceTimeField bnd = constant_in_time(u, 2);
    for (int j = 0; j <= 2; ++j) bnd.at(j, 0) = -5.0;
    CHECK(check_smp(bnd, 1e-8).verdict == Verdict::holds);
}

TEST_CASE("comparison of a run with itself sits on the margin") {
    Grid g = make_interval_grid(-1.0, 1.0, 17);
    Field u = sample(g, [](double x) { return std::cos(x); });
    SpaceTimeField stf = constant_in_time(u, 2);
    PrincipleReport rep = check_wcp(stf, stf, 1e-10);
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.margin == 0.0);

    SpaceTimeField other = constant_in_time(u, 3); // different time mesh
    CHECK_THROWS_AS((void)check_wcp(stf, other, 1e-10), Error);
    try {
        (void)check_wcp(stf, other, 1e-10);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::incompatible_fields);
    }
}

TEST_CASE("strict comparison needs a positive upper run") {
    Grid g = make_interval_grid(-1.0, 1.0, 17);
    Field u = sample(g, [](double x) { return 1.0 - x * x; });
    Field w = sample(g, [](double x) { return 0.5 * (1.0 - x * x); });
    SpaceTimeField lower = constant_in_time(w, 3);
    SpaceTimeField upper = constant_in_time(u, 3);

    PrincipleReport rep = check_scp(lower, upper, 1e-6);
    CHECK(rep.verdict == Verdict::holds);
    // interior gap is 0.5(1-x^2); the boundary flux gap is 1 on each side
    CHECK(rep.margin > 0.0);

    // strictness fails when the two runs touch inside
    rep = check_scp(upper, upper, 1e-6);
    CHECK(rep.verdict == Verdict::violated);
    CHECK(rep.margin == 0.0);

    // a zero upper run leaves nothing to compare against
    rep = check_scp(lower, constant_in_time(make_field(g), 3), 1e-6);
    CHECK(rep.verdict == Verdict::inconclusive);

    CHECK_THROWS_AS((void)check_scp(lower, upper, 1e-6, 0), Error);
}

TEST_CASE("boundary slope dichotomy on single slices") {
    Grid g = make_interval_grid(-1.0, 1.0, 257);
    double tol = default_tolerance(g, 0.0);

    // u = 1 - x^2 leaves the boundary at slope -2: the stencil is exact
    SpaceTimeField good = constant_in_time(sample(g, [](double x) { return 1.0 - x * x; }), 2);
    PrincipleReport rep = check_hopf(good, 1, tol);
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.margin == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.witness_time == 1);

    // u = (1 - x^2)^2 has a flat boundary contact, but the one-sided stencil
    // resolves it as an inward slope of 8h^2 + O(h^3), which beats the h^2
    // tolerance at every resolution; the strict verdict survives
    SpaceTimeField flat = constant_in_time(
        sample(g, [](double x) { return (1.0 - x * x) * (1.0 - x * x); }), 2);
    rep = check_hopf(flat, 0, tol);
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.margin == doctest::Approx(8.0 * g.h * g.h).epsilon(1e-2));

    // flattening the boundary layer so the stencil sees slope zero exactly
    // defeats the strict slope while interior positivity persists
    Field layered = sample(g, [](double x) { return 1.0 - x * x; });
    layered[1] = 0.25 * layered[2];
    layered[g.n - 2] = 0.25 * layered[g.n - 3];
    rep = check_hopf(constant_in_time(layered, 2), 1, tol);
    CHECK(rep.verdict == Verdict::violated);
    CHECK(rep.margin == 0.0);

    // zero slice: the premise fails but the slope is still reported
    SpaceTimeField zero = constant_in_time(make_field(g), 2);
    rep = check_hopf(zero, 1, tol);
    CHECK(rep.verdict == Verdict::inconclusive);
    CHECK(rep.margin == 0.0);

    CHECK_THROWS_AS((void)check_hopf(good, 7, tol), Error);
    CHECK_THROWS_AS((void)check_hopf(good, -1, tol), Error);
}

TEST_CASE("boundary slope on a radial mesh uses only the outer rim") {
    Grid g = make_radial_grid(1.0, 2, 129);
    Field u = sample(g, [](double r) { return 1.0 - r * r; });
    SpaceTimeField stf = constant_in_time(u, 2);
    PrincipleReport rep = check_hopf(stf, 1, default_tolerance(g, 0.0));
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.margin == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.witness_node == g.n - 1);
}

TEST_CASE("positivity times order and support radius") {
    Grid g = make_interval_grid(-1.0, 1.0, 9);
    TimeMesh tm = make_time_mesh(0.0, 1.0, 4);
    SpaceTimeField stf = make_space_time_field(g, tm);
    Field full = sample(g, [](double x) { return 1.0 - x * x; });
    stf.set_slice(0, full);
    stf.set_slice(1, full);
    stf.set_slice(2, full);
    Field partial = make_field(g);
    partial[4] = 0.5; // only the center stays alive
    stf.set_slice(3, partial);

    auto [t_bar, t_star] = positivity_time(stf, 1e-8);
    CHECK(t_bar == doctest::Approx(2.0 * tm.dt));
    CHECK(t_star == doctest::Approx(3.0 * tm.dt));
    CHECK(t_bar <= t_star);

    CHECK(support_radius(full, 1e-8) == doctest::Approx(0.75)); // nodes at +-1 hold zeros
    CHECK(support_radius(partial, 1e-8) == doctest::Approx(0.0));
    CHECK(support_radius(make_field(g), 1e-8) == 0.0);

    CHECK(extinction_time_estimate(stf, 1e-8) == doctest::Approx(4.0 * tm.dt));
    SpaceTimeField alive = constant_in_time(full, 4);
    CHECK(std::isinf(extinction_time_estimate(alive, 1e-8)));
}

TEST_CASE("closed-form support radius is resolved to one cell") {
    BarenblattParams bp = make_barenblatt_params(3.0, 1, 1.0, 1.0);
    Grid g = make_interval_grid(-6.0, 6.0, 1201);
    Field u = sample(g, [&](double x) { return barenblatt(x, 0.0, bp); });
    double r = support_radius(u, 1e-6);
    CHECK(std::fabs(r - barenblatt_support_radius(0.0, bp)) < g.h + 0.01);
}

TEST_CASE("fast diffusion run: death time and collapse sharpness") {
    // the separable solution dies at t = 1; its discrete counterpart collapses
    // quadratically once the amplitude is tiny, so the all-positive and
    // some-positive thresholds land within one slice of each other
    ExtinctionParams ep = make_extinction_params(1.5, 0.5, 257);
    const Grid& g = ep.profile.grid;
    ProblemSpec spec;
    spec.p = 1.5;
    spec.grid = g;
    spec.eps_reg = 1e-13;
    spec.newton_tol = 1e-12;
    spec.initial = ep.profile;
    for (int i = 0; i < g.n; ++i) spec.initial[i] *= extinction_time_factor(0.0, ep);

    TimeMesh tm = make_time_mesh(0.0, 1.05, 200);
    ParabolicSolution sol = solve_parabolic(spec, tm);

    // the exact solution crosses the 1e-3 proxy at t ~ 0.969, strictly before
    // the true death time; the implicit stepper adds an O(dt) lag on top
    double est = extinction_time_estimate(sol.u, 1e-3);
    CHECK(est <= 1.0 + 2.0 * tm.dt);
    CHECK(est >= 0.9);
    for (int j = 0; j * tm.dt < 0.9; ++j)
        CHECK(sup_norm(sol.u.slice(j)) > 1e-2);

    auto [t_bar, t_star] = positivity_time(sol.u, 1e-12);
    CHECK(t_bar <= t_star);
    CHECK(t_star - t_bar <= tm.dt + 1e-12);

    // strictly positive inside while alive, and strict boundary slopes hold
    // well before the death time
    CHECK(check_wmp(sol.u, default_tolerance(g, spec.newton_tol)).verdict == Verdict::holds);
    int k_half = (int)std::llround(0.5 / tm.dt);
    CHECK(check_hopf(sol.u, k_half, default_tolerance(g, spec.newton_tol)).verdict ==
          Verdict::holds);
}

TEST_CASE("strict comparison implies weak comparison on a pushed pair") {
    Grid g = make_interval_grid(-1.0, 1.0, 257);
    TimeMesh tm = make_time_mesh(0.0, 0.5, 50);
    ProblemSpec lo;
    lo.p = 3.0;
    lo.grid = g;
    lo.eps_reg = 0.0;
    lo.initial = make_field(g);
    ProblemSpec hi = lo;
    hi.source = [](double, double) { return 1.0; };

    ParabolicSolution u = solve_parabolic(lo, tm);
    ParabolicSolution v = solve_parabolic(hi, tm);
    double tol = default_tolerance(g, lo.newton_tol);
    PrincipleReport scp = check_scp(u.u, v.u, tol);
    PrincipleReport wcp = check_wcp(u.u, v.u, tol);
    CHECK(scp.verdict == Verdict::holds);
    CHECK(wcp.verdict == Verdict::holds);
    CHECK(wcp.margin >= 0.0);
    CHECK(scp.margin > tol);
}
