#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "plap/closed_forms.hpp"
#include "plap/elliptic.hpp"
#include "plap/errors.hpp"
#include "plap/kernels.hpp"
#include "plap/parabolic.hpp"

using namespace plap;

namespace {

Field bump(const Grid& g, double amp) {
    return sample(g, [amp](double x) { return amp * (1.0 - x * x); });
}

ProblemSpec base_spec(const Grid& g, double p, double lambda) {
    ProblemSpec s;
    s.p = p;
    s.lambda = lambda;
    s.grid = g;
    s.initial = make_field(g);
    return s;
}

} // namespace

TEST_CASE("one linear step equals the hand-assembled system") {
    Grid g = make_interval_grid(-1.0, 1.0, 65);
    ProblemSpec spec = base_spec(g, 2.0, 0.0);
    spec.source = [](double, double) { return 1.0; };
    const double dt = 0.01;
    auto [u, rep] = step_implicit_euler(spec.initial, dt, dt, spec);
    CHECK(rep.final_residual <= spec.newton_tol);

    const int m = g.n - 2;
    const double h = g.h;
    std::vector<double> sub(m, -1.0 / (h * h)), diag(m, 1.0 / dt + 2.0 / (h * h));
    std::vector<double> sup(m, -1.0 / (h * h)), rhs(m, 1.0), work(m);
    kern::thomas(m, sub.data(), diag.data(), sup.data(), rhs.data(), work.data());
    for (int k = 0; k < m; ++k) CHECK(u[k + 1] == doctest::Approx(rhs[k]).epsilon(1e-12));
    CHECK(u[0] == 0.0);
    CHECK(u[g.n - 1] == 0.0);
}

TEST_CASE("one step tracks the degenerate closed form") {
    BarenblattParams bp = make_barenblatt_params(3.0, 1, 1.0, 1.0);
    Grid g = make_interval_grid(-6.0, 6.0, 801);
    ProblemSpec spec = base_spec(g, 3.0, 0.0);
    spec.eps_reg = 0.0;
    spec.initial = sample(g, [&](double x) { return barenblatt(x, 0.0, bp); });
    const double dt = 1e-3;
    auto [u, rep] = step_implicit_euler(spec.initial, dt, dt, spec);
    Field exact = sample(g, [&](double x) { return barenblatt(x, dt, bp); });
    CHECK(sup_diff(u, exact) < 5e-3);
}

TEST_CASE("backward euler converges at first order in time") {
    Grid g = make_interval_grid(-1.0, 1.0, 257);
    ProblemSpec spec = base_spec(g, 3.0, 0.0);
    spec.eps_reg = 0.0;
    spec.initial = bump(g, 1.0);
    const double T = 0.25;
    auto final_at = [&](int mT) {
        ParabolicSolution sol = solve_parabolic(spec, make_time_mesh(0.0, T, mT));
        return sol.u.slice(sol.u.slices() - 1);
    };
    Field ref = final_at(64);
    double d8 = sup_diff(final_at(8), ref);
    double d16 = sup_diff(final_at(16), ref);
    double rate = std::log2(d8 / d16);
    CHECK(rate > 0.8);
    CHECK(d16 < d8);
}

TEST_CASE("nonnegative data stays nonnegative without reaction") {
    Grid g = make_interval_grid(-1.0, 1.0, 257);
    ProblemSpec spec = base_spec(g, 1.5, 0.0);
    spec.initial = bump(g, 1.0);
    ParabolicSolution sol = solve_parabolic(spec, make_time_mesh(0.0, 0.5, 50));
    double lo = 0.0;
    for (double v : sol.u.values) lo = std::min(lo, v);
    CHECK(lo >= -10.0 * spec.newton_tol);
}

TEST_CASE("ordered data stays ordered for absorbing and bounded reactions") {
    Grid g = make_interval_grid(-1.0, 1.0, 257);
    TimeMesh tm = make_time_mesh(0.0, 0.5, 50);

    auto run = [&](double p, double lambda, const Field& u0, double src) {
        ProblemSpec spec = base_spec(g, p, lambda);
        spec.initial = u0;
        spec.source = [src](double, double) { return src; };
        return solve_parabolic(spec, tm);
    };

    // lambda < 0: absorbing reaction
    {
        Field u0 = bump(g, 0.3);
        Field v0 = sample(g, [](double x) {
            double c = std::cos(1.5707963267948966 * x);
            return 0.3 * (1.0 - x * x) + 0.2 * c * c;
        });
        ParabolicSolution u = run(3.0, -1.0, u0, 0.0);
        ParabolicSolution v = run(3.0, -1.0, v0, 0.1);
        double gap = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < u.u.values.size(); ++k)
            gap = std::min(gap, v.u.values[k] - u.u.values[k]);
        CHECK(gap >= -1e-9);
    }

    // lambda = 1, p = 3 with data bounded by 1: the reaction is one-sided
    // Lipschitz on the invariant band
    {
        ParabolicSolution u = run(3.0, 1.0, bump(g, 0.25), 0.0);
        ParabolicSolution v = run(3.0, 1.0, bump(g, 0.5), 0.2);
        double gap = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < u.u.values.size(); ++k)
            gap = std::min(gap, v.u.values[k] - u.u.values[k]);
        CHECK(gap >= -1e-9);
    }
}

TEST_CASE("logistic reaction respects the capacity ceiling") {
    Grid g = make_interval_grid(-1.0, 1.0, 129);
    ProblemSpec spec = base_spec(g, 3.0, 1.0);
    spec.reaction = ReactionKind::logistic;
    spec.capacity = make_field(g, 1.0);
    spec.initial = bump(g, 0.25);
    ParabolicSolution sol = solve_parabolic(spec, make_time_mesh(0.0, 1.0, 50));
    double lo = 0.0, hi = 0.0;
    for (double v : sol.u.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo >= -1e-9);
    CHECK(hi <= 1.0 + 1e-9);
}

TEST_CASE("flux regularization washes out as it shrinks") {
    Grid g = make_interval_grid(-1.0, 1.0, 257);
    TimeMesh tm = make_time_mesh(0.0, 0.25, 25);
    auto final_with_eps = [&](double eps) {
        ProblemSpec spec = base_spec(g, 3.0, 0.0);
        spec.eps_reg = eps;
        spec.initial = bump(g, 1.0);
        ParabolicSolution sol = solve_parabolic(spec, tm);
        return sol.u.slice(sol.u.slices() - 1);
    };
    Field sharp = final_with_eps(0.0);
    double d_h = sup_diff(final_with_eps(g.h), sharp);
    double d_h2 = sup_diff(final_with_eps(0.5 * g.h), sharp);
    CHECK(d_h < 5e-3);
    CHECK(d_h2 < 0.6 * d_h); // roughly linear in eps for p = 3
}

TEST_CASE("separable closed form passes through the residual field") {
    ExtinctionParams ep = make_extinction_params(1.5, 0.5, 257);
    const Grid& g = ep.profile.grid;
    TimeMesh tm = make_time_mesh(0.0, 0.5, 50);
    SpaceTimeField stf = make_space_time_field(g, tm);
    for (int j = 0; j < stf.slices(); ++j) {
        double f = extinction_time_factor(tm.time(j), ep);
        Field s = ep.profile;
        for (int i = 0; i < g.n; ++i) s[i] *= f;
        stf.set_slice(j, s);
    }
    ProblemSpec spec = base_spec(g, 1.5, 0.0);
    spec.eps_reg = 1e-150;
    SpaceTimeField res = residual_field(stf, spec);
    double worst = 0.0;
    for (int j = 1; j < res.slices() - 1; ++j)
        for (int i = 1; i < g.n - 1; ++i) {
            if (std::fabs(g.node(i)) < 0.05) continue; // profile kink at the peak
            worst = std::max(worst, std::fabs(res.at(j, i)));
        }
    CHECK(worst < 5e-3);
    // terminal slices and boundary columns are zero by contract
    for (int i = 0; i < g.n; ++i) {
        CHECK(res.at(0, i) == 0.0);
        CHECK(res.at(res.slices() - 1, i) == 0.0);
    }
    CHECK_THROWS_AS((void)residual_field(stf, base_spec(make_interval_grid(-1, 1, 65), 1.5, 0.0)),
                    Error);
}

TEST_CASE("reaction terms and their linearization") {
    Grid g = make_interval_grid(-1.0, 1.0, 5);
    ProblemSpec pw = base_spec(g, 3.0, 2.0);
    CHECK(reaction_eval(0.7, 0, pw) == doctest::Approx(2.0 * 0.49));
    CHECK(reaction_eval(-0.7, 0, pw) == doctest::Approx(-2.0 * 0.49));

    ProblemSpec lg = base_spec(g, 3.0, 2.0);
    lg.reaction = ReactionKind::logistic;
    lg.capacity = make_field(g, 2.0);
    CHECK(reaction_eval(0.7, 0, lg) == doctest::Approx(2.0 * 0.49 * 1.3));
    const double d = 1e-7;
    double fd = (reaction_eval(0.7 + d, 0, lg) - reaction_eval(0.7 - d, 0, lg)) / (2.0 * d);
    CHECK(reaction_derivative(0.7, 0, lg) == doctest::Approx(fd).epsilon(1e-6));

    CHECK(one_sided_lipschitz_bound(3.0, 1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(one_sided_lipschitz_bound(2.0, 0.7, 1.5) == doctest::Approx(0.7 * 1.5));
    CHECK(std::isinf(one_sided_lipschitz_bound(1.5, 1.0, 1.0)));
    CHECK_THROWS_AS((void)one_sided_lipschitz_bound(3.0, -1.0, 1.0), Error);
}

TEST_CASE("rank-one linearization matrix spectrum") {
    std::vector<double> a = {1.0, 2.0, -2.0};
    const double p = 3.5;
    LinearizationMatrix M = linearization_matrix(a, p);
    CHECK(M.dim == 3);
    // A a = (p-1) a, A q = q for q orthogonal to a
    for (int r = 0; r < 3; ++r) {
        double Aa = 0.0;
        for (int c = 0; c < 3; ++c) Aa += M.at(r, c) * a[c];
        CHECK(Aa == doctest::Approx((p - 1.0) * a[r]).epsilon(1e-14));
    }
    std::vector<double> q = {2.0, -1.0, 0.0};
    for (int r = 0; r < 3; ++r) {
        double Aq = 0.0;
        for (int c = 0; c < 3; ++c) Aq += M.at(r, c) * q[c];
        CHECK(Aq == doctest::Approx(q[r]).epsilon(1e-14));
    }
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(M.at(r, c) == M.at(c, r));

    CHECK_THROWS_AS(linearization_matrix({0.0, 0.0}, 3.0), Error);
    try {
        linearization_matrix({0.0}, 3.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::singular_direction);
    }
    CHECK_THROWS_AS(linearization_matrix({1.0}, 1.0), Error);
}

TEST_CASE("solver input validation and failure reporting") {
    Grid g = make_interval_grid(-1.0, 1.0, 65);
    TimeMesh tm = make_time_mesh(0.0, 0.1, 4);

    // logistic reaction demands a capacity field on the same mesh
    ProblemSpec lg = base_spec(g, 3.0, 1.0);
    lg.reaction = ReactionKind::logistic;
    lg.initial = bump(g, 0.5);
    CHECK_THROWS_AS(solve_parabolic(lg, tm), Error);

    // unregularized singular flux on flat data is refused, not iterated
    ProblemSpec sing = base_spec(g, 1.5, 0.0);
    sing.eps_reg = 0.0;
    sing.source = [](double, double) { return 1.0; };
    try {
        solve_parabolic(sing, tm);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::singular_flux);
    }

    // a starved newton budget surfaces as a step failure with its time index
    ProblemSpec starved = base_spec(g, 3.0, 0.0);
    starved.initial = bump(g, 1.0);
    starved.newton_tol = 1e-14;
    starved.newton_max_iters = 1;
    try {
        solve_parabolic(starved, make_time_mesh(0.0, 10.0, 2));
        CHECK(false);
    } catch (const StepFailure& e) {
        CHECK(e.kind() == ErrKind::step_failure);
        CHECK(e.time_index == 1);
        CHECK(std::string(e.what()).find("(time index 1)") != std::string::npos);
    }

    ProblemSpec bad = base_spec(g, 3.0, 0.0);
    bad.initial[3] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(solve_parabolic(bad, tm), Error);
    CHECK_THROWS_AS((void)step_implicit_euler(bump(g, 1.0), 0.1, -0.1, base_spec(g, 3.0, 0.0)),
                    Error);
}
