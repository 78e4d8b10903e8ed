#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "plap/closed_forms.hpp"
#include "plap/elliptic.hpp"
#include "plap/errors.hpp"
#include "plap/kernels.hpp"

using namespace plap;

namespace {

Field bump(const Grid& g, double amp) {
    return sample(g, [amp](double x) { return amp * (1.0 - x * x); });
}

} // namespace

TEST_CASE("energy gradient matches difference quotients") {
    Grid g = make_interval_grid(-1.0, 1.0, 33);
    Field w = sample(g, [](double x) { return (1.0 - x * x) * (0.5 + 0.3 * std::sin(3.0 * x)); });
    for (double p : {1.5, 2.0, 3.0}) {
        EnergySpec es;
        es.p = p;
        es.lambda = 0.7;
        es.h_src = sample(g, [](double x) { return std::cos(2.0 * x); });
        Field grad = energy_gradient(w, es);
        CHECK(grad[0] == 0.0);
        CHECK(grad[g.n - 1] == 0.0);
        const double d = 1e-6;
        for (int i : {1, 7, 16, 25, 31}) {
            Field wp = w, wm = w;
            wp[i] += d;
            wm[i] -= d;
            double fd = (energy(wp, es) - energy(wm, es)) / (2.0 * d);
            CHECK(grad[i] == doctest::Approx(fd).epsilon(2e-5));
        }
    }
}

TEST_CASE("minimizer reproduces the linear closed form") {
    // p = 2, lambda = 1: stationarity reduces to -w'' = h; for h = 1 on (-1,1)
    // the solution is (1 - x^2)/2
    Grid g = make_interval_grid(-1.0, 1.0, 257);
    EnergySpec es;
    es.p = 2.0;
    es.lambda = 1.0;
    es.h_src = make_field(g, 1.0);
    Field w = minimize_energy(es, g, make_field(g), {1e-11, 4000});
    Field exact = sample(g, [](double x) { return 0.5 * (1.0 - x * x); });
    CHECK(sup_diff(w, exact) < 1e-7);
}

TEST_CASE("minimizer failure carries the last iterate") {
    Grid g = make_interval_grid(-1.0, 1.0, 65);
    EnergySpec es;
    es.p = 3.0;
    es.h_src = make_field(g, 1.0);
    try {
        minimize_energy(es, g, make_field(g), {1e-14, 1});
        CHECK(false);
    } catch (const ConvergenceFailure& e) {
        CHECK(e.kind() == ErrKind::convergence_failure);
        CHECK(e.last_iterate.size() == static_cast<size_t>(g.n));
    }
    CHECK_THROWS_AS(minimize_energy(es, g, make_field(g), {-1.0, 10}), Error);
}

TEST_CASE("first eigenvalue: shooting against the closed form") {
    CHECK(lambda1_shooting(2.0, 2.0) ==
          doctest::Approx(lambda1_interval(2.0, 2.0)).epsilon(1e-9));
    CHECK(lambda1_shooting(1.5, 2.0) ==
          doctest::Approx(lambda1_interval(1.5, 2.0)).epsilon(1e-9));
    CHECK(lambda1_shooting(3.0, 2.0) ==
          doctest::Approx(lambda1_interval(3.0, 2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(lambda1_shooting(2.0, -1.0), Error);
}

TEST_CASE("first eigenvalue: rayleigh quotient descent") {
    Grid g = make_interval_grid(-1.0, 1.0, 513);
    for (double p : {1.5, 3.0}) {
        EigenResult er = lambda1_rayleigh(g, p, 1e-10);
        CHECK(er.lambda1 ==
              doctest::Approx(lambda1_interval(p, 2.0)).epsilon(5e-3));
        // ground state: one sign inside
        double lo = 0.0, hi = 0.0;
        for (int i = 1; i < g.n - 1; ++i) {
            lo = std::min(lo, er.eigenfield[i]);
            hi = std::max(hi, er.eigenfield[i]);
        }
        CHECK(lo * hi == 0.0);
        CHECK(std::max(-lo, hi) > 0.0);
    }
}

TEST_CASE("singular profile solves its equation away from the flat center") {
    Field v = solve_profile_bvp(1.5, 513);
    const Grid& g = v.grid;
    CHECK(v[256] == doctest::Approx(4.1352761825).epsilon(1e-6));
    Field lap = discrete_p_laplacian(v, 1.5, 0.0);
    double worst = 0.0;
    for (int i = 1; i < g.n - 1; ++i) {
        if (std::fabs(g.node(i)) < 0.05) continue; // gradient kink at the peak
        worst = std::max(worst, std::fabs(lap[i] + v[i]));
    }
    CHECK(worst < 5e-3);
    CHECK_THROWS_AS(solve_profile_bvp(2.5, 257), Error);
}

TEST_CASE("saddle construction data") {
    Grid g = make_interval_grid(-1.0, 1.0, 4097);
    SaddleConstruction sc = build_saddle_construction(g, 1.5, 1.0, 0.15, 0.4995);
    CHECK(sc.m == doctest::Approx(3.0).epsilon(1e-12));

    // w0 = |x|^m on the core, bridged down to zero at 2*eps1 = 0.999, even
    CHECK(sc.w0[2048] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(sc.w0[2048 + 512] == doctest::Approx(0.25 * 0.25 * 0.25)); // x = 0.25 in the core
    CHECK(sc.w0[2048 + 1424] > 0.0);                                 // x ~ 0.6953 on the bridge
    CHECK(sc.w0[4095] == 0.0);                                       // x ~ 0.99951 > 2*eps1
    CHECK(sc.w0[4096] == 0.0);
    for (int i : {100, 700, 2000}) CHECK(sc.w0[2048 + i] == doctest::Approx(sc.w0[2048 - i]));

    // z: plateau 1 on [0, eps], gone at eps1
    CHECK(sc.z[2048] == doctest::Approx(1.0));
    CHECK(sc.z[2048 + 200] == doctest::Approx(1.0)); // x ~ 0.0977 < eps
    CHECK(sc.z[2048 + 1400] == 0.0);                 // x ~ 0.6836 > eps1

    // the crafted source changes sign
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < g.n; ++i) {
        lo = std::min(lo, sc.h_src[i]);
        hi = std::max(hi, sc.h_src[i]);
    }
    CHECK(lo < -1e-3);
    CHECK(hi > 1e-3);

    CHECK_THROWS_AS(build_saddle_construction(g, 3.0, 1.0, 0.15, 0.4995), Error);
    CHECK_THROWS_AS(build_saddle_construction(g, 1.5, 1.0, 0.6, 0.4995), Error);
}

TEST_CASE("difference quotient of the gradient dips negative near the saddle") {
    Grid g = make_interval_grid(-1.0, 1.0, 4097);
    SaddleConstruction sc = build_saddle_construction(g, 1.5, 1.0, 0.15, 0.4995);
    EnergySpec es;
    es.p = 1.5;
    es.lambda = 1.0;
    es.h_src = sc.h_src;

    CHECK(energy(sc.w0, es) == doctest::Approx(-0.327894195329204).epsilon(1e-10));

    double z2 = zeta(1e-2, sc, 1.5, 1.0);
    double z3 = zeta(1e-3, sc, 1.5, 1.0);
    double z4 = zeta(1e-4, sc, 1.5, 1.0);
    CHECK(z2 > 2.8);
    CHECK(z2 < 3.05);
    CHECK(z3 > -0.60);
    CHECK(z3 < -0.48);
    CHECK(z4 > -5.8);
    CHECK(z4 < -5.3);
    CHECK(z2 > z3);
    CHECK(z3 > z4);
    CHECK_THROWS_AS((void)zeta(0.0, sc, 1.5, 1.0), Error);

    // moving off w0 along z lowers the energy: not a local minimum
    Field probe = sc.w0;
    for (int i = 0; i < g.n; ++i) probe[i] += 1e-3 * sc.z[i];
    double dE = energy(probe, es) - energy(sc.w0, es);
    CHECK(dE < -1e-7);
    CHECK(dE > -1e-5);
}

TEST_CASE("second minimizer lies below the crafted critical point") {
    Grid g = make_interval_grid(-1.0, 1.0, 513);
    SaddleConstruction sc = build_saddle_construction(g, 1.5, 1.0, 0.15, 0.4995);
    EnergySpec es;
    es.p = 1.5;
    es.lambda = 1.0;
    es.h_src = sc.h_src;
    // the crafted source is unbounded where the bridge derivative turns, so
    // energies drift with the mesh; the ordering and the separation do not
    Field w1 = minimize_energy(es, g, bump(g, -2.0), {1e-9, 4000});
    CHECK(energy(w1, es) < energy(sc.w0, es) - 0.01);
    CHECK(sup_diff(w1, sc.w0) > 0.1);
}

TEST_CASE("logistic equilibrium above the eigenvalue threshold") {
    Grid g = make_interval_grid(-1.0, 1.0, 513);
    double l1 = lambda1_interval(1.5, 2.0);
    Field w = solve_logistic(g, 1.5, 2.0 * l1);
    CHECK(w[256] == doctest::Approx(4.0427812).epsilon(5e-3));
    for (int i = 1; i < g.n - 1; ++i) CHECK(w[i] > 0.0);

    // stationarity: -(|w'|^{p-2}w')' - lambda |w|^{p-2}w + w = 0 off the peak
    Field lap = discrete_p_laplacian(w, 1.5, 0.0);
    double worst = 0.0;
    for (int i = 1; i < g.n - 1; ++i) {
        if (std::fabs(g.node(i)) < 0.05) continue;
        double r = -lap[i] - 2.0 * l1 * signed_pow(w[i], 0.5) + w[i];
        worst = std::max(worst, std::fabs(r));
    }
    CHECK(worst < 5e-3);

    // below the threshold only the trivial state minimizes
    try {
        solve_logistic(g, 1.5, 0.5 * l1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrKind::trivial_solution);
    }
}
