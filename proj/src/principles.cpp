#include "plap/principles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plap/errors.hpp"

namespace plap {

namespace {

int first_interior(const Grid& g) {
    // the center node of a radial mesh is an interior unknown
    return g.kind == GridKind::radial ? 0 : 1;
}

void require_same_run(const SpaceTimeField& u, const SpaceTimeField& v) {
    require_same_grid(u.grid, v.grid, "principle check");
    if (u.tm.m != v.tm.m || u.tm.t0 != v.tm.t0 || u.tm.T != v.tm.T)
        fail(ErrKind::incompatible_fields, "principle check: time meshes differ");
}

// largest k such that slices 1..k are strictly positive (above tol) on every
// interior node; 0 when slice 1 already fails
int all_positive_prefix(const SpaceTimeField& stf, double tol) {
    const int lo = first_interior(stf.grid);
    const int hi = stf.grid.interior_end();
    for (int j = 1; j < stf.slices(); ++j) {
        for (int i = lo; i < hi; ++i)
            if (!(stf.at(j, i) > tol)) return j - 1;
    }
    return stf.tm.m;
}

struct Stencil {
    int node;
    double deriv; // outer normal derivative
};

// second-order one-sided boundary derivatives, oriented outward
void boundary_derivatives(const Field& u, Stencil out[2], int& count) {
    const Grid& g = u.grid;
    const double h = g.h;
    count = 0;
    const int n = g.n;
    if (g.kind == GridKind::interval) {
        out[count++] = {0, (3.0 * u[0] - 4.0 * u[1] + u[2]) / (2.0 * h)};
    }
    out[count++] = {n - 1, (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h)};
}

} // namespace

const char* to_string(Principle p) {
    switch (p) {
    case Principle::WMP: return "WMP";
    case Principle::SMP: return "SMP";
    case Principle::WCP: return "WCP";
    case Principle::SCP: return "SCP";
    case Principle::HMP: return "HMP";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

double default_tolerance(const Grid& g, double newton_tol) {
    return std::max(10.0 * newton_tol, g.h * g.h);
}

PrincipleReport check_wmp(const SpaceTimeField& stf, double tol) {
    PrincipleReport rep;
    rep.principle = Principle::WMP;
    rep.tolerance = tol;
    rep.margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < stf.slices(); ++j) {
        for (int i = 0; i < stf.grid.n; ++i) {
            const double s = stf.at(j, i);
            if (s < rep.margin) {
                rep.margin = s;
                rep.witness_time = j;
                rep.witness_node = i;
            }
        }
    }
    rep.verdict = rep.margin >= -tol ? Verdict::holds : Verdict::violated;
    return rep;
}

PrincipleReport check_smp(const SpaceTimeField& stf, double tol) {
    PrincipleReport rep;
    rep.principle = Principle::SMP;
    rep.tolerance = tol;
    const int lo = first_interior(stf.grid);
    const int hi = stf.grid.interior_end();
    bool any = false;
    double margin = std::numeric_limits<double>::infinity();
    for (int j = 1; j < stf.slices(); ++j) {
        double amp = 0.0;
        double mn = std::numeric_limits<double>::infinity();
        int arg = lo;
        for (int i = lo; i < hi; ++i) {
            const double s = stf.at(j, i);
            amp = std::max(amp, std::abs(s));
            if (s < mn) {
                mn = s;
                arg = i;
            }
        }
        if (amp <= tol) continue; // identically-zero slice: the premise is empty
        any = true;
        if (mn < margin) {
            margin = mn;
            rep.witness_time = j;
            rep.witness_node = arg;
        }
    }
    if (!any) {
        rep.verdict = Verdict::inconclusive;
        rep.margin = 0.0;
        return rep;
    }
    rep.margin = margin;
    rep.verdict = margin > tol ? Verdict::holds : Verdict::violated;
    return rep;
}

PrincipleReport check_wcp(const SpaceTimeField& u, const SpaceTimeField& v, double tol) {
    require_same_run(u, v);
    PrincipleReport rep;
    rep.principle = Principle::WCP;
    rep.tolerance = tol;
    rep.margin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < u.slices(); ++j) {
        for (int i = 0; i < u.grid.n; ++i) {
            const double d = v.at(j, i) - u.at(j, i);
            if (d < rep.margin) {
                rep.margin = d;
                rep.witness_time = j;
                rep.witness_node = i;
            }
        }
    }
    rep.verdict = rep.margin >= -tol ? Verdict::holds : Verdict::violated;
    return rep;
}

PrincipleReport check_scp(const SpaceTimeField& u, const SpaceTimeField& v, double tol,
                          int burn_in) {
    require_same_run(u, v);
    if (burn_in < 1) fail(ErrKind::invalid_parameter, "strict comparison: burn_in must be >= 1");
    PrincipleReport rep;
    rep.principle = Principle::SCP;
    rep.tolerance = tol;
    const int k_v = all_positive_prefix(v, tol);
    if (k_v < burn_in) {
        rep.verdict = Verdict::inconclusive;
        rep.margin = 0.0;
        return rep;
    }
    const int lo = first_interior(u.grid);
    const int hi = u.grid.interior_end();
    double margin = std::numeric_limits<double>::infinity();
    for (int j = burn_in; j <= k_v; ++j) {
        for (int i = lo; i < hi; ++i) {
            const double d = v.at(j, i) - u.at(j, i);
            if (d < margin) {
                margin = d;
                rep.witness_time = j;
                rep.witness_node = i;
            }
        }
        Stencil su[2], sv[2];
        int cu = 0, cv = 0;
        const Field fu = u.slice(j);
        const Field fv = v.slice(j);
        boundary_derivatives(fu, su, cu);
        boundary_derivatives(fv, sv, cv);
        for (int k = 0; k < cu; ++k) {
            const double d = su[k].deriv - sv[k].deriv; // ordered fluxes leave this positive
            if (d < margin) {
                margin = d;
                rep.witness_time = j;
                rep.witness_node = su[k].node;
            }
        }
    }
    rep.margin = margin;
    rep.verdict = margin > tol ? Verdict::holds : Verdict::violated;
    return rep;
}

PrincipleReport check_hopf(const SpaceTimeField& stf, int time_index, double tol) {
    if (time_index < 0 || time_index >= stf.slices())
        fail(ErrKind::invalid_parameter, "boundary-point check: time index out of range");
    PrincipleReport rep;
    rep.principle = Principle::HMP;
    rep.tolerance = tol;
    const Field f = stf.slice(time_index);
    Stencil st[2];
    int count = 0;
    boundary_derivatives(f, st, count);
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < count; ++k) {
        if (st[k].deriv > worst) {
            worst = st[k].deriv;
            rep.witness_node = st[k].node;
        }
    }
    rep.witness_time = time_index;
    rep.margin = -worst; // positive when every outward slope is strictly negative
    const int lo = first_interior(stf.grid);
    const int hi = stf.grid.interior_end();
    double interior_min = std::numeric_limits<double>::infinity();
    for (int i = lo; i < hi; ++i) interior_min = std::min(interior_min, f[i]);
    if (!(interior_min > tol)) {
        // the slice is not strictly positive inside, so the principle's
        // premise fails; report the measured slope anyway
        rep.verdict = Verdict::inconclusive;
        return rep;
    }
    rep.verdict = rep.margin > tol ? Verdict::holds : Verdict::violated;
    return rep;
}

std::pair<double, double> positivity_time(const SpaceTimeField& stf, double tol) {
    const int lo = first_interior(stf.grid);
    const int hi = stf.grid.interior_end();
    const int k_bar = all_positive_prefix(stf, tol);
    int k_star = 0;
    for (int j = 1; j < stf.slices(); ++j) {
        bool some = false;
        for (int i = lo; i < hi; ++i) {
            if (stf.at(j, i) > tol) {
                some = true;
                break;
            }
        }
        if (!some) break;
        k_star = j;
    }
    return {stf.tm.dt * k_bar, stf.tm.dt * k_star};
}

double support_radius(const Field& slice, double tol) {
    double r = 0.0;
    for (int i = 0; i < slice.grid.n; ++i)
        if (slice[i] > tol) r = std::max(r, std::abs(slice.grid.node(i)));
    return r;
}

double extinction_time_estimate(const SpaceTimeField& stf, double tol) {
    for (int j = 0; j < stf.slices(); ++j) {
        if (sup_norm(stf.slice(j)) < tol) return stf.tm.dt * j;
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace plap
