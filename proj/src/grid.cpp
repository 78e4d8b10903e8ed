#include "plap/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace plap {

const char* to_string(ErrKind k) {
    switch (k) {
    case ErrKind::invalid_geometry: return "invalid-geometry";
    case ErrKind::non_finite_value: return "non-finite-value";
    case ErrKind::incompatible_fields: return "incompatible-fields";
    case ErrKind::invalid_parameter: return "invalid-parameter";
    case ErrKind::singular_flux: return "singular-flux";
    case ErrKind::singular_direction: return "singular-direction";
    case ErrKind::step_failure: return "step-failure";
    case ErrKind::convergence_failure: return "convergence-failure";
    case ErrKind::trivial_solution: return "trivial-solution";
    case ErrKind::bracketing_failure: return "bracketing-failure";
    case ErrKind::unknown_scenario: return "unknown-scenario";
    case ErrKind::mesh_too_coarse: return "mesh-too-coarse";
    case ErrKind::config_error: return "config-error";
    }
    return "unknown-error";
}

static void check_geometry(double a, double b, int n) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        fail(ErrKind::invalid_geometry, "endpoints must be finite");
    if (!(a < b))
        fail(ErrKind::invalid_geometry, "need a < b");
    if (n < 3)
        fail(ErrKind::invalid_geometry, "need at least 3 nodes, got " + std::to_string(n));
}

Grid make_interval_grid(double a, double b, int n) {
    check_geometry(a, b, n);
    Grid g;
    g.kind = GridKind::interval;
    g.a = a;
    g.b = b;
    g.N = 1;
    g.n = n;
    g.h = (b - a) / (n - 1);
    return g;
}

Grid make_radial_grid(double b, int N, int n) {
    check_geometry(0.0, b, n);
    if (N < 1) fail(ErrKind::invalid_geometry, "dimension must be >= 1");
    Grid g;
    g.kind = GridKind::radial;
    g.a = 0.0;
    g.b = b;
    g.N = N;
    g.n = n;
    g.h = b / (n - 1);
    return g;
}

Field make_field(const Grid& g, double fill) {
    Field u;
    u.grid = g;
    u.v.assign(static_cast<size_t>(g.n), fill);
    return u;
}

Field sample(const Grid& g, const std::function<double(double)>& f) {
    Field u = make_field(g);
    for (int i = 0; i < g.n; ++i) {
        double y = f(g.node(i));
        if (!std::isfinite(y))
            fail(ErrKind::non_finite_value,
                 "sample produced non-finite value at node " + std::to_string(i));
        u[i] = y;
    }
    return u;
}

double sup_norm(const Field& u) {
    double m = 0.0;
    for (double x : u.v) m = std::max(m, std::fabs(x));
    return m;
}

void require_same_grid(const Grid& g1, const Grid& g2, const char* what) {
    bool same = g1.kind == g2.kind && g1.a == g2.a && g1.b == g2.b && g1.N == g2.N &&
                g1.n == g2.n;
    if (!same) fail(ErrKind::incompatible_fields, std::string(what) + ": meshes differ");
}

double sup_diff(const Field& u, const Field& w) {
    require_same_grid(u.grid, w.grid, "sup_diff");
    double m = 0.0;
    for (int i = 0; i < u.size(); ++i) m = std::max(m, std::fabs(u[i] - w[i]));
    return m;
}

TimeMesh make_time_mesh(double t0, double T, int m) {
    if (!(std::isfinite(t0) && std::isfinite(T)) || !(t0 < T))
        fail(ErrKind::invalid_geometry, "need t0 < T, both finite");
    if (m < 1) fail(ErrKind::invalid_geometry, "need at least 1 time step");
    TimeMesh tm;
    tm.t0 = t0;
    tm.T = T;
    tm.m = m;
    tm.dt = (T - t0) / m;
    return tm;
}

Field SpaceTimeField::slice(int j) const {
    Field u = make_field(grid);
    for (int i = 0; i < grid.n; ++i) u[i] = at(j, i);
    return u;
}

void SpaceTimeField::set_slice(int j, const Field& u) {
    for (int i = 0; i < grid.n; ++i) at(j, i) = u[i];
}

SpaceTimeField make_space_time_field(const Grid& g, const TimeMesh& tm) {
    SpaceTimeField s;
    s.grid = g;
    s.tm = tm;
    s.values.assign(static_cast<size_t>(g.n) * (tm.m + 1), 0.0);
    return s;
}

static void write_row(std::ostream& os, double x, double v) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.15g,%.15g\n", x, v);
    os << buf;
}

void write_csv(std::ostream& os, const Field& u) {
    os << "x,value\n";
    for (int i = 0; i < u.size(); ++i) write_row(os, u.grid.node(i), u[i]);
}

void write_csv(std::ostream& os, const SpaceTimeField& u) {
    os << "t,x,value\n";
    char buf[144];
    for (int j = 0; j < u.slices(); ++j)
        for (int i = 0; i < u.grid.n; ++i) {
            std::snprintf(buf, sizeof(buf), "%.15g,%.15g,%.15g\n", u.tm.time(j),
                          u.grid.node(i), u.at(j, i));
            os << buf;
        }
}

template <class T> static void write_file(const std::string& path, const T& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(ErrKind::config_error, "cannot open output file " + path);
    write_csv(os, u);
}

void write_csv_file(const std::string& path, const Field& u) { write_file(path, u); }
void write_csv_file(const std::string& path, const SpaceTimeField& u) { write_file(path, u); }

} // namespace plap
