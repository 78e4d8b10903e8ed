#include "plap/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plap {
namespace kern {

namespace {
#ifdef _OPENMP
Mode g_mode = Mode::parallel;
#else
Mode g_mode = Mode::serial;
#endif

// Cell fluxes q_c = phi(Du_c) Du_c, weighted by the half-node radial factor.
inline double cell_flux(const Grid& g, const double* u, int c, double p, double eps) {
    double du = (u[c + 1] - u[c]) / g.h;
    double q = flux_phi(du, p, eps) * du;
    if (g.kind == GridKind::radial && g.N > 1)
        q *= std::pow(g.node(c) + 0.5 * g.h, g.N - 1);
    return q;
}

inline double node_div(const Grid& g, const double* q, int i) {
    double d = (q[i] - q[i - 1]) / g.h;
    if (g.kind == GridKind::radial && g.N > 1) d /= std::pow(g.node(i), g.N - 1);
    return d;
}
} // namespace

void set_mode(Mode m) { g_mode = m; }
Mode mode() { return g_mode; }

void check_flux_args(const Grid& g, const double* u, double p, double eps) {
    if (!(p > 1.0)) fail(ErrKind::invalid_parameter, "need p > 1");
    if (eps < 0.0) fail(ErrKind::invalid_parameter, "regularization must be >= 0");
    if (p < 2.0 && eps == 0.0) {
        for (int c = 0; c < g.n - 1; ++c)
            if (u[c + 1] == u[c])
                fail(ErrKind::singular_flux,
                     "flux is singular on the zero-gradient cell " + std::to_string(c) +
                         " (p < 2 with no regularization)");
    }
}

namespace serial {

void apply_p_laplacian(const Grid& g, const double* u, double p, double eps, double* out) {
    check_flux_args(g, u, p, eps);
    std::vector<double> q(static_cast<size_t>(g.n - 1));
    for (int c = 0; c < g.n - 1; ++c) q[c] = cell_flux(g, u, c, p, eps);
    out[0] = 0.0;
    out[g.n - 1] = 0.0;
    for (int i = 1; i < g.n - 1; ++i) out[i] = node_div(g, q.data(), i);
}

void map_phi(int m, const double* du, double p, double eps, double* out) {
    for (int c = 0; c < m; ++c) out[c] = flux_phi(du[c], p, eps);
}

void map_psi(int m, const double* du, double p, double eps, double* out) {
    for (int c = 0; c < m; ++c) out[c] = flux_psi(du[c], p, eps);
}

double vmin(const double* v, int n) {
    double m = v[0];
    for (int i = 1; i < n; ++i) m = std::min(m, v[i]);
    return m;
}

double vmax(const double* v, int n) {
    double m = v[0];
    for (int i = 1; i < n; ++i) m = std::max(m, v[i]);
    return m;
}

} // namespace serial

namespace openmp {

void apply_p_laplacian(const Grid& g, const double* u, double p, double eps, double* out) {
    check_flux_args(g, u, p, eps);
    std::vector<double> q(static_cast<size_t>(g.n - 1));
    double* qd = q.data();
#pragma omp parallel for schedule(static)
    for (int c = 0; c < g.n - 1; ++c) qd[c] = cell_flux(g, u, c, p, eps);
    out[0] = 0.0;
    out[g.n - 1] = 0.0;
#pragma omp parallel for schedule(static)
    for (int i = 1; i < g.n - 1; ++i) out[i] = node_div(g, qd, i);
}

void map_phi(int m, const double* du, double p, double eps, double* out) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < m; ++c) out[c] = flux_phi(du[c], p, eps);
}

void map_psi(int m, const double* du, double p, double eps, double* out) {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < m; ++c) out[c] = flux_psi(du[c], p, eps);
}

double vmin(const double* v, int n) {
    double m = v[0];
#pragma omp parallel for reduction(min : m) schedule(static)
    for (int i = 1; i < n; ++i) m = std::min(m, v[i]);
    return m;
}

double vmax(const double* v, int n) {
    double m = v[0];
#pragma omp parallel for reduction(max : m) schedule(static)
    for (int i = 1; i < n; ++i) m = std::max(m, v[i]);
    return m;
}

} // namespace openmp

void apply_p_laplacian(const Grid& g, const double* u, double p, double eps, double* out) {
    if (g_mode == Mode::parallel) openmp::apply_p_laplacian(g, u, p, eps, out);
    else serial::apply_p_laplacian(g, u, p, eps, out);
}

void map_phi(int m, const double* du, double p, double eps, double* out) {
    if (g_mode == Mode::parallel) openmp::map_phi(m, du, p, eps, out);
    else serial::map_phi(m, du, p, eps, out);
}

void map_psi(int m, const double* du, double p, double eps, double* out) {
    if (g_mode == Mode::parallel) openmp::map_psi(m, du, p, eps, out);
    else serial::map_psi(m, du, p, eps, out);
}

double vmin(const double* v, int n) {
    return g_mode == Mode::parallel ? openmp::vmin(v, n) : serial::vmin(v, n);
}

double vmax(const double* v, int n) {
    return g_mode == Mode::parallel ? openmp::vmax(v, n) : serial::vmax(v, n);
}

void thomas(int n, const double* sub, const double* diag, const double* sup, double* x,
            double* work) {
    double piv = diag[0];
    if (piv == 0.0) fail(ErrKind::convergence_failure, "tridiagonal pivot vanished at row 0");
    work[0] = sup[0] / piv;
    x[0] /= piv;
    for (int i = 1; i < n; ++i) {
        piv = diag[i] - sub[i] * work[i - 1];
        if (piv == 0.0)
            fail(ErrKind::convergence_failure,
                 "tridiagonal pivot vanished at row " + std::to_string(i));
        if (i < n - 1) work[i] = sup[i] / piv;
        x[i] = (x[i] - sub[i] * x[i - 1]) / piv;
    }
    for (int i = n - 2; i >= 0; --i) x[i] -= work[i] * x[i + 1];
}

} // namespace kern

Field discrete_p_laplacian(const Field& u, double p, double eps_reg) {
    Field out = make_field(u.grid);
    kern::apply_p_laplacian(u.grid, u.v.data(), p, eps_reg, out.v.data());
    return out;
}

} // namespace plap
