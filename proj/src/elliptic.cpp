#include "plap/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "plap/kernels.hpp"

namespace plap {

namespace {

void require_interval(const Grid& g, const char* what) {
    if (g.kind != GridKind::interval)
        fail(ErrKind::invalid_parameter, std::string(what) + " is defined on interval grids only");
}

void require_p(double p, const char* what) {
    if (!std::isfinite(p) || p <= 1.0)
        fail(ErrKind::invalid_parameter, std::string(what) + " needs p > 1");
}

const Field* source_field(const EnergySpec& spec, const Grid& g) {
    if (spec.h_src.v.empty()) return nullptr;
    require_same_grid(spec.h_src.grid, g, "energy source");
    return &spec.h_src;
}

void check_energy_spec(const EnergySpec& spec, const char* what) {
    require_p(spec.p, what);
    if (!std::isfinite(spec.lambda))
        fail(ErrKind::invalid_parameter, std::string(what) + " needs finite lambda");
}

// Pointwise stationarity residual at interior node i (gradient divided by h):
// -(div q)_i - lambda |w|^{p-2} w + w - h_src.
double node_residual(const Field& w, const EnergySpec& spec, const Field* hs,
                     const std::vector<double>& q, int i) {
    double r = (q[i - 1] - q[i]) / w.grid.h - spec.lambda * signed_pow(w[i], spec.p - 1.0) +
               w[i] - (hs ? (*hs)[i] : 0.0);
    return r;
}

void cell_flux(const Field& w, double p, std::vector<double>& q) {
    const int nc = w.grid.n - 1;
    const double h = w.grid.h;
    q.resize(nc);
    for (int c = 0; c < nc; ++c) q[c] = signed_pow((w[c + 1] - w[c]) / h, p - 1.0);
}

double residual_sup(const Field& w, const EnergySpec& spec, const Field* hs) {
    std::vector<double> q;
    cell_flux(w, spec.p, q);
    double s = 0.0;
    for (int i = 1; i < w.grid.n - 1; ++i)
        s = std::max(s, std::fabs(node_residual(w, spec, hs, q, i)));
    return s;
}

// Interior tridiagonal solve; boundary rows are the identity and never stored.
void solve_interior(int m, std::vector<double>& sub, std::vector<double>& diag,
                    std::vector<double>& sup, std::vector<double>& rhs) {
    std::vector<double> work(m);
    kern::thomas(m, sub.data(), diag.data(), sup.data(), rhs.data(), work.data());
}

// One preconditioned descent step with a strict energy line search. The
// preconditioner freezes the flux coefficient (floored away from zero) so the
// step solves a linear reaction-diffusion system around the current iterate.
bool descent_step(Field& w, const EnergySpec& spec, const Field* hs) {
    const Grid& g = w.grid;
    const int n = g.n, m = n - 2;
    const double h = g.h, p = spec.p;
    std::vector<double> q, psi(n - 1);
    cell_flux(w, p, q);
    for (int c = 0; c < n - 1; ++c) {
        double du = std::fabs(w[c + 1] - w[c]) / h;
        psi[c] = (p - 1.0) * std::pow(std::max(du, 1e-12), p - 2.0);
    }
    std::vector<double> sub(m, 0.0), diag(m), sup(m, 0.0), rhs(m);
    for (int k = 0; k < m; ++k) {
        int i = k + 1;
        diag[k] = 1.0 + (psi[i - 1] + psi[i]) / (h * h);
        if (k > 0) sub[k] = -psi[i - 1] / (h * h);
        if (k + 1 < m) sup[k] = -psi[i] / (h * h);
        rhs[k] = -node_residual(w, spec, hs, q, i);
    }
    solve_interior(m, sub, diag, sup, rhs);
    const double E = energy(w, spec);
    Field trial = w;
    double alpha = 1.0;
    for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
        for (int k = 0; k < m; ++k) trial[k + 1] = w[k + 1] + alpha * rhs[k];
        if (energy(trial, spec) < E) {
            w = trial;
            return true;
        }
    }
    return false;
}

// One damped Newton step on the stationarity system with a strict decrease
// requirement on the sup-norm of the residual.
bool newton_step(Field& w, const EnergySpec& spec, const Field* hs) {
    const Grid& g = w.grid;
    const int n = g.n, m = n - 2;
    const double h = g.h, p = spec.p;
    std::vector<double> q, psi(n - 1);
    cell_flux(w, p, q);
    for (int c = 0; c < n - 1; ++c) {
        double du = std::fabs(w[c + 1] - w[c]) / h;
        psi[c] = (p - 1.0) * std::pow(std::max(du, 1e-14), p - 2.0);
    }
    std::vector<double> sub(m, 0.0), diag(m), sup(m, 0.0), rhs(m);
    double rs = 0.0;
    for (int k = 0; k < m; ++k) {
        int i = k + 1;
        double dreac =
            spec.lambda * (p - 1.0) * std::pow(std::max(std::fabs(w[i]), 1e-10), p - 2.0);
        diag[k] = 1.0 + (psi[i - 1] + psi[i]) / (h * h) - dreac;
        if (k > 0) sub[k] = -psi[i - 1] / (h * h);
        if (k + 1 < m) sup[k] = -psi[i] / (h * h);
        double R = node_residual(w, spec, hs, q, i);
        rs = std::max(rs, std::fabs(R));
        rhs[k] = -R;
    }
    try {
        solve_interior(m, sub, diag, sup, rhs);
    } catch (const Error&) {
        return false; // indefinite linearization; let the caller switch phase
    }
    Field trial = w;
    double alpha = 1.0;
    for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
        for (int k = 0; k < m; ++k) trial[k + 1] = w[k + 1] + alpha * rhs[k];
        if (residual_sup(trial, spec, hs) < rs) {
            w = trial;
            return true;
        }
    }
    return false;
}

} // namespace

double energy(const Field& w, const EnergySpec& spec) {
    const Grid& g = w.grid;
    require_interval(g, "energy");
    check_energy_spec(spec, "energy");
    const Field* hs = source_field(spec, g);
    const double p = spec.p, h = g.h;
    double ge = 0.0;
    for (int c = 0; c < g.n - 1; ++c)
        ge += std::pow(std::fabs((w[c + 1] - w[c]) / h), p);
    double pe = 0.0, qe = 0.0, he = 0.0;
    for (int i = 0; i < g.n; ++i) {
        double th = (i == 0 || i == g.n - 1) ? 0.5 : 1.0;
        pe += th * std::pow(std::fabs(w[i]), p);
        qe += th * w[i] * w[i];
        if (hs) he += th * (*hs)[i] * w[i];
    }
    return h * ge / p - spec.lambda / p * h * pe + 0.5 * h * qe - h * he;
}

Field energy_gradient(const Field& w, const EnergySpec& spec) {
    const Grid& g = w.grid;
    require_interval(g, "energy_gradient");
    check_energy_spec(spec, "energy_gradient");
    const Field* hs = source_field(spec, g);
    const double p = spec.p, h = g.h;
    std::vector<double> q;
    cell_flux(w, p, q);
    Field out = make_field(g);
    for (int i = 1; i < g.n - 1; ++i)
        out[i] = (q[i - 1] - q[i]) +
                 h * (-spec.lambda * signed_pow(w[i], p - 1.0) + w[i] - (hs ? (*hs)[i] : 0.0));
    return out;
}

Field minimize_energy(const EnergySpec& spec, const Grid& g, const Field& init,
                      const MinimizeOptions& opt) {
    require_interval(g, "minimize_energy");
    check_energy_spec(spec, "minimize_energy");
    require_same_grid(init.grid, g, "minimize_energy initial guess");
    if (!(opt.tol > 0.0) || opt.max_iters < 1)
        fail(ErrKind::invalid_parameter, "minimize_energy needs tol > 0 and max_iters >= 1");
    const Field* hs = source_field(spec, g);
    for (int i = 0; i < g.n; ++i)
        if (!std::isfinite(init[i]))
            fail(ErrKind::non_finite_value,
                 "minimize_energy initial guess at node " + std::to_string(i));

    Field w = init;
    w[0] = w[g.n - 1] = 0.0;
    int phase = 1, stalls = 0, phase_iters = 0;
    for (int it = 0; it < opt.max_iters; ++it) {
        if (sup_norm(energy_gradient(w, spec)) < opt.tol) return w;
        bool moved = (phase == 1) ? descent_step(w, spec, hs) : newton_step(w, spec, hs);
        ++phase_iters;
        if (!moved) {
            if (++stalls >= 2)
                throw ConvergenceFailure("energy minimization stalled in both phases", w.v);
            phase = 3 - phase;
            phase_iters = 0;
        } else {
            stalls = 0;
            if (phase == 1 && phase_iters >= 400) {
                phase = 2;
                phase_iters = 0;
            }
        }
    }
    if (sup_norm(energy_gradient(w, spec)) < opt.tol) return w;
    throw ConvergenceFailure("energy minimization exceeded the iteration budget", w.v);
}

namespace {

double rayleigh_num(const Field& u, double p) {
    const double h = u.grid.h;
    double s = 0.0;
    for (int c = 0; c < u.grid.n - 1; ++c)
        s += std::pow(std::fabs((u[c + 1] - u[c]) / h), p);
    return h * s;
}

void normalize_lp(Field& u, double p) {
    const double h = u.grid.h;
    double den = 0.0;
    for (int i = 0; i < u.grid.n; ++i) {
        double th = (i == 0 || i == u.grid.n - 1) ? 0.5 : 1.0;
        den += th * std::pow(std::fabs(u[i]), p);
    }
    den = std::pow(h * den, 1.0 / p);
    for (auto& x : u.v) x /= den;
}

} // namespace

EigenResult lambda1_rayleigh(const Grid& g, double p, double tol) {
    require_interval(g, "lambda1_rayleigh");
    require_p(p, "lambda1_rayleigh");
    if (!(tol > 0.0) || !std::isfinite(tol))
        fail(ErrKind::invalid_parameter, "lambda1_rayleigh needs tol > 0");
    const int n = g.n, m = n - 2;
    const double h = g.h, L = g.b - g.a;
    Field u = make_field(g);
    for (int i = 1; i < n - 1; ++i) u[i] = std::sin(M_PI * (g.node(i) - g.a) / L);
    normalize_lp(u, p);
    double lam = rayleigh_num(u, p);

    int small_count = 0;
    for (int it = 0; it < 20000; ++it) {
        std::vector<double> q;
        cell_flux(u, p, q);
        std::vector<double> psi(n - 1);
        for (int c = 0; c < n - 1; ++c) {
            double du = std::fabs(u[c + 1] - u[c]) / h;
            psi[c] = (p - 1.0) * std::pow(std::max(du, 1e-12), p - 2.0);
        }
        std::vector<double> sub(m, 0.0), diag(m), sup(m, 0.0), rhs(m), cons(m);
        for (int k = 0; k < m; ++k) {
            int i = k + 1;
            diag[k] = 1.0 + (psi[i - 1] + psi[i]) / (h * h);
            if (k > 0) sub[k] = -psi[i - 1] / (h * h);
            if (k + 1 < m) sup[k] = -psi[i] / (h * h);
            rhs[k] = -((q[i - 1] - q[i]) / h - lam * signed_pow(u[i], p - 1.0));
            cons[k] = signed_pow(u[i], p - 1.0);
        }
        solve_interior(m, sub, diag, sup, rhs);
        double dc = 0.0, cc = 0.0;
        for (int k = 0; k < m; ++k) {
            dc += rhs[k] * cons[k];
            cc += cons[k] * cons[k];
        }
        if (cc > 0.0)
            for (int k = 0; k < m; ++k) rhs[k] -= dc / cc * cons[k];

        Field trial = u;
        double alpha = 1.0, lam_trial = lam;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
            for (int k = 0; k < m; ++k) trial[k + 1] = u[k + 1] + alpha * rhs[k];
            normalize_lp(trial, p);
            lam_trial = rayleigh_num(trial, p);
            if (lam_trial < lam) {
                moved = true;
                break;
            }
        }
        if (!moved) {
            if (small_count > 0) break; // flat to line-search resolution: converged
            throw ConvergenceFailure("rayleigh quotient descent stalled", u.v);
        }
        double rel = (lam - lam_trial) / lam;
        u = trial;
        lam = lam_trial;
        if (rel < tol) {
            if (++small_count >= 3) break;
        } else {
            small_count = 0;
        }
        if (it + 1 == 20000)
            throw ConvergenceFailure("rayleigh quotient descent exceeded the iteration budget",
                                     u.v);
    }
    return {lam, u};
}

namespace {

// RK4 step for v' = signed_pow(Q, 1/(p-1)), Q' = -lam * signed_pow(v, rp).
// rp = p-1 gives the eigenvalue equation, rp = 1 the separable-profile one.
void rk4_step(double lam, double rp, double p, double ds, double& v, double& q) {
    const double ip = 1.0 / (p - 1.0);
    auto fv = [&](double Q) { return signed_pow(Q, ip); };
    auto fq = [&](double V) { return -lam * signed_pow(V, rp); };
    double k1v = fv(q), k1q = fq(v);
    double k2v = fv(q + 0.5 * ds * k1q), k2q = fq(v + 0.5 * ds * k1v);
    double k3v = fv(q + 0.5 * ds * k2q), k3q = fq(v + 0.5 * ds * k2v);
    double k4v = fv(q + ds * k3q), k4q = fq(v + ds * k3v);
    v += ds / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    q += ds / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
}

// Root of the cubic Hermite interpolant on [s0,s1] given endpoint values and
// slopes with v0 > 0 >= v1.
double hermite_crossing(double s0, double s1, double v0, double v1, double d0, double d1) {
    const double len = s1 - s0;
    auto H = [&](double t) {
        double t2 = t * t, t3 = t2 * t;
        return v0 * (2.0 * t3 - 3.0 * t2 + 1.0) + d0 * len * (t3 - 2.0 * t2 + t) +
               v1 * (-2.0 * t3 + 3.0 * t2) + d1 * len * (t3 - t2);
    };
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < 60; ++k) {
        double mid = 0.5 * (lo + hi);
        (H(mid) > 0.0 ? lo : hi) = mid;
    }
    return s0 + 0.5 * (lo + hi) * len;
}

// First zero of the shot solution on (0, half]; +inf when v stays positive.
// Launches from a series expansion at s0 with geometrically graded steps (the
// derivative of v w.r.t. Q is singular at the start when p > 2), then marches
// uniformly and refines the bracketing step by a cubic Hermite model.
double first_zero(double lam, double p, double half) {
    const double ip = 1.0 / (p - 1.0);
    double s = half * 1e-10;
    double v = 1.0 - (p - 1.0) / p * std::pow(lam, ip) * std::pow(s, p * ip);
    double q = -lam * s;
    auto vp = [&](double Q) { return signed_pow(Q, ip); };
    const double s_switch = half * 1e-3;
    while (s < s_switch) {
        double ds = std::min(0.05 * s, s_switch - s);
        double sp = s, pv = v, pq = q;
        rk4_step(lam, p - 1.0, p, ds, v, q);
        s += ds;
        if (pv > 0.0 && v <= 0.0) return hermite_crossing(sp, s, pv, v, vp(pq), vp(q));
    }
    const int steps = 16384;
    const double ds = (half - s) / steps;
    for (int k = 0; k < steps; ++k) {
        double sp = s, pv = v, pq = q;
        rk4_step(lam, p - 1.0, p, ds, v, q);
        s += ds;
        if (pv > 0.0 && v <= 0.0) return hermite_crossing(sp, s, pv, v, vp(pq), vp(q));
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace

double lambda1_shooting(double p, double L) {
    require_p(p, "lambda1_shooting");
    if (!(L > 0.0) || !std::isfinite(L))
        fail(ErrKind::invalid_parameter, "lambda1_shooting needs a positive interval length");
    const double half = 0.5 * L;
    auto crossed = [&](double lam) { return first_zero(lam, p, half) <= half; };
    double lo, hi;
    int guard = 0;
    if (crossed(1.0)) {
        hi = 1.0;
        lo = 0.5;
        while (crossed(lo)) {
            hi = lo;
            lo *= 0.5;
            if (++guard > 200)
                fail(ErrKind::bracketing_failure, "no lower bracket for the eigenvalue");
        }
    } else {
        lo = 1.0;
        hi = 2.0;
        while (!crossed(hi)) {
            lo = hi;
            hi *= 2.0;
            if (++guard > 200)
                fail(ErrKind::bracketing_failure, "no upper bracket for the eigenvalue");
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        double mid = 0.5 * (lo + hi);
        (crossed(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Integrates the amplitude-s profile shot outward, recording v at the given
// radii (ascending, last one is the boundary). Substeps never exceed 2.5e-4
// and always land exactly on the requested radii.
double shoot_profile(double p, double amp, const std::vector<double>& radii,
                     std::vector<double>* vals) {
    double v = amp, q = 0.0, r = 0.0;
    if (vals) vals->clear();
    for (double target : radii) {
        double span = target - r;
        int ksub = std::max(1, static_cast<int>(std::ceil(span / 2.5e-4)));
        double ds = span / ksub;
        for (int k = 0; k < ksub; ++k) rk4_step(1.0, 1.0, p, ds, v, q);
        r = target;
        if (vals) vals->push_back(v);
    }
    return v;
}

} // namespace

Field solve_profile_bvp(double p, int n) {
    if (!(p > 1.0 && p < 2.0))
        fail(ErrKind::invalid_parameter, "solve_profile_bvp needs 1 < p < 2");
    Grid g = make_interval_grid(-1.0, 1.0, n);
    const double h = g.h;
    const bool odd = (n % 2 == 1);
    std::vector<double> radii;
    if (odd) {
        for (int j = 1; j <= (n - 1) / 2; ++j) radii.push_back(h * j);
    } else {
        for (int j = 0; j < n / 2; ++j) radii.push_back(h * (j + 0.5));
    }

    auto end_value = [&](double amp) { return shoot_profile(p, amp, radii, nullptr); };
    double lo, hi;
    int guard = 0;
    if (end_value(1.0) > 0.0) {
        lo = 1.0;
        hi = 2.0;
        while (end_value(hi) > 0.0) {
            lo = hi;
            hi *= 2.0;
            if (++guard > 200)
                fail(ErrKind::bracketing_failure, "no amplitude bracket for the profile");
        }
    } else {
        hi = 1.0;
        lo = 0.5;
        while (end_value(lo) <= 0.0) {
            hi = lo;
            lo *= 0.5;
            if (++guard > 200)
                fail(ErrKind::bracketing_failure, "no amplitude bracket for the profile");
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (end_value(mid) > 0.0 ? lo : hi) = mid;
    }
    double amp = 0.5 * (lo + hi);
    std::vector<double> vals;
    double vend = shoot_profile(p, amp, radii, &vals);
    if (std::fabs(vend) > 1e-8)
        throw ConvergenceFailure("profile shot misses the boundary value", vals);

    Field out = make_field(g);
    if (odd) {
        int ic = (n - 1) / 2;
        out[ic] = amp;
        for (int j = 1; j <= ic; ++j) {
            out[ic + j] = vals[static_cast<size_t>(j) - 1];
            out[ic - j] = vals[static_cast<size_t>(j) - 1];
        }
    } else {
        for (int j = 0; j < n / 2; ++j) {
            out[n / 2 + j] = vals[static_cast<size_t>(j)];
            out[n / 2 - 1 - j] = vals[static_cast<size_t>(j)];
        }
    }
    out[0] = out[n - 1] = 0.0;
    return out;
}

namespace {

// In-place 3x3 Gaussian elimination with partial pivoting.
void solve3(double M[3][3], double rhs[3]) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
        if (M[piv][col] == 0.0)
            fail(ErrKind::convergence_failure, "degenerate bridge coefficient system");
        if (piv != col) {
            for (int j = 0; j < 3; ++j) std::swap(M[piv][j], M[col][j]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (int r = col + 1; r < 3; ++r) {
            double f = M[r][col] / M[col][col];
            for (int j = col; j < 3; ++j) M[r][j] -= f * M[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int r = 2; r >= 0; --r) {
        for (int j = r + 1; j < 3; ++j) rhs[r] -= M[r][j] * rhs[j];
        rhs[r] /= M[r][r];
    }
}

double smoothstep5(double xi) {
    xi = std::clamp(xi, 0.0, 1.0);
    return xi * xi * xi * (10.0 - 15.0 * xi + 6.0 * xi * xi);
}

} // namespace

SaddleConstruction build_saddle_construction(const Grid& g, double p, double lambda, double eps,
                                             double eps1) {
    require_interval(g, "build_saddle_construction");
    if (!(p > 1.0 && p < 2.0))
        fail(ErrKind::invalid_parameter, "build_saddle_construction needs 1 < p < 2");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        fail(ErrKind::invalid_parameter, "build_saddle_construction needs lambda > 0");
    if (!(eps > 0.0 && eps < eps1) || !std::isfinite(eps1))
        fail(ErrKind::invalid_parameter, "build_saddle_construction needs 0 < eps < eps1");
    if (!(g.a < -2.0 * eps1 && g.b > 2.0 * eps1))
        fail(ErrKind::invalid_parameter,
             "the support interval (-2 eps1, 2 eps1) must sit strictly inside the domain");

    const double m = std::max(1.0 / (2.0 - p), 1.0 + 1.0 / (p - 1.0));
    const double e = eps1;

    // Quintic bridge Q(s) on s in [0, eps1], s = r - eps1: matches value and
    // two derivatives of r^m at eps1 and has a triple zero at 2 eps1.
    double c[6];
    c[0] = std::pow(e, m);
    c[1] = m * std::pow(e, m - 1.0);
    c[2] = 0.5 * m * (m - 1.0) * std::pow(e, m - 2.0);
    {
        double M[3][3], rhs[3];
        for (int k = 0; k < 3; ++k) {
            for (int j = 0; j < 3; ++j) {
                int deg = 3 + j;
                double f = 1.0;
                for (int t = 0; t < k; ++t) f *= deg - t;
                M[k][j] = f * std::pow(e, deg - k);
            }
            double base = 0.0;
            for (int deg = k; deg < 3; ++deg) {
                double f = 1.0;
                for (int t = 0; t < k; ++t) f *= deg - t;
                base += c[deg] * f * std::pow(e, deg - k);
            }
            rhs[k] = -base;
        }
        solve3(M, rhs);
        c[3] = rhs[0];
        c[4] = rhs[1];
        c[5] = rhs[2];
    }
    auto Q0 = [&](double s) {
        double acc = 0.0, sp = 1.0;
        for (int k = 0; k < 6; ++k, sp *= s) acc += c[k] * sp;
        return acc;
    };
    auto Q1 = [&](double s) {
        double acc = 0.0, sp = 1.0;
        for (int k = 1; k < 6; ++k, sp *= s) acc += k * c[k] * sp;
        return acc;
    };
    auto Q2 = [&](double s) {
        double acc = 0.0, sp = 1.0;
        for (int k = 2; k < 6; ++k, sp *= s) acc += k * (k - 1) * c[k] * sp;
        return acc;
    };

    SaddleConstruction sc;
    sc.m = m;
    sc.eps = eps;
    sc.eps1 = eps1;
    sc.w0 = make_field(g);
    sc.z = make_field(g);
    sc.h_src = make_field(g);

    const double lap_coef = std::pow(m, p - 1.0) * (m - 1.0) * (p - 1.0);
    const double lap_exp = (m - 1.0) * (p - 1.0) - 1.0;
    for (int i = 0; i < g.n; ++i) {
        double r = std::fabs(g.node(i));
        double w, lap;
        if (r <= eps1) {
            w = std::pow(r, m);
            lap = lap_coef * std::pow(r, lap_exp); // pow(0,0)=1 covers lap_exp==0
        } else if (r < 2.0 * eps1) {
            double s = r - eps1;
            w = Q0(s);
            lap = (p - 1.0) * std::pow(std::fabs(Q1(s)), p - 2.0) * Q2(s);
        } else {
            w = 0.0;
            lap = 0.0;
        }
        sc.w0[i] = w;
        sc.h_src[i] = -lap - lambda * signed_pow(w, p - 1.0) + w;
        if (!std::isfinite(sc.h_src[i]))
            fail(ErrKind::non_finite_value,
                 "source is not finite at node " + std::to_string(i) +
                     " (the bridge gradient vanishes there)");
    }

    // Radially weighted C^2 bump: plateau 1 through eps, then 1 - I(r)/I(eps1)
    // where I integrates r * ramp(r) on a fine auxiliary mesh. The ramp turns
    // on and off with quintic smoothsteps over a 0.15 fraction of the band.
    const int K = 40001;
    const double span = eps1 - eps, delta = 0.15;
    std::vector<double> prof(K), integ(K);
    for (int k = 0; k < K; ++k) {
        double xi = static_cast<double>(k) / (K - 1);
        double rr = eps + span * xi;
        double ramp = xi < delta            ? smoothstep5(xi / delta)
                      : xi > 1.0 - delta    ? smoothstep5((1.0 - xi) / delta)
                                            : 1.0;
        integ[k] = rr * ramp;
    }
    double acc = 0.0;
    prof[0] = 0.0;
    const double dr = span / (K - 1);
    for (int k = 1; k < K; ++k) {
        acc += 0.5 * (integ[k] + integ[k - 1]) * dr;
        prof[k] = acc;
    }
    for (int k = 0; k < K; ++k) prof[k] = 1.0 - prof[k] / acc;

    for (int i = 0; i < g.n; ++i) {
        double r = std::fabs(g.node(i));
        if (r <= eps) {
            sc.z[i] = 1.0;
        } else if (r >= eps1) {
            sc.z[i] = 0.0;
        } else {
            double pos = (r - eps) / span * (K - 1);
            int k0 = std::min(static_cast<int>(pos), K - 2);
            double frac = pos - k0;
            sc.z[i] = prof[k0] * (1.0 - frac) + prof[k0 + 1] * frac;
        }
    }
    return sc;
}

double zeta(double t, const SaddleConstruction& sc, double p, double lambda) {
    if (!(t > 0.0) || !std::isfinite(t))
        fail(ErrKind::invalid_parameter, "zeta needs t > 0");
    require_same_grid(sc.w0.grid, sc.z.grid, "saddle construction");
    EnergySpec spec;
    spec.p = p;
    spec.lambda = lambda;
    spec.h_src = sc.h_src;
    Field wt = sc.w0;
    for (int i = 0; i < wt.size(); ++i) wt[i] += t * sc.z[i];
    Field g1 = energy_gradient(wt, spec);
    Field g0 = energy_gradient(sc.w0, spec);
    double acc = 0.0;
    for (int i = 0; i < g1.size(); ++i) acc += (g1[i] - g0[i]) * sc.z[i];
    return acc / t;
}

Field solve_logistic(const Grid& g, double p, double lambda) {
    require_interval(g, "solve_logistic");
    if (!(p > 1.0 && p < 2.0))
        fail(ErrKind::invalid_parameter, "solve_logistic needs 1 < p < 2");
    if (!std::isfinite(lambda))
        fail(ErrKind::invalid_parameter, "solve_logistic needs finite lambda");
    EigenResult eig = lambda1_rayleigh(g, p, 1e-6);
    Field init = eig.eigenfield;
    double s = sup_norm(init);
    for (auto& x : init.v) x *= 2.0 / s;
    EnergySpec spec;
    spec.p = p;
    spec.lambda = lambda;
    Field w;
    try {
        w = minimize_energy(spec, g, init);
    } catch (const ConvergenceFailure& e) {
        // Below the eigenvalue threshold the descent crawls toward the zero
        // state and runs out of budget before the gradient test fires; a tiny
        // nonnegative-energy last iterate identifies that collapse.
        Field last = make_field(g);
        for (int i = 0; i < g.n; ++i) last[i] = e.last_iterate[i];
        if (!(sup_norm(last) < 1e-2 && energy(last, spec) > -1e-10)) throw;
        fail(ErrKind::trivial_solution,
             "the energy minimizer is identically zero (lambda at or below the first eigenvalue)");
    }
    if (sup_norm(w) < 1e-8)
        fail(ErrKind::trivial_solution,
             "the energy minimizer is identically zero (lambda at or below the first eigenvalue)");
    return w;
}

} // namespace plap
