#include "plap/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "plap/kernels.hpp"

namespace plap {

LinearizationMatrix linearization_matrix(const std::vector<double>& a, double p) {
    if (!std::isfinite(p) || p <= 1.0)
        fail(ErrKind::invalid_parameter, "linearization_matrix needs p > 1");
    const int dim = static_cast<int>(a.size());
    if (dim == 0) fail(ErrKind::invalid_parameter, "linearization_matrix needs a nonempty vector");
    double norm2 = 0.0;
    for (double x : a) {
        if (!std::isfinite(x)) fail(ErrKind::non_finite_value, "linearization_matrix direction");
        norm2 += x * x;
    }
    if (norm2 == 0.0)
        fail(ErrKind::singular_direction, "linearization_matrix needs a nonzero direction");
    LinearizationMatrix M;
    M.dim = dim;
    M.entries.assign(static_cast<size_t>(dim) * dim, 0.0);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            M.entries[static_cast<size_t>(r) * dim + c] =
                (r == c ? 1.0 : 0.0) + (p - 2.0) * a[r] * a[c] / norm2;
    return M;
}

namespace {

void validate_spec(const ProblemSpec& spec) {
    if (!std::isfinite(spec.p) || spec.p <= 1.0)
        fail(ErrKind::invalid_parameter, "problem needs p > 1");
    if (!std::isfinite(spec.lambda))
        fail(ErrKind::invalid_parameter, "problem needs finite lambda");
    if (!(spec.newton_tol > 0.0))
        fail(ErrKind::invalid_parameter, "newton_tol must be positive");
    if (spec.newton_max_iters < 1)
        fail(ErrKind::invalid_parameter, "newton_max_iters must be at least 1");
    if (spec.eps_reg >= 0.0 && !std::isfinite(spec.eps_reg))
        fail(ErrKind::invalid_parameter, "eps_reg must be finite");
    if (spec.reaction == ReactionKind::logistic) {
        if (spec.lambda < 0.0)
            fail(ErrKind::invalid_parameter, "logistic reaction needs lambda >= 0");
        require_same_grid(spec.capacity.grid, spec.grid, "logistic capacity");
    }
}

double resolve_eps(const ProblemSpec& spec) {
    return spec.eps_reg < 0.0 ? spec.grid.h : spec.eps_reg;
}

double eval_source(const ProblemSpec& spec, double x, double t) {
    if (!spec.source) return 0.0;
    double v = spec.source(x, t);
    if (!std::isfinite(v))
        fail(ErrKind::non_finite_value, "source term is not finite");
    return v;
}

double eval_boundary(const ProblemSpec& spec, double x, double t) {
    if (!spec.boundary) return 0.0;
    double v = spec.boundary(x, t);
    if (!std::isfinite(v))
        fail(ErrKind::non_finite_value, "boundary trace is not finite");
    return v;
}

// First unknown row: the symmetry center for radial grids (one-sided flux,
// factor 2N/h), a Dirichlet node for interval grids.
int first_unknown(const Grid& g) { return g.kind == GridKind::radial ? 0 : 1; }

// Equation residual F(u) on the unknown window, using u_prev and t_next; the
// p-Laplacian honors the regularized-flux contract of the kernels.
void step_residual(const ProblemSpec& spec, const Field& u, const Field& u_prev, double dt,
                   double t_next, double eps, std::vector<double>& lap, std::vector<double>& F) {
    const Grid& g = spec.grid;
    const int n = g.n, i0 = first_unknown(g);
    lap.resize(n);
    kern::apply_p_laplacian(g, u.v.data(), spec.p, eps, lap.data());
    if (g.kind == GridKind::radial) {
        double du = (u[1] - u[0]) / g.h;
        lap[0] = 2.0 * g.N / g.h * flux_phi(du, spec.p, eps) * du;
    }
    F.assign(n, 0.0);
    for (int i = i0; i < n - 1; ++i)
        F[i] = (u[i] - u_prev[i]) / dt - lap[i] - reaction_eval(u[i], i, spec) -
               eval_source(spec, g.node(i), t_next);
}

double window_sup(const std::vector<double>& F, int i0, int n) {
    double s = 0.0;
    for (int i = i0; i < n - 1; ++i) s = std::max(s, std::fabs(F[i]));
    return s;
}

} // namespace

double reaction_eval(double s, int i, const ProblemSpec& spec) {
    double core = spec.lambda * signed_pow(s, spec.p - 1.0);
    if (spec.reaction == ReactionKind::power) return core;
    return core * (spec.capacity[i] - s);
}

double reaction_derivative(double s, int i, const ProblemSpec& spec) {
    const double p = spec.p;
    double mag = (p - 1.0) * std::pow(std::max(std::fabs(s), 1e-10), p - 2.0);
    if (spec.reaction == ReactionKind::power) return spec.lambda * mag;
    return spec.lambda * (mag * (spec.capacity[i] - s) - signed_pow(s, p - 1.0));
}

double one_sided_lipschitz_bound(double p, double lambda, double a_sup) {
    if (!std::isfinite(p) || p <= 1.0)
        fail(ErrKind::invalid_parameter, "one_sided_lipschitz_bound needs p > 1");
    if (lambda < 0.0 || !std::isfinite(lambda))
        fail(ErrKind::invalid_parameter, "one_sided_lipschitz_bound needs lambda >= 0");
    if (a_sup < 0.0 || !std::isfinite(a_sup))
        fail(ErrKind::invalid_parameter, "one_sided_lipschitz_bound needs a_sup >= 0");
    if (p < 2.0) return std::numeric_limits<double>::infinity();
    if (p == 2.0 || lambda == 0.0 || a_sup == 0.0) return lambda * a_sup;
    // golden-section maximization of lambda p s^{p-2}((p-1)/p a - s) on [0, a]
    auto val = [&](double s) {
        return lambda * p * std::pow(s, p - 2.0) * ((p - 1.0) / p * a_sup - s);
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 0.0, hi = a_sup;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = val(x1), f2 = val(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * a_sup; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = val(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = val(x1);
        }
    }
    return val(0.5 * (lo + hi));
}

std::pair<Field, StepReport> step_implicit_euler(const Field& u_prev, double t_next, double dt,
                                                 const ProblemSpec& spec) {
    validate_spec(spec);
    require_same_grid(u_prev.grid, spec.grid, "step_implicit_euler state");
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t_next))
        fail(ErrKind::invalid_parameter, "step_implicit_euler needs dt > 0 and finite t_next");
    const Grid& g = spec.grid;
    const int n = g.n, i0 = first_unknown(g);
    const int m = n - 1 - i0; // unknown count
    const double h = g.h, eps = resolve_eps(spec);

    Field u = u_prev;
    if (g.kind == GridKind::interval) u[0] = eval_boundary(spec, g.node(0), t_next);
    u[n - 1] = eval_boundary(spec, g.node(n - 1), t_next);

    std::vector<double> lap, F, psi(n - 1);
    std::vector<double> sub(m), diag(m), sup(m), rhs(m), work(m);
    StepReport rep;
    int solves = 0;

    step_residual(spec, u, u_prev, dt, t_next, eps, lap, F);
    double res = window_sup(F, i0, n);
    while (res > spec.newton_tol) {
        if (solves >= spec.newton_max_iters)
            fail(ErrKind::step_failure, "newton iteration did not reach tolerance");
        for (int c = 0; c < n - 1; ++c) psi[c] = flux_psi((u[c + 1] - u[c]) / h, spec.p, eps);
        for (int k = 0; k < m; ++k) {
            int i = i0 + k;
            double dl, dd, du_;
            if (g.kind == GridKind::radial && i == 0) {
                dl = 0.0;
                dd = 2.0 * g.N / (h * h) * psi[0];
                du_ = -2.0 * g.N / (h * h) * psi[0];
            } else {
                double wl = 1.0, wr = 1.0;
                if (g.kind == GridKind::radial) {
                    double rw = std::pow(g.node(i), g.N - 1);
                    wl = std::pow(g.node(i) - 0.5 * h, g.N - 1) / rw;
                    wr = std::pow(g.node(i) + 0.5 * h, g.N - 1) / rw;
                }
                dl = -wl * psi[i - 1] / (h * h);
                du_ = -wr * psi[i] / (h * h);
                dd = (wl * psi[i - 1] + wr * psi[i]) / (h * h);
            }
            diag[k] = 1.0 / dt + dd - reaction_derivative(u[i], i, spec);
            if (k > 0) sub[k] = dl;
            if (k + 1 < m) sup[k] = du_;
            rhs[k] = -F[i];
        }
        try {
            kern::thomas(m, sub.data(), diag.data(), sup.data(), rhs.data(), work.data());
        } catch (const Error&) {
            fail(ErrKind::step_failure, "singular newton linearization");
        }
        ++solves;
        double alpha = 1.0;
        bool accepted = false;
        Field trial = u;
        for (int ls = 0; ls < 30; ++ls, alpha *= 0.5) {
            for (int k = 0; k < m; ++k) trial[i0 + k] = u[i0 + k] + alpha * rhs[k];
            std::vector<double> Ft;
            step_residual(spec, trial, u_prev, dt, t_next, eps, lap, Ft);
            double rt = window_sup(Ft, i0, n);
            if (rt < res) {
                u = trial;
                F = Ft;
                res = rt;
                if (ls > 0) rep.damped = true;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // No descent direction left: if the proposed correction is below the
            // resolution of the iterate, the residual is at its rounding floor and
            // no better value exists in this arithmetic. Keep the iterate.
            double corr = 0.0, scale = 0.0;
            for (int k = 0; k < m; ++k) {
                corr = std::max(corr, std::abs(rhs[k]));
                scale = std::max(scale, std::abs(u[i0 + k]));
            }
            if (corr <= 64.0 * std::numeric_limits<double>::epsilon() * scale) break;
            fail(ErrKind::step_failure, "newton line search stalled");
        }
    }
    rep.newton_iters = std::max(1, solves);
    rep.final_residual = res;
    return {u, rep};
}

namespace {

// Advances u across one macro step [t, t+dt], halving the substep on failure
// down to 2^4 pieces before giving up.
void advance(const ProblemSpec& spec, Field& u, double t, double dt, int depth, StepReport& agg) {
    try {
        auto [next, rep] = step_implicit_euler(u, t + dt, dt, spec);
        u = next;
        agg.newton_iters += rep.newton_iters;
        agg.final_residual = rep.final_residual;
        agg.damped = agg.damped || rep.damped;
        return;
    } catch (const Error& e) {
        if (e.kind() != ErrKind::step_failure || depth >= 4) throw;
    }
    agg.damped = true;
    advance(spec, u, t, 0.5 * dt, depth + 1, agg);
    advance(spec, u, t + 0.5 * dt, 0.5 * dt, depth + 1, agg);
}

} // namespace

ParabolicSolution solve_parabolic(const ProblemSpec& spec, const TimeMesh& tm) {
    validate_spec(spec);
    require_same_grid(spec.initial.grid, spec.grid, "initial datum");
    for (int i = 0; i < spec.grid.n; ++i)
        if (!std::isfinite(spec.initial[i]))
            fail(ErrKind::non_finite_value, "initial datum at node " + std::to_string(i));

    ParabolicSolution sol;
    sol.u = make_space_time_field(spec.grid, tm);
    sol.u.set_slice(0, spec.initial);
    sol.reports.reserve(tm.m);
    Field u = spec.initial;
    for (int j = 1; j <= tm.m; ++j) {
        StepReport agg;
        try {
            advance(spec, u, tm.time(j - 1), tm.dt, 0, agg);
        } catch (const Error& e) {
            if (e.kind() == ErrKind::step_failure)
                throw StepFailure("time step failed after retries", j);
            throw;
        }
        sol.u.set_slice(j, u);
        sol.reports.push_back(agg);
    }
    return sol;
}

SpaceTimeField residual_field(const SpaceTimeField& stf, const ProblemSpec& spec) {
    validate_spec(spec);
    require_same_grid(stf.grid, spec.grid, "residual_field");
    if (stf.slices() < 3)
        fail(ErrKind::invalid_parameter, "residual_field needs at least 3 time slices");
    const Grid& g = stf.grid;
    const int n = g.n, i0 = first_unknown(g);
    const double dt = stf.tm.dt, eps = resolve_eps(spec);
    SpaceTimeField out = make_space_time_field(g, stf.tm);
    std::vector<double> lap(n);
    for (int j = 1; j < stf.slices() - 1; ++j) {
        Field uj = stf.slice(j);
        kern::apply_p_laplacian(g, uj.v.data(), spec.p, eps, lap.data());
        if (g.kind == GridKind::radial) {
            double du = (uj[1] - uj[0]) / g.h;
            lap[0] = 2.0 * g.N / g.h * flux_phi(du, spec.p, eps) * du;
        }
        const double t = stf.tm.time(j);
        for (int i = i0; i < n - 1; ++i) {
            double ut = (stf.at(j + 1, i) - stf.at(j - 1, i)) / (2.0 * dt);
            out.at(j, i) =
                ut - lap[i] - reaction_eval(uj[i], i, spec) - eval_source(spec, g.node(i), t);
        }
    }
    return out;
}

} // namespace plap
