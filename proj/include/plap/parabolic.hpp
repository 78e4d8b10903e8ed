#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "plap/grid.hpp"

namespace plap {

enum class ReactionKind { power, logistic };

// One instance of the evolution problem
//   du/dt - div(|u'|^{p-2} u') = reaction(u) + f(x,t)
// with Dirichlet boundary data. The power reaction is lambda |u|^{p-2} u, the
// logistic one lambda |u|^{p-2} u (a(x) - u) with a nodal capacity field a.
struct ProblemSpec {
    double p = 2.0;
    double lambda = 0.0;
    Grid grid;
    std::function<double(double, double)> source;   // f(x,t); null means zero
    Field initial;
    std::function<double(double, double)> boundary; // Dirichlet trace; null means zero
    ReactionKind reaction = ReactionKind::power;
    Field capacity;                                 // a(x); logistic reaction only
    double eps_reg = -1.0;                          // flux regularization; < 0 resolves to h
    double newton_tol = 1e-10;
    int newton_max_iters = 50;
};

struct StepReport {
    int newton_iters = 0;
    double final_residual = 0.0;
    bool damped = false;
};

// Dense symmetric matrix I + (p-2) a.a^T / |a|^2: eigenvalue p-1 on span(a),
// 1 on the orthogonal complement.
struct LinearizationMatrix {
    int dim = 0;
    std::vector<double> entries; // row-major dim x dim
    double at(int r, int c) const { return entries[static_cast<size_t>(r) * dim + c]; }
};

LinearizationMatrix linearization_matrix(const std::vector<double>& a, double p);

double reaction_eval(double s, int i, const ProblemSpec& spec);
// d(reaction)/ds with the degenerate |s|^{p-2} factor floored away from zero;
// used by the Newton linearization only.
double reaction_derivative(double s, int i, const ProblemSpec& spec);

// sup over s >= 0 of the derivative of the logistic reaction: one-sided
// Lipschitz constant of the nonlinearity. +inf for 1 < p < 2 (the derivative
// blows up at s = 0); lambda * a_sup at p = 2.
double one_sided_lipschitz_bound(double p, double lambda, double a_sup);

// One backward-Euler step: solves (u - u_prev)/dt - div_eps(...) = r(u) + f
// by damped Newton with a tridiagonal Jacobian.
std::pair<Field, StepReport> step_implicit_euler(const Field& u_prev, double t_next, double dt,
                                                 const ProblemSpec& spec);

struct ParabolicSolution {
    SpaceTimeField u;
    std::vector<StepReport> reports; // one per time step, retries aggregated
};

// Marches the time mesh; a failed step is retried on halved substeps (depth
// up to 4) before the failure is rethrown carrying the time index.
ParabolicSolution solve_parabolic(const ProblemSpec& spec, const TimeMesh& tm);

// Centered-in-time, conservative-in-space pointwise residual of the equation
// on interior nodes and interior slices; boundary and terminal entries zero.
SpaceTimeField residual_field(const SpaceTimeField& stf, const ProblemSpec& spec);

} // namespace plap
