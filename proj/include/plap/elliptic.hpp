#pragma once

#include "plap/grid.hpp"

namespace plap {

// Energy E(w) = (1/p) int |w'|^p - (lambda/p) int |w|^p + (1/2) int w^2 - int h w
// over the zero-Dirichlet class. h_src may be left empty to mean zero.
struct EnergySpec {
    double p = 2.0;
    double lambda = 0.0;
    Field h_src;
};

double energy(const Field& w, const EnergySpec& spec);
// Exact discrete gradient of energy() w.r.t. nodal values; boundary entries
// zero (Dirichlet constraint). Carries the quadrature weights, so interior
// entries scale like h * pointwise-residual.
Field energy_gradient(const Field& w, const EnergySpec& spec);

struct MinimizeOptions {
    double tol = 1e-9;   // stop when sup|energy_gradient| falls below this
    int max_iters = 4000;
};

// Two-phase minimization: preconditioned descent with an energy line search,
// then damped Newton on the stationarity system.
Field minimize_energy(const EnergySpec& spec, const Grid& g, const Field& init,
                      const MinimizeOptions& opt = {});

struct EigenResult {
    double lambda1;
    Field eigenfield; // normalized: int |u|^p = 1
};

// Projected preconditioned descent on the Rayleigh quotient, initialized from
// the linear (p=2) eigenfunction; tol is the relative stagnation threshold
// on the eigenvalue estimate.
EigenResult lambda1_rayleigh(const Grid& g, double p, double tol);

// Independent reference: integrate -(|v'|^{p-2}v')' = lambda |v|^{p-2} v from
// the midpoint (v=1, v'=0) and bisect lambda until the first zero of v lands
// on the boundary of an interval of length L.
double lambda1_shooting(double p, double L);

// Positive even profile of -(|v'|^{p-2}v')' = v on (-1,1), v(+-1)=0, found by
// shooting on the center amplitude. Only the singular range 1 < p < 2.
Field solve_profile_bvp(double p, int n);

// Piecewise-explicit data for the nonuniqueness construction: w0 = |x|^m on
// the core, a C^2 quintic bridge on [eps1, 2 eps1], zero beyond; z a C^2 bump
// with plateau 1 on [0, eps] vanishing at eps1; h_src the source that makes
// w0 an exact critical point of the continuum energy.
struct SaddleConstruction {
    double m = 0.0;
    double eps = 0.0;
    double eps1 = 0.0;
    Field w0;
    Field z;
    Field h_src;
};

SaddleConstruction build_saddle_construction(const Grid& g, double p, double lambda,
                                             double eps, double eps1);

// Difference quotient (<E'(w0+tz),z> - <E'(w0),z>)/t; diverges to -inf as
// t -> 0+ for the construction above, witnessing that w0 is not a local min.
double zeta(double t, const SaddleConstruction& sc, double p, double lambda);

// Positive solution of -(|w'|^{p-2}w')' = lambda |w|^{p-2} w - w, zero BC,
// by minimizing the associated energy from a positive eigenfield multiple.
Field solve_logistic(const Grid& g, double p, double lambda);

} // namespace plap
