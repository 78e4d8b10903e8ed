#pragma once

#include "plap/grid.hpp"

namespace plap {

// Self-similar compactly supported solution of u_t = div(|u_x|^{p-2} u_x),
// p > 2, shifted in time by alpha so it is smooth at t = 0.
struct BarenblattParams {
    double p;
    int N;
    double C;
    double alpha;
    double k; // (p - 2 + p/N)^{-1}
};

BarenblattParams make_barenblatt_params(double p, int N, double C, double alpha);
double barenblatt(double x, double t, const BarenblattParams& bp);
double barenblatt_support_radius(double t, const BarenblattParams& bp);

// Separable solution (t0 - (2-p) t)_+^{1/(2-p)} v(x) on (-1,1), 1 < p < 2.
// The profile v solves -(|v'|^{p-2} v')' = v, v(+-1) = 0; it has no closed
// form and is produced by the amplitude-shooting BVP solver and cached here.
struct ExtinctionParams {
    double p;
    double t0;
    Field profile;
};

ExtinctionParams make_extinction_params(double p, double t0, int n);
double extinction_time(const ExtinctionParams& ep);
double extinction_time_factor(double t, const ExtinctionParams& ep);
double extinction_solution(double x, double t, const ExtinctionParams& ep);

// Nontrivial solution of v' = |v|^{p-2} v, v(0) = 0, for 1 < p < 2.
double cauchy_solution(double t, double p);
// Flow map of the same ODE from a nonnegative state; closed form.
double cauchy_flow(double t, double v0, double p);

// Space-time barrier eps (e^{-alpha d^2} - e^{-alpha R^2}) with the parabolic
// distance d^2 = |x-x0|^2 + |t-t0|.
struct BarrierParams {
    double eps;
    double alpha;
    double R;
    double x0;
    double t0;
};

double hopf_barrier(double x, double t, const BarrierParams& bp);
double hopf_barrier_space_gradient(double x, double t, const BarrierParams& bp);

// Degenerate-regime subsolution C (R^2 - |x|^2)_+^m (T - t).
struct SubsolutionParams {
    double C;
    double m;
    double R;
    double T;
};

double degenerate_subsolution(double x, double t, const SubsolutionParams& sp);
// Smallest exponent keeping the subsolution admissible for a given p > 2.
double admissible_m(double p);

// Reference first Dirichlet eigenvalue of the 1-D p-Laplacian on an interval
// of length L: lambda1 = (p-1) (pi_p / L)^p with pi_p = 2*pi / (p sin(pi/p)).
double pi_p(double p);
double lambda1_interval(double p, double L);

} // namespace plap
