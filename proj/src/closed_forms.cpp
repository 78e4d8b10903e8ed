#include "plap/closed_forms.hpp"

#include <cmath>

#include "plap/elliptic.hpp"
#include "plap/kernels.hpp"

namespace plap {

BarenblattParams make_barenblatt_params(double p, int N, double C, double alpha) {
    if (!(p > 2.0)) fail(ErrKind::invalid_parameter, "Barenblatt solution needs p > 2");
    if (N < 1) fail(ErrKind::invalid_parameter, "dimension must be >= 1");
    if (!(C > 0.0) || !(alpha > 0.0))
        fail(ErrKind::invalid_parameter, "Barenblatt C and alpha must be positive");
    BarenblattParams bp;
    bp.p = p;
    bp.N = N;
    bp.C = C;
    bp.alpha = alpha;
    bp.k = 1.0 / (p - 2.0 + p / N);
    return bp;
}

// Exact power helper: pow with cheap paths for the exponents the hot loops
// hit (1, 1.5, 2); values agree with pow to rounding.
static inline double xpow(double base, double e) {
    if (e == 2.0) return base * base;
    if (e == 1.5) return base * std::sqrt(base);
    if (e == 1.0) return base;
    return std::pow(base, e);
}

double barenblatt(double x, double t, const BarenblattParams& bp) {
    double ts = t + bp.alpha;
    if (!(ts > 0.0)) fail(ErrKind::invalid_parameter, "need t + alpha > 0");
    double p = bp.p;
    double coef = (p - 2.0) / p * std::pow(bp.k / bp.N, 1.0 / (p - 1.0));
    double scaled = std::fabs(x) * std::pow(ts, -bp.k / bp.N);
    double bracket = bp.C - coef * xpow(scaled, p / (p - 1.0));
    if (bracket <= 0.0) return 0.0;
    return std::pow(ts, -bp.k) * xpow(bracket, (p - 1.0) / (p - 2.0));
}

double barenblatt_support_radius(double t, const BarenblattParams& bp) {
    double ts = t + bp.alpha;
    if (!(ts > 0.0)) fail(ErrKind::invalid_parameter, "need t + alpha > 0");
    double p = bp.p;
    double coef = (p - 2.0) / p * std::pow(bp.k / bp.N, 1.0 / (p - 1.0));
    return std::pow(bp.C / coef, (p - 1.0) / p) * std::pow(ts, bp.k / bp.N);
}

ExtinctionParams make_extinction_params(double p, double t0, int n) {
    if (!(p > 1.0 && p < 2.0))
        fail(ErrKind::invalid_parameter, "extinction solution needs p in (1,2)");
    if (!(t0 > 0.0)) fail(ErrKind::invalid_parameter, "need t0 > 0");
    ExtinctionParams ep;
    ep.p = p;
    ep.t0 = t0;
    ep.profile = solve_profile_bvp(p, n);
    return ep;
}

double extinction_time(const ExtinctionParams& ep) { return ep.t0 / (2.0 - ep.p); }

double extinction_time_factor(double t, const ExtinctionParams& ep) {
    double s = ep.t0 - (2.0 - ep.p) * t;
    if (s <= 0.0) return 0.0;
    return std::pow(s, 1.0 / (2.0 - ep.p));
}

double extinction_solution(double x, double t, const ExtinctionParams& ep) {
    if (std::fabs(x) > 1.0 + 1e-12)
        fail(ErrKind::invalid_parameter, "extinction solution lives on [-1,1]");
    const Grid& g = ep.profile.grid;
    double pos = (x - g.a) / g.h;
    int c = static_cast<int>(pos);
    if (c < 0) c = 0;
    if (c > g.n - 2) c = g.n - 2;
    double w = pos - c;
    double v = (1.0 - w) * ep.profile[c] + w * ep.profile[c + 1];
    return extinction_time_factor(t, ep) * v;
}

double cauchy_solution(double t, double p) {
    if (!(p > 1.0 && p < 2.0))
        fail(ErrKind::invalid_parameter,
             "the nontrivial cauchy solution exists only for p in (1,2)");
    if (t < 0.0) fail(ErrKind::invalid_parameter, "need t >= 0");
    return std::pow((2.0 - p) * t, 1.0 / (2.0 - p));
}

double cauchy_flow(double t, double v0, double p) {
    if (!(p > 1.0 && p < 2.0)) fail(ErrKind::invalid_parameter, "flow map needs p in (1,2)");
    if (t < 0.0 || v0 < 0.0) fail(ErrKind::invalid_parameter, "need t >= 0 and v0 >= 0");
    return std::pow((2.0 - p) * t + std::pow(v0, 2.0 - p), 1.0 / (2.0 - p));
}

static void check_barrier(const BarrierParams& bp) {
    if (!(bp.eps > 0.0 && bp.alpha > 0.0 && bp.R > 0.0))
        fail(ErrKind::invalid_parameter, "barrier eps, alpha, R must be positive");
}

double hopf_barrier(double x, double t, const BarrierParams& bp) {
    check_barrier(bp);
    double d2 = (x - bp.x0) * (x - bp.x0) + std::fabs(t - bp.t0);
    return bp.eps * (std::exp(-bp.alpha * d2) - std::exp(-bp.alpha * bp.R * bp.R));
}

double hopf_barrier_space_gradient(double x, double t, const BarrierParams& bp) {
    check_barrier(bp);
    double d2 = (x - bp.x0) * (x - bp.x0) + std::fabs(t - bp.t0);
    return -2.0 * bp.alpha * bp.eps * (x - bp.x0) * std::exp(-bp.alpha * d2);
}

double degenerate_subsolution(double x, double t, const SubsolutionParams& sp) {
    if (!(sp.C > 0.0 && sp.R > 0.0 && sp.T > 0.0))
        fail(ErrKind::invalid_parameter, "subsolution C, R, T must be positive");
    double core = sp.R * sp.R - x * x;
    if (core <= 0.0) return 0.0;
    return sp.C * std::pow(core, sp.m) * (sp.T - t);
}

double admissible_m(double p) {
    if (!(p > 2.0)) fail(ErrKind::invalid_parameter, "admissible exponent needs p > 2");
    return p / (p - 2.0);
}

double pi_p(double p) {
    if (!(p > 1.0)) fail(ErrKind::invalid_parameter, "need p > 1");
    const double pi = 3.14159265358979323846;
    return 2.0 * pi / (p * std::sin(pi / p));
}

double lambda1_interval(double p, double L) {
    if (!(L > 0.0)) fail(ErrKind::invalid_parameter, "need L > 0");
    return (p - 1.0) * std::pow(pi_p(p) / L, p);
}

} // namespace plap
