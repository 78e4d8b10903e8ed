#pragma once

#include <utility>

#include "plap/grid.hpp"

namespace plap {

enum class Principle { WMP, SMP, WCP, SCP, HMP };
enum class Verdict { holds, violated, inconclusive };

const char* to_string(Principle p);
const char* to_string(Verdict v);

struct PrincipleReport {
    Principle principle = Principle::WMP;
    Verdict verdict = Verdict::inconclusive;
    double margin = 0.0;
    int witness_time = -1; // slice index where the margin is attained
    int witness_node = -1;
    double tolerance = 0.0;
};

// Positivity resolution of a discrete run: max(10 * newton_tol, h^2). Strict
// inequalities of the continuum statements are checked against this band.
double default_tolerance(const Grid& g, double newton_tol);

// Nonnegativity of the whole space-time field: margin = min u, holds iff
// margin >= -tol.
PrincipleReport check_wmp(const SpaceTimeField& stf, double tol);

// Strict interior positivity on every slice that is not identically zero
// (sup over interior > tol). margin = min interior value over those slices;
// holds iff margin > tol, violated otherwise, inconclusive when every slice
// after the initial one is trivial.
PrincipleReport check_smp(const SpaceTimeField& stf, double tol);

// Ordering of two runs with ordered data: margin = min(v - u) over all nodes
// and slices, holds iff margin >= -tol.
PrincipleReport check_wcp(const SpaceTimeField& u, const SpaceTimeField& v, double tol);

// Strict ordering up to the positivity time of v: interior strictness
// min(v - u) and boundary-flux ordering min(dnu(u) - dnu(v)) over slices
// burn_in .. slice(t_bar(v)); holds iff both exceed tol. Inconclusive when
// t_bar(v) lies before the burn-in slice.
PrincipleReport check_scp(const SpaceTimeField& u, const SpaceTimeField& v, double tol,
                          int burn_in = 1);

// Strictly negative outer normal derivative at the boundary of one slice,
// by a second-order one-sided stencil. margin = -max boundary derivative;
// holds iff every boundary derivative < -tol. Inconclusive when the slice
// has interior values <= tol (the premise of the principle fails).
PrincipleReport check_hopf(const SpaceTimeField& stf, int time_index, double tol);

// t_bar = dt * (largest k with all interior nodes of slices 1..k above tol);
// t_star = dt * (largest k with some interior node above tol on each of
// slices 1..k). Always t_bar <= t_star.
std::pair<double, double> positivity_time(const SpaceTimeField& stf, double tol);

// Largest |node coordinate| whose value exceeds tol; 0 when none does.
double support_radius(const Field& slice, double tol);

// dt * (first slice index whose sup-norm falls below tol); +inf when the
// field never dies.
double extinction_time_estimate(const SpaceTimeField& stf, double tol);

} // namespace plap
