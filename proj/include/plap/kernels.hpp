#pragma once

#include <cmath>

#include "plap/grid.hpp"

namespace plap {

// sign(s) * |s|^q; the only safe way to take fractional powers of signed data.
inline double signed_pow(double s, double q) {
    return s < 0.0 ? -std::pow(-s, q) : std::pow(s, q);
}

// phi(s) = (s^2 + eps^2)^{(p-2)/2}; the nonlinear flux coefficient.
inline double flux_phi(double s, double p, double eps) {
    if (eps == 0.0) return std::pow(std::fabs(s), p - 2.0);
    return std::pow(s * s + eps * eps, 0.5 * (p - 2.0));
}

// psi(s) = d/ds [phi(s) s]; the flux linearization used by Newton.
inline double flux_psi(double s, double p, double eps) {
    if (eps == 0.0) return (p - 1.0) * std::pow(std::fabs(s), p - 2.0);
    double s2 = s * s + eps * eps;
    return std::pow(s2, 0.5 * (p - 4.0)) * ((p - 1.0) * s * s + eps * eps);
}

namespace kern {

enum class Mode { serial, parallel };
void set_mode(Mode m);
Mode mode();

// Each kernel exists twice: a plain serial reference and an OpenMP variant.
// Outputs are bit-identical by construction (element-wise maps and min/max
// reductions only; no floating-point sums are reordered).
namespace serial {
void apply_p_laplacian(const Grid& g, const double* u, double p, double eps, double* out);
void map_phi(int m, const double* du, double p, double eps, double* out);
void map_psi(int m, const double* du, double p, double eps, double* out);
double vmin(const double* v, int n);
double vmax(const double* v, int n);
} // namespace serial

namespace openmp {
void apply_p_laplacian(const Grid& g, const double* u, double p, double eps, double* out);
void map_phi(int m, const double* du, double p, double eps, double* out);
void map_psi(int m, const double* du, double p, double eps, double* out);
double vmin(const double* v, int n);
double vmax(const double* v, int n);
} // namespace openmp

void apply_p_laplacian(const Grid& g, const double* u, double p, double eps, double* out);
void map_phi(int m, const double* du, double p, double eps, double* out);
void map_psi(int m, const double* du, double p, double eps, double* out);
double vmin(const double* v, int n);
double vmax(const double* v, int n);

// Validates p and, for p < 2 with eps == 0, scans for exactly-zero cell
// gradients (the flux is singular there). Called by every apply variant.
void check_flux_args(const Grid& g, const double* u, double p, double eps);

// Tridiagonal solve, in place on x (enters as rhs). sub is indexed 1..n-1,
// sup 0..n-2. Inherently sequential; shared by both kernel modes.
void thomas(int n, const double* sub, const double* diag, const double* sup, double* x,
            double* work);

} // namespace kern

// Conservative-form discrete p-Laplacian. Boundary entries of the result are
// zero by contract. Radial grids weight the flux by r^{N-1}.
Field discrete_p_laplacian(const Field& u, double p, double eps_reg);

} // namespace plap
