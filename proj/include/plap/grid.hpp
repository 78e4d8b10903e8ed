#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "plap/errors.hpp"

namespace plap {

enum class GridKind { interval, radial };

// Uniform 1-D mesh. kind==radial means nodes live on [0,b] and the operator
// carries the N-dimensional radial weight; kind==interval is a plain segment.
struct Grid {
    GridKind kind = GridKind::interval;
    double a = 0.0;
    double b = 1.0;
    int N = 1;     // ambient dimension (radial weight exponent N-1)
    int n = 3;     // node count including both endpoints
    double h = 0.0;

    double node(int i) const { return a + h * i; }
    int interior_begin() const { return 1; }
    int interior_end() const { return n - 1; } // one past last interior node
};

Grid make_interval_grid(double a, double b, int n);
Grid make_radial_grid(double b, int N, int n);

// Nodal values over a grid; owns its data, remembers the mesh it lives on.
struct Field {
    Grid grid;
    std::vector<double> v;

    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }
    int size() const { return static_cast<int>(v.size()); }
};

Field make_field(const Grid& g, double fill = 0.0);
// Rejects non-finite samples naming the offending node index.
Field sample(const Grid& g, const std::function<double(double)>& f);

double sup_norm(const Field& u);
// Throws incompatible_fields when the meshes differ.
double sup_diff(const Field& u, const Field& w);
void require_same_grid(const Grid& g1, const Grid& g2, const char* what);

struct TimeMesh {
    double t0 = 0.0;
    double T = 1.0;
    int m = 1; // step count; m+1 slices
    double dt = 0.0;

    double time(int j) const { return t0 + dt * j; }
};

TimeMesh make_time_mesh(double t0, double T, int m);

// Slice-major storage: slice j is contiguous, values[j*n + i].
struct SpaceTimeField {
    Grid grid;
    TimeMesh tm;
    std::vector<double> values;

    double& at(int j, int i) { return values[static_cast<size_t>(j) * grid.n + i]; }
    double at(int j, int i) const { return values[static_cast<size_t>(j) * grid.n + i]; }
    Field slice(int j) const;
    void set_slice(int j, const Field& u);
    int slices() const { return tm.m + 1; }
};

SpaceTimeField make_space_time_field(const Grid& g, const TimeMesh& tm);

void write_csv(std::ostream& os, const Field& u);
void write_csv(std::ostream& os, const SpaceTimeField& u);
void write_csv_file(const std::string& path, const Field& u);
void write_csv_file(const std::string& path, const SpaceTimeField& u);

} // namespace plap
