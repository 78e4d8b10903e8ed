#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace plap {

enum class ErrKind {
    invalid_geometry,
    non_finite_value,
    incompatible_fields,
    invalid_parameter,
    singular_flux,
    singular_direction,
    step_failure,
    convergence_failure,
    trivial_solution,
    bracketing_failure,
    unknown_scenario,
    mesh_too_coarse,
    config_error,
};

const char* to_string(ErrKind k);

class Error : public std::runtime_error {
public:
    Error(ErrKind kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
    ErrKind kind() const noexcept { return kind_; }

private:
    ErrKind kind_;
};

// Carries the last iterate so callers can inspect a stalled solve.
class ConvergenceFailure : public Error {
public:
    ConvergenceFailure(const std::string& msg, std::vector<double> last)
        : Error(ErrKind::convergence_failure, msg), last_iterate(std::move(last)) {}
    std::vector<double> last_iterate;
};

class StepFailure : public Error {
public:
    StepFailure(const std::string& msg, int time_index_)
        : Error(ErrKind::step_failure, msg + " (time index " + std::to_string(time_index_) + ")"),
          time_index(time_index_) {}
    int time_index;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) { throw Error(k, msg); }

} // namespace plap
