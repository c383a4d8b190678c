#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ubgd/vector.hpp"

namespace ubgd {

enum class StepMode { Backtrack, Growth, Reuse, Standard };

enum class Termination { CriticalPoint, MaxIters, DivergingF, DivergingX, NumericalFailure };

// One accepted gradient step. x is the point the step was taken from;
// delta the accepted learning rate. For Backtrack/Growth modes delta equals
// beta^delta_exponent * delta0 and step_norm equals delta * grad_norm up to
// relative 1e-12. n_value_evals counts the value evaluations spent selecting
// (and, for reused steps, guarding) this step; n_grad_evals the gradient
// evaluations that drove it.
struct StepRecord {
    std::size_t iter = 0;
    Vector x;
    double f_val = 0.0;
    double grad_norm = 0.0;
    double delta = 0.0;
    int delta_exponent = 0;
    double step_norm = 0.0;
    std::uint64_t n_value_evals = 0;
    std::uint64_t n_grad_evals = 0;
    StepMode mode = StepMode::Backtrack;
};

struct Trace {
    std::vector<StepRecord> records;
    Termination termination = Termination::MaxIters;
    Vector final_x;
    double final_f = 0.0;
    double final_grad_norm = 0.0;
    // Objective-counter deltas over the whole run. The driver evaluates the
    // objective exactly once more than the records account for (the status
    // probe at the terminal point), so for completed runs
    //   total_value_evals    == sum(records.n_value_evals) + 1
    //   total_gradient_evals == sum(records.n_grad_evals) + 1.
    std::uint64_t total_value_evals = 0;
    std::uint64_t total_gradient_evals = 0;
};

inline const char* to_string(StepMode m) {
    switch (m) {
        case StepMode::Backtrack: return "backtrack";
        case StepMode::Growth: return "growth";
        case StepMode::Reuse: return "reuse";
        case StepMode::Standard: return "standard";
    }
    return "unknown";
}

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::CriticalPoint: return "critical_point";
        case Termination::MaxIters: return "max_iters";
        case Termination::DivergingF: return "diverging_f";
        case Termination::DivergingX: return "diverging_x";
        case Termination::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

inline bool is_diverging(Termination t) {
    return t == Termination::DivergingF || t == Termination::DivergingX;
}

}  // namespace ubgd
