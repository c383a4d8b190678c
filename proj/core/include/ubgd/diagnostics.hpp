#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ubgd/drivers.hpp"
#include "ubgd/objective.hpp"
#include "ubgd/trace.hpp"

namespace ubgd {

// Post-run audit of everything the convergence theory predicts about a
// trace. Every field is recomputed from the trace (plus objective metadata
// and the run configuration), never from driver internals.
struct TheoremAudit {
    // Armijo decrease at every Backtrack/Growth/Reuse step, with slack
    // 1e-12 * max(1, |f(x_n)|).
    bool armijo_ok = true;
    // f(x_n) non-increasing along the whole trace.
    bool descent_ok = true;
    // Mean step norm over the first and last 10% of records; on convergent
    // runs the tail must vanish.
    double first_decile_mean_step = 0.0;
    double last_decile_mean_step = 0.0;
    // Tail share of S_N = sum delta_j * ||g_j||^2: (S_N - S_{0.9N}) / S_N.
    // The partial sums converge on non-diverging runs, so the tail share is
    // small on runs that reached a critical point.
    double partial_sum_tail_fraction = 0.0;
    double final_grad_norm = 0.0;
    // Distance from final_x to the nearest declared critical point.
    std::optional<std::pair<Vector, double>> nearest_known_critical;
    // delta >= min(beta/L(x), beta*r(x)/||g(x)||, delta0) - 1e-12 at every
    // Backtrack/Growth step; requires declared (r, L) and alpha <= 1/2.
    std::optional<bool> delta_lower_bound_ok;
    // Hybrid runs only: every window of period+1 records has a Backtrack step.
    std::optional<bool> hybrid_window_ok;
    Termination termination = Termination::MaxIters;
};

TheoremAudit audit(const Trace& trace, const Objective& obj, const RunConfig& cfg);

// Head-to-head table over traces of the same objective and start.
struct SchemeComparison {
    std::string scheme;
    // First index i with target(x_i) true along x_0, x_1, ..., final_x;
    // nullopt when the target is never reached.
    std::optional<std::size_t> iters_to_target;
    std::uint64_t value_evals = 0;
    std::uint64_t gradient_evals = 0;
    Termination termination = Termination::MaxIters;
};

using TargetPredicate = std::function<bool(const Vector&)>;

std::vector<SchemeComparison> compare(const std::vector<std::pair<std::string, const Trace*>>& traces,
                                      const TargetPredicate& target);

}  // namespace ubgd
