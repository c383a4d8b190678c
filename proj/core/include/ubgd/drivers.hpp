#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "ubgd/growth.hpp"
#include "ubgd/linesearch.hpp"
#include "ubgd/objective.hpp"
#include "ubgd/params.hpp"
#include "ubgd/trace.hpp"
#include "ubgd/vector.hpp"

namespace ubgd {

// x_{n+1} = x_n - delta * grad f(x_n) with a fixed delta; no Armijo
// guarantee. Baseline for comparisons.
struct StandardScheme {
    double delta = 0.1;
};

struct BacktrackingScheme {};

struct UnboundedScheme {
    GrowthFunction h;
};

struct TwoWayScheme {};

// Backtracking at every step with iter % period == 0; otherwise the previous
// step size is reused when it still yields Armijo decrease, and backtracking
// reruns when it does not.
struct HybridScheme {
    int period = 5;
};

using Scheme = std::variant<StandardScheme, BacktrackingScheme, UnboundedScheme, TwoWayScheme, HybridScheme>;

std::string scheme_name(const Scheme& scheme);

struct RunConfig {
    Scheme scheme = BacktrackingScheme{};
    LineSearchParams params;
    std::size_t max_iters = 100000;
    Vector x0;
    double divergence_x_threshold = 1e8;   // ||x|| above this -> DivergingX
    double divergence_f_threshold = -1e12; // f below this -> DivergingF
};

void validate(const RunConfig& cfg, const Objective& obj);

Trace run_standard(const Objective& obj, const RunConfig& cfg);
Trace run_backtracking(const Objective& obj, const RunConfig& cfg);
Trace run_unbounded(const Objective& obj, const RunConfig& cfg);
Trace run_twoway(const Objective& obj, const RunConfig& cfg);
Trace run_hybrid(const Objective& obj, const RunConfig& cfg);

// Dispatch on cfg.scheme.
Trace run(const Objective& obj, const RunConfig& cfg);

}  // namespace ubgd
