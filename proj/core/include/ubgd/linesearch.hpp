#pragma once

#include <stdexcept>
#include <string>

#include "ubgd/growth.hpp"
#include "ubgd/objective.hpp"
#include "ubgd/params.hpp"
#include "ubgd/vector.hpp"

namespace ubgd {

// Thrown when a search exhausts max_halvings without an acceptable step
// (flat or ill-scaled objective, or a broken gradient). Drivers convert it
// into Termination::NumericalFailure.
struct LineSearchFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SearchPhase { Shrunk, Grew, Unchanged };

struct SearchResult {
    double delta = 0.0;      // accepted step; Armijo holds here
    int exponent = 0;        // delta == delta_for_exponent(exponent, params), exactly
    int n_value_evals = 0;   // Armijo probes spent by this search
    SearchPhase phase = SearchPhase::Unchanged;
    double f_at_step = 0.0;  // f(x - delta * g), from the accepting probe
    bool overflow_seen = false;        // some probe produced a non-finite value
    bool warm_start_clamped = false;   // two-way only: bad warm start reset to delta0
};

// Single Armijo probe at step size delta:
//   f(x - delta * g) - fx <= -alpha * delta * ||g||^2.
// Costs exactly one value evaluation. A non-finite trial value counts as the
// condition failing, with overflow flagged.
struct ArmijoProbe {
    bool holds = false;
    double trial_f = 0.0;
    bool overflow = false;
};

ArmijoProbe probe_armijo(const Objective& obj, const Vector& x, double fx, const Vector& g,
                         double grad_sq, double delta, double alpha);

bool armijo_holds(const Objective& obj, const Vector& x, double fx, const Vector& g,
                  double delta, double alpha);

// Largest delta = beta^m * delta0 (m = 0, 1, 2, ...) satisfying Armijo's
// condition. pre: ||g|| >= grad_tol. The (fx, g) overloads take the already
// known value and gradient at x and spend value evaluations only on Armijo
// probes; the short forms evaluate fx and g first.
SearchResult backtracking_search(const Objective& obj, const Vector& x, double fx, const Vector& g,
                                 const LineSearchParams& params);
SearchResult backtracking_search(const Objective& obj, const Vector& x, const LineSearchParams& params);

// Two-phase search starting at delta0. If Armijo fails there, backs off by
// beta exactly like backtracking_search. If it holds, grows by 1/beta while
// both Armijo and the cap delta <= h_effective(||g||, delta0) stay
// satisfied, so the result may exceed delta0. The cap is checked before
// spending a probe on a candidate.
SearchResult growth_search(const Objective& obj, const Vector& x, double fx, const Vector& g,
                           const LineSearchParams& params, const GrowthFunction& h);
SearchResult growth_search(const Objective& obj, const Vector& x, const LineSearchParams& params,
                           const GrowthFunction& h);

// Previous accepted step, carried by its grid exponent so the discrete set
// is never reconstructed from floats.
struct WarmStart {
    double delta = 0.0;
    int exponent = 0;
};

// Warm-started search: begins at the previous step's delta, shrinks by beta
// until Armijo holds, or grows by 1/beta while Armijo holds, capped at
// delta0 (exponent >= 0). An invalid warm start (outside (0, delta0], or
// inconsistent with its exponent) is clamped to delta0 and flagged.
SearchResult two_way_search(const Objective& obj, const Vector& x, double fx, const Vector& g,
                            WarmStart prev, const LineSearchParams& params);
SearchResult two_way_search(const Objective& obj, const Vector& x, WarmStart prev,
                            const LineSearchParams& params);

}  // namespace ubgd
