#include "ubgd/linesearch.hpp"

#include <cmath>
#include <functional>

namespace ubgd {

namespace {

Vector trial_point(const Vector& x, double delta, const Vector& g) {
    Vector t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) t[i] = x[i] - delta * g[i];
    return t;
}

void require_non_critical(const Vector& g, const LineSearchParams& params) {
    if (norm(g) < params.grad_tol) {
        throw std::invalid_argument("line search: gradient norm below grad_tol; caller should terminate");
    }
}

// Shrink from `exponent` until Armijo holds. The probe at `exponent` itself
// already failed and is counted in `evals`.
SearchResult shrink_until_armijo(const Objective& obj, const Vector& x, double fx, const Vector& g,
                                 double grad_sq, int exponent, int evals, bool overflow,
                                 const LineSearchParams& params) {
    int m = exponent;
    while (true) {
        ++m;
        if (m > params.max_halvings) {
            throw LineSearchFailure("line search: no Armijo step within " +
                                    std::to_string(params.max_halvings) + " halvings");
        }
        const double delta = delta_for_exponent(m, params);
        const ArmijoProbe probe = probe_armijo(obj, x, fx, g, grad_sq, delta, params.alpha);
        ++evals;
        overflow = overflow || probe.overflow;
        if (probe.holds) {
            return SearchResult{delta, m, evals, SearchPhase::Shrunk, probe.trial_f, overflow, false};
        }
    }
}

// Grow from `exponent`, where Armijo is known to hold with value f_here,
// while the next candidate stays admissible and keeps Armijo. Growth stops
// at min_exponent.
SearchResult grow_while_armijo(const Objective& obj, const Vector& x, double fx, const Vector& g,
                               double grad_sq, int exponent, double f_here, int evals, bool overflow,
                               int min_exponent, const std::function<bool(double)>& admits,
                               const LineSearchParams& params) {
    int m = exponent;
    double delta = delta_for_exponent(m, params);
    double f_accept = f_here;
    while (m > min_exponent) {
        const double candidate = delta_for_exponent(m - 1, params);
        if (!admits(candidate)) break;
        const ArmijoProbe probe = probe_armijo(obj, x, fx, g, grad_sq, candidate, params.alpha);
        ++evals;
        overflow = overflow || probe.overflow;
        if (!probe.holds) break;
        --m;
        delta = candidate;
        f_accept = probe.trial_f;
    }
    const SearchPhase phase = (m < exponent) ? SearchPhase::Grew : SearchPhase::Unchanged;
    return SearchResult{delta, m, evals, phase, f_accept, overflow, false};
}

}  // namespace

ArmijoProbe probe_armijo(const Objective& obj, const Vector& x, double fx, const Vector& g,
                         double grad_sq, double delta, double alpha) {
    const double trial_f = obj.value(trial_point(x, delta, g));
    if (!std::isfinite(trial_f)) {
        return ArmijoProbe{false, trial_f, true};
    }
    // Non-strict, so ties accept.
    const bool holds = trial_f - fx <= -alpha * delta * grad_sq;
    return ArmijoProbe{holds, trial_f, false};
}

bool armijo_holds(const Objective& obj, const Vector& x, double fx, const Vector& g,
                  double delta, double alpha) {
    if (!(delta > 0.0)) throw std::invalid_argument("armijo_holds: delta must be > 0");
    return probe_armijo(obj, x, fx, g, squared_norm(g), delta, alpha).holds;
}

SearchResult backtracking_search(const Objective& obj, const Vector& x, double fx, const Vector& g,
                                 const LineSearchParams& params) {
    validate(params);
    require_non_critical(g, params);
    const double grad_sq = squared_norm(g);

    const double delta = delta_for_exponent(0, params);
    const ArmijoProbe first = probe_armijo(obj, x, fx, g, grad_sq, delta, params.alpha);
    if (first.holds) {
        return SearchResult{delta, 0, 1, SearchPhase::Unchanged, first.trial_f, first.overflow, false};
    }
    return shrink_until_armijo(obj, x, fx, g, grad_sq, 0, 1, first.overflow, params);
}

SearchResult backtracking_search(const Objective& obj, const Vector& x, const LineSearchParams& params) {
    const double fx = obj.value(x);
    return backtracking_search(obj, x, fx, obj.gradient(x), params);
}

SearchResult growth_search(const Objective& obj, const Vector& x, double fx, const Vector& g,
                           const LineSearchParams& params, const GrowthFunction& h) {
    validate(params);
    require_non_critical(g, params);
    const double grad_sq = squared_norm(g);
    const double cap = h_effective(h, norm(g), params.delta0);

    const double delta = delta_for_exponent(0, params);
    const ArmijoProbe first = probe_armijo(obj, x, fx, g, grad_sq, delta, params.alpha);
    if (!first.holds) {
        return shrink_until_armijo(obj, x, fx, g, grad_sq, 0, 1, first.overflow, params);
    }
    auto under_cap = [cap](double candidate) { return candidate <= cap; };
    return grow_while_armijo(obj, x, fx, g, grad_sq, 0, first.trial_f, 1, first.overflow,
                             -params.max_halvings, under_cap, params);
}

SearchResult growth_search(const Objective& obj, const Vector& x, const LineSearchParams& params,
                           const GrowthFunction& h) {
    const double fx = obj.value(x);
    return growth_search(obj, x, fx, obj.gradient(x), params, h);
}

SearchResult two_way_search(const Objective& obj, const Vector& x, double fx, const Vector& g,
                            WarmStart prev, const LineSearchParams& params) {
    validate(params);
    require_non_critical(g, params);
    const double grad_sq = squared_norm(g);

    // Warm start must be a grid point in (0, delta0]; otherwise clamp to delta0.
    bool clamped = false;
    int m = prev.exponent;
    if (!(prev.delta > 0.0) || !std::isfinite(prev.delta) || m < 0 || m > params.max_halvings ||
        std::abs(prev.delta - delta_for_exponent(m, params)) > 1e-12 * delta_for_exponent(m, params)) {
        m = 0;
        clamped = true;
    }

    const double delta = delta_for_exponent(m, params);
    const ArmijoProbe first = probe_armijo(obj, x, fx, g, grad_sq, delta, params.alpha);
    SearchResult result;
    if (first.holds) {
        // Grow toward the delta0 cap; exponent 0 is the cap, exactly.
        auto admit_all = [](double) { return true; };
        result = grow_while_armijo(obj, x, fx, g, grad_sq, m, first.trial_f, 1, first.overflow, 0,
                                   admit_all, params);
    } else {
        result = shrink_until_armijo(obj, x, fx, g, grad_sq, m, 1, first.overflow, params);
    }
    result.warm_start_clamped = clamped;
    return result;
}

SearchResult two_way_search(const Objective& obj, const Vector& x, WarmStart prev,
                            const LineSearchParams& params) {
    const double fx = obj.value(x);
    return two_way_search(obj, x, fx, obj.gradient(x), prev, params);
}

}  // namespace ubgd
