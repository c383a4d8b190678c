#include "ubgd/drivers.hpp"

#include <cmath>
#include <functional>
#include <utility>

namespace ubgd {

namespace {

// What a policy decided for the current iterate: the step size, how it was
// obtained, the value evaluations it spent, and f at the accepted trial
// point (always known, because every acceptance involved evaluating it).
struct StepChoice {
    double delta = 0.0;
    int exponent = 0;
    StepMode mode = StepMode::Backtrack;
    std::uint64_t n_value_evals = 0;
    double f_next = 0.0;
};

using PolicyFn = std::function<StepChoice(std::size_t iter, const Vector& x, double f, const Vector& g,
                                          double grad_norm)>;

std::optional<Termination> classify(const RunConfig& cfg, const Vector& x, double f, const Vector& g,
                                    double grad_norm, std::size_t iter) {
    if (!std::isfinite(f) || !all_finite(g) || !all_finite(x)) return Termination::NumericalFailure;
    if (grad_norm < cfg.params.grad_tol) return Termination::CriticalPoint;
    if (f < cfg.divergence_f_threshold) return Termination::DivergingF;
    if (norm(x) > cfg.divergence_x_threshold) return Termination::DivergingX;
    if (iter >= cfg.max_iters) return Termination::MaxIters;
    return std::nullopt;
}

Trace run_loop(const Objective& obj, const RunConfig& cfg, const PolicyFn& choose) {
    validate(cfg, obj);
    const EvalCounter before = obj.evals();

    Trace trace;
    Vector x = cfg.x0;
    double f = obj.value(x);
    Vector g = obj.gradient(x);

    for (std::size_t n = 0;; ++n) {
        const double gn = norm(g);
        std::optional<Termination> done = classify(cfg, x, f, g, gn, n);
        StepChoice choice;
        if (!done) {
            try {
                choice = choose(n, x, f, g, gn);
            } catch (const LineSearchFailure&) {
                done = Termination::NumericalFailure;
            }
        }
        if (done) {
            trace.termination = *done;
            trace.final_x = x;
            trace.final_f = f;
            trace.final_grad_norm = gn;
            break;
        }

        // step_norm is taken from the scaled gradient itself, so it matches
        // delta * grad_norm to a few ulp even when the displacement is far
        // below the magnitude of x.
        Vector step = scaled(choice.delta, g);
        const double step_norm = norm(step);
        Vector x_next = minus(x, step);

        trace.records.push_back(StepRecord{n, x, f, gn, choice.delta, choice.exponent, step_norm,
                                           choice.n_value_evals, 1, choice.mode});
        x = std::move(x_next);
        f = choice.f_next;
        g = obj.gradient(x);
    }

    const EvalCounter after = obj.evals();
    trace.total_value_evals = after.value_evals - before.value_evals;
    trace.total_gradient_evals = after.gradient_evals - before.gradient_evals;
    return trace;
}

StepChoice from_search(const SearchResult& r, StepMode mode) {
    return StepChoice{r.delta, r.exponent, mode, static_cast<std::uint64_t>(r.n_value_evals), r.f_at_step};
}

}  // namespace

std::string scheme_name(const Scheme& scheme) {
    struct Namer {
        std::string operator()(const StandardScheme&) const { return "standard"; }
        std::string operator()(const BacktrackingScheme&) const { return "backtracking"; }
        std::string operator()(const UnboundedScheme&) const { return "unbounded"; }
        std::string operator()(const TwoWayScheme&) const { return "twoway"; }
        std::string operator()(const HybridScheme&) const { return "hybrid"; }
    };
    return std::visit(Namer{}, scheme);
}

void validate(const RunConfig& cfg, const Objective& obj) {
    validate(cfg.params);
    if (cfg.x0.size() != obj.dim()) {
        throw std::invalid_argument("RunConfig: x0 has dimension " + std::to_string(cfg.x0.size()) +
                                    ", objective expects " + std::to_string(obj.dim()));
    }
    if (!all_finite(cfg.x0)) throw std::invalid_argument("RunConfig: x0 must be finite");
    if (!(cfg.divergence_x_threshold > 0.0)) {
        throw std::invalid_argument("RunConfig: divergence_x_threshold must be > 0");
    }
    if (!std::isfinite(cfg.divergence_f_threshold)) {
        throw std::invalid_argument("RunConfig: divergence_f_threshold must be finite");
    }
    if (const auto* std_scheme = std::get_if<StandardScheme>(&cfg.scheme)) {
        if (!(std_scheme->delta > 0.0) || !std::isfinite(std_scheme->delta)) {
            throw std::invalid_argument("RunConfig: standard scheme delta must be positive and finite");
        }
    }
    if (const auto* hybrid = std::get_if<HybridScheme>(&cfg.scheme)) {
        if (hybrid->period < 1) throw std::invalid_argument("RunConfig: hybrid period must be >= 1");
    }
}

Trace run_standard(const Objective& obj, const RunConfig& cfg) {
    const auto* scheme = std::get_if<StandardScheme>(&cfg.scheme);
    if (!scheme) throw std::invalid_argument("run_standard: cfg.scheme is not Standard");
    const double delta = scheme->delta;
    auto policy = [&obj, delta](std::size_t, const Vector& x, double, const Vector& g, double) {
        // No Armijo test; one bookkeeping evaluation at the trial point.
        Vector trial = minus(x, scaled(delta, g));
        const double f_next = obj.value(trial);
        return StepChoice{delta, 0, StepMode::Standard, 1, f_next};
    };
    return run_loop(obj, cfg, policy);
}

Trace run_backtracking(const Objective& obj, const RunConfig& cfg) {
    if (!std::holds_alternative<BacktrackingScheme>(cfg.scheme)) {
        throw std::invalid_argument("run_backtracking: cfg.scheme is not Backtracking");
    }
    auto policy = [&obj, &cfg](std::size_t, const Vector& x, double f, const Vector& g, double) {
        return from_search(backtracking_search(obj, x, f, g, cfg.params), StepMode::Backtrack);
    };
    return run_loop(obj, cfg, policy);
}

Trace run_unbounded(const Objective& obj, const RunConfig& cfg) {
    const auto* scheme = std::get_if<UnboundedScheme>(&cfg.scheme);
    if (!scheme) throw std::invalid_argument("run_unbounded: cfg.scheme is not Unbounded");
    const GrowthFunction& h = scheme->h;
    auto policy = [&obj, &cfg, &h](std::size_t, const Vector& x, double f, const Vector& g, double) {
        const SearchResult r = growth_search(obj, x, f, g, cfg.params, h);
        return from_search(r, r.phase == SearchPhase::Grew ? StepMode::Growth : StepMode::Backtrack);
    };
    return run_loop(obj, cfg, policy);
}

Trace run_twoway(const Objective& obj, const RunConfig& cfg) {
    if (!std::holds_alternative<TwoWayScheme>(cfg.scheme)) {
        throw std::invalid_argument("run_twoway: cfg.scheme is not TwoWay");
    }
    WarmStart prev{delta_for_exponent(0, cfg.params), 0};
    auto policy = [&obj, &cfg, prev](std::size_t, const Vector& x, double f, const Vector& g,
                                     double) mutable {
        const SearchResult r = two_way_search(obj, x, f, g, prev, cfg.params);
        prev = WarmStart{r.delta, r.exponent};
        return from_search(r, StepMode::Backtrack);
    };
    return run_loop(obj, cfg, policy);
}

Trace run_hybrid(const Objective& obj, const RunConfig& cfg) {
    const auto* scheme = std::get_if<HybridScheme>(&cfg.scheme);
    if (!scheme) throw std::invalid_argument("run_hybrid: cfg.scheme is not Hybrid");
    const std::size_t period = static_cast<std::size_t>(scheme->period);
    WarmStart prev{0.0, 0};
    auto policy = [&obj, &cfg, period, prev](std::size_t iter, const Vector& x, double f,
                                             const Vector& g, double) mutable {
        if (iter % period != 0) {
            // Tentatively reuse the previous step size. The reused step must
            // itself deliver Armijo decrease, which implies the cost cannot
            // increase; otherwise the probe is discarded and backtracking
            // runs at this point.
            const ArmijoProbe probe =
                probe_armijo(obj, x, f, g, squared_norm(g), prev.delta, cfg.params.alpha);
            if (probe.holds) {
                return StepChoice{prev.delta, prev.exponent, StepMode::Reuse, 1, probe.trial_f};
            }
            const SearchResult r = backtracking_search(obj, x, f, g, cfg.params);
            prev = WarmStart{r.delta, r.exponent};
            StepChoice choice = from_search(r, StepMode::Backtrack);
            choice.n_value_evals += 1;  // the discarded reuse probe
            return choice;
        }
        const SearchResult r = backtracking_search(obj, x, f, g, cfg.params);
        prev = WarmStart{r.delta, r.exponent};
        return from_search(r, StepMode::Backtrack);
    };
    return run_loop(obj, cfg, policy);
}

Trace run(const Objective& obj, const RunConfig& cfg) {
    struct Dispatch {
        const Objective& obj;
        const RunConfig& cfg;
        Trace operator()(const StandardScheme&) const { return run_standard(obj, cfg); }
        Trace operator()(const BacktrackingScheme&) const { return run_backtracking(obj, cfg); }
        Trace operator()(const UnboundedScheme&) const { return run_unbounded(obj, cfg); }
        Trace operator()(const TwoWayScheme&) const { return run_twoway(obj, cfg); }
        Trace operator()(const HybridScheme&) const { return run_hybrid(obj, cfg); }
    };
    return std::visit(Dispatch{obj, cfg}, cfg.scheme);
}

}  // namespace ubgd
