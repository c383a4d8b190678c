#include "ubgd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ubgd {

namespace {

// Mean step norm over the first and last max(1, n/10) records.
std::pair<double, double> decile_means(const std::vector<StepRecord>& records) {
    if (records.empty()) return {0.0, 0.0};
    const std::size_t d = std::max<std::size_t>(1, records.size() / 10);
    double head = 0.0;
    double tail = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        head += records[i].step_norm;
        tail += records[records.size() - 1 - i].step_norm;
    }
    return {head / static_cast<double>(d), tail / static_cast<double>(d)};
}

bool hybrid_window_property(const std::vector<StepRecord>& records, std::size_t period) {
    if (records.size() <= period) {
        // A run shorter than one full window cannot violate the property,
        // but it must still contain a Backtrack step unless it is empty.
        if (records.empty()) return true;
        return std::any_of(records.begin(), records.end(),
                           [](const StepRecord& r) { return r.mode == StepMode::Backtrack; });
    }
    for (std::size_t start = 0; start + period < records.size(); ++start) {
        bool found = false;
        for (std::size_t i = start; i <= start + period; ++i) {
            if (records[i].mode == StepMode::Backtrack) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

TheoremAudit audit(const Trace& trace, const Objective& obj, const RunConfig& cfg) {
    TheoremAudit out;
    out.termination = trace.termination;
    out.final_grad_norm = trace.final_grad_norm;

    const auto& records = trace.records;
    const double alpha = cfg.params.alpha;

    // Armijo decrease and monotone descent, re-derived from the recorded f
    // values alone. f(x_{n+1}) is the next record's f_val, or final_f for
    // the last record.
    for (std::size_t i = 0; i < records.size(); ++i) {
        const StepRecord& r = records[i];
        const double f_next = (i + 1 < records.size()) ? records[i + 1].f_val : trace.final_f;
        const double slack = 1e-12 * std::max(1.0, std::abs(r.f_val));
        if (r.mode != StepMode::Standard) {
            const double armijo_rhs = -alpha * r.delta * r.grad_norm * r.grad_norm;
            if (!(f_next - r.f_val <= armijo_rhs + slack)) out.armijo_ok = false;
        }
        if (!(f_next <= r.f_val + slack)) out.descent_ok = false;
    }

    std::tie(out.first_decile_mean_step, out.last_decile_mean_step) = decile_means(records);

    // Partial sums S_n of delta_j * ||g_j||^2 converge on non-diverging
    // runs; report the share of the sum contributed by the last 10% of steps.
    double total = 0.0;
    for (const StepRecord& r : records) total += r.delta * r.grad_norm * r.grad_norm;
    if (total > 0.0) {
        const std::size_t cut = (records.size() * 9) / 10;
        double head = 0.0;
        for (std::size_t i = 0; i < cut; ++i) head += records[i].delta * records[i].grad_norm * records[i].grad_norm;
        out.partial_sum_tail_fraction = (total - head) / total;
    }

    if (obj.analysis() && !obj.analysis()->critical_points.empty() && !trace.final_x.empty()) {
        const Vector* best = nullptr;
        double best_dist = std::numeric_limits<double>::infinity();
        for (const Vector& c : obj.analysis()->critical_points) {
            const double d = distance(trace.final_x, c);
            if (d < best_dist) {
                best_dist = d;
                best = &c;
            }
        }
        out.nearest_known_critical = std::make_pair(*best, best_dist);
    }

    // Accepted-step lower bound from the local Lipschitz data. The bound's
    // derivation needs alpha <= 1/2, and it covers grid-searched steps
    // (Backtrack/Growth), not reused ones.
    if (obj.analysis() && obj.analysis()->has_lipschitz_data() && alpha <= 0.5) {
        bool ok = true;
        const auto& analysis = *obj.analysis();
        for (const StepRecord& r : records) {
            if (r.mode != StepMode::Backtrack && r.mode != StepMode::Growth) continue;
            const double L = analysis.lipschitz_L(r.x);
            const double radius = analysis.lipschitz_r(r.x);
            const double bound = std::min({cfg.params.beta / L,
                                           cfg.params.beta * radius / r.grad_norm,
                                           cfg.params.delta0});
            if (r.delta < bound - 1e-12) {
                ok = false;
                break;
            }
        }
        out.delta_lower_bound_ok = ok;
    }

    if (const auto* hybrid = std::get_if<HybridScheme>(&cfg.scheme)) {
        out.hybrid_window_ok = hybrid_window_property(records, static_cast<std::size_t>(hybrid->period));
    }

    return out;
}

std::vector<SchemeComparison> compare(const std::vector<std::pair<std::string, const Trace*>>& traces,
                                      const TargetPredicate& target) {
    if (traces.empty()) throw std::invalid_argument("compare: no traces");
    if (!target) throw std::invalid_argument("compare: target predicate must be callable");

    // All traces must come from the same start (and hence the same space).
    const Trace* first = traces.front().second;
    auto start_of = [](const Trace* t) -> const Vector& {
        return t->records.empty() ? t->final_x : t->records.front().x;
    };
    for (const auto& [label, t] : traces) {
        if (!t) throw std::invalid_argument("compare: null trace for scheme " + label);
        if (start_of(t) != start_of(first)) {
            throw std::invalid_argument("compare: traces do not share one objective/start (x0 mismatch)");
        }
    }

    std::vector<SchemeComparison> table;
    table.reserve(traces.size());
    for (const auto& [label, t] : traces) {
        SchemeComparison row;
        row.scheme = label;
        row.value_evals = t->total_value_evals;
        row.gradient_evals = t->total_gradient_evals;
        row.termination = t->termination;
        for (std::size_t i = 0; i <= t->records.size(); ++i) {
            const Vector& xi = (i < t->records.size()) ? t->records[i].x : t->final_x;
            if (target(xi)) {
                row.iters_to_target = i;
                break;
            }
        }
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace ubgd
