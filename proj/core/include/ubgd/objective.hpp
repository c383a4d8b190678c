#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ubgd/vector.hpp"

namespace ubgd {

struct EvalCounter {
    std::uint64_t value_evals = 0;
    std::uint64_t gradient_evals = 0;
};

// Optional analytic side-information about an objective: known critical
// points, a certified local Lipschitz pair (r, L) for the gradient on
// B(x, r(x)), the global minimum value, and whether f is unbounded below.
// When one of lipschitz_r / lipschitz_L is set, both must be set and both
// must be strictly positive at every queried point.
struct KnownAnalysis {
    std::vector<Vector> critical_points;
    std::function<double(const Vector&)> lipschitz_r;
    std::function<double(const Vector&)> lipschitz_L;
    std::optional<double> global_min;
    bool unbounded_below = false;

    bool has_lipschitz_data() const {
        return static_cast<bool>(lipschitz_r) && static_cast<bool>(lipschitz_L);
    }
};

// A cost function f: R^k -> R with a hand-coded gradient. Both callables
// must be deterministic. Every call is counted; the counter is the only
// mutable state, so one Objective instance belongs to one run at a time.
class Objective {
  public:
    using ValueFn = std::function<double(const Vector&)>;
    using GradientFn = std::function<Vector(const Vector&)>;

    Objective(std::size_t dim, ValueFn value, GradientFn gradient,
              std::optional<KnownAnalysis> analysis = std::nullopt)
        : dim_(dim),
          value_(std::move(value)),
          gradient_(std::move(gradient)),
          analysis_(std::move(analysis)) {
        if (dim_ == 0) throw std::invalid_argument("Objective: dim must be >= 1");
        if (!value_ || !gradient_) throw std::invalid_argument("Objective: value and gradient must be callable");
    }

    std::size_t dim() const { return dim_; }

    double value(const Vector& x) const {
        check_dim(x);
        ++evals_.value_evals;
        return value_(x);
    }

    Vector gradient(const Vector& x) const {
        check_dim(x);
        ++evals_.gradient_evals;
        Vector g = gradient_(x);
        if (g.size() != dim_) throw std::logic_error("Objective: gradient dimension mismatch");
        return g;
    }

    const EvalCounter& evals() const { return evals_; }
    void reset_evals() { evals_ = EvalCounter{}; }

    const std::optional<KnownAnalysis>& analysis() const { return analysis_; }

  private:
    void check_dim(const Vector& x) const {
        if (x.size() != dim_) {
            throw std::invalid_argument("Objective: point has dimension " + std::to_string(x.size()) +
                                        ", expected " + std::to_string(dim_));
        }
    }

    std::size_t dim_;
    ValueFn value_;
    GradientFn gradient_;
    std::optional<KnownAnalysis> analysis_;
    mutable EvalCounter evals_;
};

// One value-eval and one gradient-eval.
inline std::pair<double, Vector> evaluate(const Objective& obj, const Vector& x) {
    return {obj.value(x), obj.gradient(x)};
}

}  // namespace ubgd
