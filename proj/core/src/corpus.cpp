#include "ubgd/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ubgd {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<std::pair<double, double>> box(double lo, double hi, std::size_t dim) {
    return std::vector<std::pair<double, double>>(dim, {lo, hi});
}

Vector constant_vector(double v, std::size_t dim) { return Vector(dim, v); }

// r == infinity is encoded as this finite surrogate; audits only sample
// within the test box, where it never binds.
constexpr double kLargeRadius = 1e6;

CorpusEntry make_quadratic(std::size_t dim) {
    KnownAnalysis analysis;
    analysis.critical_points = {constant_vector(0.0, dim)};
    analysis.lipschitz_r = [](const Vector&) { return kLargeRadius; };
    analysis.lipschitz_L = [](const Vector&) { return 1.0; };
    analysis.global_min = 0.0;
    Objective obj(
        dim,
        [](const Vector& x) { return 0.5 * squared_norm(x); },
        [](const Vector& x) { return x; }, analysis);
    return CorpusEntry{"quadratic-" + std::to_string(dim) + "d", std::move(obj), box(-3.0, 3.0, dim),
                       {ScenarioTag::CountableCritical}};
}

CorpusEntry make_quartic(std::size_t dim) {
    KnownAnalysis analysis;
    analysis.critical_points = {constant_vector(0.0, dim)};
    analysis.lipschitz_r = [](const Vector&) { return 1.0; };
    // Hessian is diag(3 x_i^2); on B(x, 1) each |y_i| <= |x_i| + 1.
    analysis.lipschitz_L = [](const Vector& x) {
        double m = 0.0;
        for (double c : x) m = std::max(m, std::abs(c));
        return 3.0 * (m + 1.0) * (m + 1.0);
    };
    analysis.global_min = 0.0;
    Objective obj(
        dim,
        [](const Vector& x) {
            double s = 0.0;
            for (double c : x) s += c * c * c * c;
            return 0.25 * s;
        },
        [](const Vector& x) {
            Vector g(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] * x[i] * x[i];
            return g;
        },
        analysis);
    return CorpusEntry{"quartic-" + std::to_string(dim) + "d", std::move(obj), box(-2.0, 2.0, dim),
                       {ScenarioTag::FlatGradient, ScenarioTag::CountableCritical}};
}

CorpusEntry make_rosenbrock() {
    KnownAnalysis analysis;
    analysis.critical_points = {Vector{1.0, 1.0}};
    analysis.lipschitz_r = [](const Vector&) { return 1.0; };
    // Row-sum bound on the Hessian over B(x, 1).
    analysis.lipschitz_L = [](const Vector& x) {
        const double a = std::abs(x[0]) + 1.0;
        const double b = std::abs(x[1]) + 1.0;
        return std::max(2.0 + 1200.0 * a * a + 400.0 * b + 400.0 * a, 400.0 * a + 200.0);
    };
    analysis.global_min = 0.0;
    Objective obj(
        2,
        [](const Vector& x) {
            const double t1 = 1.0 - x[0];
            const double t2 = x[1] - x[0] * x[0];
            return t1 * t1 + 100.0 * t2 * t2;
        },
        [](const Vector& x) {
            const double t2 = x[1] - x[0] * x[0];
            return Vector{-2.0 * (1.0 - x[0]) - 400.0 * x[0] * t2, 200.0 * t2};
        },
        analysis);
    return CorpusEntry{"rosenbrock", std::move(obj), box(-2.0, 2.0, 2), {ScenarioTag::CountableCritical}};
}

CorpusEntry make_saddle() {
    KnownAnalysis analysis;
    analysis.critical_points = {Vector{0.0, 0.0}};
    analysis.lipschitz_r = [](const Vector&) { return kLargeRadius; };
    analysis.lipschitz_L = [](const Vector&) { return 2.0; };
    analysis.unbounded_below = true;
    Objective obj(
        2,
        [](const Vector& x) { return x[0] * x[0] - x[1] * x[1]; },
        [](const Vector& x) {
            return Vector{2.0 * x[0], -2.0 * x[1]};
        },
        analysis);
    return CorpusEntry{"saddle", std::move(obj), box(-2.0, 2.0, 2),
                       {ScenarioTag::Saddle, ScenarioTag::UnboundedBelow, ScenarioTag::CountableCritical}};
}

CorpusEntry make_linear() {
    KnownAnalysis analysis;
    analysis.lipschitz_r = [](const Vector&) { return kLargeRadius; };
    analysis.lipschitz_L = [](const Vector&) { return 1.0; };  // any positive constant bounds a 0-Lipschitz gradient
    analysis.unbounded_below = true;
    Objective obj(
        1,
        [](const Vector& x) { return -x[0]; },
        [](const Vector&) {
            return Vector{-1.0};
        },
        analysis);
    return CorpusEntry{"linear", std::move(obj), box(-10.0, 10.0, 1), {ScenarioTag::UnboundedBelow}};
}

CorpusEntry make_double_well() {
    KnownAnalysis analysis;
    analysis.critical_points = {Vector{-1.0}, Vector{0.0}, Vector{1.0}};
    analysis.lipschitz_r = [](const Vector&) { return 1.0; };
    // f'' = 12x^2 - 4; bounded by 12(|x|+1)^2 + 4 on B(x, 1).
    analysis.lipschitz_L = [](const Vector& x) {
        const double a = std::abs(x[0]) + 1.0;
        return 12.0 * a * a + 4.0;
    };
    analysis.global_min = 0.0;
    Objective obj(
        1,
        [](const Vector& x) {
            const double t = x[0] * x[0] - 1.0;
            return t * t;
        },
        [](const Vector& x) {
            return Vector{4.0 * x[0] * (x[0] * x[0] - 1.0)};
        },
        analysis);
    return CorpusEntry{"double-well", std::move(obj), box(-2.0, 2.0, 1),
                       {ScenarioTag::MultiMin, ScenarioTag::CountableCritical}};
}

CorpusEntry make_cubic() {
    KnownAnalysis analysis;
    analysis.critical_points = {Vector{0.0}};
    analysis.lipschitz_r = [](const Vector&) { return 1.0; };
    analysis.lipschitz_L = [](const Vector& x) { return 6.0 * (std::abs(x[0]) + 1.0); };
    analysis.unbounded_below = true;
    Objective obj(
        1,
        [](const Vector& x) { return x[0] * x[0] * x[0]; },
        [](const Vector& x) {
            return Vector{3.0 * x[0] * x[0]};
        },
        analysis);
    return CorpusEntry{"cubic", std::move(obj), box(-2.0, 2.0, 1),
                       {ScenarioTag::FlatGradient, ScenarioTag::UnboundedBelow, ScenarioTag::CountableCritical}};
}

}  // namespace

const char* to_string(ScenarioTag tag) {
    switch (tag) {
        case ScenarioTag::FlatGradient: return "flat-gradient";
        case ScenarioTag::Saddle: return "saddle";
        case ScenarioTag::UnboundedBelow: return "unbounded-below";
        case ScenarioTag::CountableCritical: return "countable-critical";
        case ScenarioTag::MultiMin: return "multi-min";
    }
    return "unknown";
}

const std::vector<CorpusEntry>& corpus_list() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> v;
        v.push_back(make_quadratic(1));
        v.push_back(make_quadratic(2));
        v.push_back(make_quadratic(10));
        v.push_back(make_quartic(1));
        v.push_back(make_quartic(2));
        v.push_back(make_rosenbrock());
        v.push_back(make_saddle());
        v.push_back(make_linear());
        v.push_back(make_double_well());
        v.push_back(make_cubic());
        return v;
    }();
    return entries;
}

const CorpusEntry* corpus_find(const std::string& name) {
    for (const CorpusEntry& e : corpus_list()) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

Vector sample_in_box(const CorpusEntry& entry, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ fnv1a(entry.name));
    Vector x(entry.dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::uniform_real_distribution<double> u(entry.test_box[i].first, entry.test_box[i].second);
        x[i] = u(rng);
    }
    return x;
}

std::vector<Vector> sample_in_box(const CorpusEntry& entry, std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed ^ fnv1a(entry.name));
    std::vector<Vector> points(count, Vector(entry.dim()));
    for (auto& x : points) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::uniform_real_distribution<double> u(entry.test_box[i].first, entry.test_box[i].second);
            x[i] = u(rng);
        }
    }
    return points;
}

GradientCheckReport gradient_check(const CorpusEntry& entry, std::size_t n_samples, double fd_step,
                                   std::uint64_t seed) {
    if (!(fd_step > 0.0)) throw std::invalid_argument("gradient_check: fd_step must be > 0");
    const Objective obj = entry.make_objective();
    GradientCheckReport report{entry.name, n_samples, fd_step, 0.0};
    for (const Vector& x : sample_in_box(entry, seed, n_samples)) {
        const Vector g = obj.gradient(x);
        Vector fd(x.size());
        Vector probe = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            probe[i] = x[i] + fd_step;
            const double fp = obj.value(probe);
            probe[i] = x[i] - fd_step;
            const double fm = obj.value(probe);
            probe[i] = x[i];
            fd[i] = (fp - fm) / (2.0 * fd_step);
        }
        const double err = distance(fd, g) / std::max(1.0, norm(g));
        report.max_rel_error = std::max(report.max_rel_error, err);
    }
    return report;
}

LipschitzAuditReport lipschitz_audit(const CorpusEntry& entry, std::size_t n_pairs, std::uint64_t seed) {
    LipschitzAuditReport report{entry.name, false, 0, 0, 0.0};
    const auto& analysis = entry.objective.analysis();
    if (!analysis || !analysis->has_lipschitz_data()) return report;
    report.has_data = true;

    const Objective obj = entry.make_objective();
    std::mt19937_64 rng(seed ^ fnv1a(entry.name));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::size_t p = 0; p < n_pairs; ++p) {
        Vector x(entry.dim());
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::uniform_real_distribution<double> u(entry.test_box[i].first, entry.test_box[i].second);
            x[i] = u(rng);
        }
        const double r = analysis->lipschitz_r(x);
        const double L = analysis->lipschitz_L(x);
        if (!(r > 0.0) || !(L > 0.0)) {
            throw std::logic_error("lipschitz_audit: declared r and L must be strictly positive");
        }

        // y uniform in the ball B(x, r).
        Vector dir(entry.dim());
        double dn = 0.0;
        do {
            for (double& d : dir) d = gauss(rng);
            dn = norm(dir);
        } while (dn == 0.0);
        const double radius = r * std::pow(unit(rng), 1.0 / static_cast<double>(entry.dim()));
        Vector y(entry.dim());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + dir[i] * (radius / dn);

        const double dx = distance(y, x);
        if (dx == 0.0) continue;
        const double dg = distance(obj.gradient(y), obj.gradient(x));
        ++report.pairs;
        if (dg > L * dx + 1e-12) ++report.violations;
        report.worst_ratio = std::max(report.worst_ratio, dg / (L * dx));
    }
    return report;
}

}  // namespace ubgd
