#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ubgd/objective.hpp"
#include "ubgd/vector.hpp"

namespace ubgd {

enum class ScenarioTag { FlatGradient, Saddle, UnboundedBelow, CountableCritical, MultiMin };

const char* to_string(ScenarioTag tag);

// A named test objective with analytic gradient, known critical points and,
// where certified, local Lipschitz data for the gradient. test_box gives the
// per-coordinate sampling interval used by checks and experiment starts.
struct CorpusEntry {
    std::string name;
    Objective objective;
    std::vector<std::pair<double, double>> test_box;
    std::vector<ScenarioTag> tags;

    std::size_t dim() const { return objective.dim(); }

    // Fresh instance with zeroed eval counters.
    Objective make_objective() const {
        Objective copy = objective;
        copy.reset_evals();
        return copy;
    }
};

const std::vector<CorpusEntry>& corpus_list();

// nullptr when no entry has this name.
const CorpusEntry* corpus_find(const std::string& name);

// Deterministic uniform sample in the entry's test box; distinct seeds give
// distinct streams.
Vector sample_in_box(const CorpusEntry& entry, std::uint64_t seed);
std::vector<Vector> sample_in_box(const CorpusEntry& entry, std::uint64_t seed, std::size_t count);

struct GradientCheckReport {
    std::string entry;
    std::size_t samples = 0;
    double fd_step = 0.0;
    double max_rel_error = 0.0;
};

// Central finite differences per coordinate against the analytic gradient,
// at pseudo-random points in the test box. Error is ||fd - g|| / max(1, ||g||).
GradientCheckReport gradient_check(const CorpusEntry& entry, std::size_t n_samples = 100,
                                   double fd_step = 1e-6, std::uint64_t seed = 42);

struct LipschitzAuditReport {
    std::string entry;
    bool has_data = false;      // false: entry declares no (r, L); audit skipped
    std::size_t pairs = 0;
    std::size_t violations = 0; // pairs with ||g(y)-g(x)|| > L(x)||y-x|| + 1e-12
    double worst_ratio = 0.0;   // max of ||g(y)-g(x)|| / (L(x) ||y-x||)
};

// Samples x in the test box and y in B(x, r(x)) and checks the declared
// Lipschitz bound on the gradient.
LipschitzAuditReport lipschitz_audit(const CorpusEntry& entry, std::size_t n_pairs = 1000,
                                     std::uint64_t seed = 43);

}  // namespace ubgd
