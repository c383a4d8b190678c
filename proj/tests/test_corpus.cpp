#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ubgd/corpus.hpp"

using namespace ubgd;

TEST_CASE("corpus contains the expected entries") {
    std::set<std::string> names;
    for (const CorpusEntry& e : corpus_list()) names.insert(e.name);
    for (const char* required : {"quadratic-1d", "quadratic-2d", "quadratic-10d", "quartic-1d",
                                 "rosenbrock", "saddle", "linear", "double-well", "cubic"}) {
        CAPTURE(required);
        CHECK(names.count(required) == 1);
    }
    CHECK(corpus_find("no-such-entry") == nullptr);
}

TEST_CASE("spot values") {
    CHECK(corpus_find("quadratic-1d")->make_objective().value({2.0}) == 2.0);
    CHECK(corpus_find("saddle")->make_objective().gradient({0.0, 0.0}) == Vector{0.0, 0.0});
    CHECK(corpus_find("double-well")->make_objective().value({1.0}) == 0.0);
    CHECK(corpus_find("linear")->make_objective().value({3.0}) == -3.0);
    CHECK(corpus_find("cubic")->make_objective().gradient({2.0}) == Vector{12.0});
    CHECK(corpus_find("quadratic-10d")->dim() == 10);
}

TEST_CASE("every declared critical point has a vanishing gradient") {
    for (const CorpusEntry& e : corpus_list()) {
        if (!e.objective.analysis()) continue;
        const Objective obj = e.make_objective();
        for (const Vector& c : e.objective.analysis()->critical_points) {
            CAPTURE(e.name);
            CHECK(norm(obj.gradient(c)) < 1e-12);
        }
    }
}

TEST_CASE("analytic gradients match central differences on the whole corpus") {
    for (const CorpusEntry& e : corpus_list()) {
        const auto report = gradient_check(e, 100, 1e-6);
        CAPTURE(e.name);
        CHECK(report.max_rel_error < 1e-5);
        CHECK(report.samples == 100);
    }
    // Tighter closed-form cases. The linear check uses an exactly
    // representable step so the only remaining error is forming x +/- h.
    CHECK(gradient_check(*corpus_find("quadratic-1d"), 100, 1e-6).max_rel_error < 1e-9);
    CHECK(gradient_check(*corpus_find("linear"), 50, 0.25).max_rel_error < 1e-12);
    CHECK(gradient_check(*corpus_find("rosenbrock"), 100, 1e-6).max_rel_error < 1e-5);
}

TEST_CASE("declared Lipschitz pairs survive a 1000-pair audit") {
    for (const CorpusEntry& e : corpus_list()) {
        const auto report = lipschitz_audit(e, 1000);
        CAPTURE(e.name);
        REQUIRE(report.has_data);
        CHECK(report.pairs == 1000);
        CHECK(report.violations == 0);
    }
    // The quadratic gradient is exactly 1-Lipschitz, the linear one constant.
    CHECK(lipschitz_audit(*corpus_find("quadratic-2d"), 500).worst_ratio <= 1.0 + 1e-12);
    CHECK(lipschitz_audit(*corpus_find("quartic-1d"), 500).worst_ratio <= 1.0);
    CHECK(lipschitz_audit(*corpus_find("linear"), 100).worst_ratio == 0.0);
}

TEST_CASE("box sampling is deterministic per seed and stays inside the box") {
    const CorpusEntry* rosen = corpus_find("rosenbrock");
    const Vector a = sample_in_box(*rosen, 7);
    const Vector b = sample_in_box(*rosen, 7);
    const Vector c = sample_in_box(*rosen, 8);
    CHECK(a == b);
    CHECK(a != c);
    for (const Vector& x : sample_in_box(*rosen, 21, 200)) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(x[i] >= rosen->test_box[i].first);
            CHECK(x[i] <= rosen->test_box[i].second);
        }
    }
}

TEST_CASE("gradient_check validates its step size") {
    CHECK_THROWS_AS(gradient_check(*corpus_find("linear"), 10, 0.0), std::invalid_argument);
}

TEST_CASE("fresh objectives have zeroed counters") {
    const CorpusEntry* e = corpus_find("quadratic-1d");
    Objective a = e->make_objective();
    a.value({1.0});
    Objective b = e->make_objective();
    CHECK(b.evals().value_evals == 0);
    CHECK(b.evals().gradient_evals == 0);
}
