#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "ubgd/corpus.hpp"
#include "ubgd/objective.hpp"
#include "ubgd/params.hpp"
#include "ubgd/vector.hpp"

using namespace ubgd;

TEST_CASE("norm: pythagorean, zero, sqrt2") {
    CHECK(norm(Vector{3.0, 4.0}) == 5.0);
    CHECK(norm(Vector{0.0, 0.0, 0.0}) == 0.0);
    CHECK(norm(Vector{1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(norm(Vector{1e-8}) > 0.0);
}

TEST_CASE("evaluate returns value and gradient with exact counting") {
    Objective quad(
        2, [](const Vector& x) { return 0.5 * squared_norm(x); },
        [](const Vector& x) { return x; });

    auto [f, g] = evaluate(quad, Vector{2.0, 0.0});
    CHECK(f == 2.0);
    CHECK(g == Vector{2.0, 0.0});
    CHECK(quad.evals().value_evals == 1);
    CHECK(quad.evals().gradient_evals == 1);

    auto quartic = ubgd_test::quartic_1d();
    auto [fq, gq] = evaluate(quartic, Vector{1.0});
    CHECK(fq == 0.25);
    CHECK(gq == Vector{1.0});

    const CorpusEntry* rosen = corpus_find("rosenbrock");
    REQUIRE(rosen != nullptr);
    Objective obj = rosen->make_objective();
    auto [fr, gr] = evaluate(obj, Vector{1.0, 1.0});
    CHECK(fr == 0.0);
    CHECK(gr == Vector{0.0, 0.0});
    CHECK(obj.evals().value_evals == 1);
    CHECK(obj.evals().gradient_evals == 1);
}

TEST_CASE("evaluate rejects dimension mismatch") {
    auto quad = ubgd_test::quadratic_1d();
    CHECK_THROWS_AS(quad.value(Vector{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(quad.gradient(Vector{}), std::invalid_argument);
}

TEST_CASE("objectives are deterministic") {
    const CorpusEntry* entry = corpus_find("rosenbrock");
    REQUIRE(entry != nullptr);
    Objective obj = entry->make_objective();
    const Vector x{-1.2, 1.0};
    CHECK(obj.value(x) == obj.value(x));
    CHECK(obj.gradient(x) == obj.gradient(x));
}

TEST_CASE("counters accumulate one per call") {
    auto quad = ubgd_test::quadratic_1d();
    for (int i = 0; i < 7; ++i) quad.value(Vector{1.0});
    for (int i = 0; i < 3; ++i) quad.gradient(Vector{1.0});
    CHECK(quad.evals().value_evals == 7);
    CHECK(quad.evals().gradient_evals == 3);
    quad.reset_evals();
    CHECK(quad.evals().value_evals == 0);
    CHECK(quad.evals().gradient_evals == 0);
}

TEST_CASE("params validation") {
    LineSearchParams p;
    CHECK_NOTHROW(validate(p));
    p.alpha = 1.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = LineSearchParams{};
    p.beta = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = LineSearchParams{};
    p.delta0 = -1.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("delta_for_exponent: repeated multiplication, both directions") {
    LineSearchParams p;
    p.beta = 0.7;
    p.delta0 = 1.3;
    CHECK(delta_for_exponent(0, p) == 1.3);
    CHECK(delta_for_exponent(1, p) == 1.3 * 0.7);
    CHECK(delta_for_exponent(3, p) == ((1.3 * 0.7) * 0.7) * 0.7);
    CHECK(delta_for_exponent(-2, p) == (1.3 / 0.7) / 0.7);
    // Equal exponents give bit-identical values across calls.
    CHECK(delta_for_exponent(17, p) == delta_for_exponent(17, p));
}
