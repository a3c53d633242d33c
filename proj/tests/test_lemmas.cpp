#include "doctest.h"
#include "oracles.hpp"

#include "blaine/errors.hpp"
#include "blaine/lemmas.hpp"

#include <cmath>
#include <numbers>

using namespace blaine;
using std::numbers::pi;

namespace {

char violated_clause(const C2Samples& s) {
    try {
        check_c2_hypotheses(s);
    } catch (const HypothesisViolated& e) {
        return e.clause();
    }
    return '-';
}

}  // namespace

TEST_SUITE("lemmas") {

TEST_CASE("lower bound holds for the standard shapes") {
    CHECK(c2_lemma_check(sample_c2(c2_shape("sine", 0.0, pi, 1.0), 0.0, pi)));
    CHECK(c2_lemma_check(sample_c2(c2_shape("parabola", 0.0, 1.0, 4.0), 0.0, 1.0)));
    CHECK(c2_lemma_check(sample_c2(c2_shape("sine", -2.0, 3.0, 5.0 / pi), -2.0, 3.0)));
}

TEST_CASE("randomized admissible shapes satisfy the bound") {
    for (int k = 0; k < 20; ++k) {
        const double a = oracle::uniform(-3, 3);
        const double len = oracle::uniform(0.5, 6.0);
        // keeps |f'(a)| = amplitude (1 + 3h) pi / len above 1 and the harmonic small
        const double amp = len / pi * oracle::uniform(1.05, 3.0);
        const double h = oracle::uniform(-0.01, 0.01);
        const auto s = sample_c2(c2_shape("harmonic", a, a + len, amp, h), a, a + len);
        CHECK(violated_clause(s) == '-');
        CHECK(c2_lemma_check(s));
    }
}

TEST_CASE("each hypothesis is enforced") {
    CHECK(violated_clause(sample_c2(c2_shape("double-bump", 0.0, pi, 1.0), 0.0, pi)) == 'c');
    CHECK_THROWS_AS(c2_lemma_check(sample_c2(c2_shape("double-bump", 0.0, pi, 1.0), 0.0, pi)), HypothesisViolated);

    auto shifted = [](double x) -> std::array<double, 3> { return {std::sin(x) + 0.1, std::cos(x), -std::sin(x)}; };
    CHECK(violated_clause(sample_c2(shifted, 0.0, pi)) == 'a');

    CHECK(violated_clause(sample_c2(c2_shape("sine", 0.0, pi, 0.5), 0.0, pi)) == 'b');

    // a high-frequency ripple breaks the derivative hypotheses
    auto wiggly = [](double x) -> std::array<double, 3> {
        const double e = 0.02;
        return {std::sin(x) + e * std::sin(8 * x), std::cos(x) + 8 * e * std::cos(8 * x),
                -std::sin(x) - 64 * e * std::sin(8 * x)};
    };
    const char c = violated_clause(sample_c2(wiggly, 0.0, pi));
    CHECK((c == 'b' || c == 'd' || c == 'e'));

    CHECK_THROWS_AS(sample_c2(c2_shape("sine", 0.0, 1.0, 1.0), 1.0, 0.0), InvalidParameters);
    CHECK_THROWS_AS(c2_shape("cosine", 0.0, 1.0, 1.0), InvalidParameters);
}

TEST_CASE("distortion bound") {
    const auto id = koebe_map_derivative("id");
    CHECK(koebe_bound_check(id, 1.0, cplx(3.0, 4.0)));

    const auto r = koebe_report(koebe_map_derivative("square"), 1.0, 2.0);
    CHECK(r.lhs == doctest::Approx(4.0));
    CHECK(r.rhs == doctest::Approx(0.125));
    CHECK(r.holds);

    const auto lg = koebe_map_derivative("log1p");
    for (int k = 0; k < 100; ++k) {
        const cplx z0{oracle::uniform(0.05, 5.0), oracle::uniform(-5.0, 5.0)};
        const cplx z{z0.real() + oracle::uniform(0.0, 20.0), oracle::uniform(-30.0, 30.0)};
        const auto rep = koebe_report(lg, z0, z);
        CHECK(rep.holds);
        // lower bound through the oracle: |1/(1+z)| from scratch
        CHECK(rep.lhs == doctest::Approx(1.0 / std::abs(1.0 + z)));
    }
}

TEST_CASE("distortion bound domain") {
    const auto id = koebe_map_derivative("id");
    CHECK_THROWS_AS(koebe_bound_check(id, cplx(0.0, 1.0), 1.0), DomainError);
    CHECK_THROWS_AS(koebe_bound_check(id, cplx(-1.0, 0.0), 1.0), DomainError);
    CHECK_THROWS_AS(koebe_bound_check(id, cplx(2.0, 0.0), cplx(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(koebe_map_derivative("sqrt"), InvalidParameters);
}

}
