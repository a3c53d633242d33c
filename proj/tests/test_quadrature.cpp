#include "doctest.h"
#include "oracles.hpp"

#include "blaine/errors.hpp"
#include "blaine/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace blaine;
using std::numbers::pi;

TEST_SUITE("quadrature") {

TEST_CASE("exp over the unit segment") {
    const auto r = integrate_along(PathSpec::segment(0.0, 1.0), [](cplx z) { return std::exp(z); }, 1e-13);
    CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-12);
    CHECK(r.err_estimate >= 0.0);
    CHECK(r.evaluations > 0);
}

TEST_CASE("closed square around the origin picks up the residue") {
    const auto path = PathSpec::polyline({{1, -1}, {1, 1}, {-1, 1}, {-1, -1}, {1, -1}});
    const auto r = integrate_along(path, [](cplx z) { return 1.0 / z; }, 1e-12);
    CHECK(std::abs(r.value - cplx(0, 2 * pi)) < 1e-10);
}

TEST_CASE("truncated ray against a fine trapezoid") {
    auto f = [](cplx t) { return std::exp(-t * t) / t; };
    const auto r = integrate_along(PathSpec::ray(1.0, 0.0, 50.0), f, 1e-12);
    const double ref = oracle::trapezoid([](double t) { return std::exp(-t * t) / t; }, 1.0, 8.0, 400000);
    CHECK(std::abs(r.value.real() - ref) < 1e-10);
    CHECK(std::abs(r.value.imag()) < 1e-14);

    SUBCASE("doubling the truncation radius changes nothing") {
        const auto r2 = integrate_along(PathSpec::ray(1.0, 0.0, 100.0), f, 1e-12);
        CHECK(std::abs(r2.value - r.value) < 1e-10);
        CHECK(std::abs(r2.value - r.value) <= r.err_estimate + r2.err_estimate + 1e-15);
    }
}

TEST_CASE("polyline equals the sum of its segments") {
    auto f = [](cplx z) { return std::sin(z) * std::exp(-z / 3.0); };
    const std::vector<cplx> pts{{0, 0}, {2, 1}, {3, -1}, {5, 0.5}};
    const auto whole = integrate_along(PathSpec::polyline(pts), f, 1e-11);
    cplx sum = 0.0;
    double err = whole.err_estimate;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const auto s = integrate_segment(f, pts[k], pts[k + 1], 1e-11);
        sum += s.value;
        err += s.err_estimate;
    }
    CHECK(std::abs(whole.value - sum) <= err + 1e-14);
    CHECK(whole.extent == doctest::Approx(PathSpec::polyline(pts).length()));
}

TEST_CASE("tighter tolerance does not move away from the reference") {
    auto f = [](cplx z) { return std::exp(-z * z) * std::cos(3.0 * z); };
    const cplx a{-1.0, 0.2}, b{2.0, -0.3};
    const cplx ref = oracle::simpson(f, a, b, 200000);
    double prev = 1.0;
    for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
        const auto r = integrate_segment(f, a, b, tol);
        const double d = std::abs(r.value - ref);
        CHECK(d <= std::max(prev, 1e-13));
        CHECK(d <= tol);
        prev = d;
    }
}

TEST_CASE("conjugate path gives conjugate value for a real integrand") {
    auto f = [](cplx z) { return std::exp(z * z / 4.0) / (1.0 + z * z / 10.0); };
    for (int k = 0; k < 10; ++k) {
        const cplx a{oracle::uniform(-2, 2), oracle::uniform(-2, 2)};
        const cplx b{oracle::uniform(-2, 2), oracle::uniform(-2, 2)};
        const auto r = integrate_segment(f, a, b, 1e-11);
        const auto rc = integrate_segment(f, std::conj(a), std::conj(b), 1e-11);
        CHECK(std::abs(rc.value - std::conj(r.value)) < 1e-10);
    }
}

TEST_CASE("path validation and failures") {
    CHECK_THROWS_AS(PathSpec::polyline({1.0}).validate(), InvalidParameters);
    CHECK_THROWS_AS(PathSpec::polyline({1.0, 1.0}).validate(), InvalidParameters);
    CHECK_THROWS_AS(PathSpec::ray(0.0, 0.0, -1.0).validate(), InvalidParameters);
    CHECK_THROWS_AS(integrate_along(PathSpec::segment(-1.0, 1.0), [](cplx z) { return 1.0 / z; }, 1e-10),
                    PoleOnPath);
    CHECK_THROWS_AS(integrate_segment([](cplx z) { return std::sin(1e4 * z); }, 0.0, 1.0,
                                      1e-12, 200),
                    NoConvergence);
}

}
