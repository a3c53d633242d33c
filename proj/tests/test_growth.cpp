#include "doctest.h"
#include "oracles.hpp"

#include "blaine/errors.hpp"
#include "blaine/families.hpp"
#include "blaine/growth.hpp"
#include "blaine/ode.hpp"

#include <cmath>
#include <numbers>

using namespace blaine;
using std::numbers::pi;

namespace {
const cplx I{0.0, 1.0};

ValueAndSlope sincos_real(double x) { return {std::sin(x) * std::cos(x), std::cos(2.0 * x)}; }
cplx sin_cos(cplx z) { return std::sin(z) * std::cos(z); }
}  // namespace

TEST_SUITE("growth") {

TEST_CASE("real zeros of sin cos") {
    const auto zl = find_real_zeros(sincos_real, 0.1, 10.0);
    REQUIRE(zl.zeros.size() == 6);
    for (std::size_t k = 0; k < zl.zeros.size(); ++k) {
        CHECK(std::abs(zl.zeros[k] - (k + 1) * pi / 2) < 1e-12);
        CHECK(zl.residuals[k] < 1e-9);
        CHECK(zl.residuals[k] >= 0.0);
    }
}

TEST_CASE("real zeros: none, and a quadratic") {
    CHECK(find_real_zeros([](double) { return ValueAndSlope{0.5, 0.0}; }, -5.0, 5.0).zeros.empty());
    const auto zl = find_real_zeros([](double x) { return ValueAndSlope{x * (1 - x), 1 - 2 * x}; }, -1.0, 2.0);
    REQUIRE(zl.zeros.size() == 2);
    CHECK(std::abs(zl.zeros[0]) < 1e-14);
    CHECK(std::abs(zl.zeros[1] - 1.0) < 1e-14);
    CHECK(zl.slopes[0] == doctest::Approx(1.0));
    CHECK(zl.slopes[1] == doctest::Approx(-1.0));
}

TEST_CASE("clustered zeros are reported") {
    auto f = [](double x) { return ValueAndSlope{(x - 1.0) * (x - 1.0002), 2.0 * x - 2.0002}; };
    CHECK_THROWS_AS(find_real_zeros(f, 0.0, 2.0, 1e-3), ClusteringDetected);
    CHECK(find_real_zeros(f, 0.0, 2.0, 1e-4).zeros.size() == 2);
}

TEST_CASE("zeros stay strictly increasing and separated on random trig sums") {
    for (int trial = 0; trial < 5; ++trial) {
        const double a = oracle::uniform(0.5, 2.0), b = oracle::uniform(2.5, 4.0);
        auto f = [=](double x) { return ValueAndSlope{std::sin(a * x) + 0.3 * std::sin(b * x), a * std::cos(a * x) + 0.3 * b * std::cos(b * x)}; };
        const auto zl = find_real_zeros(f, 0.05, 20.0);
        for (std::size_t k = 1; k < zl.zeros.size(); ++k) CHECK(zl.zeros[k] - zl.zeros[k - 1] >= zl.sep_floor);
        for (double z : zl.zeros) CHECK(std::abs(f(z).value) < 1e-10);
    }
}

TEST_CASE("argument principle") {
    CHECK(count_zeros_argument_principle([](cplx z) { return eval_Gm(2, z); }, cplx(-1, -1), cplx(1, 1)) == 1);
    CHECK(count_zeros_argument_principle([](cplx z) { return eval_Fm(2, z); }, cplx(-1, -1), cplx(1, 1)) == 0);
    CHECK(count_zeros_argument_principle([](cplx z) { return std::sin(2.0 * z) / 2.0; }, cplx(0.1, -1), cplx(7, 1)) == 4);
    CHECK_THROWS_AS(count_zeros_argument_principle([](cplx z) { return z - 1.0; }, cplx(-1, -1), cplx(1, 1)),
                    BoundaryZero);
    CHECK_THROWS_AS(count_zeros_argument_principle([](cplx z) { return z; }, 0.0, 0.0), InvalidParameters);
}

TEST_CASE("all zeros are real for the sine family and the elementary family") {
    const auto zl = find_real_zeros(sincos_real, -5.0, 5.0);
    CHECK(count_zeros_argument_principle(sin_cos, cplx(-5, -2), cplx(5, 2)) == int(zl.zeros.size()));
    const auto fam = elementary_family({0.0, 1.0});
    auto E = [&](cplx z) { return fam.E(z); };
    auto Ereal = [&](double x) { return ValueAndSlope{fam.E(x).real(), -2.0 * fam.E(x).real()}; };
    CHECK(count_zeros_argument_principle(E, cplx(-2, -2), cplx(2, 2)) == 0);
    CHECK(find_real_zeros(Ereal, -2.0, 2.0).zeros.empty());
}

TEST_CASE("order of growth") {
    const auto ladder = geometric_ladder(2.0, 30.0, 12);
    // |exp(-2z^2)| overflows beyond r ~ 18, so this one uses a shorter ladder
    auto exp2 = log_modulus_of([](cplx z) { return std::exp(-2.0 * z * z); });
    CHECK(std::abs(estimate_order(exp2, geometric_ladder(2.0, 15.0, 12)).rho_hat - 2.0) < 0.05);
    CHECK_THROWS_AS(estimate_order(exp2, ladder), Overflow);
    CHECK(std::abs(estimate_order(log_modulus_of(sin_cos), ladder).rho_hat - 1.0) < 0.05);
    const auto poly = estimate_order(log_modulus_of([](cplx z) { return 1.0 + z * z * z; }), ladder);
    CHECK(std::abs(poly.rho_hat) < 0.05);
    CHECK(poly.rho_hat >= 0.0);
    CHECK(poly.residual >= 0.0);
    for (int n = 1; n <= 3; ++n) {
        std::vector<double> p(n + 1, 0.0);
        p[n] = 1.0;
        p[0] = 0.3;
        const auto fam = elementary_family(p);
        auto logE = [fam](cplx z) { return fam.log_E(z).real(); };
        CHECK(std::abs(estimate_order(logE, ladder).rho_hat - n) < 0.05);
    }
    CHECK_THROWS_AS(estimate_order(exp2, geometric_ladder(1.0, 10.0, 5)), InvalidParameters);
    CHECK_THROWS_AS(estimate_order(log_modulus_of([](cplx z) { return std::exp(std::exp(z)); }), geometric_ladder(100, 1000, 8)), Overflow);
}

TEST_CASE("maximum modulus against the closed form") {
    auto f = log_modulus_of([](cplx z) { return std::exp(-2.0 * z * z); });
    for (double r : {1.0, 3.7, 10.0}) CHECK(std::abs(log_max_modulus(f, r) - 2.0 * r * r) < 1e-9 * r * r);
    // maximum off the sample grid is found by refinement
    auto g = log_modulus_of([](cplx z) { return std::exp(z * std::exp(cplx(0, -0.01234))); });
    CHECK(std::abs(log_max_modulus(g, 20.0) - 20.0) < 1e-8);
}

TEST_CASE("exponent of convergence") {
    std::vector<double> halves, squares;
    for (int k = 1; k <= 200; ++k) {
        halves.push_back(k * pi / 2);
        squares.push_back(double(k) * k);
    }
    CHECK(std::abs(estimate_lambda(halves).rho_hat - 1.0) < 0.05);
    CHECK(std::abs(estimate_lambda(squares).rho_hat - 0.5) < 0.05);
    CHECK(estimate_lambda(std::vector<double>{}).rho_hat == 0.0);
    CHECK_THROWS_AS(estimate_lambda(std::vector<double>{1.0, 2.0, 3.0}), TooFewZeros);

    SUBCASE("from located zeros on a symmetric interval") {
        const auto zl = find_real_zeros(sincos_real, -100.0, 100.0);
        CHECK(std::abs(estimate_lambda(zl).rho_hat - 1.0) < 0.05);
    }
}

TEST_CASE("indicator of sin cos") {
    const auto s = estimate_indicator(log_modulus_of(sin_cos), 1.0, uniform_theta_grid(73), geometric_ladder(10, 50, 6),
                                      IndicatorTemplate::sin_rho_abs_theta);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.theta.size(); ++i) worst = std::max(worst, std::abs(s.h[i] - 2.0 * std::abs(std::sin(s.theta[i]))));
    CHECK(worst < 0.05);
    CHECK(s.c == doctest::Approx(2.0).epsilon(0.03));
    CHECK(s.template_residual < 0.05);
    for (double h : s.h) CHECK(std::isfinite(h));
}

TEST_CASE("indicator of exponentials") {
    const auto grid = uniform_theta_grid(61);
    const auto ladder = geometric_ladder(10, 50, 6);
    const auto e1 = estimate_indicator(log_modulus_of([](cplx z) { return std::exp(z); }), 1.0, grid, ladder,
                                       IndicatorTemplate::cos_rho_theta);
    CHECK(e1.c == doctest::Approx(1.0).epsilon(0.01));
    CHECK(e1.template_residual < 0.05);
    const auto e2 = estimate_indicator([](cplx z) { return (-2.0 * z * z).real(); }, 2.0, grid, ladder,
                                       IndicatorTemplate::cos_rho_theta);
    CHECK(e2.c == doctest::Approx(-2.0).epsilon(0.01));
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(e2.h[i] + 2.0 * std::cos(2.0 * grid[i])) < 0.05);
    CHECK_FALSE(e2.low_confidence);
}

TEST_CASE("indicator of A from the indicator of E") {
    IndicatorSample hE;
    const double c = 1.7;
    for (int i = 0; i <= 90; ++i) {
        hE.theta.push_back(pi * i / 90);
        hE.h.push_back(c * std::sin(1.5 * hE.theta.back()));
    }
    const auto hA = indicator_of_A_from_E(hE);
    for (std::size_t i = 0; i < hA.theta.size(); ++i) {
        const double t = hA.theta[i];
        const double want = t <= 2 * pi / 3 ? 0.0 : -2.0 * c * std::sin(1.5 * t);
        CHECK(std::abs(hA.h[i] - want) < 1e-12);
    }
    IndicatorSample pos;
    pos.theta = uniform_theta_grid(20);
    for (double t : pos.theta) pos.h.push_back(std::abs(std::sin(t)));
    for (double h : indicator_of_A_from_E(pos).h) CHECK(h == 0.0);
    IndicatorSample cosine;
    cosine.theta = uniform_theta_grid(41);
    for (double t : cosine.theta) cosine.h.push_back(std::cos(t));
    const auto hc = indicator_of_A_from_E(cosine);
    for (std::size_t i = 0; i < hc.theta.size(); ++i) {
        const double t = std::abs(hc.theta[i]);
        CHECK(std::abs(hc.h[i] - (t > pi / 2 ? 2.0 * std::abs(std::cos(t)) : 0.0)) < 1e-15);
    }
}

TEST_CASE("bounded ratio diagnostic") {
    const auto ladder = geometric_ladder(1.0, 100.0, 12);
    const auto r = check_bounded_ratio(sin_cos, 1, ladder);
    CHECK(r.max_ratio <= 0.5 / ladder.front() + 1e-15);
    CHECK(r.tail_ratio < 0.01);
    CHECK_FALSE(r.unbounded);
    const auto id = check_bounded_ratio([](cplx z) { return z; }, -1, ladder);
    for (double v : id.ratio) CHECK(v == doctest::Approx(1.0));
    CHECK_FALSE(id.unbounded);
    CHECK(check_bounded_ratio([](cplx z) { return std::exp(z); }, 1, geometric_ladder(1, 50, 10)).unbounded);
    CHECK_THROWS_AS(check_bounded_ratio(sin_cos, 0, ladder), InvalidParameters);
}

TEST_CASE("asymptotic values of F_m") {
    const auto v1 = asymptotic_values_Fm(1);
    REQUIRE(v1.size() == 1);
    CHECK(std::abs(v1[0] - std::exp(-1.0)) < 1e-9);
    const auto v2 = asymptotic_values_Fm(2);
    REQUIRE(v2.size() == 2);
    // along the imaginary axis the exponent is i times the Gaussian integral
    const double half_gauss = std::sqrt(pi) / 2;
    const cplx w = std::exp(I * half_gauss);
    CHECK(std::min(std::abs(v2[0] - w), std::abs(v2[0] - std::conj(w))) < 1e-9);
    CHECK(std::abs(v2[0] - std::conj(v2[1])) < 1e-9);
    for (int m = 3; m <= 5; ++m) {
        const auto v = asymptotic_values_Fm(m);
        REQUIRE(v.size() == std::size_t(m));
        for (const cplx a : v) {
            double best = 1e9;
            for (const cplx b : v) best = std::min(best, std::abs(std::conj(a) - b));
            CHECK(best < 1e-8);
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j) CHECK(std::abs(v[i] - v[j]) > 1e-6);
        // compare with a direct Simpson integral along the ray
        const cplx dir = std::polar(1.0, pi / m);
        const cplx expo = oracle::simpson([m](cplx t) { return std::exp(std::pow(t, m)); }, 0.0, 8.0 * dir, 40000);
        double best = 1e9;
        for (const cplx a : v) best = std::min(best, std::abs(a - std::exp(expo)));
        CHECK(best < 1e-8);
    }
}

TEST_CASE("classification table") {
    CHECK(classify_orders(CaseTag::ii, 2).rho == 1.5);
    CHECK(*classify_orders(CaseTag::ii, 2).lambda == 1.5);
    CHECK(classify_orders(CaseTag::iii, 4).rho == 3.0);
    const auto c1 = classify_orders(CaseTag::i, 3);
    CHECK(c1.rho == 3.0);
    CHECK_FALSE(c1.lambda.has_value());
    CHECK(c1.indicator == IndicatorTemplate::cos_rho_theta);
    CHECK_THROWS_AS(classify_orders(CaseTag::iii, 5), InvalidM);
    for (int m = -2; m <= 12; ++m) {
        const bool ok_i = m >= 1, ok_ii = m >= 2, ok_iii = m >= 4 && m % 2 == 0;
        CHECK(ok_i == [&] { try { classify_orders(CaseTag::i, m); return true; } catch (const InvalidM&) { return false; } }());
        CHECK(ok_ii == [&] { try { classify_orders(CaseTag::ii, m); return true; } catch (const InvalidM&) { return false; } }());
        CHECK(ok_iii == [&] { try { classify_orders(CaseTag::iii, m); return true; } catch (const InvalidM&) { return false; } }());
        if (ok_iii) CHECK(classify_orders(CaseTag::iii, m).rho == m - 1.0);
        if (ok_ii) CHECK(classify_orders(CaseTag::ii, m).rho == m - 0.5);
    }
    try {
        classify_orders(CaseTag::iii, 5);
    } catch (const InvalidM& e) {
        CHECK(std::string(e.what()).find("m is even, m≥4") != std::string::npos);
    }
    CHECK(case_from_string("ii") == CaseTag::ii);
    CHECK_THROWS_AS(case_from_string("iv"), InvalidParameters);
}

TEST_CASE("templates and grids") {
    const auto g = uniform_theta_grid(5);
    CHECK(g.front() == doctest::Approx(-pi));
    CHECK(g.back() == doctest::Approx(pi));
    const auto l = geometric_ladder(2.0, 32.0, 5);
    CHECK(l[2] == doctest::Approx(8.0));
    CHECK(template_value(IndicatorTemplate::sin_rho_abs_theta_minus_pi, 1.5, pi) == doctest::Approx(0.0));
    CHECK(template_value(IndicatorTemplate::sin_rho_abs_theta, 1.5, -pi / 3) == doctest::Approx(std::sin(pi / 2)));
}

}
