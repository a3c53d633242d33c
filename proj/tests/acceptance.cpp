// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "blaine/errors.hpp"
#include "blaine/families.hpp"
#include "blaine/growth.hpp"
#include "blaine/lemmas.hpp"
#include "blaine/ode.hpp"
#include "blaine/qc.hpp"
#include "blaine/trees.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace blaine;
using std::numbers::pi;

namespace {

const cplx I{0.0, 1.0};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::mt19937_64 rng(7);
double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::string fmt(const char* f, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// 1. zeros of E = cos * sin from the integrated pair
Outcome bank_laine_identity() {
    const double x0 = 0.05;
    InitialData init{std::cos(x0), -std::sin(x0), std::sin(x0), std::cos(x0)};
    const auto pair = integrate_equation(CoefficientModel::constant(1.0), PathSpec::segment(x0, 20.0), init, 1e-12);
    const auto E = product_E(pair);
    auto real_jet = [&](double x) {
        const auto j = E.at(x - x0);
        return ValueAndSlope{j.value.real(), j.d1.real()};
    };
    const auto zl = find_real_zeros(real_jet, x0, 20.0, 1e-2);
    double worst = 0.0;
    for (double z : zl.zeros) worst = std::max(worst, std::abs(std::abs(E.at(z - x0).d1) - 1.0));
    const bool count_ok = zl.zeros.size() == 12;
    return {count_ok && worst < 1e-7, std::to_string(zl.zeros.size()) + " zeros, max ||E'|-1| = " + fmt("%.2e", worst)};
}

// 2. A from E = (1/2) e^{-2z}
Outcome coefficient_round_trip() {
    const auto fam = elementary_family({0.0, 1.0});
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double x = -1.0 + 2.0 * k / 99.0;
        const cplx got = coefficient_from_E(fam.E_taylor(x).jet(x));
        worst = std::max(worst, std::abs(got - (-1.0 - std::exp(4.0 * x))));
    }
    // factor one half: E = e^{-2z} alone gives a different coefficient
    const double x = 0.3;
    const JetSample unscaled{x, std::exp(-2.0 * x), -2.0 * std::exp(-2.0 * x), 4.0 * std::exp(-2.0 * x),
                             -8.0 * std::exp(-2.0 * x)};
    const bool half_matters = std::abs(coefficient_from_E(unscaled) - (-1.0 - std::exp(4.0 * x))) > 1e-3;
    return {worst < 1e-8 && half_matters, "max |A - (-1 - e^{4z})| = " + fmt("%.2e", worst)};
}

// 3. Schwarzian of tan and of the constant-Schwarzian family
Outcome schwarzian_law() {
    double worst_tan = 0.0;
    for (int k = 0; k < 50; ++k) {
        const cplx z{-1.4 + 2.8 * k / 49.0, 0.3 * std::sin(k)};
        worst_tan = std::max(worst_tan, std::abs(schwarzian(tan_taylor(z).jet(z)) - 2.0));
    }
    struct Params {
        std::array<double, 4> m;
        double a1, b1, a2, b2;
    };
    const std::vector<Params> instances{{{1, 0, 0, 1}, 2.0, 0.0, 1.0, 0.0},
                                        {{2, 1, 1, 3}, 0.5, 0.4, 0.5, -0.7},
                                        {{1, 0, 1, 1}, 1.0, 0.3, 1.0, 1.2},
                                        {{1, 2, 0, 1}, 1.5, 0.0, 3.0, 0.0},
                                        {{3, -1, 1, 2}, 3.0, 0.2, 3.0, 0.9}};
    double worst_spread = 0.0;
    for (const auto& p : instances) {
        const auto f = theorem4_family(p.m, p.a1, p.b1, p.a2, p.b2);
        double lo_re = 1e300, hi_re = -1e300, lo_im = 1e300, hi_im = -1e300;
        for (int k = 0; k < 50; ++k) {
            const cplx z{-1.0 + 2.0 * k / 49.0, 0.2 * std::cos(k)};
            cplx s;
            try {
                s = schwarzian(f.jets(z));
            } catch (const NumericalError&) {
                continue;  // pole or critical point of this instance
            }
            lo_re = std::min(lo_re, s.real()), hi_re = std::max(hi_re, s.real());
            lo_im = std::min(lo_im, s.imag()), hi_im = std::max(hi_im, s.imag());
        }
        worst_spread = std::max({worst_spread, hi_re - lo_re, hi_im - lo_im});
    }
    return {worst_tan < 1e-8 && worst_spread < 1e-7,
            "tan: " + fmt("%.2e", worst_tan) + ", family spread: " + fmt("%.2e", worst_spread)};
}

// 4. Wronskian drift over paths of length 20
Outcome wronskian_drift() {
    double worst = 0.0;
    const auto one = integrate_equation(CoefficientModel::constant(1.0), PathSpec::segment(0.0, 20.0), {}, 1e-12);
    const auto zero = integrate_equation(CoefficientModel::constant(0.0), PathSpec::segment(0.0, 20.0), {}, 1e-12);
    const auto fam = elementary_family({0.0, 1.0});
    const auto elem = integrate_equation(fam.A, PathSpec::segment(0.0, 20.0 * I), fam.initial_data(0.0), 1e-12);
    for (const auto* p : {&one, &zero, &elem}) worst = std::max(worst, p->max_wronskian_drift());
    return {worst < 1e-9, "max drift = " + fmt("%.2e", worst)};
}

// 5. order of (1/2) e^{-2p}
Outcome order_estimator() {
    const auto ladder = geometric_ladder(2.0, 30.0, 12);
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        std::vector<double> p(n + 1, 0.0);
        p[n] = 1.0;
        const auto fam = elementary_family(p);
        const auto est = estimate_order([fam](cplx z) { return fam.log_E(z).real(); }, ladder);
        worst = std::max(worst, std::abs(est.rho_hat - n));
    }
    return {worst < 0.05, "max |rho - deg p| = " + fmt("%.4f", worst)};
}

// 6. exponent of convergence of {k pi / 2}
Outcome lambda_estimator() {
    std::vector<double> zeros;
    for (int k = 1; k <= 200; ++k) zeros.push_back(k * pi / 2);
    const double lam = estimate_lambda(zeros).rho_hat;
    return {std::abs(lam - 1.0) < 0.05, "lambda = " + fmt("%.4f", lam)};
}

// 7. indicator of sin z cos z and h_A on templates
Outcome indicator() {
    const auto s = estimate_indicator(log_modulus_of([](cplx z) { return std::sin(z) * std::cos(z); }), 1.0,
                                      uniform_theta_grid(73), geometric_ladder(10.0, 50.0, 6),
                                      IndicatorTemplate::sin_rho_abs_theta);
    double worst = 0.0;
    for (std::size_t i = 0; i < s.theta.size(); ++i)
        worst = std::max(worst, std::abs(s.h[i] - 2.0 * std::abs(std::sin(s.theta[i]))));

    double worst_A = 0.0;
    for (auto tmpl : {IndicatorTemplate::cos_rho_theta, IndicatorTemplate::sin_rho_abs_theta,
                      IndicatorTemplate::sin_rho_abs_theta_minus_pi}) {
        for (double rho : {0.5, 1.5, 3.0}) {
            IndicatorSample hE;
            hE.rho = rho;
            hE.theta = uniform_theta_grid(181);
            for (double t : hE.theta) hE.h.push_back(1.3 * template_value(tmpl, rho, t));
            const auto hA = indicator_of_A_from_E(hE);
            for (std::size_t i = 0; i < hA.theta.size(); ++i)
                worst_A = std::max(worst_A, std::abs(hA.h[i] - 2.0 * std::max(-hE.h[i], 0.0)));
        }
    }
    return {worst < 0.05 && worst_A <= 1e-12,
            "sup |h - 2|sin|| = " + fmt("%.4f", worst) + ", h_A mismatch = " + fmt("%.1e", worst_A)};
}

// 8. asymptotic values of F_2
Outcome asymptotic_values() {
    const auto a = asymptotic_values_Fm(2, 1e-10);
    const auto b = asymptotic_values_Fm(2, 5e-11);
    if (a.size() != 2 || b.size() != 2) return {false, std::to_string(a.size()) + " values"};
    const double conj_err = std::abs(a[0] - std::conj(a[1]));
    const double stab = std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
    return {conj_err < 1e-6 && stab < 1e-6 && std::abs(a[0].imag()) > 1e-3,
            "conjugate mismatch " + fmt("%.1e", conj_err) + ", halving change " + fmt("%.1e", stab)};
}

// 9. boundary match for a = i
Outcome boundary_match() {
    const auto r = boundary_match_check(I, {I, -pi / 2}, 1.0, 20.0);
    return {r.max_mismatch < 1e-12, "max mismatch = " + fmt("%.2e", r.max_mismatch)};
}

// 10. Beltrami coefficients by finite differences
Outcome beltrami_oracle() {
    const auto shift = BoundaryMap::translation(1.0);
    auto tau = [&](cplx z) { return horizontal_interpolation_tau(shift, z); };
    const cplx expected = -I / (2.0 + I);
    double worst = 0.0;
    for (int i = 0; i < 30; ++i)
        for (int j = 0; j < 30; ++j) {
            const cplx z{-3.0 + 6.0 * (i + 0.5) / 30, (j + 0.5) / 30};
            worst = std::max(worst, std::abs(beltrami(tau, z).mu - expected));
        }
    const StretchExtension Q(I);
    auto phi = [&](cplx z) { return strip_interpolation_phi(Q, z); };
    double outside = 0.0;
    for (int k = 0; k < 30; ++k) {
        outside = std::max(outside, std::abs(beltrami(phi, cplx(1.1 + 0.2 * k, -3.0 + 0.2 * k)).mu));
        outside = std::max(outside, std::abs(beltrami(tau, cplx(-3.0 + 0.2 * k, 1.1 + 0.1 * k)).mu));
    }
    return {worst < 1e-6 && outside < 1e-6,
            "strip error " + fmt("%.1e", worst) + ", outside |mu| " + fmt("%.1e", outside)};
}

// 11. logarithmic area laws
Outcome logarea_laws() {
    const auto s = RegionSpec::annular_sector(1.0, 3.0, -0.4, 0.9);
    const double base = logarea(s);
    double worst_scale = 0.0;
    for (double alpha : {0.5, 2.0, 3.0})
        worst_scale = std::max(worst_scale, std::abs(logarea(s.power(alpha)) / (alpha * alpha * base) - 1.0));
    bool tails = true;
    double worst_ratio = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double ratio = logarea(RegionSpec::pinched_strip(k)) / strip_tail_bound(k);
        worst_ratio = std::max(worst_ratio, ratio);
        tails = tails && ratio <= 1.0;
    }
    return {worst_scale < 1e-6 && tails,
            "scaling error " + fmt("%.1e", worst_scale) + ", worst tail ratio " + fmt("%.3f", worst_ratio)};
}

// 12. tree suite
Outcome trees() {
    const auto t4 = builtin_tree(4), t6 = builtin_tree(6);
    bool ok = validate_tree(t4).valid() && validate_tree(t6).valid();
    ok = ok && check_real_zeros_poles(t4) && check_real_zeros_poles(t6);
    const auto c4 = classify(t4), c6 = classify(t6);
    ok = ok && c4.case_tag == CaseTag::iii && c4.rho == 3.0 && c6.case_tag == CaseTag::iii && c6.rho == 5.0;
    auto cur = t4;
    for (int k = 0; k < 4 && ok; ++k) {
        const int before = count_singularities(cur);
        cur = split_tree(cur, eligible_split_vertices(cur).front());
        ok = validate_tree(cur).valid() && check_real_zeros_poles(cur) && count_singularities(cur) == before + 2 &&
             count_real_ends(cur) == 2;
    }
    return {ok, "m after four splits = " + std::to_string(count_singularities(cur))};
}

// 13. sector plans
Outcome sector_plans() {
    bool ok = true;
    int plans = 0;
    for (CaseTag c : {CaseTag::i, CaseTag::ii, CaseTag::iii}) {
        for (int m = 1; m <= 8; ++m) {
            SectorPlan p;
            try {
                p = sector_plan(c, m);
            } catch (const InvalidM&) {
                ok = ok && !(c == CaseTag::i && m >= 1) && !(c == CaseTag::ii && m >= 2) &&
                     !(c == CaseTag::iii && m >= 4 && m % 2 == 0);
                continue;
            }
            ++plans;
            const double rho = c == CaseTag::i ? m : (c == CaseTag::ii ? m - 0.5 : m - 1.0);
            ok = ok && p.rho == rho && static_cast<int>(p.sectors.size()) == m;
            double total = 0.0;
            int small = 0;
            for (const auto& s : p.sectors) {
                total += s.opening;
                const bool is_small = s.kind == Sector::Kind::small;
                small += is_small;
                ok = ok && std::abs(s.opening - (is_small ? pi : 2 * pi) / rho) < 1e-12;
                const cplx turned = s.rotation * std::exp(I * (rho * s.bisector));
                ok = ok && std::abs(std::abs(turned.real()) - 1.0) < 1e-12 && std::abs(turned.imag()) < 1e-12;
            }
            const int want_small = c == CaseTag::i ? 0 : (c == CaseTag::ii ? 1 : 2);
            ok = ok && small == want_small && std::abs(total - 2 * pi) < 1e-12;
        }
    }
    bool odd_rejected = true;
    for (int m : {5, 7}) {
        try {
            sector_plan(CaseTag::iii, m);
            odd_rejected = false;
        } catch (const InvalidM&) {
        }
    }
    return {ok && odd_rejected && plans > 0, std::to_string(plans) + " admissible plans checked"};
}

// 14. lemma suite
Outcome lemmas() {
    int passed = 0;
    for (int k = 0; k < 50; ++k) {
        const double a = uniform(-3, 3), len = uniform(0.5, 6.0);
        const double amp = len / pi * uniform(1.05, 3.0);
        const auto kind = k % 3 == 0 ? "sine" : (k % 3 == 1 ? "harmonic" : "parabola");
        const double scale = std::string(kind) == "parabola" ? len * uniform(1.05, 3.0) : amp;
        const auto s = sample_c2(c2_shape(kind, a, a + len, scale, uniform(-0.01, 0.01)), a, a + len);
        try {
            passed += c2_lemma_check(s);
        } catch (const HypothesisViolated&) {
        }
    }
    int rejected = 0;
    try {
        c2_lemma_check(sample_c2(c2_shape("double-bump", 0.0, pi, 1.0), 0.0, pi));
    } catch (const HypothesisViolated&) {
        ++rejected;
    }
    try {
        c2_lemma_check(sample_c2(c2_shape("sine", 0.0, pi, 0.5), 0.0, pi));
    } catch (const HypothesisViolated&) {
        ++rejected;
    }
    try {
        auto lifted = [](double x) -> std::array<double, 3> { return {std::sin(x) + 0.1, std::cos(x), -std::sin(x)}; };
        c2_lemma_check(sample_c2(lifted, 0.0, pi));
    } catch (const HypothesisViolated&) {
        ++rejected;
    }
    int koebe = 0;
    for (const char* name : {"id", "square", "log1p"}) {
        const auto d = koebe_map_derivative(name);
        for (int k = 0; k < 100; ++k) {
            const cplx z0{uniform(0.05, 5.0), uniform(-5.0, 5.0)};
            const cplx z{z0.real() + uniform(0.0, 20.0), uniform(-30.0, 30.0)};
            koebe += koebe_bound_check(d, z0, z);
        }
    }
    return {passed == 50 && rejected == 3 && koebe == 300,
            std::to_string(passed) + "/50 admissible, " + std::to_string(rejected) + "/3 rejected, " +
                std::to_string(koebe) + "/300 distortion"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"Bank-Laine identity at zeros of E", bank_laine_identity},
        {"coefficient round trip", coefficient_round_trip},
        {"Schwarzian law", schwarzian_law},
        {"Wronskian drift", wronskian_drift},
        {"order estimator", order_estimator},
        {"convergence exponent estimator", lambda_estimator},
        {"indicator", indicator},
        {"asymptotic values", asymptotic_values},
        {"boundary matching", boundary_match},
        {"Beltrami oracle", beltrami_oracle},
        {"logarithmic area laws", logarea_laws},
        {"tree suite", trees},
        {"sector plans", sector_plans},
        {"lemma suite", lemmas},
    };
    int failures = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n) {
        Outcome o;
        try {
            o = criteria[n].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", n + 1, criteria[n].first, o.detail.c_str());
    }
    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
