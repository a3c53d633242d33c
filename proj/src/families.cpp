#include "blaine/families.hpp"

#include "blaine/errors.hpp"

#include <cmath>
#include <map>

namespace blaine {

namespace {

const std::map<FamilyTag, std::string>& tag_names() {
    static const std::map<FamilyTag, std::string> names = {
        {FamilyTag::Fm, "Fm"},
        {FamilyTag::Gm, "Gm"},
        {FamilyTag::f2, "f2"},
        {FamilyTag::F0, "F0"},
        {FamilyTag::Va, "Va"},
        {FamilyTag::Ta, "Ta"},
        {FamilyTag::ElementaryE, "ElementaryE"},
        {FamilyTag::ElementaryA, "ElementaryA"},
        {FamilyTag::SinCos, "SinCos"},
        {FamilyTag::TanRatio, "TanRatio"},
        {FamilyTag::Theorem4F, "Theorem4F"},
        {FamilyTag::Custom, "Custom"},
    };
    return names;
}

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw InvalidParameters(std::string(what) + " has a non-finite coefficient");
}

// Degree of the single monomial in the denominator of R0; -1 if not a monomial.
int monomial_degree(const std::vector<double>& den) {
    int deg = -1;
    for (std::size_t i = 0; i < den.size(); ++i) {
        if (den[i] != 0.0) {
            if (deg >= 0) return -1;
            deg = static_cast<int>(i);
        }
    }
    return deg;
}

}  // namespace

std::string to_string(FamilyTag tag) { return tag_names().at(tag); }

FamilyTag family_from_string(const std::string& name) {
    for (const auto& [tag, text] : tag_names())
        if (text == name) return tag;
    throw InvalidParameters("unknown family '" + name + "'");
}

void FamilyInstance::validate() const {
    const auto& p = params;
    switch (tag) {
        case FamilyTag::Fm:
        case FamilyTag::Gm:
            if (p.m < 1) throw InvalidParameters("m must be >= 1");
            break;
        case FamilyTag::f2:
            if (p.m < 2) throw InvalidParameters("f2 requires m >= 2");
            break;
        case FamilyTag::Va:
        case FamilyTag::Ta:
            if (p.a.imag() == 0.0) throw InvalidParameters("Im a must be nonzero");
            break;
        case FamilyTag::F0:
            require_finite(p.r0_num, "R0 numerator");
            require_finite(p.r0_den, "R0 denominator");
            if (monomial_degree(p.r0_den) < 0)
                throw InvalidParameters("R0 denominator must be a nonzero monomial (single pole at 0 at most)");
            if (!std::isfinite(p.xi) || !std::isfinite(p.c0)) throw InvalidParameters("xi and c0 must be finite");
            break;
        case FamilyTag::ElementaryE:
        case FamilyTag::ElementaryA:
            require_finite(p.p, "p");
            break;
        case FamilyTag::Custom:
            if (!custom) throw InvalidParameters("custom family without a callable");
            break;
        default:
            break;
    }
}

cplx poly_eval(const std::vector<double>& c, cplx z) {
    cplx acc{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    return d;
}

cplx ipow(cplx z, int n) {
    cplx result{1.0, 0.0};
    cplx base = z;
    unsigned e = static_cast<unsigned>(n < 0 ? -n : n);
    while (e) {
        if (e & 1u) result *= base;
        base *= base;
        e >>= 1u;
    }
    return n < 0 ? 1.0 / result : result;
}

cplx expm1(cplx u) {
    const double x = u.real();
    const double y = u.imag();
    const double s = std::sin(0.5 * y);
    const double re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
    const double im = std::exp(x) * std::sin(y);
    return {re, im};
}

cplx eval_Fm(int m, cplx z, double tol, double* err) {
    if (m < 1) throw InvalidParameters("m must be >= 1");
    if (err) *err = 0.0;
    if (z == cplx{0.0, 0.0}) return {1.0, 0.0};
    auto integrand = [m](cplx t) { return std::exp(ipow(t, m)); };
    const QuadratureResult q = integrate_segment(integrand, 0.0, z, tol);
    const cplx value = std::exp(q.value);
    if (err) *err = std::abs(value) * q.err_estimate;
    return value;
}

cplx gm_integrand(int m, cplx t) {
    const double r = std::abs(t);
    if (r < 1e-2) {
        // (exp(-t^m) - 1)/t = sum_{n>=1} (-1)^n t^{mn-1} / n!
        const cplx tm = ipow(t, m);
        cplx term = ipow(t, m - 1);  // n = 1 term magnitude
        cplx sum{0.0, 0.0};
        double sign = -1.0;
        for (int n = 1; n < 40; ++n) {
            const cplx add = sign * term;
            sum += add;
            if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
            term *= tm / static_cast<double>(n + 1);
            sign = -sign;
        }
        return sum;
    }
    return expm1(-ipow(t, m)) / t;
}

cplx eval_Gm(int m, cplx z, double tol, double* err) {
    if (m < 1) throw InvalidParameters("m must be >= 1");
    if (err) *err = 0.0;
    if (z == cplx{0.0, 0.0}) return {0.0, 0.0};
    auto integrand = [m](cplx t) { return gm_integrand(m, t); };
    const QuadratureResult q = integrate_segment(integrand, 0.0, z, tol);
    const cplx value = z * std::exp(q.value);
    if (err) *err = std::abs(value) * q.err_estimate;
    return value;
}

double asympt_constant(int m, double tol) {
    if (m < 2) throw InvalidParameters("asympt_constant requires m >= 2");
    const int k = 2 * (m - 1);
    // log c = int_0^1 (e^{-t^k} - 1)/t dt + int_1^inf e^{-t^k}/t dt
    auto inner = [k](cplx t) { return gm_integrand(k, t); };
    auto tail = [k](cplx t) { return std::exp(-ipow(t, k)) / t; };
    const QuadratureResult head = integrate_segment(inner, 0.0, 1.0, tol / 2.0);
    const QuadratureResult rest = integrate_along(PathSpec::ray(1.0, 0.0, 1e3), tail, tol / 2.0);
    return std::exp(head.value.real() + rest.value.real());
}

cplx eval_f2(int m, cplx z, double tol, double* err) {
    if (m < 2) throw InvalidParameters("f2 requires m >= 2");
    const double c = asympt_constant(m, tol);
    const cplx i{0.0, 1.0};
    const cplx g = eval_Gm(2 * (m - 1), -i * z, tol, err);
    if (err) *err /= c;
    return i / c * g;
}

cplx eval_F0(const FamilyInstance& inst, cplx z, double tol, double* err) {
    if (inst.tag != FamilyTag::F0) throw InvalidParameters("eval_F0 needs an F0 instance");
    inst.validate();
    const auto& p = inst.params;
    const bool has_pole = monomial_degree(p.r0_den) > 0;
    const cplx corner{z.real(), 0.0};

    if (has_pole) {
        const double lo = std::min(p.xi, z.real());
        const double hi = std::max(p.xi, z.real());
        if (lo <= 0.0 && hi >= 0.0) throw PoleOnPath("segment from xi to Re z crosses the pole of R0 at 0");
    }

    auto integrand = [&p](cplx t) {
        return poly_eval(p.r0_num, t) / poly_eval(p.r0_den, t) * std::exp(-t * t);
    };
    cplx sum{0.0, 0.0};
    double e = 0.0;
    const bool horizontal = p.xi != z.real();
    const bool vertical = z.imag() != 0.0;
    const double share = (horizontal && vertical) ? 0.5 : 1.0;
    if (horizontal) {
        const QuadratureResult q = integrate_segment(integrand, p.xi, corner, tol * share);
        sum += q.value;
        e += q.err_estimate;
    }
    if (vertical) {
        const QuadratureResult q = integrate_segment(integrand, corner, z, tol * share);
        sum += q.value;
        e += q.err_estimate;
    }
    const cplx value = std::exp(sum + p.c0);
    if (err) *err = std::abs(value) * e;
    return value;
}

}  // namespace blaine
