#include "blaine/lemmas.hpp"

#include "blaine/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace blaine {

namespace {

// -1, 0, +1 with a dead band of width eps around zero.
int sign_class(double v, double eps) { return v > eps ? 1 : (v < -eps ? -1 : 0); }

// Zeros of sampled values on [i0, i1]: runs of near-zero samples plus
// direct sign flips between consecutive nonzero samples.
int count_zeros(const std::vector<double>& v, std::size_t i0, std::size_t i1, double eps) {
    int zeros = 0;
    int prev = 2;  // sentinel: nothing seen yet
    for (std::size_t i = i0; i <= i1; ++i) {
        const int c = sign_class(v[i], eps);
        if (c == 0) {
            if (prev != 0) ++zeros;
        } else if (prev == -c) {
            ++zeros;
        }
        prev = c;
    }
    return zeros;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

C2Samples sample_c2(const C2Fn& fn, double a, double b, int n) {
    if (!(b > a) || n < 5) throw InvalidParameters("need b > a and at least 5 samples");
    C2Samples s;
    s.a = a;
    s.b = b;
    for (int i = 0; i < n; ++i) {
        const double x = (i == n - 1) ? b : a + (b - a) * i / (n - 1);
        const auto v = fn(x);
        s.x.push_back(x);
        s.f.push_back(v[0]);
        s.df.push_back(v[1]);
        s.d2f.push_back(v[2]);
    }
    return s;
}

void check_c2_hypotheses(const C2Samples& s) {
    const std::size_t n = s.x.size();
    if (n < 5 || s.f.size() != n || s.df.size() != n || s.d2f.size() != n)
        throw InvalidParameters("inconsistent sample arrays");

    const double fscale = std::max(1.0, max_abs(s.f));
    if (std::abs(s.f.front()) > 1e-9 * fscale || std::abs(s.f.back()) > 1e-9 * fscale)
        throw HypothesisViolated('a', "f does not vanish at both endpoints");

    const double da = std::abs(s.df.front());
    const double db = std::abs(s.df.back());
    if (std::abs(da - db) > 1e-9 * std::max(1.0, da) || std::min(da, db) < 1.0 - 1e-12)
        throw HypothesisViolated('b', "need |f'(a)| = |f'(b)| >= 1");

    const double eps1 = 1e-12 * std::max(1.0, max_abs(s.df));
    if (count_zeros(s.df, 1, n - 2, eps1) != 1) throw HypothesisViolated('c', "f' must have exactly one interior zero");
    std::size_t ic = 1;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (sign_class(s.df[i], eps1) == 0 || sign_class(s.df[i], eps1) != sign_class(s.df[1], eps1)) {
            ic = i;
            break;
        }
    }

    const double eps2 = 1e-9 * std::max(1.0, max_abs(s.d2f));
    if (count_zeros(s.d2f, 0, ic, eps2) > 1 || count_zeros(s.d2f, ic, n - 1, eps2) > 1)
        throw HypothesisViolated('d', "f'' has more than one zero on one side of the critical point");

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double v = s.d2f[i];
        const bool strict_min = v < s.d2f[i - 1] && v < s.d2f[i + 1];
        const bool strict_max = v > s.d2f[i - 1] && v > s.d2f[i + 1];
        if (strict_min && v >= -eps2) throw HypothesisViolated('e', "f'' has a non-negative local minimum");
        if (strict_max && v <= eps2) throw HypothesisViolated('e', "f'' has a non-positive local maximum");
    }
}

bool c2_lemma_check(const C2Samples& s) {
    check_c2_hypotheses(s);
    for (std::size_t i = 1; i + 1 < s.x.size(); ++i) {
        const double dist = std::min(s.x[i] - s.a, s.b - s.x[i]);
        if (!(std::abs(s.f[i]) > dist / 20.0)) return false;
    }
    return true;
}

C2Fn c2_shape(const std::string& kind, double a, double b, double amplitude, double harmonic) {
    if (!(b > a)) throw InvalidParameters("need b > a");
    const double len = b - a;
    const double pi = std::numbers::pi;
    if (kind == "sine" || kind == "harmonic" || kind == "double-bump") {
        const double h = (kind == "sine") ? 0.0 : harmonic;
        const double k = (kind == "double-bump") ? 2.0 : 1.0;
        return [=](double x) -> std::array<double, 3> {
            const double w = k * pi / len;
            const double t = (x - a);
            const double f = amplitude * (std::sin(w * t) + h * std::sin(3.0 * w * t));
            const double df = amplitude * w * (std::cos(w * t) + 3.0 * h * std::cos(3.0 * w * t));
            const double d2 = -amplitude * w * w * (std::sin(w * t) + 9.0 * h * std::sin(3.0 * w * t));
            return {f, df, d2};
        };
    }
    if (kind == "parabola") {
        return [=](double x) -> std::array<double, 3> {
            const double u = (x - a) / len;
            return {amplitude * u * (1.0 - u), amplitude * (1.0 - 2.0 * u) / len, -2.0 * amplitude / (len * len)};
        };
    }
    throw InvalidParameters("unknown C2 shape '" + kind + "'");
}

KoebeReport koebe_report(const std::function<cplx(cplx)>& dphi, cplx z0, cplx z) {
    if (!(z0.real() > 0.0)) throw DomainError("Re z0 must be positive");
    if (!(z.real() >= z0.real())) throw DomainError("need Re z >= Re z0");
    KoebeReport r;
    r.lhs = std::abs(dphi(z));
    r.rhs = std::abs(dphi(z0)) * std::pow(1.0 + std::abs(z - z0) / z0.real(), -4.0);
    r.holds = r.lhs >= r.rhs;
    return r;
}

bool koebe_bound_check(const std::function<cplx(cplx)>& dphi, cplx z0, cplx z) {
    return koebe_report(dphi, z0, z).holds;
}

std::function<cplx(cplx)> koebe_map_derivative(const std::string& name) {
    if (name == "id") return [](cplx) { return cplx{1.0, 0.0}; };
    if (name == "square") return [](cplx z) { return 2.0 * z; };
    if (name == "log1p") return [](cplx z) { return 1.0 / (1.0 + z); };
    throw InvalidParameters("unknown map '" + name + "' (id, square, log1p)");
}

}  // namespace blaine
