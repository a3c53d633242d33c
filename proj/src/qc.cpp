#include "blaine/qc.hpp"

#include "blaine/errors.hpp"

#include <cmath>
using std::isnan;  // boost 1.74 pchip calls isnan unqualified
#include <boost/math/interpolators/pchip.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace blaine {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I{0.0, 1.0};

double sgn(double v) { return v > 0.0 ? 1.0 : -1.0; }

// tan(u + iv) without overflow for large |v|.
cplx stable_tan(cplx w) {
    const double u = w.real(), v = w.imag();
    if (std::abs(v) > 300.0) return {0.0, sgn(v)};
    const double den = std::cos(2.0 * u) + std::cosh(2.0 * v);
    return {std::sin(2.0 * u) / den, std::sinh(2.0 * v) / den};
}

double real_integral(const std::function<double(double)>& g, double lo, double hi, double tol) {
    if (!(hi > lo)) return 0.0;
    const Integrand f = [&](cplx z) { return cplx{g(z.real()), 0.0}; };
    if (std::isfinite(hi)) return integrate_segment(f, lo, hi, tol).value.real();
    return integrate_along(PathSpec::ray(lo, 0.0, hi), f, tol).value.real();
}

// Integral over [lo, hi] split at an interior kink of the integrand.
double split_integral(const std::function<double(double)>& g, double lo, double kink, double hi, double tol) {
    if (kink > lo && kink < hi) return real_integral(g, lo, kink, tol / 2) + real_integral(g, kink, hi, tol / 2);
    return real_integral(g, lo, hi, tol);
}

// int dy / (x^2 + y^2) over [y1, y2], divided form kept explicit for x > 0.
double band(double x, double y1, double y2) { return (std::atan(y2 / x) - std::atan(y1 / x)) / x; }

// Inner integral over y of the level set {|cos y| <= K e^-x} at abscissa x.
double level_set_section(double x, double K) {
    const double s = std::min(1.0, K * std::exp(-x));
    if (s >= 1.0) return kPi / x;
    const double w = std::asin(s);
    const double cutoff = 50.0 * (x + 1.0);
    double sum = 0.0;
    double c = 0.5 * kPi;
    for (; c <= cutoff; c += kPi) sum += std::atan((c + w) / x) - std::atan((c - w) / x);
    // Remaining strips at spacing pi, each contributing about 2 w x / c^2.
    const double edge = c - 0.5 * kPi;
    sum += (2.0 * w / kPi) * (0.5 * kPi - std::atan(edge / x));
    return 2.0 * sum / x;
}

}  // namespace

// ---------------------------------------------------------------- q_a and Q_a

double stretch_threshold(cplx a) {
    if (a.imag() == 0.0) throw DomainError("Im a must be nonzero");
    return std::max(1.0, -std::log(std::abs(a.imag())));
}

double boundary_stretch_q(cplx a, double y) {
    const double ya = stretch_threshold(a);
    if (y < ya - 1e-14) throw DomainError("q_a needs y >= y_a = " + std::to_string(ya));
    const double s = 2.0 * std::abs(a.imag());
    // log(s e^y - 1) = y + log s + log1p(-e^-y / s)
    return y + std::log(s) + std::log1p(-std::exp(-y) / s);
}

double boundary_stretch_q_prime(cplx a, double y) {
    const double ya = stretch_threshold(a);
    if (y < ya - 1e-14) throw DomainError("q_a needs y >= y_a = " + std::to_string(ya));
    const double s = 2.0 * std::abs(a.imag());
    return 1.0 / (1.0 - std::exp(-y) / s);
}

StretchExtension::StretchExtension(cplx a_) : a(a_), y_a(stretch_threshold(a_)), Y(y_a) {
    for (int iter = 0; iter < 100000; ++iter) {
        const double q0 = boundary_stretch_q(a, Y);
        const double q1 = boundary_stretch_q_prime(a, Y);
        alpha = (3.0 * q0 - q1 * Y) / (2.0 * Y);
        beta = (q1 * Y - q0) / (2.0 * Y * Y * Y);
        if (alpha > 0.0) return;
        Y += 0.05;
    }
    throw NoConvergence("no monotone cubic extension found");
}

double StretchExtension::operator()(double y) const {
    if (std::abs(y) >= Y) return sgn(y) * boundary_stretch_q(a, std::abs(y));
    return alpha * y + beta * y * y * y;
}

double StretchExtension::derivative(double y) const {
    if (std::abs(y) >= Y) return boundary_stretch_q_prime(a, std::abs(y));
    return alpha + 3.0 * beta * y * y;
}

double extend_Q(cplx a, double y) { return StretchExtension(a)(y); }

// ---------------------------------------------------------------- phi_a, v_a, T_a

cplx strip_interpolation_phi(const StretchExtension& Q, cplx z) {
    const double x = z.real(), y = z.imag();
    if (x < 0.0) throw DomainError("phi_a is defined on Re z >= 0");
    if (x > 1.0) return z;
    return z + I * (1.0 - x) * (Q(y) - y);
}

cplx strip_interpolation_phi(cplx a, cplx z) { return strip_interpolation_phi(StretchExtension(a), z); }

cplx v_a(cplx a, cplx z) {
    if (std::abs(std::cos(z / 2.0)) < 1e-12) throw PoleAt("tan(z/2) has a pole near z = " + std::to_string(z.real()));
    return stable_tan(z / 2.0) * a.imag() + a.real();
}

cplx modified_tangent_T(const StretchExtension& Q, cplx z) { return v_a(Q.a, strip_interpolation_phi(Q, z)); }

cplx modified_tangent_T(cplx a, cplx z) { return modified_tangent_T(StretchExtension(a), z); }

// ---------------------------------------------------------------- tau

BoundaryMap BoundaryMap::identity() { return {[](double x) { return x; }, [](double) { return 1.0; }}; }

BoundaryMap BoundaryMap::translation(double c) {
    return {[c](double x) { return x + c; }, [](double) { return 1.0; }};
}

BoundaryMap BoundaryMap::from_samples(std::vector<double> x, std::vector<double> hx) {
    if (x.size() != hx.size() || x.size() < 4) throw InvalidParameters("need at least four matching samples");
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1])) throw InvalidParameters("sample abscissae must increase");
        if (!(hx[i] > hx[i - 1])) throw NotDiffeo("boundary map is not strictly increasing");
    }
    const double x0 = x.front(), x1 = x.back();
    const double s0 = hx.front() - x0, s1 = hx.back() - x1;
    using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
    auto p = std::make_shared<Pchip>(std::move(x), std::move(hx), 1.0, 1.0);
    BoundaryMap m;
    m.h = [p, x0, x1, s0, s1](double t) {
        if (t <= x0) return t + s0;
        if (t >= x1) return t + s1;
        return (*p)(t);
    };
    m.dh = [p, x0, x1](double t) { return (t <= x0 || t >= x1) ? 1.0 : p->prime(t); };
    return m;
}

cplx horizontal_interpolation_tau(const BoundaryMap& h, cplx z) {
    const double x = z.real(), y = z.imag();
    if (y < 0.0) throw DomainError("tau is defined on Im z >= 0");
    if (y > 1.0) return z;
    return z + (1.0 - y) * (h.h(x) - x);
}

cplx mu_tau_closed_form(const BoundaryMap& h, cplx z) {
    const double x = z.real(), y = z.imag();
    if (y > 1.0) return 0.0;
    const double a = (1.0 - y) * (h.dh(x) - 1.0);
    const double b = h.h(x) - x;
    return cplx{a, -b} / cplx{2.0 + a, b};
}

cplx mu_phi_closed_form(const StretchExtension& Q, cplx z) {
    const double x = z.real(), y = z.imag();
    if (x > 1.0) return 0.0;
    const double a = (1.0 - x) * (Q.derivative(y) - 1.0);
    const double b = Q(y) - y;
    return cplx{-a, -b} / cplx{2.0 + a, -b};
}

// ---------------------------------------------------------------- Beltrami

BeltramiSample beltrami_from_mu(cplx z, cplx mu) {
    const double m = std::abs(mu);
    if (!(m < 1.0 - 1e-9)) throw DegenerateJacobian("|mu| = " + std::to_string(m));
    return {z, mu, (1.0 + m) / (1.0 - m)};
}

BeltramiSample beltrami(const std::function<cplx(cplx)>& f, cplx z, double fd_step) {
    const double h = fd_step * std::max(1.0, std::abs(z));
    const cplx fx = (f(z + h) - f(z - h)) / (2.0 * h);
    const cplx fy = (f(z + I * h) - f(z - I * h)) / (2.0 * h);
    const cplx fz = (fx - I * fy) / 2.0;
    const cplx fzbar = (fx + I * fy) / 2.0;
    if (!std::isfinite(std::abs(fz)) || !std::isfinite(std::abs(fzbar))) throw PoleAt("non-finite derivative");
    if (std::abs(fz) == 0.0) throw DegenerateJacobian("f_z vanishes");
    return beltrami_from_mu(z, fzbar / fz);
}

// ---------------------------------------------------------------- logarea

RegionSpec RegionSpec::annular_sector(double r1, double r2, double theta1, double theta2) {
    RegionSpec r;
    r.kind = Kind::annular_sector;
    r.r1 = r1;
    r.r2 = r2;
    r.theta1 = theta1;
    r.theta2 = theta2;
    r.validate();
    return r;
}

RegionSpec RegionSpec::half_strip(int k) {
    RegionSpec r;
    r.kind = Kind::half_strip;
    r.k = k;
    return r;
}

RegionSpec RegionSpec::pinched_strip(int k, double K) {
    RegionSpec r;
    r.kind = Kind::pinched_strip;
    r.k = k;
    r.K = K;
    r.validate();
    return r;
}

RegionSpec RegionSpec::exp_level_set(double K) {
    RegionSpec r;
    r.kind = Kind::exp_level_set;
    r.K = K;
    r.validate();
    return r;
}

void RegionSpec::validate() const {
    switch (kind) {
        case Kind::annular_sector:
            if (!(r1 > 0.0 && r2 > r1)) throw InvalidParameters("annular sector needs r2 > r1 > 0");
            if (!(theta2 > theta1 && theta2 - theta1 <= 2.0 * kPi + 1e-12))
                throw InvalidParameters("annular sector needs theta1 < theta2 <= theta1 + 2 pi");
            break;
        case Kind::half_strip: break;
        case Kind::pinched_strip:
        case Kind::exp_level_set:
            if (!(K > 0.0)) throw InvalidParameters("K must be positive");
            break;
    }
}

RegionSpec RegionSpec::power(double alpha) const {
    if (kind != Kind::annular_sector) throw InvalidParameters("power maps are implemented for annular sectors");
    if (!(alpha > 0.0)) throw InvalidParameters("alpha must be positive");
    if (alpha * (theta2 - theta1) > 2.0 * kPi + 1e-12) throw InvalidParameters("z^alpha is not injective here");
    return annular_sector(std::pow(r1, alpha), std::pow(r2, alpha), alpha * theta1, alpha * theta2);
}

double logarea(const RegionSpec& region, double truncation, double tol) {
    region.validate();
    if (!(truncation > 0.0)) throw InvalidParameters("truncation must be positive");
    switch (region.kind) {
        case RegionSpec::Kind::annular_sector: {
            const double hi = std::min(region.r2, truncation);
            const double radial = real_integral([](double r) { return 1.0 / r; }, region.r1, hi, tol);
            return radial * (region.theta2 - region.theta1);
        }
        case RegionSpec::Kind::half_strip: {
            const double y1 = region.k * kPi, y2 = (region.k + 1) * kPi;
            return real_integral([&](double x) { return band(x, y1, y2); }, 1.0, truncation, tol);
        }
        case RegionSpec::Kind::pinched_strip: {
            const double c = (region.k + 0.5) * kPi;
            const double K = region.K;
            auto g = [&](double x) {
                const double w = std::min(K * std::exp(-x), 0.5 * kPi);
                return band(x, c - w, c + w);
            };
            return split_integral(g, 1.0, std::log(2.0 * K / kPi), truncation, tol);
        }
        case RegionSpec::Kind::exp_level_set: {
            const double K = region.K;
            return split_integral([&](double x) { return level_set_section(x, K); }, 1.0, std::log(K), truncation,
                                  tol);
        }
    }
    return 0.0;
}

double exp_level_set_budget(double K) {
    if (!(K > 0.0)) throw InvalidParameters("K must be positive");
    const double width = K <= std::numbers::e ? kPi * K / std::numbers::e : kPi * std::log(K);
    const double central = real_integral([](double x) { return band(x, -kPi, kPi); }, 1.0, kNoTruncation, 1e-12);
    return 2.0 * width * kPi * kPi / 6.0 + central;
}

double strip_tail_bound(int k) {
    if (k >= 1) return 2.0 / (std::numbers::e * k * k);
    if (k <= -2) return 2.0 / (std::numbers::e * (k + 1.0) * (k + 1.0));
    throw InvalidK("strip tail bound needs k >= 1 or k <= -2, got " + std::to_string(k));
}

// ---------------------------------------------------------------- boundary match

void OrientedAsymptoticValue::validate() const {
    for (double t : {0.0, kPi / 2, -kPi / 2, kPi})
        if (std::abs(theta - t) < 1e-12) return;
    throw InvalidParameters("theta must be one of 0, pi/2, -pi/2, pi");
}

MatchReport boundary_match_check(cplx a, const OrientedAsymptoticValue& d, double t_lo, double t_hi, int samples,
                                 double t0) {
    d.validate();
    const double s = sgn(a.imag());
    if (a.imag() == 0.0) throw DomainError("Im a must be nonzero");
    auto near = [](cplx u, cplx v) { return std::abs(u - v) <= 1e-12 * std::max(1.0, std::abs(u)); };
    MatchReport rep;
    if (near(d.a, a) && std::abs(d.theta + s * kPi / 2) < 1e-12) rep.clause = 1;
    else if (near(d.a, std::conj(a)) && std::abs(d.theta - s * kPi / 2) < 1e-12) rep.clause = 2;
    else throw PreconditionMismatch("oriented asymptotic value matches neither boundary clause");

    const StretchExtension Q(a);
    rep.t1 = std::max(t0, Q.Y);
    if (t_lo < rep.t1 - 1e-14) throw DomainError("t range must start at t1 = " + std::to_string(rep.t1));
    if (!(t_hi >= t_lo) || samples < 2) throw InvalidParameters("need t_hi >= t_lo and at least two samples");

    const cplx dir = std::polar(1.0, d.theta);
    for (int n = 0; n < samples; ++n) {
        const double t = t_lo + (t_hi - t_lo) * n / (samples - 1);
        const cplx value = rep.clause == 1 ? modified_tangent_T(Q, I * t) - a
                                             : modified_tangent_T(Q, -I * t) - std::conj(a);
        rep.max_mismatch = std::max(rep.max_mismatch, std::abs(value - dir * std::exp(-t)));
    }
    rep.samples = samples;
    return rep;
}

}  // namespace blaine
