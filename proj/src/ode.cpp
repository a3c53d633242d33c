#include "blaine/ode.hpp"

#include "blaine/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace blaine {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<cplx, 4>;

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Straight pieces of a path, parametrized by arclength.
struct Piece {
    double s0, s1;
    cplx z0, unit;
};

std::vector<Piece> pieces_of(const PathSpec& path) {
    std::vector<Piece> out;
    if (path.kind == PathSpec::Kind::ray) {
        out.push_back({0.0, path.r_trunc, path.anchors.front(), std::polar(1.0, path.direction)});
        return out;
    }
    double s = 0.0;
    for (std::size_t i = 1; i < path.anchors.size(); ++i) {
        const cplx d = path.anchors[i] - path.anchors[i - 1];
        const double len = std::abs(d);
        out.push_back({s, s + len, path.anchors[i - 1], d / len});
        s += len;
    }
    return out;
}

bool is_2pi_multiple(double x) { return std::abs(std::remainder(x, 2.0 * std::numbers::pi)) < 1e-9; }

}  // namespace

// ---------------------------------------------------------------------------
// Coefficient models

CoefficientModel CoefficientModel::constant(double c) {
    CoefficientModel m;
    m.kind = Kind::constant;
    m.coeffs = {c};
    return m;
}

CoefficientModel CoefficientModel::polynomial(std::vector<double> ascending) {
    CoefficientModel m;
    m.kind = Kind::polynomial;
    m.coeffs = std::move(ascending);
    m.validate();
    return m;
}

CoefficientModel CoefficientModel::elementary(std::vector<double> p) {
    CoefficientModel m;
    m.kind = Kind::elementary;
    m.coeffs = std::move(p);
    m.validate();
    return m;
}

CoefficientModel CoefficientModel::from_callable(std::function<cplx(cplx)> f) {
    CoefficientModel m;
    m.kind = Kind::custom;
    m.coeffs.clear();
    m.custom = std::move(f);
    m.validate();
    return m;
}

void CoefficientModel::validate() const {
    if (kind == Kind::custom) {
        if (!custom) throw InvalidParameters("custom coefficient without a callable");
        return;
    }
    if (kind == Kind::constant && coeffs.size() != 1) throw InvalidParameters("constant model needs one coefficient");
    if (coeffs.empty()) throw InvalidParameters("polynomial needs at least one coefficient");
    for (double c : coeffs)
        if (!std::isfinite(c)) throw InvalidParameters("coefficient not finite");
}

cplx CoefficientModel::operator()(cplx z) const {
    switch (kind) {
        case Kind::constant:
            return coeffs[0];
        case Kind::polynomial:
            return poly_eval(coeffs, z);
        case Kind::elementary: {
            const auto d1 = poly_derivative(coeffs);
            const auto d2 = poly_derivative(d1);
            const cplx pp = poly_eval(d1, z);
            return poly_eval(d2, z) - pp * pp - std::exp(4.0 * poly_eval(coeffs, z));
        }
        case Kind::custom:
            return custom(z);
    }
    return 0.0;
}

cplx CoefficientModel::derivative(cplx z) const {
    switch (kind) {
        case Kind::constant:
            return 0.0;
        case Kind::polynomial:
            return poly_eval(poly_derivative(coeffs), z);
        case Kind::elementary: {
            const auto d1 = poly_derivative(coeffs);
            const auto d2 = poly_derivative(d1);
            const auto d3 = poly_derivative(d2);
            const cplx p1 = poly_eval(d1, z);
            return poly_eval(d3, z) - 2.0 * p1 * poly_eval(d2, z) - 4.0 * p1 * std::exp(4.0 * poly_eval(coeffs, z));
        }
        case Kind::custom: {
            const double h = 1e-5 * std::max(1.0, std::abs(z));
            return (custom(z + h) - custom(z - h)) / (2.0 * h);
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Integration

SolutionPair integrate_equation(const CoefficientModel& A, const PathSpec& path, const InitialData& init, double tol) {
    if (!(tol > 0.0)) throw InvalidParameters("tol must be positive");
    A.validate();
    path.validate();

    const cplx w0 = init.w1 * init.dw2 - init.dw1 * init.w2;
    if (std::abs(w0) == 0.0 || !finite(w0)) throw InvalidParameters("initial data are linearly dependent");

    SolutionPair pair;
    pair.path = path;
    pair.A = A;
    pair.tol = tol;
    pair.wronskian = 1.0;

    SolutionState st;
    st.s = 0.0;
    st.z = path.anchors.front();
    st.w1 = init.w1;
    st.dw1 = init.dw1;
    st.w2 = init.w2 / w0;
    st.dw2 = init.dw2 / w0;
    pair.samples.push_back(st);

    const double end = path.length();
    // Record every accepted step; advance() handles the segment joints.
    for (const Piece& pc : pieces_of(path)) {
        State y{st.w1, st.dw1, st.w2, st.dw2};
        auto rhs = [&](const State& x, State& dx, double s) {
            const cplx z = pc.z0 + (s - pc.s0) * pc.unit;
            const cplx a = A(z);
            if (!finite(a)) {
                std::ostringstream os;
                os << "coefficient not finite at z = " << z;
                throw StepUnderflow(os.str());
            }
            dx[0] = pc.unit * x[1];
            dx[1] = -pc.unit * a * x[0];
            dx[2] = pc.unit * x[3];
            dx[3] = -pc.unit * a * x[2];
        };
        auto observe = [&](const State& x, double s) {
            if (s <= pair.samples.back().s) return;
            if (s < pc.s1 && s - pair.samples.back().s < 1e-12 * std::max(1.0, end))
                throw StepUnderflow("step size collapsed near s = " + std::to_string(s));
            for (const cplx& v : x)
                if (!finite(v)) throw StepUnderflow("solution left the representable range");
            SolutionState rec;
            rec.s = s;
            rec.z = pc.z0 + (s - pc.s0) * pc.unit;
            rec.w1 = x[0];
            rec.dw1 = x[1];
            rec.w2 = x[2];
            rec.dw2 = x[3];
            pair.samples.push_back(rec);
        };
        const double eps = tol / 10.0;
        auto stepper = odeint::make_controlled(eps, eps, odeint::runge_kutta_dopri5<State>());
        const double h0 = std::min(0.01, pc.s1 - pc.s0);
        try {
            odeint::integrate_adaptive(stepper, rhs, y, pc.s0, pc.s1, h0, observe);
        } catch (const odeint::step_adjustment_error& e) {
            throw StepUnderflow(e.what());
        }
        st = pair.samples.back();
    }
    pair.samples.back().s = end;
    return pair;
}

cplx SolutionPair::point(double s) const {
    const auto pcs = pieces_of(path);
    for (const Piece& pc : pcs)
        if (s <= pc.s1) return pc.z0 + (s - pc.s0) * pc.unit;
    return pcs.back().z0 + (s - pcs.back().s0) * pcs.back().unit;
}

SolutionState SolutionPair::advance(SolutionState from, double s_to) const {
    if (s_to == from.s) return from;
    for (const Piece& pc : pieces_of(path)) {
        if (pc.s1 <= from.s || pc.s0 >= s_to) continue;
        const double stop = std::min(pc.s1, s_to);
        if (stop <= from.s) continue;
        State y{from.w1, from.dw1, from.w2, from.dw2};
        auto rhs = [&](const State& x, State& dx, double s) {
            const cplx a = A(pc.z0 + (s - pc.s0) * pc.unit);
            dx[0] = pc.unit * x[1];
            dx[1] = -pc.unit * a * x[0];
            dx[2] = pc.unit * x[3];
            dx[3] = -pc.unit * a * x[2];
        };
        const double eps = tol / 10.0;
        auto stepper = odeint::make_controlled(eps, eps, odeint::runge_kutta_dopri5<State>());
        odeint::integrate_adaptive(stepper, rhs, y, from.s, stop, std::min(0.01, stop - from.s));
        from.s = stop;
        from.z = pc.z0 + (stop - pc.s0) * pc.unit;
        from.w1 = y[0];
        from.dw1 = y[1];
        from.w2 = y[2];
        from.dw2 = y[3];
    }
    return from;
}

SolutionState SolutionPair::at(double s) const {
    if (samples.empty()) throw InvalidParameters("empty solution pair");
    if (s < 0.0 || s > samples.back().s * (1.0 + 1e-15) + 1e-15)
        throw InvalidParameters("arclength outside the integrated path");
    auto it = std::upper_bound(samples.begin(), samples.end(), s,
                               [](double v, const SolutionState& st) { return v < st.s; });
    const SolutionState& base = (it == samples.begin()) ? samples.front() : *(it - 1);
    if (base.s == s) return base;
    return advance(base, s);
}

double SolutionPair::arclength_of(cplx z) const {
    for (const Piece& pc : pieces_of(path)) {
        const cplx rel = (z - pc.z0) / pc.unit;
        const double len = pc.s1 - pc.s0;
        const double scale = 1e-12 * std::max(1.0, std::abs(z));
        if (std::abs(rel.imag()) <= scale && rel.real() >= -scale && rel.real() <= len + scale)
            return std::clamp(pc.s0 + rel.real(), pc.s0, pc.s1);
    }
    std::ostringstream os;
    os << "point " << z << " is not on the path";
    throw InvalidParameters(os.str());
}

double SolutionPair::max_wronskian_drift() const {
    double drift = 0.0;
    const cplx w0 = samples.front().wronskian();
    for (const auto& st : samples) drift = std::max(drift, std::abs(st.wronskian() - w0));
    return drift;
}

// ---------------------------------------------------------------------------
// Products, ratios, Schwarzians

ProductE product_E(const SolutionPair& pair) {
    const cplx w = pair.samples.front().wronskian();
    if (std::abs(w - 1.0) > 100.0 * pair.tol) {
        std::ostringstream os;
        os << "Wronskian " << w << " differs from 1";
        throw NotNormalized(os.str());
    }
    return ProductE(pair);
}

JetSample ProductE::jets(const SolutionState& st) const {
    const cplx a = pair_.A(st.z);
    const cplx e = st.w1 * st.w2;
    const cplx e1 = st.w1 * st.dw2 + st.dw1 * st.w2;
    const cplx e2 = -2.0 * a * e + 2.0 * st.dw1 * st.dw2;
    const cplx e3 = -2.0 * pair_.A.derivative(st.z) * e - 4.0 * a * e1;
    return {st.z, e, e1, e2, e3};
}

std::vector<JetSample> ProductE::samples() const {
    std::vector<JetSample> out;
    out.reserve(pair_.samples.size());
    for (const auto& st : pair_.samples) out.push_back(jets(st));
    return out;
}

JetSample ratio_F(const SolutionPair& pair, const SolutionState& st) {
    if (std::abs(st.w1) <= 1e-8 * std::abs(st.dw1) || st.w1 == 0.0) {
        std::ostringstream os;
        os << "w1 vanishes near z = " << st.z;
        throw PoleAt(os.str());
    }
    const cplx w = st.wronskian();
    const cplx a = pair.A(st.z);
    const cplx inv = 1.0 / st.w1;
    const cplx r = st.dw1 * inv;  // w1'/w1
    JetSample j;
    j.z = st.z;
    j.value = st.w2 * inv;
    j.d1 = w * inv * inv;
    j.d2 = -2.0 * j.d1 * r;
    j.d3 = 2.0 * j.d1 * (a + 3.0 * r * r);
    return j;
}

JetSample ratio_F(const SolutionPair& pair, double s) { return ratio_F(pair, pair.at(s)); }

std::vector<JetSample> ratio_F(const SolutionPair& pair) {
    std::vector<JetSample> out;
    for (const auto& st : pair.samples) {
        try {
            out.push_back(ratio_F(pair, st));
        } catch (const PoleAt&) {
        }
    }
    return out;
}

cplx bank_laine_E_from_F(const JetSample& F) {
    if (F.d1 == 0.0 || !finite(F.d1)) throw CriticalPoint("F' vanishes");
    return F.value / F.d1;
}

cplx coefficient_from_E(const JetSample& E) {
    if (E.value == 0.0 || std::abs(E.value) <= 1e-12 * std::abs(E.d1)) throw ZeroOfE("E vanishes at the sample point");
    const cplx q1 = E.d1 / E.value;
    const cplx q2 = E.d2 / E.value;
    return (-2.0 * q2 + q1 * q1 - 1.0 / (E.value * E.value)) / 4.0;
}

cplx schwarzian(const JetSample& F) {
    if (F.d1 == 0.0 || !finite(F.d1)) throw CriticalPoint("F' vanishes");
    const cplx r2 = F.d2 / F.d1;
    return F.d3 / F.d1 - 1.5 * r2 * r2;
}

// ---------------------------------------------------------------------------
// Elementary family

ElementaryFamily elementary_family(std::vector<double> p) {
    ElementaryFamily fam;
    fam.A = CoefficientModel::elementary(p);
    fam.p = std::move(p);
    return fam;
}

SolutionState ElementaryFamily::solutions(cplx z, double tol) const {
    auto weight = [this](cplx t) { return std::exp(2.0 * poly_eval(p, t)); };
    const cplx integral = (z == 0.0) ? cplx{0.0, 0.0} : integrate_segment(weight, 0.0, z, tol).value;
    const cplx pz = poly_eval(p, z);
    const cplx dp = poly_eval(poly_derivative(p), z);
    const cplx e2p = std::exp(2.0 * pz);
    const double k = 1.0 / std::sqrt(2.0);
    SolutionState st;
    st.z = z;
    st.w1 = k * std::exp(-pz - integral);
    st.w2 = k * std::exp(-pz + integral);
    st.dw1 = st.w1 * (-dp - e2p);
    st.dw2 = st.w2 * (-dp + e2p);
    return st;
}

InitialData ElementaryFamily::initial_data(cplx z0, double tol) const {
    const SolutionState st = solutions(z0, tol);
    return {st.w1, st.dw1, st.w2, st.dw2};
}

cplx ElementaryFamily::E(cplx z) const { return 0.5 * std::exp(-2.0 * poly_eval(p, z)); }

cplx ElementaryFamily::log_E(cplx z) const { return std::log(0.5) - 2.0 * poly_eval(p, z); }

Taylor3 ElementaryFamily::E_taylor(cplx z) const {
    const Taylor3 x = Taylor3::variable(z);
    Taylor3 acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Taylor3::constant(*it);
    return 0.5 * exp(-2.0 * acc);
}

// ---------------------------------------------------------------------------
// Constant-Schwarzian family

Theorem4Family theorem4_family(const std::array<double, 4>& mobius, double a1, double b1, double a2, double b2) {
    for (double v : {a1, b1, a2, b2, mobius[0], mobius[1], mobius[2], mobius[3]})
        if (!std::isfinite(v)) throw InvalidParameters("parameters must be finite");
    if (mobius[0] * mobius[3] - mobius[1] * mobius[2] == 0.0) throw InvalidParameters("L is not invertible");
    if (a1 == 0.0 && a2 == 0.0) throw InvalidParameters("a1 and a2 both vanish");

    Theorem4Family f;
    f.mobius = mobius;
    f.a1 = a1;
    f.b1 = b1;
    f.a2 = a2;
    f.b2 = b2;
    using S = Theorem4Family::Shape;
    if (a2 == 0.0) {
        if (is_2pi_multiple(b2)) throw InvalidParameters("denominator vanishes identically");
        f.shape_ = S::exp_numerator;
        f.frequency_ = a1;
    } else if (a1 == 0.0) {
        if (is_2pi_multiple(b1)) throw InvalidParameters("numerator vanishes identically");
        f.shape_ = S::exp_denominator;
        f.frequency_ = a2;
    } else if (a1 == a2) {
        if (is_2pi_multiple(b1 - b2)) throw InvalidParameters("ratio is identically 1");
        f.shape_ = S::mobius_of_exp;
        f.frequency_ = a1;
    } else if (a1 == -a2 && is_2pi_multiple(b1 + b2)) {
        f.shape_ = S::pure_exp;
        f.frequency_ = a1;
    } else if (a1 == 2.0 * a2 && is_2pi_multiple(b1 - 2.0 * b2)) {
        f.shape_ = S::one_plus_exp;
        f.frequency_ = a2;
    } else if (a2 == 2.0 * a1 && is_2pi_multiple(b2 - 2.0 * b1)) {
        f.shape_ = S::reciprocal_one_plus_exp;
        f.frequency_ = a1;
    } else {
        throw InvalidParameters("F has critical points for these parameters; its Schwarzian is not constant");
    }
    return f;
}

double Theorem4Family::schwarzian_constant() const { return 0.5 * frequency_ * frequency_; }

Taylor3 Theorem4Family::taylor(cplx z) const {
    const cplx i{0.0, 1.0};
    const Taylor3 x = Taylor3::variable(z);
    auto phase = [&](double a, double b) { return exp(i * (a * x - Taylor3::constant(b))); };
    auto guard = [&](const Taylor3& d) {
        if (std::abs(d.c[0]) < 1e-14) {
            std::ostringstream os;
            os << "denominator vanishes at z = " << z;
            throw PoleAt(os.str());
        }
    };
    Taylor3 g;
    using S = Shape;
    switch (shape_) {
        case S::exp_numerator:
            g = (1.0 - phase(a1, b1)) / Taylor3::constant(1.0 - std::exp(-i * b2));
            break;
        case S::exp_denominator: {
            const Taylor3 den = 1.0 - phase(a2, b2);
            guard(den);
            g = Taylor3::constant(1.0 - std::exp(-i * b1)) / den;
            break;
        }
        case S::mobius_of_exp: {
            const Taylor3 den = 1.0 - phase(a2, b2);
            guard(den);
            g = (1.0 - phase(a1, b1)) / den;
            break;
        }
        case S::pure_exp:
            g = -1.0 * exp(i * (a1 * x + Taylor3::constant(b2)));
            break;
        case S::one_plus_exp:
            g = 1.0 + phase(a2, b2);
            break;
        case S::reciprocal_one_plus_exp: {
            const Taylor3 den = 1.0 + phase(a1, b1);
            guard(den);
            g = Taylor3::constant(1.0) / den;
            break;
        }
    }
    const Taylor3 den = mobius[2] * g + Taylor3::constant(mobius[3]);
    guard(den);
    return (mobius[0] * g + Taylor3::constant(mobius[1])) / den;
}

Taylor3 sincos_taylor(cplx z) {
    const Taylor3 x = Taylor3::variable(z);
    return sin(x) * cos(x);
}

Taylor3 tan_taylor(cplx z) { return tan(Taylor3::variable(z)); }

}  // namespace blaine
