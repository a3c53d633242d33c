#include "blaine/growth.hpp"

#include "blaine/errors.hpp"
#include "blaine/families.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace blaine {

namespace {

constexpr double kPi = std::numbers::pi;

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit fit;
    const double den = n * sxx - sx * sx;
    fit.slope = (den == 0.0) ? 0.0 : (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.slope * x[i] - fit.intercept;
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

double median3(double a, double b, double c) { return std::max(std::min(a, b), std::min(std::max(a, b), c)); }

}  // namespace

LogModulusFn log_modulus_of(ComplexFn f) {
    return [f = std::move(f)](cplx z) {
        const double m = std::abs(f(z));
        if (!std::isfinite(m)) {
            std::ostringstream os;
            os << "|f| not representable at z = " << z;
            throw Overflow(os.str());
        }
        return std::log(m);
    };
}

// ---------------------------------------------------------------------------
// Real zeros

ZeroList find_real_zeros(const RealJetFn& E, double lo, double hi, double sep_floor) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw InvalidParameters("interval must be finite and nonempty");
    if (!(sep_floor > 0.0)) throw InvalidParameters("sep_floor must be positive");

    ZeroList out;
    out.lo = lo;
    out.hi = hi;
    out.sep_floor = sep_floor;

    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / (0.5 * sep_floor)));
    const double step = (hi - lo) / static_cast<double>(n);

    auto polish = [&](double a, double b) {
        auto fn = [&](double x) {
            const ValueAndSlope v = E(x);
            return std::make_pair(v.value, v.slope);
        };
        std::uintmax_t iters = 60;
        return boost::math::tools::newton_raphson_iterate(fn, 0.5 * (a + b), a, b, 52, iters);
    };
    auto record = [&](double x, double scale) {
        const ValueAndSlope v = E(x);
        if (std::abs(v.value) > 1e-10 * std::max(scale, 1e-300) && std::abs(v.value) > 1e-14) {
            std::ostringstream os;
            os << "zero near x = " << x << " did not converge (|E| = " << std::abs(v.value) << ")";
            throw NoConvergence(os.str());
        }
        if (!out.zeros.empty() && x - out.zeros.back() < sep_floor) {
            std::ostringstream os;
            os << "zeros at " << out.zeros.back() << " and " << x << " are closer than " << sep_floor;
            throw ClusteringDetected(os.str());
        }
        out.zeros.push_back(x);
        out.slopes.push_back(v.slope);
        out.residuals.push_back(std::abs(std::abs(v.slope) - 1.0));
    };

    // A bracket without a sign change can still hold two zeros closer than
    // the scan step: the slope changes sign and f crosses over at the
    // critical point.
    auto hidden_pair = [&](double a, double b, double fa, double da, double db) {
        if (fa == 0.0 || !((da < 0.0) != (db < 0.0))) return;
        double l = a, r = b;
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (l + r);
            if ((E(m).slope < 0.0) == (da < 0.0)) l = m;
            else r = m;
        }
        const double fc = E(0.5 * (l + r)).value;
        if (fc != 0.0 && (fc < 0.0) != (fa < 0.0)) {
            std::ostringstream os;
            os << "two zeros inside [" << a << ", " << b << "], closer than " << sep_floor;
            throw ClusteringDetected(os.str());
        }
    };

    double x_prev = lo;
    ValueAndSlope v_prev = E(lo);
    if (v_prev.value == 0.0) record(lo, 1.0);
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = (i == n) ? hi : lo + static_cast<double>(i) * step;
        const ValueAndSlope v = E(x);
        const double f = v.value, f_prev = v_prev.value;
        if (f == 0.0) {
            record(x, std::abs(f_prev));
        } else if (f_prev != 0.0 && (f_prev < 0.0) != (f < 0.0)) {
            record(polish(x_prev, x), std::max(std::abs(f_prev), std::abs(f)));
        } else if (f_prev == 0.0) {
            // just right of an exact zero f takes the sign of the slope
            if (v_prev.slope != 0.0 && (v_prev.slope < 0.0) != (f < 0.0))
                record(polish(x_prev + 1e-3 * step, x), std::abs(f));
        } else {
            hidden_pair(x_prev, x, f_prev, v_prev.slope, v.slope);
        }
        x_prev = x;
        v_prev = v;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Argument principle

int count_zeros_argument_principle(const ComplexFn& f, cplx c0, cplx c1, double tol) {
    const double x0 = std::min(c0.real(), c1.real()), x1 = std::max(c0.real(), c1.real());
    const double y0 = std::min(c0.imag(), c1.imag()), y1 = std::max(c0.imag(), c1.imag());
    if (!(x1 > x0 && y1 > y0)) throw InvalidParameters("rectangle is degenerate");
    const cplx corners[5] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}};

    double min_mod = std::numeric_limits<double>::infinity();
    double max_mod = 0.0;
    auto sample = [&](cplx z) {
        const cplx v = f(z);
        const double m = std::abs(v);
        if (!std::isfinite(m)) {
            std::ostringstream os;
            os << "f not finite on the boundary at " << z;
            throw PoleOnPath(os.str());
        }
        min_mod = std::min(min_mod, m);
        max_mod = std::max(max_mod, m);
        return v;
    };

    double total = 0.0;
    std::function<void(cplx, cplx, cplx, cplx, int)> walk = [&](cplx a, cplx b, cplx fa, cplx fb, int depth) {
        const double d = std::arg(fb / fa);
        if (std::abs(d) > kPi / 8.0 && depth < 40) {
            const cplx mid = 0.5 * (a + b);
            const cplx fm = sample(mid);
            if (fm == 0.0) throw BoundaryZero("f vanishes on the boundary");
            walk(a, mid, fa, fm, depth + 1);
            walk(mid, b, fm, fb, depth + 1);
            return;
        }
        total += d;
    };

    constexpr int kPerEdge = 64;
    for (int e = 0; e < 4; ++e) {
        cplx za = corners[e];
        cplx fa = sample(za);
        for (int k = 1; k <= kPerEdge; ++k) {
            const cplx zb = corners[e] + (corners[e + 1] - corners[e]) * (static_cast<double>(k) / kPerEdge);
            const cplx fb = sample(zb);
            if (fa == 0.0 || fb == 0.0) throw BoundaryZero("f vanishes on the boundary");
            walk(za, zb, fa, fb, 0);
            za = zb;
            fa = fb;
        }
    }
    if (min_mod <= tol * max_mod) {
        std::ostringstream os;
        os << "boundary minimum modulus " << min_mod << " below threshold";
        throw BoundaryZero(os.str());
    }
    const double turns = total / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.05) throw NoConvergence("winding number is not close to an integer");
    return static_cast<int>(rounded);
}

// ---------------------------------------------------------------------------
// Order and exponent of convergence

double log_max_modulus(const LogModulusFn& logabs, double r) {
    constexpr int kSamples = 256;
    const double dtheta = 2.0 * kPi / kSamples;
    std::vector<std::pair<double, double>> vals;
    vals.reserve(kSamples);
    for (int j = 0; j < kSamples; ++j) {
        const double th = j * dtheta;
        const double v = logabs(std::polar(r, th));
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
            std::ostringstream os;
            os << "log M not representable at r = " << r;
            throw Overflow(os.str());
        }
        vals.emplace_back(v, th);
    }
    std::partial_sort(vals.begin(), vals.begin() + 3, vals.end(), std::greater<>());
    double best = vals.front().first;
    for (int k = 0; k < 3; ++k) {
        const double th = vals[k].second;
        auto neg = [&](double t) { return -logabs(std::polar(r, t)); };
        const auto [t, v] = boost::math::tools::brent_find_minima(neg, th - dtheta, th + dtheta, 40);
        (void)t;
        best = std::max(best, -v);
    }
    return best;
}

GrowthEstimate estimate_order(const LogModulusFn& logabs, const std::vector<double>& r_ladder) {
    if (r_ladder.size() < 8) throw InvalidParameters("order estimate needs at least 8 rungs");
    for (std::size_t i = 1; i < r_ladder.size(); ++i)
        if (!(r_ladder[i] > r_ladder[i - 1]) || !(r_ladder[0] > 0.0)) throw InvalidParameters("ladder must increase");

    GrowthEstimate est;
    std::vector<double> xs, ys, lms;
    for (std::size_t i = r_ladder.size() / 2; i < r_ladder.size(); ++i) {
        const double lm = log_max_modulus(logabs, r_ladder[i]);
        if (lm > 0.0) {
            xs.push_back(std::log(r_ladder[i]));
            ys.push_back(std::log(lm));
            lms.push_back(lm);
        }
    }
    est.r_min = r_ladder[r_ladder.size() / 2];
    est.r_max = r_ladder.back();
    if (xs.size() < 2) return est;  // bounded on the ladder: order 0
    // log M affine in log r means polynomial growth. The log-log slope of
    // such functions decays only like 1/log r, so it is reported as 0.
    const LineFit affine = least_squares(xs, lms);
    const double span = *std::max_element(lms.begin(), lms.end()) - *std::min_element(lms.begin(), lms.end());
    if (xs.size() >= 3 && affine.rms <= 1e-3 * std::max(span, 1e-300)) {
        est.residual = affine.rms;
        return est;
    }
    const LineFit fit = least_squares(xs, ys);
    est.rho_hat = std::max(0.0, fit.slope);
    est.residual = fit.rms;
    return est;
}

GrowthEstimate estimate_lambda(const std::vector<double>& zeros) {
    GrowthEstimate est;
    if (zeros.empty()) return est;
    if (zeros.size() < 30) {
        std::ostringstream os;
        os << zeros.size() << " zeros given, at least 30 needed";
        throw TooFewZeros(os.str());
    }
    std::vector<double> r;
    r.reserve(zeros.size());
    for (double z : zeros) r.push_back(std::abs(z));
    std::sort(r.begin(), r.end());
    std::vector<double> xs, ys;
    for (std::size_t k = r.size() / 2; k < r.size(); ++k) {
        if (r[k] <= 0.0) continue;
        // n(r) counts zeros of modulus at most r.
        const auto count = std::upper_bound(r.begin(), r.end(), r[k]) - r.begin();
        xs.push_back(std::log(r[k]));
        ys.push_back(std::log(static_cast<double>(count)));
    }
    est.r_min = r[r.size() / 2];
    est.r_max = r.back();
    const LineFit fit = least_squares(xs, ys);
    est.rho_hat = std::max(0.0, fit.slope);
    est.residual = fit.rms;
    return est;
}

GrowthEstimate estimate_lambda(const ZeroList& zeros) { return estimate_lambda(zeros.zeros); }

// ---------------------------------------------------------------------------
// Indicators

std::string to_string(IndicatorTemplate t) {
    switch (t) {
        case IndicatorTemplate::cos_rho_theta:
            return "c*cos(rho*theta)";
        case IndicatorTemplate::sin_rho_abs_theta:
            return "c*sin(rho*|theta|)";
        case IndicatorTemplate::sin_rho_abs_theta_minus_pi:
            return "c*sin(rho*(pi-|theta|))";
        case IndicatorTemplate::none:
            break;
    }
    return "none";
}

double template_value(IndicatorTemplate t, double rho, double theta) {
    switch (t) {
        case IndicatorTemplate::cos_rho_theta:
            return std::cos(rho * theta);
        case IndicatorTemplate::sin_rho_abs_theta:
            return std::sin(rho * std::abs(theta));
        case IndicatorTemplate::sin_rho_abs_theta_minus_pi:
            return std::sin(rho * (kPi - std::abs(theta)));
        case IndicatorTemplate::none:
            break;
    }
    return 0.0;
}

std::vector<double> uniform_theta_grid(int n) {
    if (n < 2) throw InvalidParameters("theta grid needs at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = -kPi + 2.0 * kPi * i / (n - 1);
    return g;
}

std::vector<double> geometric_ladder(double r_min, double r_max, int rungs) {
    if (!(r_min > 0.0 && r_max > r_min && rungs >= 2)) throw InvalidParameters("bad ladder specification");
    std::vector<double> out(static_cast<std::size_t>(rungs));
    const double q = std::pow(r_max / r_min, 1.0 / (rungs - 1));
    for (int i = 0; i < rungs; ++i) out[static_cast<std::size_t>(i)] = r_min * std::pow(q, i);
    out.back() = r_max;
    return out;
}

IndicatorSample estimate_indicator(const LogModulusFn& logabs, double rho, const std::vector<double>& theta,
                                   const std::vector<double>& r_ladder, IndicatorTemplate tmpl) {
    if (!(rho > 0.0)) throw InvalidParameters("rho must be positive");
    if (r_ladder.size() < 3) throw InvalidParameters("indicator needs at least 3 rungs");
    if (theta.empty() || !std::is_sorted(theta.begin(), theta.end())) throw InvalidParameters("theta grid must be sorted");

    double spacing = 0.02;
    for (std::size_t i = 1; i < theta.size(); ++i) spacing = std::min(spacing, theta[i] - theta[i - 1]);
    const double delta = std::min(0.5 * spacing, 0.01);

    IndicatorSample out;
    out.theta = theta;
    out.rho = rho;
    out.tmpl = tmpl;
    out.h.reserve(theta.size());
    const std::size_t top = r_ladder.size();
    for (double th : theta) {
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            const double r = r_ladder[top - 3 + static_cast<std::size_t>(k)];
            const double scale = std::pow(r, rho);
            double v = logabs(std::polar(r, th));
            if (!(v >= -scale)) {
                // Exceptional window: take the best nearby direction.
                constexpr int kSub = 16;
                double best = -std::numeric_limits<double>::infinity();
                for (int j = 0; j <= kSub; ++j) {
                    const double t = th - delta + 2.0 * delta * j / kSub;
                    const double w = logabs(std::polar(r, t));
                    if (std::isfinite(w)) best = std::max(best, w);
                }
                v = std::isfinite(best) ? best : -scale;
            }
            vals[k] = v / scale;
        }
        const double sp = std::max({vals[0], vals[1], vals[2]}) - std::min({vals[0], vals[1], vals[2]});
        out.spread = std::max(out.spread, sp);
        out.h.push_back(median3(vals[0], vals[1], vals[2]));
    }
    out.low_confidence = out.spread > 0.1;

    if (tmpl != IndicatorTemplate::none) {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            const double t = template_value(tmpl, rho, theta[i]);
            num += out.h[i] * t;
            den += t * t;
        }
        out.c = den > 0.0 ? num / den : 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i)
            out.template_residual =
                std::max(out.template_residual, std::abs(out.h[i] - out.c * template_value(tmpl, rho, theta[i])));
    }
    return out;
}

IndicatorSample indicator_of_A_from_E(const IndicatorSample& hE) {
    IndicatorSample out = hE;
    for (std::size_t i = 0; i < out.h.size(); ++i) {
        if (!std::isfinite(hE.h[i])) throw InvalidParameters("h_E must be finite on the grid");
        out.h[i] = 2.0 * std::max(-hE.h[i], 0.0);
    }
    out.tmpl = IndicatorTemplate::none;
    out.template_residual = 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Diagnostics

BoundedRatioReport check_bounded_ratio(const ComplexFn& E, int direction, const std::vector<double>& x_ladder) {
    if (direction != 1 && direction != -1) throw InvalidParameters("direction must be +1 or -1");
    BoundedRatioReport rep;
    for (double x : x_ladder) {
        if (!(x > 0.0)) throw InvalidParameters("ladder entries must be positive");
        const double ratio = std::abs(E(cplx(direction * x, 0.0))) / x;
        rep.x.push_back(x);
        rep.ratio.push_back(ratio);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
    }
    if (rep.ratio.empty()) return rep;
    rep.tail_ratio = rep.ratio.back();
    const std::size_t half = rep.ratio.size() / 2;
    bool increasing = rep.ratio.size() - half >= 2;
    for (std::size_t i = half + 1; i < rep.ratio.size(); ++i)
        if (!(rep.ratio[i] > rep.ratio[i - 1])) increasing = false;
    rep.unbounded = increasing && rep.ratio.back() > 2.0 * rep.ratio[half];
    return rep;
}

std::vector<cplx> asymptotic_values_Fm(int m, double tol) {
    if (m < 1) throw InvalidParameters("m must be >= 1");
    std::vector<cplx> out;
    auto integrand = [m](cplx t) { return std::exp(ipow(t, m)); };
    for (int k = 0; k < m; ++k) {
        const double phi = (2.0 * k + 1.0) * kPi / m;
        const QuadratureResult q = integrate_along(PathSpec::ray(0.0, phi, 1e3), integrand, tol);
        out.push_back(std::exp(q.value));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classification table

std::string to_string(CaseTag c) {
    switch (c) {
        case CaseTag::i:
            return "i";
        case CaseTag::ii:
            return "ii";
        case CaseTag::iii:
            return "iii";
    }
    return "?";
}

CaseTag case_from_string(const std::string& s) {
    if (s == "i") return CaseTag::i;
    if (s == "ii") return CaseTag::ii;
    if (s == "iii") return CaseTag::iii;
    throw InvalidParameters("case must be i, ii or iii");
}

ClassificationResult classify_orders(CaseTag c, int m) {
    ClassificationResult r;
    r.case_tag = c;
    r.m = m;
    switch (c) {
        case CaseTag::i:
            if (m < 1) throw InvalidM("case i requires m≥1");
            r.rho = m;
            r.indicator = IndicatorTemplate::cos_rho_theta;
            break;
        case CaseTag::ii:
            if (m < 2) throw InvalidM("case ii requires m≥2");
            r.rho = m - 0.5;
            r.lambda = r.rho;
            r.indicator = IndicatorTemplate::sin_rho_abs_theta;
            break;
        case CaseTag::iii:
            if (m < 4 || m % 2 != 0) throw InvalidM("case iii requires m is even, m≥4");
            r.rho = m - 1.0;
            r.lambda = r.rho;
            r.indicator = IndicatorTemplate::sin_rho_abs_theta;
            break;
    }
    return r;
}

}  // namespace blaine
