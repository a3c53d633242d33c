#include "blaine/quadrature.hpp"

#include "blaine/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace blaine {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
    double lo = 0.0, hi = 0.0;  // parameter range inside [0, 1]
    cplx value;
    double err = 0.0;
    double resabs = 0.0;
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.lo > y.lo;
    }
};

class SegmentRule {
public:
    SegmentRule(const Integrand& f, cplx a, cplx b) : f_(f), a_(a), delta_(b - a) {}

    Panel eval(double lo, double hi, std::size_t& evaluations) const {
        using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
        using G = boost::math::quadrature::gauss<double, 7>;
        const auto& x = GK::abscissa();
        const auto& wk = GK::weights();
        const auto& wg = G::weights();

        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        cplx kron{0.0, 0.0};
        cplx gauss{0.0, 0.0};
        double resabs = 0.0;
        // Boost stores non-negative abscissae; even indices of the 15-point
        // Kronrod set are the 7-point Gauss nodes.
        for (std::size_t i = 0; i < x.size(); ++i) {
            const int copies = (x[i] == 0.0) ? 1 : 2;
            for (int s = 0; s < copies; ++s) {
                const double t = mid + (s == 0 ? 1.0 : -1.0) * half * x[i];
                const cplx v = sample(t) * delta_;
                ++evaluations;
                kron += wk[i] * v;
                resabs += wk[i] * std::abs(v);
                if (i % 2 == 0) gauss += wg[i / 2] * v;
            }
        }
        Panel p;
        p.lo = lo;
        p.hi = hi;
        p.value = kron * half;
        p.resabs = resabs * half;
        p.err = std::abs((kron - gauss) * half);
        return p;
    }

private:
    cplx sample(double t) const {
        const cplx z = a_ + t * delta_;
        const cplx v = f_(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            std::ostringstream os;
            os << "non-finite integrand at z = " << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
            throw PoleOnPath(os.str());
        }
        return v;
    }

    const Integrand& f_;
    cplx a_;
    cplx delta_;
};

}  // namespace

PathSpec PathSpec::polyline(std::vector<cplx> points) {
    PathSpec p;
    p.kind = Kind::polyline;
    p.anchors = std::move(points);
    p.validate();
    return p;
}

PathSpec PathSpec::ray(cplx start, double angle, double r_trunc) {
    PathSpec p;
    p.kind = Kind::ray;
    p.anchors = {start};
    p.direction = angle;
    p.r_trunc = r_trunc;
    p.validate();
    return p;
}

void PathSpec::validate() const {
    if (kind == Kind::polyline) {
        if (anchors.size() < 2) throw InvalidParameters("polyline needs at least two anchors");
        for (std::size_t i = 1; i < anchors.size(); ++i)
            if (anchors[i] == anchors[i - 1]) throw InvalidParameters("consecutive anchors coincide");
    } else {
        if (anchors.empty()) throw InvalidParameters("ray needs a start anchor");
        if (!(r_trunc > 0.0) || !std::isfinite(direction))
            throw InvalidParameters("ray needs r_trunc > 0 and a finite direction");
    }
    for (const auto& a : anchors)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw InvalidParameters("anchor not finite");
}

double PathSpec::length() const {
    if (kind == Kind::ray) return r_trunc;
    double len = 0.0;
    for (std::size_t i = 1; i < anchors.size(); ++i) len += std::abs(anchors[i] - anchors[i - 1]);
    return len;
}

QuadratureResult integrate_segment(const Integrand& f, cplx a, cplx b, double tol, std::size_t panel_budget) {
    if (!(tol > 0.0)) throw InvalidParameters("tol must be positive");
    QuadratureResult out;
    if (a == b) return out;

    SegmentRule rule(f, a, b);
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    std::size_t panels = 1;
    Panel first = rule.eval(0.0, 1.0, out.evaluations);
    cplx total = first.value;
    double total_err = first.err;
    double total_abs = first.resabs;
    heap.push(first);

    auto floor_of = [&](double resabs) { return 50.0 * kEps * resabs; };

    while (total_err > std::max(tol, floor_of(total_abs))) {
        if (panels + 2 > panel_budget) {
            std::ostringstream os;
            os << "error estimate " << total_err << " above tol " << tol << " after " << panels << " panels";
            throw NoConvergence(os.str());
        }
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Panel cannot be bisected further in double precision.
            std::ostringstream os;
            os << "panel collapsed near parameter " << worst.lo << " with error " << worst.err;
            throw NoConvergence(os.str());
        }
        heap.pop();
        Panel left = rule.eval(worst.lo, mid, out.evaluations);
        Panel right = rule.eval(mid, worst.hi, out.evaluations);
        panels += 2;
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        total_abs += left.resabs + right.resabs - worst.resabs;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum exactly to remove drift from the incremental updates.
    total = 0.0;
    total_err = 0.0;
    std::vector<Panel> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    for (const auto& p : all) {
        total += p.value;
        total_err += p.err;
    }
    out.value = total;
    out.err_estimate = total_err;
    out.extent = std::abs(b - a);
    return out;
}

namespace {

QuadratureResult integrate_ray(const PathSpec& path, const Integrand& f, double tol) {
    const cplx start = path.anchors.front();
    const cplx dir = std::polar(1.0, path.direction);
    QuadratureResult out;
    double s = 0.0;
    double chunk = std::min(1.0, path.r_trunc);
    double budget = tol / 2.0;
    constexpr int kProbe = 16;

    while (s < path.r_trunc) {
        const double next = std::min(s + chunk, path.r_trunc);
        QuadratureResult part = integrate_segment(f, start + s * dir, start + next * dir, budget);
        out.value += part.value;
        out.err_estimate += part.err_estimate;
        out.evaluations += part.evaluations;
        s = next;
        budget /= 2.0;
        chunk *= 2.0;
        if (s >= path.r_trunc) break;

        // Magnitude bound on the next chunk from sampling, safety factor 10.
        const double probe_len = std::min(chunk, path.r_trunc - s);
        double peak = 0.0;
        for (int i = 0; i <= kProbe; ++i) {
            const cplx v = f(start + (s + probe_len * i / kProbe) * dir);
            ++out.evaluations;
            if (!std::isfinite(std::abs(v))) {
                peak = std::numeric_limits<double>::infinity();
                break;
            }
            peak = std::max(peak, std::abs(v));
        }
        const double tail = 10.0 * peak * probe_len;
        if (tail < tol / 10.0) {
            out.err_estimate += tail;
            break;
        }
    }
    out.extent = s;
    return out;
}

}  // namespace

QuadratureResult integrate_along(const PathSpec& path, const Integrand& f, double tol) {
    if (!(tol > 0.0)) throw InvalidParameters("tol must be positive");
    path.validate();
    if (path.kind == PathSpec::Kind::ray) return integrate_ray(path, f, tol);

    const double total_len = path.length();
    QuadratureResult out;
    for (std::size_t i = 1; i < path.anchors.size(); ++i) {
        const double share = std::abs(path.anchors[i] - path.anchors[i - 1]) / total_len;
        QuadratureResult part = integrate_segment(f, path.anchors[i - 1], path.anchors[i], tol * share);
        out.value += part.value;
        out.err_estimate += part.err_estimate;
        out.evaluations += part.evaluations;
    }
    out.extent = total_len;
    return out;
}

}  // namespace blaine
