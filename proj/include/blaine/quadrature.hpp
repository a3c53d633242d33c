#pragma once

/// @file quadrature.hpp
/// Adaptive Gauss-Kronrod (7/15) integration of complex integrands along
/// polylines and truncated rays.

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace blaine {

using cplx = std::complex<double>;
using Integrand = std::function<cplx(cplx)>;

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::size_t kPanelBudget = std::size_t{1} << 20;

struct PathSpec {
    enum class Kind { polyline, ray };

    Kind kind = Kind::polyline;
    std::vector<cplx> anchors;  ///< polyline vertices; a ray uses anchors[0] as its start
    double direction = 0.0;     ///< ray direction angle in radians
    double r_trunc = 0.0;       ///< ray: largest distance from the start that is integrated

    static PathSpec polyline(std::vector<cplx> points);
    static PathSpec segment(cplx a, cplx b) { return polyline({a, b}); }
    static PathSpec ray(cplx start, double angle, double r_trunc);

    /// Throws InvalidParameters when the invariants do not hold.
    void validate() const;
    double length() const;
};

struct QuadratureResult {
    cplx value{0.0, 0.0};
    double err_estimate = 0.0;
    std::size_t evaluations = 0;
    double extent = 0.0;  ///< integrated arclength (for rays: where truncation happened)
};

/// Integral of f(z) dz over the straight segment [a, b].
/// Tolerances below the roundoff floor of the integrand are clamped to it.
QuadratureResult integrate_segment(const Integrand& f, cplx a, cplx b, double tol,
                                   std::size_t panel_budget = kPanelBudget);

/// Integral of f(z) dz along a path. Polyline tolerance is split in
/// proportion to segment length. A ray is cut once the sampled magnitude
/// bound (safety factor 10) times the next chunk length drops below tol/10,
/// or at r_trunc, whichever comes first.
QuadratureResult integrate_along(const PathSpec& path, const Integrand& f, double tol = kDefaultTol);

}  // namespace blaine
