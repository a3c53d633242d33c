#pragma once

/// @file growth.hpp
/// Real zeros, argument-principle counts, order and convergence-exponent
/// estimates, indicator functions and the order classification table.

#include "blaine/quadrature.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace blaine {

struct ValueAndSlope {
    double value;
    double slope;
};
using RealJetFn = std::function<ValueAndSlope(double)>;
using ComplexFn = std::function<cplx(cplx)>;
/// Functions whose modulus overflows are passed as log|f|.
using LogModulusFn = std::function<double(cplx)>;

/// log|f|; throws Overflow where |f| is not finite.
LogModulusFn log_modulus_of(ComplexFn f);

inline constexpr double kDefaultSepFloor = 1e-3;

struct ZeroList {
    std::vector<double> zeros;      ///< strictly increasing
    std::vector<double> residuals;  ///< ||E'(x)| - 1| per zero
    std::vector<double> slopes;     ///< E'(x) per zero
    double lo = 0.0, hi = 0.0;
    double sep_floor = kDefaultSepFloor;
};

/// Uniform scan at step sep_floor/2, sign-change bracketing, Newton polish.
/// Throws ClusteringDetected if two zeros are closer than sep_floor.
ZeroList find_real_zeros(const RealJetFn& E, double lo, double hi, double sep_floor = kDefaultSepFloor);

/// Winding number of f around the rectangle with opposite corners c0, c1.
/// Throws BoundaryZero if the boundary passes too close to a zero.
int count_zeros_argument_principle(const ComplexFn& f, cplx c0, cplx c1, double tol = kDefaultTol);

struct GrowthEstimate {
    double rho_hat = 0.0;
    double residual = 0.0;
    double r_min = 0.0, r_max = 0.0;
};

/// log M(r) from 256 circle samples refined around the three largest.
double log_max_modulus(const LogModulusFn& logabs, double r);

/// Slope of log log M(r) against log r over the top half of the ladder;
/// 0 when log M(r) is affine in log r there (polynomial growth).
GrowthEstimate estimate_order(const LogModulusFn& logabs, const std::vector<double>& r_ladder);

/// Slope of log n(r) against log r over the top half of the zero list.
GrowthEstimate estimate_lambda(const std::vector<double>& zeros);
GrowthEstimate estimate_lambda(const ZeroList& zeros);

enum class IndicatorTemplate { cos_rho_theta, sin_rho_abs_theta, sin_rho_abs_theta_minus_pi, none };
std::string to_string(IndicatorTemplate t);
double template_value(IndicatorTemplate t, double rho, double theta);

struct IndicatorSample {
    std::vector<double> theta;
    std::vector<double> h;
    double rho = 0.0;
    double c = 0.0;
    IndicatorTemplate tmpl = IndicatorTemplate::none;
    double template_residual = 0.0;  ///< sup |h - c * template|
    double spread = 0.0;             ///< largest spread between the top rungs
    bool low_confidence = false;
};

std::vector<double> uniform_theta_grid(int n);  ///< n points in [-pi, pi]
std::vector<double> geometric_ladder(double r_min, double r_max, int rungs);

/// h(theta) = median over the top three rungs of log|f| / r^rho. Samples with
/// |f| < exp(-r^rho) are replaced by the maximum over a small theta window.
IndicatorSample estimate_indicator(const LogModulusFn& logabs, double rho, const std::vector<double>& theta,
                                   const std::vector<double>& r_ladder,
                                   IndicatorTemplate tmpl = IndicatorTemplate::none);

/// h_A = 2 max(-h_E, 0) pointwise.
IndicatorSample indicator_of_A_from_E(const IndicatorSample& hE);

struct BoundedRatioReport {
    std::vector<double> x;
    std::vector<double> ratio;  ///< |E(x)/x|
    double max_ratio = 0.0;
    double tail_ratio = 0.0;
    bool unbounded = false;  ///< top-half ratios strictly increasing and at least doubling
};

/// Diagnostic only. direction = +1 or -1 selects the ray.
BoundedRatioReport check_bounded_ratio(const ComplexFn& E, int direction, const std::vector<double>& x_ladder);

/// Limits of F_m along the rays arg z = (2k+1) pi / m, k = 0..m-1.
std::vector<cplx> asymptotic_values_Fm(int m, double tol = kDefaultTol);

enum class CaseTag { i, ii, iii };
std::string to_string(CaseTag c);
CaseTag case_from_string(const std::string& s);  ///< throws InvalidParameters

struct ClassificationResult {
    CaseTag case_tag = CaseTag::i;
    int m = 0;
    double rho = 0.0;
    std::optional<double> lambda;
    IndicatorTemplate indicator = IndicatorTemplate::none;
};

/// Throws InvalidM outside the admissible m for each case.
ClassificationResult classify_orders(CaseTag c, int m);

}  // namespace blaine
