#pragma once

// Quasiconformal interpolation maps, Beltrami coefficients, logarithmic
// area and the boundary-matching identity for the modified tangent map.

#include "blaine/quadrature.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace blaine {

// y_a = max(1, -log|Im a|). DomainError if Im a == 0.
double stretch_threshold(cplx a);

// q_a(y) = log(2|Im a| e^y - 1) for y >= y_a; DomainError below y_a.
double boundary_stretch_q(cplx a, double y);
double boundary_stretch_q_prime(cplx a, double y);

// Odd increasing extension of q_a. On [-Y, Y] it is the cubic
// alpha*y + beta*y^3 matching value and slope of q_a at Y, where Y >= y_a is
// the smallest point on a 0.05 grid where that cubic is increasing.
struct StretchExtension {
    cplx a;
    double y_a = 1.0;
    double Y = 1.0;
    double alpha = 1.0, beta = 0.0;

    explicit StretchExtension(cplx a);
    double operator()(double y) const;
    double derivative(double y) const;
};

double extend_Q(cplx a, double y);

// phi_a(z) = z + i(1 - x)(Q_a(y) - y) for 0 <= x <= 1, identity for x > 1.
cplx strip_interpolation_phi(const StretchExtension& Q, cplx z);
cplx strip_interpolation_phi(cplx a, cplx z);

// v_a(z) = tan(z/2) Im a + Re a; PoleAt near odd multiples of pi.
cplx v_a(cplx a, cplx z);
cplx modified_tangent_T(const StretchExtension& Q, cplx z);
cplx modified_tangent_T(cplx a, cplx z);

// Increasing boundary map h of the real line with its derivative.
struct BoundaryMap {
    std::function<double(double)> h;
    std::function<double(double)> dh;

    static BoundaryMap identity();
    static BoundaryMap translation(double c);
    // Monotone piecewise-cubic through the samples, extended by translation
    // outside the sample range. NotDiffeo unless the values strictly increase.
    static BoundaryMap from_samples(std::vector<double> x, std::vector<double> hx);
};

// tau(z) = z + (1 - y)(h(x) - x) for 0 <= y <= 1, identity for y > 1.
cplx horizontal_interpolation_tau(const BoundaryMap& h, cplx z);

cplx mu_tau_closed_form(const BoundaryMap& h, cplx z);
cplx mu_phi_closed_form(const StretchExtension& Q, cplx z);

struct BeltramiSample {
    cplx z;
    cplx mu;
    double K = 1.0;
};

inline constexpr double kDefaultFdStep = 1e-5;

// Central differences with step fd_step * max(1, |z|).
BeltramiSample beltrami(const std::function<cplx(cplx)>& f, cplx z, double fd_step = kDefaultFdStep);
BeltramiSample beltrami_from_mu(cplx z, cplx mu);

struct RegionSpec {
    enum class Kind { annular_sector, half_strip, pinched_strip, exp_level_set };
    Kind kind = Kind::annular_sector;
    double r1 = 1.0, r2 = 2.0, theta1 = 0.0, theta2 = 1.0;  // annular sector
    int k = 1;                                            // strips
    double K = 1.0;                                       // pinched strip, level set

    static RegionSpec annular_sector(double r1, double r2, double theta1, double theta2);
    // {x >= 1, k pi <= y <= (k+1) pi}
    static RegionSpec half_strip(int k);
    // {x >= 1, |y - (k + 1/2) pi| <= min(K e^-x, pi/2)}
    static RegionSpec pinched_strip(int k, double K = 1.0);
    // {x > 1, |Re e^z| <= K}
    static RegionSpec exp_level_set(double K);

    // Image under z^alpha; annular sectors only.
    RegionSpec power(double alpha) const;
    void validate() const;  // InvalidParameters
};

inline constexpr double kNoTruncation = std::numeric_limits<double>::infinity();

// Truncation caps |z| for sectors and Re z for the strip regions.
double logarea(const RegionSpec& region, double truncation = kNoTruncation, double tol = 1e-9);

// logarea{x >= 1, |y| <= pi} + 2 zeta(2) * int_1^inf pi min(1, K e^-x) dx
double exp_level_set_budget(double K);

// 2/(e k^2) for k >= 1, 2/(e (k+1)^2) for k <= -2; InvalidK otherwise.
double strip_tail_bound(int k);

struct OrientedAsymptoticValue {
    cplx a;
    double theta = 0.0;  // one of 0, pi/2, -pi/2, pi
    void validate() const;
};

struct MatchReport {
    int clause = 1;  // 1 or 2
    double t1 = 1.0;
    double max_mismatch = 0.0;
    int samples = 0;
};

// Clause (i): d = (a, -sign(Im a) pi/2), compares T_a(it) - a with
// e^{i theta} e^{-t} for t in [t_lo, t_hi].
// Clause (ii): d = (conj a, sign(Im a) pi/2), same comparison against
// conj a at -t. Both require t_lo >= t1 = max(t0, Y).
MatchReport boundary_match_check(cplx a, const OrientedAsymptoticValue& d, double t_lo, double t_hi,
                                 int samples = 400, double t0 = 1.0);

}  // namespace blaine
