#pragma once

/// @file ode.hpp
/// Solution pairs of w'' + A w = 0 along paths, the product E = w1 w2,
/// the ratio F = w2 / w1, Schwarzians and recovery of A from E.

#include "blaine/families.hpp"
#include "blaine/jet.hpp"
#include "blaine/quadrature.hpp"

#include <functional>
#include <vector>

namespace blaine {

struct CoefficientModel {
    enum class Kind { constant, polynomial, elementary, custom };

    Kind kind = Kind::constant;
    std::vector<double> coeffs{0.0};  ///< constant: {c}; polynomial: ascending; elementary: p
    std::function<cplx(cplx)> custom;

    static CoefficientModel constant(double c);
    static CoefficientModel polynomial(std::vector<double> ascending);
    static CoefficientModel elementary(std::vector<double> p);  ///< A = p'' - p'^2 - e^{4p}
    static CoefficientModel from_callable(std::function<cplx(cplx)> f);

    void validate() const;
    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
};

struct InitialData {
    cplx w1{1.0, 0.0}, dw1{0.0, 0.0};
    cplx w2{0.0, 0.0}, dw2{1.0, 0.0};
};

struct SolutionState {
    double s = 0.0;  ///< arclength from the path start
    cplx z;
    cplx w1, dw1, w2, dw2;

    cplx wronskian() const { return w1 * dw2 - dw1 * w2; }
};

class SolutionPair {
public:
    PathSpec path;
    CoefficientModel A;
    std::vector<SolutionState> samples;  ///< accepted steps, in path order
    cplx wronskian{1.0, 0.0};            ///< value at the anchor after normalization
    double tol = kDefaultTol;

    /// State at arclength s, re-integrated from the closest earlier sample.
    SolutionState at(double s) const;
    /// Arclength of a point lying on the path; throws InvalidParameters otherwise.
    double arclength_of(cplx z) const;
    SolutionState at_point(cplx z) const { return at(arclength_of(z)); }
    double max_wronskian_drift() const;
    cplx point(double s) const;

private:
    friend SolutionPair integrate_equation(const CoefficientModel&, const PathSpec&, const InitialData&, double);
    SolutionState advance(SolutionState from, double s_to) const;
};

/// Integrates both solutions; w2 is rescaled at the anchor so that W = 1.
/// Throws StepUnderflow if A is not finite along the path.
SolutionPair integrate_equation(const CoefficientModel& A, const PathSpec& path, const InitialData& init,
                                double tol = kDefaultTol);

class ProductE {
public:
    explicit ProductE(SolutionPair pair) : pair_(std::move(pair)) {}

    JetSample jets(const SolutionState& st) const;  ///< E, E', E'', E'''
    JetSample at(double s) const { return jets(pair_.at(s)); }
    std::vector<JetSample> samples() const;
    const SolutionPair& pair() const { return pair_; }

private:
    SolutionPair pair_;
};

/// Throws NotNormalized when |W - 1| > 100 tol.
ProductE product_E(const SolutionPair& pair);

/// F = w2 / w1 with F' = W / w1^2 and higher derivatives from the equation.
/// Throws PoleAt within 1e-8 of a zero of w1.
JetSample ratio_F(const SolutionPair& pair, const SolutionState& st);
JetSample ratio_F(const SolutionPair& pair, double s);
/// All samples, skipping those within 1e-8 of a zero of w1.
std::vector<JetSample> ratio_F(const SolutionPair& pair);

cplx bank_laine_E_from_F(const JetSample& F);  ///< F / F'; CriticalPoint if F' = 0
cplx coefficient_from_E(const JetSample& E);   ///< ZeroOfE at zeros of E
cplx schwarzian(const JetSample& F);           ///< CriticalPoint if F' = 0

struct ElementaryFamily {
    std::vector<double> p;
    CoefficientModel A;

    /// w1, w2 = exp(-p -/+ I) / sqrt(2), I = integral of e^{2p} from 0 to z.
    SolutionState solutions(cplx z, double tol = kDefaultTol) const;
    InitialData initial_data(cplx z0, double tol = kDefaultTol) const;
    cplx E(cplx z) const;         ///< (1/2) e^{-2p}
    Taylor3 E_taylor(cplx z) const;
    cplx log_E(cplx z) const;  ///< log(1/2) - 2p(z); its real part is log|E| without overflow
};

ElementaryFamily elementary_family(std::vector<double> p);

struct Theorem4Family {
    std::array<double, 4> mobius{1.0, 0.0, 0.0, 1.0};
    double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;

    Taylor3 taylor(cplx z) const;  ///< PoleAt on zeros of a denominator
    JetSample jets(cplx z) const { return taylor(z).jet(z); }
    cplx value(cplx z) const { return taylor(z).c[0]; }
    double schwarzian_constant() const;

private:
    friend Theorem4Family theorem4_family(const std::array<double, 4>&, double, double, double, double);
    enum class Shape { exp_numerator, exp_denominator, mobius_of_exp, pure_exp, one_plus_exp, reciprocal_one_plus_exp };
    Shape shape_ = Shape::mobius_of_exp;
    double frequency_ = 0.0;
};

/// F = L((1 - e^{i(a1 z - b1)}) / (1 - e^{i(a2 z - b2)})). Only parameter sets
/// for which F is locally univalent are accepted; these are exactly the ones
/// with constant Schwarzian. Others throw InvalidParameters.
Theorem4Family theorem4_family(const std::array<double, 4>& mobius, double a1, double b1, double a2, double b2);

/// Closed-form jets for sin z cos z and tan z.
Taylor3 sincos_taylor(cplx z);
Taylor3 tan_taylor(cplx z);

}  // namespace blaine
