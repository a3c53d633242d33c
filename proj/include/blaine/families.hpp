#pragma once

/// @file families.hpp
/// Closed-form and integral-defined function families, and the
/// FamilyInstance record through which functions enter the library.

#include "blaine/quadrature.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace blaine {

enum class FamilyTag { Fm, Gm, f2, F0, Va, Ta, ElementaryE, ElementaryA, SinCos, TanRatio, Theorem4F, Custom };

std::string to_string(FamilyTag tag);
FamilyTag family_from_string(const std::string& name);  ///< throws InvalidParameters

struct FamilyParams {
    int m = 1;
    cplx a{0.0, 1.0};
    std::vector<double> p;       ///< polynomial coefficients, ascending powers
    std::vector<double> r0_num;  ///< numerator of R0, ascending powers
    std::vector<double> r0_den{1.0};
    double xi = 0.0;
    double c0 = 0.0;
    std::array<double, 4> mobius{1.0, 0.0, 0.0, 1.0};  ///< L(w) = (m0 w + m1) / (m2 w + m3)
    double a1 = 0.0, b1 = 0.0, a2 = 0.0, b2 = 0.0;
};

struct FamilyInstance {
    FamilyTag tag = FamilyTag::Custom;
    FamilyParams params;
    std::function<cplx(cplx)> custom;

    /// Throws InvalidParameters when the family's parameter constraints fail.
    void validate() const;
};

struct Evaluation {
    cplx value;
    double err = 0.0;  ///< propagated quadrature error, 0 for closed forms
};

/// F_m(z) = exp(integral from 0 to z of exp(t^m) dt), straight path.
cplx eval_Fm(int m, cplx z, double tol = kDefaultTol, double* err = nullptr);

/// G_m(z) = z exp(integral from 0 to z of (exp(-t^m) - 1)/t dt).
cplx eval_Gm(int m, cplx z, double tol = kDefaultTol, double* err = nullptr);

/// Integrand of G_m, with the removable singularity at 0 filled in.
cplx gm_integrand(int m, cplx t);

/// lim G_{2(m-1)}(x) as x -> +infinity, for m >= 2.
double asympt_constant(int m, double tol = kDefaultTol);

/// f2(z) = (i / c) G_{2(m-1)}(-i z) with c = asympt_constant(m).
cplx eval_f2(int m, cplx z, double tol = kDefaultTol, double* err = nullptr);

/// F0(z) = exp(integral from xi to z of R0(t) exp(-t^2) dt + c0), integrated
/// along [xi, Re z] and then vertically to z.
cplx eval_F0(const FamilyInstance& inst, cplx z, double tol = kDefaultTol, double* err = nullptr);

/// Dispatch over every family tag.
Evaluation evaluate(const FamilyInstance& inst, cplx z, double tol = kDefaultTol);

/// Real polynomial with ascending coefficients, and its derivatives.
cplx poly_eval(const std::vector<double>& c, cplx z);
std::vector<double> poly_derivative(const std::vector<double>& c);

/// z^n by repeated squaring (exact for real z and conjugation-symmetric).
cplx ipow(cplx z, int n);

/// exp(u) - 1 without cancellation for small |u|.
cplx expm1(cplx u);

}  // namespace blaine
