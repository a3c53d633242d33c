#pragma once

// Numerical checks of two real/complex-variable bounds: a lower bound for
// C^2 functions with one interior critical point, and a Koebe-type
// distortion bound for univalent maps of the right half-plane.

#include "blaine/quadrature.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace blaine {

// f, f', f'' at x.
using C2Fn = std::function<std::array<double, 3>(double)>;

struct C2Samples {
    double a = 0.0, b = 1.0;
    std::vector<double> x, f, df, d2f;
};

C2Samples sample_c2(const C2Fn& fn, double a, double b, int n = 2001);

// Hypotheses, each throwing HypothesisViolated with its clause letter:
//   a) f(a) = f(b) = 0
//   b) |f'(a)| = |f'(b)| >= 1
//   c) f' has exactly one zero c in (a, b)
//   d) f'' has at most one zero in [a, c] and at most one in [c, b]
//   e) f'' has no non-negative local minimum and no non-positive local maximum
void check_c2_hypotheses(const C2Samples& s);

// True iff |f(x)| > min(x - a, b - x) / 20 at every interior sample.
bool c2_lemma_check(const C2Samples& s);

// Shapes used by the CLI and the randomized tests: "sine", "parabola",
// "harmonic" (sine plus a small third harmonic), "double-bump" (fails c).
C2Fn c2_shape(const std::string& kind, double a, double b, double amplitude, double harmonic = 0.0);

struct KoebeReport {
    double lhs = 0.0;  // |phi'(z)|
    double rhs = 0.0;  // |phi'(z0)| (1 + |z - z0| / Re z0)^-4
    bool holds = false;
};

// Requires Re z0 > 0 and Re z >= Re z0 (DomainError otherwise).
KoebeReport koebe_report(const std::function<cplx(cplx)>& dphi, cplx z0, cplx z);
bool koebe_bound_check(const std::function<cplx(cplx)>& dphi, cplx z0, cplx z);

// Derivatives of the catalogue maps "id", "square", "log1p".
std::function<cplx(cplx)> koebe_map_derivative(const std::string& name);

}  // namespace blaine
