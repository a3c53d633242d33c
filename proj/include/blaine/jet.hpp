#pragma once

// Truncated Taylor arithmetic to third order, used for closed-form jets.

#include <array>
#include <complex>

namespace blaine {

using cplx = std::complex<double>;

struct JetSample {
    cplx z;
    cplx value;
    cplx d1;
    cplx d2;
    cplx d3;
};

// Coefficients c[k] = f^(k)(z0) / k!.
class Taylor3 {
public:
    std::array<cplx, 4> c{};

    static Taylor3 variable(cplx z0) { return Taylor3{{z0, 1.0, 0.0, 0.0}}; }
    static Taylor3 constant(cplx v) { return Taylor3{{v, 0.0, 0.0, 0.0}}; }

    JetSample jet(cplx z) const { return {z, c[0], c[1], 2.0 * c[2], 6.0 * c[3]}; }

    friend Taylor3 operator+(const Taylor3& a, const Taylor3& b) {
        Taylor3 r;
        for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] + b.c[k];
        return r;
    }
    friend Taylor3 operator-(const Taylor3& a, const Taylor3& b) {
        Taylor3 r;
        for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] - b.c[k];
        return r;
    }
    friend Taylor3 operator-(const Taylor3& a) { return constant(0.0) - a; }
    friend Taylor3 operator*(const Taylor3& a, const Taylor3& b) {
        Taylor3 r;
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
        return r;
    }
    friend Taylor3 operator/(const Taylor3& a, const Taylor3& b) {
        Taylor3 q;
        for (int k = 0; k < 4; ++k) {
            cplx acc = a.c[k];
            for (int j = 1; j <= k; ++j) acc -= b.c[j] * q.c[k - j];
            q.c[k] = acc / b.c[0];
        }
        return q;
    }
    friend Taylor3 operator*(cplx s, const Taylor3& a) { return constant(s) * a; }
    friend Taylor3 operator+(cplx s, const Taylor3& a) { return constant(s) + a; }
    friend Taylor3 operator-(cplx s, const Taylor3& a) { return constant(s) - a; }
};

inline Taylor3 exp(const Taylor3& a) {
    Taylor3 e;
    e.c[0] = std::exp(a.c[0]);
    for (int k = 1; k < 4; ++k) {
        cplx acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * a.c[j] * e.c[k - j];
        e.c[k] = acc / static_cast<double>(k);
    }
    return e;
}

inline void sincos(const Taylor3& a, Taylor3& s, Taylor3& co) {
    s = Taylor3{};
    co = Taylor3{};
    s.c[0] = std::sin(a.c[0]);
    co.c[0] = std::cos(a.c[0]);
    for (int k = 1; k < 4; ++k) {
        cplx as = 0.0, ac = 0.0;
        for (int j = 1; j <= k; ++j) {
            as += static_cast<double>(j) * a.c[j] * co.c[k - j];
            ac += static_cast<double>(j) * a.c[j] * s.c[k - j];
        }
        s.c[k] = as / static_cast<double>(k);
        co.c[k] = -ac / static_cast<double>(k);
    }
}

inline Taylor3 sin(const Taylor3& a) {
    Taylor3 s, c;
    sincos(a, s, c);
    return s;
}

inline Taylor3 cos(const Taylor3& a) {
    Taylor3 s, c;
    sincos(a, s, c);
    return c;
}

inline Taylor3 tan(const Taylor3& a) {
    Taylor3 s, c;
    sincos(a, s, c);
    return s / c;
}

}  // namespace blaine
