#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace helstrom {

using Vec = std::vector<double>;
using Point = Vec;

// Comparison tolerance for algebraic quantities (LP residuals, probability sums).
inline constexpr double kTolNum = 1e-9;
// Tolerance for geometric residuals (collinearity, mixture conditions).
inline constexpr double kTolGeom = 1e-7;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vec& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scale(double c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

// a*x + b*y componentwise.
inline Vec lincomb(double a, const Vec& x, double b, const Vec& y) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + b * y[i];
    return r;
}

inline double dist2(const Vec& a, const Vec& b) { return norm2(sub(a, b)); }

inline bool all_finite(const Vec& a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace helstrom
