// Shared helpers for the test suites: deterministic RNG, random geometry
// generators, and a brute-force vertex-enumeration oracle used to cross-check
// the simplex solver on small instances.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "helstrom/discrimination.hpp"
#include "helstrom/linalg.hpp"
#include "helstrom/lp.hpp"

namespace helstrom::test {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vec gaussian_vec(std::mt19937_64& rng, std::size_t d) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec v(d);
    for (double& x : v) x = g(rng);
    return v;
}

// Distinct points on the unit sphere. Every such point is an extreme point of
// the convex hull, so the result is always a valid vertex list.
inline std::vector<Point> random_sphere_points(std::mt19937_64& rng, std::size_t d, std::size_t m) {
    std::vector<Point> pts;
    while (pts.size() < m) {
        Vec v = gaussian_vec(rng, d);
        const double n = norm2(v);
        if (n < 1e-6) continue;
        for (double& x : v) x /= n;
        bool far = true;
        for (const auto& p : pts)
            if (dist2(p, v) < 1e-3) far = false;
        if (far) pts.push_back(std::move(v));
    }
    return pts;
}

// Strictly positive convex weights (normalized exponentials).
inline Vec random_convex_weights(std::mt19937_64& rng, std::size_t m) {
    std::exponential_distribution<double> e(1.0);
    Vec w(m);
    double s = 0.0;
    for (double& x : w) {
        x = e(rng) + 1e-3;
        s += x;
    }
    for (double& x : w) x /= s;
    return w;
}

inline Point mix(const std::vector<Point>& pts, const Vec& w) {
    Point x(pts[0].size(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += w[i] * pts[i][k];
    return x;
}

// Solves a stacked linear system if it has a unique, consistent solution.
inline std::optional<Vec> solve_unique(std::vector<Vec> a, Vec b) {
    const std::size_t rows = a.size();
    const std::size_t n = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < n && rank < rows; ++col) {
        std::size_t best = rank;
        for (std::size_t i = rank + 1; i < rows; ++i)
            if (std::abs(a[i][col]) > std::abs(a[best][col])) best = i;
        if (std::abs(a[best][col]) < 1e-9) continue;
        std::swap(a[rank], a[best]);
        std::swap(b[rank], b[best]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const double f = a[i][col] / a[rank][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
            b[i] -= f * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank < n) return std::nullopt;
    for (std::size_t i = rank; i < rows; ++i)
        if (std::abs(b[i]) > 1e-7) return std::nullopt;
    Vec x(n, 0.0);
    for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i] / a[i][pivot_col[i]];
    return x;
}

// Random n-outcome measurement: a perturbation of the flat observable kept
// inside [0, 1] on every vertex by construction.
inline Observable random_observable(std::mt19937_64& rng, const ConvexStateSpace& space,
                                    std::size_t n) {
    const std::size_t d = space.dim();
    std::vector<Vec> g(n);
    Vec c(n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = gaussian_vec(rng, d);
        c[i] = gauss(rng);
    }
    for (std::size_t k = 0; k < d; ++k) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += g[i][k];
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) g[i][k] -= mean;
    }
    double cmean = 0.0;
    for (double v : c) cmean += v;
    cmean /= static_cast<double>(n);
    for (double& v : c) v -= cmean;

    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < space.num_vertices(); ++j)
            worst = std::max(worst, std::abs(dot(g[i], space.vertex(j)) + c[i]));
    const double head = 1.0 / static_cast<double>(n);
    const double eps = worst < 1e-12 ? 0.0 : 0.9 * std::min(head, 1.0 - head) / worst;

    Observable obs;
    obs.effects.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        obs.effects[i].linear = scale(eps, g[i]);
        obs.effects[i].offset = head + eps * c[i];
    }
    return obs;
}

struct OracleResult {
    bool feasible = false;
    Vec x;
    double value = 0.0;
};

// Brute-force LP oracle: enumerates candidate vertices as intersections of
// active constraint subsets and picks the best feasible one. Assumes the
// feasible region is a polytope (bounded, pointed); no vertex found is
// reported as infeasible. Intended for n <= 6 and ~20 inequalities.
inline OracleResult lp_vertex_oracle(const lp::LinearProgram& prog) {
    const std::size_t n = prog.num_vars();
    std::vector<Vec> ineq_rows = prog.ub_rows;
    Vec ineq_rhs = prog.ub_rhs;
    Vec lb = prog.lower_bounds;
    if (lb.empty()) lb.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (lb[k] == lp::kNoLowerBound) continue;
        Vec row(n, 0.0);
        row[k] = -1.0;
        ineq_rows.push_back(row);
        ineq_rhs.push_back(-lb[k]);
    }
    const std::size_t m_ineq = ineq_rows.size();
    OracleResult best;
    auto consider = [&](const Vec& x) {
        for (std::size_t i = 0; i < prog.eq_rows.size(); ++i)
            if (std::abs(dot(prog.eq_rows[i], x) - prog.eq_rhs[i]) > 1e-7) return;
        for (std::size_t i = 0; i < m_ineq; ++i)
            if (dot(ineq_rows[i], x) > ineq_rhs[i] + 1e-7) return;
        const double v = dot(prog.objective, x);
        if (!best.feasible || v > best.value) {
            best.feasible = true;
            best.x = x;
            best.value = v;
        }
    };
    for (std::uint64_t mask = 0; mask < (1ull << m_ineq); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) > n) continue;
        std::vector<Vec> rows = prog.eq_rows;
        Vec rhs = prog.eq_rhs;
        for (std::size_t i = 0; i < m_ineq; ++i) {
            if (!(mask >> i & 1)) continue;
            rows.push_back(ineq_rows[i]);
            rhs.push_back(ineq_rhs[i]);
        }
        if (rows.size() < n) continue;
        if (auto x = solve_unique(std::move(rows), std::move(rhs))) consider(*x);
    }
    return best;
}

}  // namespace helstrom::test
