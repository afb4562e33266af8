#include "helstrom/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "helstrom/errors.hpp"

namespace helstrom::lp {
namespace {

constexpr double kRcTol = 1e-9;   // reduced cost must exceed this to enter
constexpr double kPivTol = 1e-9;  // minimum admissible pivot magnitude

void check_shape(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    if (n == 0) throw ValidationError("lp: empty objective");
    if (lp.eq_rows.size() != lp.eq_rhs.size())
        throw ValidationError("lp: eq_rows / eq_rhs length mismatch");
    if (lp.ub_rows.size() != lp.ub_rhs.size())
        throw ValidationError("lp: ub_rows / ub_rhs length mismatch");
    if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n)
        throw ValidationError("lp: lower_bounds length mismatch");
    auto check_row = [n](const Vec& row, const char* kind) {
        if (row.size() != n) throw ValidationError(std::string("lp: ") + kind + " row length mismatch");
        for (double v : row)
            if (!std::isfinite(v)) throw ValidationError(std::string("lp: non-finite entry in ") + kind + " row");
    };
    for (const auto& r : lp.eq_rows) check_row(r, "eq");
    for (const auto& r : lp.ub_rows) check_row(r, "ub");
    for (double v : lp.objective)
        if (!std::isfinite(v)) throw ValidationError("lp: non-finite objective entry");
    for (double v : lp.eq_rhs)
        if (!std::isfinite(v)) throw ValidationError("lp: non-finite eq rhs");
    for (double v : lp.ub_rhs)
        if (!std::isfinite(v)) throw ValidationError("lp: non-finite ub rhs");
    for (double v : lp.lower_bounds)
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
            throw ValidationError("lp: lower bound must be finite or -inf");
}

// Standard-form tableau: rows x (cols + 1), last column is the rhs.
struct Tableau {
    std::size_t rows = 0, cols = 0;
    std::vector<Vec> a;  // each row has cols + 1 entries
    std::vector<int> basis;

    double& at(std::size_t i, std::size_t j) { return a[i][j]; }
    double rhs(std::size_t i) const { return a[i][cols]; }

    void pivot(std::size_t r, std::size_t s) {
        const double p = a[r][s];
        for (double& v : a[r]) v /= p;
        a[r][s] = 1.0;  // kill roundoff on the pivot itself
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = a[i][s];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
            a[i][s] = 0.0;
        }
        basis[r] = static_cast<int>(s);
    }
};

// Runs the simplex on the current basis. zrow holds reduced costs (cols entries)
// plus the negated objective value in its last slot, and is updated in place.
// blocked[j] marks columns that may never enter (artificials in phase 2).
// Returns true if optimal, false if unbounded.
bool iterate(Tableau& t, Vec& zrow, const std::vector<char>& blocked, std::size_t max_iter,
             const char* phase) {
    for (std::size_t iter = 0;; ++iter) {
        if (iter > max_iter)
            throw NumericalError(std::string("lp: iteration cap exceeded in ") + phase);
        // Bland: entering column is the lowest index with positive reduced cost.
        std::size_t enter = t.cols;
        for (std::size_t j = 0; j < t.cols; ++j) {
            if (!blocked[j] && zrow[j] > kRcTol) {
                enter = j;
                break;
            }
        }
        if (enter == t.cols) return true;
        // Ratio test; ties broken by the lowest basis variable index.
        std::size_t leave = t.rows;
        double best = 0.0;
        for (std::size_t i = 0; i < t.rows; ++i) {
            const double aij = t.a[i][enter];
            if (aij <= kPivTol) continue;
            const double ratio = t.rhs(i) / aij;
            if (leave == t.rows || ratio < best - kPivTol ||
                (std::abs(ratio - best) <= kPivTol && t.basis[i] < t.basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == t.rows) return false;  // unbounded in this direction
        t.pivot(leave, enter);
        const double f = zrow[enter];
        if (f != 0.0) {
            for (std::size_t j = 0; j <= t.cols; ++j) zrow[j] -= f * t.a[leave][j];
            zrow[enter] = 0.0;
        }
    }
}

Vec make_zrow(const Tableau& t, const Vec& cost) {
    Vec z(t.cols + 1, 0.0);
    std::copy(cost.begin(), cost.end(), z.begin());
    for (std::size_t i = 0; i < t.rows; ++i) {
        const double cb = cost[static_cast<std::size_t>(t.basis[i])];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j <= t.cols; ++j) z[j] -= cb * t.a[i][j];
    }
    return z;
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
    check_shape(lp);
    const std::size_t n = lp.num_vars();
    const std::size_t m_eq = lp.eq_rows.size();
    const std::size_t m_ub = lp.ub_rows.size();
    const std::size_t m = m_eq + m_ub;

    // Column layout of the standardized problem: one column per variable,
    // plus a second (negated) column for each free variable, then one slack
    // per ub row, then artificials as needed.
    Vec lb = lp.lower_bounds;
    if (lb.empty()) lb.assign(n, 0.0);
    std::vector<std::size_t> neg_col(n, 0);  // 0 = not split; else column of the negative part
    std::size_t cols = n;
    for (std::size_t k = 0; k < n; ++k)
        if (lb[k] == kNoLowerBound) neg_col[k] = cols++;
    const std::size_t slack0 = cols;
    cols += m_ub;

    if (m == 0) {
        // No constraints: optimum exists only if no improving direction.
        bool unbounded = false;
        for (std::size_t k = 0; k < n; ++k) {
            const double c = lp.objective[k];
            if (c > kRcTol || (c < -kRcTol && lb[k] == kNoLowerBound)) unbounded = true;
        }
        if (unbounded) return {LpStatus::kUnbounded, {}, 0.0};
        Vec x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = (lb[k] == kNoLowerBound) ? 0.0 : lb[k];
        return {LpStatus::kOptimal, x, dot(lp.objective, x)};
    }

    Tableau t;
    t.rows = m;
    t.cols = cols;  // artificial columns are appended below
    t.a.assign(m, Vec(cols + 1, 0.0));
    auto load_row = [&](std::size_t i, const Vec& row, double rhs) {
        double r = rhs;
        for (std::size_t k = 0; k < n; ++k) {
            t.a[i][k] = row[k];
            if (neg_col[k]) t.a[i][neg_col[k]] = -row[k];
            if (lb[k] != kNoLowerBound && lb[k] != 0.0) r -= row[k] * lb[k];
        }
        t.a[i][cols] = r;
    };
    for (std::size_t i = 0; i < m_eq; ++i) load_row(i, lp.eq_rows[i], lp.eq_rhs[i]);
    for (std::size_t i = 0; i < m_ub; ++i) {
        load_row(m_eq + i, lp.ub_rows[i], lp.ub_rhs[i]);
        t.a[m_eq + i][slack0 + i] = 1.0;
    }
    for (std::size_t i = 0; i < m; ++i)
        if (t.a[i][cols] < 0.0)
            for (double& v : t.a[i]) v = -v;

    // Initial basis: slacks where they survived with coefficient +1, otherwise
    // one artificial per row.
    t.basis.assign(m, -1);
    std::size_t n_art = 0;
    for (std::size_t i = m_eq; i < m; ++i)
        if (t.a[i][slack0 + (i - m_eq)] == 1.0) t.basis[i] = static_cast<int>(slack0 + (i - m_eq));
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < 0) ++n_art;
    const std::size_t art0 = cols;
    t.cols = cols + n_art;
    for (auto& row : t.a) row.insert(row.end() - 1, n_art, 0.0);
    {
        std::size_t next = art0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] >= 0) continue;
            t.a[i][next] = 1.0;
            t.basis[i] = static_cast<int>(next++);
        }
    }

    const std::size_t max_iter = 50 * (m + t.cols);
    std::vector<char> blocked(t.cols, 0);

    double rhs_scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) rhs_scale = std::max(rhs_scale, std::abs(t.rhs(i)));

    if (n_art > 0) {
        Vec phase1(t.cols, 0.0);
        for (std::size_t j = art0; j < t.cols; ++j) phase1[j] = -1.0;
        Vec z = make_zrow(t, phase1);
        if (!iterate(t, z, blocked, max_iter, "phase 1"))
            throw NumericalError("lp: phase 1 reported unbounded");
        const double phase1_obj = -z[t.cols];  // z keeps the negated objective in its last slot
        if (phase1_obj < -1e-9 * (1.0 + rhs_scale)) return {LpStatus::kInfeasible, {}, 0.0};
        // Drive remaining artificials out of the basis; rows that cannot be
        // pivoted are redundant and get cleared.
        for (std::size_t i = 0; i < m; ++i) {
            if (static_cast<std::size_t>(t.basis[i]) < art0) continue;
            std::size_t s = art0;
            for (std::size_t j = 0; j < art0; ++j)
                if (std::abs(t.a[i][j]) > kPivTol) {
                    s = j;
                    break;
                }
            if (s < art0) {
                t.pivot(i, s);
            } else {
                for (std::size_t j = 0; j <= t.cols; ++j) t.a[i][j] = 0.0;
                t.a[i][static_cast<std::size_t>(t.basis[i])] = 1.0;
            }
        }
    }
    for (std::size_t j = art0; j < t.cols; ++j) blocked[j] = 1;

    // Phase 2: costs of the standardized columns.
    Vec cost(t.cols, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        cost[k] = lp.objective[k];
        if (neg_col[k]) cost[neg_col[k]] = -lp.objective[k];
    }
    Vec z = make_zrow(t, cost);
    if (!iterate(t, z, blocked, max_iter, "phase 2")) return {LpStatus::kUnbounded, {}, 0.0};

    Vec xs(t.cols, 0.0);
    for (std::size_t i = 0; i < m; ++i) xs[static_cast<std::size_t>(t.basis[i])] = t.rhs(i);
    Vec x(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (neg_col[k])
            x[k] = xs[k] - xs[neg_col[k]];
        else
            x[k] = xs[k] + lb[k];
    }

    // Residual checks against the original statement.
    double row_scale = 1.0;
    for (double v : x) row_scale = std::max(row_scale, std::abs(v));
    const double tol = kTolNum * row_scale * static_cast<double>(n + 1);
    for (std::size_t i = 0; i < m_eq; ++i)
        if (std::abs(dot(lp.eq_rows[i], x) - lp.eq_rhs[i]) > tol)
            throw NumericalError("lp: equality residual check failed");
    for (std::size_t i = 0; i < m_ub; ++i)
        if (dot(lp.ub_rows[i], x) - lp.ub_rhs[i] > tol)
            throw NumericalError("lp: inequality residual check failed");
    for (std::size_t k = 0; k < n; ++k)
        if (lb[k] != kNoLowerBound && x[k] < lb[k] - tol)
            throw NumericalError("lp: bound residual check failed");

    return {LpStatus::kOptimal, x, dot(lp.objective, x)};
}

}  // namespace helstrom::lp
