#pragma once

#include <limits>
#include <vector>

#include "helstrom/linalg.hpp"

namespace helstrom::lp {

inline constexpr double kNoLowerBound = -std::numeric_limits<double>::infinity();

// Dense linear program in the form
//   maximize objective . x
//   subject to  eq_rows . x == eq_rhs
//               ub_rows . x <= ub_rhs
//               x_i >= lower_bounds_i   (kNoLowerBound marks a free variable)
// lower_bounds may be left empty, which means all variables are >= 0.
struct LinearProgram {
    Vec objective;
    std::vector<Vec> eq_rows;
    Vec eq_rhs;
    std::vector<Vec> ub_rows;
    Vec ub_rhs;
    Vec lower_bounds;

    std::size_t num_vars() const { return objective.size(); }

    void add_eq(Vec row, double rhs) {
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(rhs);
    }
    void add_ub(Vec row, double rhs) {
        ub_rows.push_back(std::move(row));
        ub_rhs.push_back(rhs);
    }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
    LpStatus status = LpStatus::kInfeasible;
    Vec x;
    double objective_value = 0.0;

    bool optimal() const { return status == LpStatus::kOptimal; }
};

// Two-phase dense simplex with Bland's anti-cycling pivot rule.
// Throws ValidationError on malformed input and NumericalError when the
// iteration cap (50 * (rows + cols)) is exceeded or residual checks fail.
LpSolution solve(const LinearProgram& lp);

}  // namespace helstrom::lp
