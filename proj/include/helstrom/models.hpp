#pragma once

#include <optional>

#include "helstrom/family.hpp"
#include "helstrom/quantum.hpp"

namespace helstrom::models {

// Probability simplex on d outcomes, as the polytope spanned by the standard
// basis vectors of R^d. Requires d >= 2.
ConvexStateSpace classical_space(std::size_t d);
bool is_classical_space(const ConvexStateSpace& space);
// Entrywise nonnegative (within tolerance) and summing to one.
void check_classical_state(const Vec& s);

// Best-guess decoding: sum_k max_i p_i s_i[k]. The space must be classical.
double classical_map_oracle(const DiscriminationInstance& inst);

struct ClassicalBinaryResult {
    double p_success = 0.0;
    bool generic = false;  // both signs occur in p1 s1 - p2 s2
    std::optional<WeakHelstromFamily> family;
};

// Closed-form two-state family on the simplex: conjugates are the normalized
// negative and positive parts of p1 s1 - p2 s2. Their supports are disjoint,
// so the family certifies its own optimality.
ClassicalBinaryResult classical_binary_family(const Vec& s1, const Vec& s2, double p1, double p2);

// Unit square with vertices (0,0), (0,1), (1,0), (1,1).
ConvexStateSpace square_space();

struct SquareBinaryResult {
    double p_success = 0.0;
    char binding_axis = 'x';  // which coordinate difference decides the optimum
    WeakHelstromFamily family;
    Observable observable;  // optimal two-outcome measurement
    bool certified = false;
};

// Two equiprobable square states. The larger coordinate difference sets the
// optimum at (1 + max(|dx|, |dy|)) / 2; conjugates sit on the two opposite
// facets orthogonal to that axis, on the line through the prior midpoint with
// direction s1 - s2 (intercepts clamped into the facet when that line leaves
// the square first).
SquareBinaryResult square_binary(const Point& s1, const Point& s2);

struct SquarePureResult {
    double p_success = 0.0;  // 1/2
    DiscriminationInstance instance;
    WeakHelstromFamily family;  // each conjugate is the opposite corner
    Observable observable;
    Certification certification;
};

// All four square vertices with uniform priors: the family with ratio 1/2 and
// the four-outcome measurement annihilating every conjugate.
SquarePureResult square_pure_state_discrimination();

// Classical states embed as diagonal density matrices without changing any
// discrimination quantity.
quantum::DensityMatrix classical_embed_quantum(const Vec& s);

}  // namespace helstrom::models
