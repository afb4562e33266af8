#pragma once

#include <optional>
#include <vector>

#include "helstrom/convex.hpp"
#include "helstrom/linalg.hpp"

namespace helstrom {

// Affine functional e(x) = linear . x + offset. A valid effect takes values
// in [0, 1] on the state space.
struct Effect {
    Vec linear;
    double offset = 0.0;

    double operator()(const Point& x) const { return dot(linear, x) + offset; }
};

Effect unit_effect(std::size_t dim);
Effect zero_effect(std::size_t dim);

// Finite-outcome measurement: effects summing to the unit effect.
struct Observable {
    std::vector<Effect> effects;
};

// Checks dimensions, that the effects sum to the unit effect, and that every
// effect stays within [0, 1] on all vertices (within tol). Throws
// ValidationError on violation.
void validate_observable(const ConvexStateSpace& space, const Observable& obs,
                         double tol = kTolNum);

// An ensemble to discriminate: N >= 2 distinct states of the space with
// strictly positive prior probabilities summing to one.
class DiscriminationInstance {
  public:
    DiscriminationInstance(ConvexStateSpace space, std::vector<Point> states, Vec priors);

    const ConvexStateSpace& space() const { return space_; }
    const std::vector<Point>& states() const { return states_; }
    const Point& state(std::size_t i) const { return states_[i]; }
    const Vec& priors() const { return priors_; }
    std::size_t num_states() const { return states_.size(); }

  private:
    ConvexStateSpace space_;
    std::vector<Point> states_;
    Vec priors_;
};

// Probability of guessing right when outcome i is read as "state i was sent".
double success_probability(const DiscriminationInstance& inst, const Observable& obs);

struct BoundResult {
    double value;
    Observable observable;  // a measurement attaining the bound
};

// Optimal success probability over all measurements, by linear programming
// over the effects. Works for any number of states.
BoundResult helstrom_bound_lp(const DiscriminationInstance& inst);

// Same optimum computed from the two-state formula
//   p2 + max_e [p1 e(s1) - p2 e(s2)]  over single effects e.
// Only valid for instances with exactly two states.
double binary_bound_form(const DiscriminationInstance& inst);

// Searches for an effect with e(t1) = 1 and e(t2) = 0, which certifies that
// the two points can be told apart with certainty. Both points must belong to
// the space.
std::optional<Effect> distinguishable(const ConvexStateSpace& space, const Point& t1,
                                      const Point& t2);

}  // namespace helstrom
