#include "helstrom/discrimination.hpp"

#include <cmath>
#include <string>

#include "helstrom/errors.hpp"
#include "helstrom/lp.hpp"

namespace helstrom {

Effect unit_effect(std::size_t dim) { return Effect{Vec(dim, 0.0), 1.0}; }
Effect zero_effect(std::size_t dim) { return Effect{Vec(dim, 0.0), 0.0}; }

void validate_observable(const ConvexStateSpace& space, const Observable& obs, double tol) {
    if (obs.effects.empty()) throw ValidationError("observable: no effects");
    const std::size_t d = space.dim();
    Vec lin_sum(d, 0.0);
    double off_sum = 0.0;
    for (std::size_t i = 0; i < obs.effects.size(); ++i) {
        const Effect& e = obs.effects[i];
        if (e.linear.size() != d)
            throw ValidationError("observable: effect " + std::to_string(i) +
                                  " has wrong dimension");
        if (!all_finite(e.linear) || !std::isfinite(e.offset))
            throw ValidationError("observable: effect " + std::to_string(i) + " is not finite");
        lin_sum = add(lin_sum, e.linear);
        off_sum += e.offset;
        for (std::size_t j = 0; j < space.num_vertices(); ++j) {
            const double v = e(space.vertex(j));
            if (v < -tol || v > 1.0 + tol)
                throw ValidationError("observable: effect " + std::to_string(i) +
                                      " leaves [0, 1] on vertex " + std::to_string(j));
        }
    }
    if (norm_inf(lin_sum) > tol || std::abs(off_sum - 1.0) > tol)
        throw ValidationError("observable: effects do not sum to the unit effect");
}

DiscriminationInstance::DiscriminationInstance(ConvexStateSpace space, std::vector<Point> states,
                                               Vec priors)
    : space_(std::move(space)), states_(std::move(states)), priors_(std::move(priors)) {
    if (states_.size() < 2) throw ValidationError("instance: need at least two states");
    if (priors_.size() != states_.size())
        throw ValidationError("instance: priors and states length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < priors_.size(); ++i) {
        if (!(priors_[i] > 0.0))
            throw ValidationError("instance: prior " + std::to_string(i) +
                                  " must be strictly positive");
        sum += priors_[i];
    }
    if (std::abs(sum - 1.0) > kTolNum)
        throw ValidationError("instance: priors do not sum to one");
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (!contains(space_, states_[i]))
            throw ValidationError("instance: state " + std::to_string(i) +
                                  " lies outside the space");
    for (std::size_t i = 0; i < states_.size(); ++i)
        for (std::size_t j = i + 1; j < states_.size(); ++j)
            if (dist2(states_[i], states_[j]) <= kTolGeom)
                throw ValidationError("instance: states " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
}

double success_probability(const DiscriminationInstance& inst, const Observable& obs) {
    if (obs.effects.size() != inst.num_states())
        throw ValidationError("success probability: outcome count does not match state count");
    double p = 0.0;
    for (std::size_t i = 0; i < inst.num_states(); ++i)
        p += inst.priors()[i] * obs.effects[i](inst.state(i));
    return p;
}

BoundResult helstrom_bound_lp(const DiscriminationInstance& inst) {
    // Variables per outcome i: the effect coefficients (a_i, b_i), all free.
    // Feasibility: a_i . v_j + b_i >= 0 on every vertex, effects summing to
    // the unit effect. Upper bounds e_i <= 1 follow from nonnegativity of the
    // other effects, so they are not added.
    const std::size_t n = inst.num_states();
    const std::size_t d = inst.space().dim();
    const std::size_t w = d + 1;  // columns per outcome
    lp::LinearProgram prog;
    prog.objective.assign(n * w, 0.0);
    prog.lower_bounds.assign(n * w, lp::kNoLowerBound);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < d; ++k) prog.objective[i * w + k] = inst.priors()[i] * inst.state(i)[k];
        prog.objective[i * w + d] = inst.priors()[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < inst.space().num_vertices(); ++j) {
            Vec row(n * w, 0.0);
            for (std::size_t k = 0; k < d; ++k) row[i * w + k] = -inst.space().vertex(j)[k];
            row[i * w + d] = -1.0;
            prog.add_ub(std::move(row), 0.0);
        }
    for (std::size_t k = 0; k <= d; ++k) {
        Vec row(n * w, 0.0);
        for (std::size_t i = 0; i < n; ++i) row[i * w + k] = 1.0;
        prog.add_eq(std::move(row), k == d ? 1.0 : 0.0);
    }
    auto sol = lp::solve(prog);
    if (!sol.optimal()) throw NumericalError("helstrom bound: optimization failed");

    Observable obs;
    obs.effects.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        obs.effects[i].linear.assign(sol.x.begin() + static_cast<long>(i * w),
                                     sol.x.begin() + static_cast<long>(i * w + d));
        obs.effects[i].offset = sol.x[i * w + d];
    }
    validate_observable(inst.space(), obs, 1e-7);
    const double check = success_probability(inst, obs);
    if (std::abs(check - sol.objective_value) > kTolNum)
        throw NumericalError("helstrom bound: objective cross-check failed");
    return BoundResult{sol.objective_value, std::move(obs)};
}

double binary_bound_form(const DiscriminationInstance& inst) {
    if (inst.num_states() != 2)
        throw ValidationError("binary bound: instance must have exactly two states");
    const std::size_t d = inst.space().dim();
    const double p1 = inst.priors()[0], p2 = inst.priors()[1];
    // Single effect e = (a, b); maximize p1 e(s1) - p2 e(s2) over 0 <= e <= 1
    // on every vertex, then add p2.
    lp::LinearProgram prog;
    prog.objective.resize(d + 1);
    prog.lower_bounds.assign(d + 1, lp::kNoLowerBound);
    for (std::size_t k = 0; k < d; ++k)
        prog.objective[k] = p1 * inst.state(0)[k] - p2 * inst.state(1)[k];
    prog.objective[d] = p1 - p2;
    for (std::size_t j = 0; j < inst.space().num_vertices(); ++j) {
        Vec lo(d + 1), hi(d + 1);
        for (std::size_t k = 0; k < d; ++k) {
            lo[k] = -inst.space().vertex(j)[k];
            hi[k] = inst.space().vertex(j)[k];
        }
        lo[d] = -1.0;
        hi[d] = 1.0;
        prog.add_ub(std::move(lo), 0.0);
        prog.add_ub(std::move(hi), 1.0);
    }
    auto sol = lp::solve(prog);
    if (!sol.optimal()) throw NumericalError("binary bound: optimization failed");
    return p2 + sol.objective_value;
}

std::optional<Effect> distinguishable(const ConvexStateSpace& space, const Point& t1,
                                      const Point& t2) {
    const std::size_t d = space.dim();
    if (t1.size() != d || t2.size() != d)
        throw ValidationError("distinguishable: point dimension mismatch");
    if (!contains(space, t1) || !contains(space, t2))
        throw ValidationError("distinguishable: points must belong to the space");
    lp::LinearProgram prog;
    prog.objective.assign(d + 1, 0.0);
    prog.lower_bounds.assign(d + 1, lp::kNoLowerBound);
    {
        Vec row(t1);
        row.push_back(1.0);
        prog.add_eq(std::move(row), 1.0);
    }
    {
        Vec row(t2);
        row.push_back(1.0);
        prog.add_eq(std::move(row), 0.0);
    }
    for (std::size_t j = 0; j < space.num_vertices(); ++j) {
        Vec lo(d + 1), hi(d + 1);
        for (std::size_t k = 0; k < d; ++k) {
            lo[k] = -space.vertex(j)[k];
            hi[k] = space.vertex(j)[k];
        }
        lo[d] = -1.0;
        hi[d] = 1.0;
        prog.add_ub(std::move(lo), 0.0);
        prog.add_ub(std::move(hi), 1.0);
    }
    auto sol = lp::solve(prog);
    if (!sol.optimal()) return std::nullopt;
    Effect e;
    e.linear.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(d));
    e.offset = sol.x[d];
    return e;
}

}  // namespace helstrom
