#pragma once

#include <optional>
#include <vector>

#include "helstrom/discrimination.hpp"

namespace helstrom {

// Weak Helstrom family for an ensemble {p_i, s_i}: conjugate states t_i and
// weights tilde_p_i such that every mixture tilde_p_i s_i + (1 - tilde_p_i) t_i
// equals one common reference state, and p_i / tilde_p_i is the same for all i.
// That common ratio upper-bounds the success probability of every measurement.
struct WeakHelstromFamily {
    DiscriminationInstance instance;
    Vec tilde_p;
    std::vector<Point> conjugates;
    Point reference;
    double ratio;
};

struct FamilyReport {
    double ratio_residual = 0.0;     // max_i |p_i - ratio * tilde_p_i|
    double mixture_residual = 0.0;   // max_i || tilde_p_i s_i + (1-tilde_p_i) t_i - reference ||
    bool weights_valid = false;      // tilde_p_i in (0, 1]
    bool ratio_valid = false;        // 0 < ratio <= 1 (within tolerance)
    bool conjugates_in_space = false;
    bool reference_in_space = false;

    bool ok() const {
        return ratio_residual <= kTolNum && mixture_residual <= kTolGeom && weights_valid &&
               ratio_valid && conjugates_in_space && reference_in_space;
    }
};

FamilyReport validate(const WeakHelstromFamily& fam);

// Builds a family from its raw pieces, deriving the ratio, and rejects
// inconsistent data with ValidationError.
WeakHelstromFamily make_family(DiscriminationInstance inst, Vec tilde_p,
                               std::vector<Point> conjugates, Point reference);

// The always-available construction: tilde_p_i = p_i and each conjugate is the
// renormalized mixture of the other states. Its ratio is 1.
WeakHelstromFamily trivial_family(const DiscriminationInstance& inst);

// Trades a family of ratio r for one of any larger ratio target <= 1 by
// sliding each conjugate toward its state. The reference is preserved exactly.
WeakHelstromFamily weaken(const WeakHelstromFamily& fam, double target);

// Ray construction: each conjugate sits where the ray from the state through
// the reference leaves the space, pulled back so all mixtures agree. Uses the
// prior mixture as reference when none is given. The result often has a ratio
// well below 1; a reference for which the ratio would exceed 1 is rejected.
WeakHelstromFamily geometric_family(const DiscriminationInstance& inst,
                                    const std::optional<Point>& reference = std::nullopt);

struct RatioBoundReport {
    double p_success = 0.0;
    double slack = 0.0;              // sum_i (1 - tilde_p_i) e_i(t_i)
    double identity_residual = 0.0;  // |1 - p_success / ratio - slack|
    bool bound_holds = false;        // p_success <= ratio (within tolerance)
};

// Evaluates the decomposition 1 = P_success / ratio + slack for a concrete
// measurement, which is what makes the ratio an upper bound.
RatioBoundReport ratio_bound_check(const WeakHelstromFamily& fam, const Observable& obs);

struct Certification {
    bool certified = false;
    double max_conjugate_value = 0.0;  // max_i e_i(t_i)
};

// A measurement whose outcome effects annihilate the conjugates proves that
// the ratio is exactly the optimal success probability.
Certification certify_optimal(const WeakHelstromFamily& fam, const Observable& obs);

struct BinaryCertificate {
    bool conjugates_distinguishable = false;
    Observable observable;  // optimal two-outcome measurement when distinguishable
};

// Two-state shortcut: if the two conjugates can be told apart with certainty,
// the separating effect yields an optimal measurement and the family is tight.
BinaryCertificate binary_certify_by_distinguishability(const WeakHelstromFamily& fam);

}  // namespace helstrom
