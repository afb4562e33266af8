#include "helstrom/family.hpp"

#include <cmath>
#include <string>

#include "helstrom/errors.hpp"

namespace helstrom {

FamilyReport validate(const WeakHelstromFamily& fam) {
    const auto& inst = fam.instance;
    const std::size_t n = inst.num_states();
    FamilyReport rep;
    if (fam.tilde_p.size() != n || fam.conjugates.size() != n ||
        fam.reference.size() != inst.space().dim())
        throw ValidationError("family: piece sizes do not match the instance");
    rep.weights_valid = true;
    for (double w : fam.tilde_p)
        if (!(w > 0.0) || w > 1.0 + kTolNum) rep.weights_valid = false;
    rep.ratio_valid = fam.ratio > 0.0 && fam.ratio <= 1.0 + kTolNum;
    for (std::size_t i = 0; i < n; ++i) {
        rep.ratio_residual = std::max(
            rep.ratio_residual, std::abs(inst.priors()[i] - fam.ratio * fam.tilde_p[i]));
        const Point mixed =
            lincomb(fam.tilde_p[i], inst.state(i), 1.0 - fam.tilde_p[i], fam.conjugates[i]);
        rep.mixture_residual = std::max(rep.mixture_residual, dist2(mixed, fam.reference));
    }
    rep.conjugates_in_space = true;
    for (const auto& t : fam.conjugates)
        if (!contains(inst.space(), t)) rep.conjugates_in_space = false;
    rep.reference_in_space = contains(inst.space(), fam.reference).has_value();
    return rep;
}

WeakHelstromFamily make_family(DiscriminationInstance inst, Vec tilde_p,
                               std::vector<Point> conjugates, Point reference) {
    if (tilde_p.empty() || !(tilde_p[0] > 0.0))
        throw ValidationError("family: conjugate weights must be strictly positive");
    const double ratio = inst.priors()[0] / tilde_p[0];
    WeakHelstromFamily fam{std::move(inst), std::move(tilde_p), std::move(conjugates),
                           std::move(reference), ratio};
    const FamilyReport rep = validate(fam);
    if (!rep.ok()) throw ValidationError("family: pieces do not form a weak Helstrom family");
    return fam;
}

WeakHelstromFamily trivial_family(const DiscriminationInstance& inst) {
    const std::size_t n = inst.num_states();
    const std::size_t d = inst.space().dim();
    Point reference(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        reference = lincomb(1.0, reference, inst.priors()[i], inst.state(i));
    std::vector<Point> conjugates(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rest = 1.0 - inst.priors()[i];
        conjugates[i] =
            scale(1.0 / rest, lincomb(1.0, reference, -inst.priors()[i], inst.state(i)));
    }
    WeakHelstromFamily fam{inst, inst.priors(), std::move(conjugates), std::move(reference), 1.0};
    if (!validate(fam).ok()) throw NumericalError("family: trivial construction failed to validate");
    return fam;
}

WeakHelstromFamily weaken(const WeakHelstromFamily& fam, double target) {
    if (!(target <= 1.0 + kTolNum))
        throw ValidationError("weaken: target ratio must not exceed 1");
    if (std::abs(target - fam.ratio) <= kTolNum) return fam;
    if (!(target > fam.ratio))
        throw ValidationError("weaken: target ratio must exceed the current ratio");
    const std::size_t n = fam.instance.num_states();
    WeakHelstromFamily out = fam;
    out.ratio = target;
    for (std::size_t i = 0; i < n; ++i) {
        const double tp_new = fam.instance.priors()[i] / target;
        const double kappa = (1.0 - fam.tilde_p[i]) / (1.0 - tp_new);
        out.tilde_p[i] = tp_new;
        out.conjugates[i] =
            lincomb(kappa, fam.conjugates[i], 1.0 - kappa, fam.instance.state(i));
    }
    if (!validate(out).ok()) throw NumericalError("weaken: result failed to validate");
    return out;
}

WeakHelstromFamily geometric_family(const DiscriminationInstance& inst,
                                    const std::optional<Point>& reference) {
    const std::size_t n = inst.num_states();
    const std::size_t d = inst.space().dim();
    Point ref;
    if (reference) {
        ref = *reference;
        if (ref.size() != d) throw ValidationError("family: reference dimension mismatch");
        if (!contains(inst.space(), ref))
            throw ValidationError("family: reference lies outside the space");
    } else {
        ref.assign(d, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            ref = lincomb(1.0, ref, inst.priors()[i], inst.state(i));
    }
    for (std::size_t i = 0; i < n; ++i)
        if (dist2(ref, inst.state(i)) <= kTolGeom)
            throw ValidationError("family: reference coincides with state " + std::to_string(i));

    // Push each state's ray through the reference to the boundary. The weight
    // q_i puts the reference at q_i s_i + (1 - q_i) u_i; the binding index is
    // the one whose prior-to-weight ratio is largest.
    std::vector<Point> far(n);
    Vec q(n);
    for (std::size_t i = 0; i < n; ++i) {
        const RayHit hit = ray_to_boundary(inst.space(), inst.state(i), ref);
        far[i] = hit.boundary_point;
        q[i] = 1.0 - 1.0 / hit.mu;
        if (!(q[i] > 0.0))
            throw ValidationError("family: reference sits on the boundary beyond state " +
                                  std::to_string(i));
    }
    std::size_t binding = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (inst.priors()[i] / q[i] > inst.priors()[binding] / q[binding]) binding = i;
    const double ratio = inst.priors()[binding] / q[binding];
    if (ratio > 1.0 + kTolNum)
        throw ValidationError("family: this reference cannot produce a nontrivial bound");

    WeakHelstromFamily fam{inst, Vec(n), std::vector<Point>(n), ref, ratio};
    for (std::size_t i = 0; i < n; ++i) {
        const double tp = inst.priors()[i] * q[binding] / inst.priors()[binding];
        fam.tilde_p[i] = tp;
        fam.conjugates[i] =
            scale(1.0 / (1.0 - tp), lincomb(q[i] - tp, inst.state(i), 1.0 - q[i], far[i]));
    }
    if (!validate(fam).ok())
        throw NumericalError("family: ray construction failed to validate");
    return fam;
}

RatioBoundReport ratio_bound_check(const WeakHelstromFamily& fam, const Observable& obs) {
    validate_observable(fam.instance.space(), obs, 1e-7);
    RatioBoundReport rep;
    rep.p_success = success_probability(fam.instance, obs);
    for (std::size_t i = 0; i < fam.instance.num_states(); ++i)
        rep.slack += (1.0 - fam.tilde_p[i]) * obs.effects[i](fam.conjugates[i]);
    rep.identity_residual = std::abs(1.0 - rep.p_success / fam.ratio - rep.slack);
    rep.bound_holds = rep.p_success <= fam.ratio + kTolNum;
    return rep;
}

Certification certify_optimal(const WeakHelstromFamily& fam, const Observable& obs) {
    validate_observable(fam.instance.space(), obs, 1e-7);
    if (obs.effects.size() != fam.instance.num_states())
        throw ValidationError("certify: outcome count does not match state count");
    Certification cert;
    for (std::size_t i = 0; i < fam.instance.num_states(); ++i)
        cert.max_conjugate_value =
            std::max(cert.max_conjugate_value, obs.effects[i](fam.conjugates[i]));
    cert.certified = cert.max_conjugate_value <= kTolNum;
    return cert;
}

BinaryCertificate binary_certify_by_distinguishability(const WeakHelstromFamily& fam) {
    if (fam.instance.num_states() != 2)
        throw ValidationError("certify: shortcut needs exactly two states");
    BinaryCertificate cert;
    auto sep = distinguishable(fam.instance.space(), fam.conjugates[0], fam.conjugates[1]);
    if (!sep) return cert;
    cert.conjugates_distinguishable = true;
    // sep is 1 on t_1 and 0 on t_2, so (unit - sep, sep) annihilates both.
    Effect complement{scale(-1.0, sep->linear), 1.0 - sep->offset};
    cert.observable.effects = {std::move(complement), std::move(*sep)};
    return cert;
}

}  // namespace helstrom
