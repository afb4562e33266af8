#include "helstrom/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "helstrom/errors.hpp"

namespace helstrom::models {

ConvexStateSpace classical_space(std::size_t d) {
    if (d < 2) throw ValidationError("classical space: need at least two outcomes");
    std::vector<Point> verts(d, Point(d, 0.0));
    for (std::size_t k = 0; k < d; ++k) verts[k][k] = 1.0;
    return ConvexStateSpace(std::move(verts));
}

bool is_classical_space(const ConvexStateSpace& space) {
    const std::size_t d = space.dim();
    if (space.num_vertices() != d) return false;
    std::vector<char> seen(d, 0);
    for (const auto& v : space.vertices()) {
        std::size_t unit = d;
        for (std::size_t k = 0; k < d; ++k) {
            if (std::abs(v[k] - 1.0) <= kTolNum) {
                if (unit != d) return false;
                unit = k;
            } else if (std::abs(v[k]) > kTolNum) {
                return false;
            }
        }
        if (unit == d || seen[unit]) return false;
        seen[unit] = 1;
    }
    return true;
}

void check_classical_state(const Vec& s) {
    if (s.size() < 2) throw ValidationError("classical state: need at least two outcomes");
    double sum = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (!std::isfinite(s[k]) || s[k] < -kTolNum)
            throw ValidationError("classical state: entry " + std::to_string(k) +
                                  " is negative");
        sum += s[k];
    }
    if (std::abs(sum - 1.0) > kTolNum)
        throw ValidationError("classical state: entries do not sum to one");
}

double classical_map_oracle(const DiscriminationInstance& inst) {
    if (!is_classical_space(inst.space()))
        throw ValidationError("best-guess decoding: the space is not a simplex");
    double total = 0.0;
    for (std::size_t k = 0; k < inst.space().dim(); ++k) {
        double best = 0.0;
        for (std::size_t i = 0; i < inst.num_states(); ++i)
            best = std::max(best, inst.priors()[i] * inst.state(i)[k]);
        total += best;
    }
    return total;
}

ClassicalBinaryResult classical_binary_family(const Vec& s1, const Vec& s2, double p1,
                                              double p2) {
    check_classical_state(s1);
    check_classical_state(s2);
    if (s1.size() != s2.size())
        throw ValidationError("classical pair: states have different outcome counts");
    if (!(p1 > 0.0) || !(p2 > 0.0) || std::abs(p1 + p2 - 1.0) > kTolNum)
        throw ValidationError("classical pair: priors must be positive and sum to one");
    const std::size_t d = s1.size();
    Vec x(d);
    double wplus = 0.0, wminus = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        x[k] = p1 * s1[k] - p2 * s2[k];
        (x[k] >= 0.0 ? wplus : wminus) += std::abs(x[k]);
    }
    ClassicalBinaryResult res;
    constexpr double kPartFloor = 1e-12;
    res.generic = wplus > kPartFloor && wminus > kPartFloor;
    res.p_success = res.generic ? 0.5 * (1.0 + wplus + wminus) : std::max(p1, p2);
    if (!res.generic) return res;

    Vec t1(d), t2(d);
    for (std::size_t k = 0; k < d; ++k) {
        t1[k] = std::max(-x[k], 0.0) / wminus;
        t2[k] = std::max(x[k], 0.0) / wplus;
    }
    const double tp1 = p1 / res.p_success;
    const Point reference = lincomb(tp1, s1, 1.0 - tp1, t1);
    DiscriminationInstance inst(classical_space(d), {s1, s2}, {p1, p2});
    res.family = make_family(std::move(inst), {tp1, p2 / res.p_success}, {t1, t2}, reference);
    return res;
}

ConvexStateSpace square_space() {
    return ConvexStateSpace({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}});
}

SquareBinaryResult square_binary(const Point& s1, const Point& s2) {
    auto space = square_space();
    DiscriminationInstance inst(space, {s1, s2}, {0.5, 0.5});

    // Work in coordinates (w, h) where w is the binding axis; mirror back at
    // the end. Exact ties go to the x axis; either choice is optimal there.
    const bool x_binds = std::abs(s1[0] - s2[0]) >= std::abs(s1[1] - s2[1]);
    const std::size_t w = x_binds ? 0 : 1, h = 1 - w;
    const double dw = s1[w] - s2[w], dh = s1[h] - s2[h];
    const double span = std::abs(dw);
    const double q = 1.0 / (1.0 + span);

    // Conjugates differ by (s1 - s2) / span, putting them on the two facets
    // w = 0 and w = 1; t1 takes the facet away from s1.
    const double t1w = dw > 0.0 ? 0.0 : 1.0;
    // Intercept of the line through the prior midpoint with the t1 facet,
    // clamped so both conjugates stay inside the square.
    const double shift = dh / span;  // t2h - t1h, |shift| <= 1
    const double mid_w = 0.5 * (s1[w] + s2[w]), mid_h = 0.5 * (s1[h] + s2[h]);
    const double pref = mid_h + (dh / dw) * (t1w - mid_w);
    const double lo = std::max(0.0, -shift);
    const double hi = std::min(1.0, 1.0 - shift);
    const double t1h = std::min(hi, std::max(lo, pref));

    Point t1(2), t2(2);
    t1[w] = t1w;
    t1[h] = t1h;
    t2[w] = 1.0 - t1w;
    t2[h] = t1h + shift;
    const Point reference = lincomb(q, s1, 1.0 - q, t1);
    WeakHelstromFamily family = make_family(std::move(inst), {q, q}, {t1, t2}, reference);

    auto cert = binary_certify_by_distinguishability(family);
    if (!cert.conjugates_distinguishable)
        throw NumericalError("square pair: conjugates on opposite facets failed to separate");
    const bool certified = certify_optimal(family, cert.observable).certified;
    return SquareBinaryResult{0.5 * (1.0 + span), x_binds ? 'x' : 'y', std::move(family),
                              std::move(cert.observable), certified};
}

SquarePureResult square_pure_state_discrimination() {
    auto space = square_space();
    const std::vector<Point> corners = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}};
    DiscriminationInstance inst(space, corners, Vec(4, 0.25));
    // Conjugate of each corner is the opposite corner; every mixture meets in
    // the center.
    std::vector<Point> conjugates = {{1.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}, {0.0, 0.0}};
    WeakHelstromFamily family =
        make_family(inst, Vec(4, 0.5), std::move(conjugates), {0.5, 0.5});
    Observable obs;
    obs.effects = {
        Effect{{-0.25, -0.25}, 0.5},   // (2 - x - y) / 4
        Effect{{-0.25, 0.25}, 0.25},   // (1 - x + y) / 4
        Effect{{0.25, -0.25}, 0.25},   // (1 + x - y) / 4
        Effect{{0.25, 0.25}, 0.0},     // (x + y) / 4
    };
    validate_observable(space, obs);
    Certification cert = certify_optimal(family, obs);
    if (!cert.certified)
        throw NumericalError("square corners: the closed-form measurement lost its certificate");
    return SquarePureResult{0.5, std::move(inst), std::move(family), std::move(obs), cert};
}

quantum::DensityMatrix classical_embed_quantum(const Vec& s) {
    check_classical_state(s);
    const std::size_t d = s.size();
    quantum::HermitianMatrix m(d);
    for (std::size_t k = 0; k < d; ++k)
        m.set(k, k, quantum::Complex(std::max(s[k], 0.0), 0.0));
    return quantum::DensityMatrix(std::move(m));
}

}  // namespace helstrom::models
