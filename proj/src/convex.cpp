#include "helstrom/convex.hpp"

#include <cmath>
#include <string>

#include "helstrom/errors.hpp"
#include "helstrom/lp.hpp"

namespace helstrom {
namespace {

// Feasibility of sum(lambda_j v_j) = x, lambda >= 0, sum(lambda) = 1 over the
// given vertex subset. Returns the weights when solvable.
std::optional<Vec> hull_weights(const std::vector<Point>& verts, const Point& x,
                                std::size_t skip = static_cast<std::size_t>(-1)) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < verts.size(); ++j)
        if (j != skip) idx.push_back(j);
    if (idx.empty()) return std::nullopt;
    const std::size_t d = x.size();
    lp::LinearProgram prog;
    prog.objective.assign(idx.size(), 0.0);
    for (std::size_t k = 0; k < d; ++k) {
        Vec row(idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) row[c] = verts[idx[c]][k];
        prog.add_eq(std::move(row), x[k]);
    }
    prog.add_eq(Vec(idx.size(), 1.0), 1.0);
    auto sol = lp::solve(prog);
    if (!sol.optimal()) return std::nullopt;
    Vec full(verts.size(), 0.0);
    for (std::size_t c = 0; c < idx.size(); ++c) full[idx[c]] = std::max(0.0, sol.x[c]);
    return full;
}

}  // namespace

ConvexStateSpace::ConvexStateSpace(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw ValidationError("state space: no vertices");
    dim_ = vertices_[0].size();
    if (dim_ == 0) throw ValidationError("state space: zero-dimensional vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (vertices_[i].size() != dim_)
            throw ValidationError("state space: vertex " + std::to_string(i) +
                                  " has inconsistent dimension");
        if (!all_finite(vertices_[i]))
            throw ValidationError("state space: vertex " + std::to_string(i) + " is not finite");
    }
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            if (dist2(vertices_[i], vertices_[j]) <= kTolGeom)
                throw ValidationError("state space: vertices " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_.size() > 1 && hull_weights(vertices_, vertices_[i], i))
            throw ValidationError("state space: vertex " + std::to_string(i) +
                                  " is not an extreme point");
}

Point ConvexStateSpace::centroid() const {
    Point c(dim_, 0.0);
    for (const auto& v : vertices_)
        for (std::size_t k = 0; k < dim_; ++k) c[k] += v[k];
    for (double& x : c) x /= static_cast<double>(vertices_.size());
    return c;
}

std::optional<ConvexCombination> contains(const ConvexStateSpace& space, const Point& x) {
    if (x.size() != space.dim()) throw ValidationError("contains: point dimension mismatch");
    if (!all_finite(x)) throw ValidationError("contains: point is not finite");
    auto w = hull_weights(space.vertices(), x);
    if (!w) return std::nullopt;
    return ConvexCombination{std::move(*w)};
}

RayHit ray_to_boundary(const ConvexStateSpace& space, const Point& origin, const Point& through) {
    const std::size_t d = space.dim();
    if (origin.size() != d || through.size() != d)
        throw ValidationError("ray: point dimension mismatch");
    if (dist2(origin, through) <= kTolGeom)
        throw ValidationError("ray: origin and through point coincide");
    if (!contains(space, origin)) throw ValidationError("ray: origin lies outside the space");
    if (!contains(space, through)) throw ValidationError("ray: through point lies outside the space");

    // Variables (lambda_1..lambda_m, mu): maximize mu subject to
    // sum(lambda_j v_j) - mu * (through - origin) = origin, sum(lambda) = 1.
    const auto& verts = space.vertices();
    const std::size_t m = verts.size();
    const Vec dir = sub(through, origin);
    lp::LinearProgram prog;
    prog.objective.assign(m + 1, 0.0);
    prog.objective[m] = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
        Vec row(m + 1);
        for (std::size_t j = 0; j < m; ++j) row[j] = verts[j][k];
        row[m] = -dir[k];
        prog.add_eq(std::move(row), origin[k]);
    }
    {
        Vec row(m + 1, 1.0);
        row[m] = 0.0;
        prog.add_eq(std::move(row), 1.0);
    }
    auto sol = lp::solve(prog);
    if (!sol.optimal()) throw NumericalError("ray: boundary search failed");
    const double mu = sol.x[m];
    return RayHit{lincomb(1.0, origin, mu, dir), mu};
}

double interpolation_ratio(const Point& a, const Point& interior, const Point& b) {
    if (a.size() != interior.size() || b.size() != interior.size())
        throw ValidationError("interpolation: dimension mismatch");
    const Vec ab = sub(a, b);
    const double len2 = dot(ab, ab);
    if (len2 <= kTolGeom * kTolGeom)
        throw ValidationError("interpolation: endpoints coincide");
    double q = dot(sub(interior, b), ab) / len2;
    const Point fit = lincomb(q, a, 1.0 - q, b);
    if (dist2(fit, interior) > kTolGeom)
        throw ValidationError("interpolation: point is not on the segment");
    if (q < -kTolGeom || q > 1.0 + kTolGeom)
        throw ValidationError("interpolation: ratio outside [0, 1]");
    return std::min(1.0, std::max(0.0, q));
}

}  // namespace helstrom
