#pragma once

#include <optional>
#include <vector>

#include "helstrom/linalg.hpp"

namespace helstrom {

struct ConvexCombination {
    Vec weights;  // one per vertex, >= 0, summing to 1
};

// Compact convex state space given by its finite vertex list (V-representation).
// Construction validates that the vertices are finite, share a dimension,
// are pairwise distinct, and that each one is extreme (not in the hull of the
// others); any violation raises ValidationError.
class ConvexStateSpace {
  public:
    explicit ConvexStateSpace(std::vector<Point> vertices);

    std::size_t dim() const { return dim_; }
    std::size_t num_vertices() const { return vertices_.size(); }
    const std::vector<Point>& vertices() const { return vertices_; }
    const Point& vertex(std::size_t i) const { return vertices_[i]; }
    Point centroid() const;

  private:
    std::vector<Point> vertices_;
    std::size_t dim_;
};

// Membership test. Returns the certifying convex combination, or nullopt when
// x lies outside the space.
std::optional<ConvexCombination> contains(const ConvexStateSpace& space, const Point& x);

struct RayHit {
    Point boundary_point;
    double mu;  // boundary_point = origin + mu * (through - origin), mu >= 1
};

// Extends the ray from origin through a second point of the space until it
// leaves the space. Both points must belong to the space and be distinct.
RayHit ray_to_boundary(const ConvexStateSpace& space, const Point& origin, const Point& through);

// Recovers q from interior = q * a + (1 - q) * b. The three points must be
// genuinely collinear in that configuration; the least-squares residual is
// checked and q is clamped to [0, 1] after a tolerance check.
double interpolation_ratio(const Point& a, const Point& interior, const Point& b);

}  // namespace helstrom
