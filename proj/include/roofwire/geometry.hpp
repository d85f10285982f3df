#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace roofwire {

using Point3 = Eigen::Vector3d;

/// Thrown for degenerate edges (zero direction / all-zero components).
struct InvalidEdge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an argument violates an operation precondition.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Point cloud with optional per-point attributes (RGB + reflectance).
struct PointCloud {
    std::vector<Point3> points;
    std::vector<std::array<double, 4>> attrs;  // empty, or one entry per point

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    bool has_attrs() const { return !attrs.empty(); }
};

/// Undirected 3D line segment: (a, b) and (b, a) denote the same edge.
struct Segment {
    Point3 a{Point3::Zero()};
    Point3 b{Point3::Zero()};

    Point3 direction() const { return b - a; }
    Point3 midpoint() const { return 0.5 * (a + b); }
    double length() const { return (b - a).norm(); }
};

/// Edge encoded as midpoint, per-axis absolute components, sign class,
/// and a confidence score in [0, 1].
struct ParamEdge {
    Point3 midpoint{Point3::Zero()};
    Point3 comp{Point3::Zero()};  // elementwise >= 0
    int quadrant = 0;             // sign class in {0, 1, 2, 3}
    double confidence = 1.0;
};

/// Graph of corner vertices joined by undirected straight edges.
/// Edges are stored as (lo, hi) index pairs.
struct Wireframe {
    std::vector<Point3> vertices;
    std::vector<std::pair<int, int>> edges;

    std::vector<Segment> segments() const;

    /// Throws InvalidArgument on out-of-range indices, self-loops, or
    /// duplicate edges.
    void validate() const;
};

struct QuadrantDecomposition {
    int quadrant = 0;
    Point3 comp{Point3::Zero()};
};

/// Decomposes a direction vector into its sign class and absolute per-axis
/// components. The two opposite orientations of a vector share one class:
/// the representative is chosen so its first nonzero component (x, then y,
/// then z) is positive, and the class index is 2*[y<0] + [z<0] of that
/// representative, with exact zeros counting as positive.
QuadrantDecomposition canonical_quadrant(const Point3& v);

/// Sign vector decoded from a quadrant class: (+1, +/-1, +/-1).
Point3 quadrant_signs(int quadrant);

/// Reconstructs the two endpoints from midpoint/components/quadrant.
Segment endpoints_from_params(const ParamEdge& p);

/// Inverse of endpoints_from_params; confidence is set to 1.
ParamEdge params_from_segment(const Segment& s);

/// K points at parameters k/(K-1), k = 0..K-1, endpoints included. K >= 2.
std::vector<Point3> sample_edge_points(const Segment& s, int samples);

/// Deterministic farthest point sampling: the seed is the point farthest
/// from the cloud centroid, each next pick maximizes the minimum distance
/// to the chosen set. Ties resolve to the lowest index.
std::vector<Point3> farthest_point_sampling(const PointCloud& cloud, int count);

/// Closest point on the segment to p (clamped projection).
Point3 closest_point_on_segment(const Segment& s, const Point3& p);

double point_segment_distance(const Segment& s, const Point3& p);

}  // namespace roofwire
