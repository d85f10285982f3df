#include "roofwire/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace roofwire {

std::vector<Segment> Wireframe::segments() const {
    std::vector<Segment> out;
    out.reserve(edges.size());
    for (const auto& [i, j] : edges) {
        out.push_back({vertices[static_cast<std::size_t>(i)],
                       vertices[static_cast<std::size_t>(j)]});
    }
    return out;
}

void Wireframe::validate() const {
    const int n = static_cast<int>(vertices.size());
    std::set<std::pair<int, int>> seen;
    for (const auto& [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n) {
            throw InvalidArgument("wireframe edge index out of range");
        }
        if (i == j) {
            throw InvalidArgument("wireframe contains a self-loop");
        }
        if (!seen.insert(std::minmax(i, j)).second) {
            throw InvalidArgument("wireframe contains a duplicate edge");
        }
    }
}

QuadrantDecomposition canonical_quadrant(const Point3& v) {
    if (!v.allFinite()) {
        throw InvalidEdge("direction vector must be finite");
    }
    if (v.isZero(0.0)) {
        throw InvalidEdge("zero direction vector has no quadrant");
    }
    // Flip so the first nonzero component (x, then y, then z) is positive.
    Point3 rep = v;
    for (int axis = 0; axis < 3; ++axis) {
        if (rep[axis] != 0.0) {
            if (rep[axis] < 0.0) rep = -rep;
            break;
        }
    }
    const int quadrant = 2 * (rep.y() < 0.0 ? 1 : 0) + (rep.z() < 0.0 ? 1 : 0);
    return {quadrant, v.cwiseAbs()};
}

Point3 quadrant_signs(int quadrant) {
    if (quadrant < 0 || quadrant > 3) {
        throw InvalidArgument("quadrant class must be in {0, 1, 2, 3}");
    }
    return {1.0, (quadrant & 2) ? -1.0 : 1.0, (quadrant & 1) ? -1.0 : 1.0};
}

Segment endpoints_from_params(const ParamEdge& p) {
    if ((p.comp.array() < 0.0).any()) {
        throw InvalidEdge("components must be non-negative");
    }
    if (p.comp.isZero(0.0)) {
        throw InvalidEdge("all-zero components describe a degenerate edge");
    }
    const Point3 v = quadrant_signs(p.quadrant).cwiseProduct(p.comp);
    return {p.midpoint + 0.5 * v, p.midpoint - 0.5 * v};
}

ParamEdge params_from_segment(const Segment& s) {
    if (s.a == s.b) {
        throw InvalidEdge("segment endpoints coincide");
    }
    const auto dec = canonical_quadrant(s.a - s.b);
    return {s.midpoint(), dec.comp, dec.quadrant, 1.0};
}

std::vector<Point3> sample_edge_points(const Segment& s, int samples) {
    if (samples < 2) {
        throw InvalidArgument("at least two samples per edge required");
    }
    std::vector<Point3> out;
    out.reserve(static_cast<std::size_t>(samples));
    const Point3 d = s.b - s.a;
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        out.push_back(s.a + t * d);
    }
    return out;
}

std::vector<Point3> farthest_point_sampling(const PointCloud& cloud, int count) {
    const std::size_t n = cloud.size();
    if (n == 0) {
        throw InvalidArgument("cannot sample from an empty cloud");
    }
    if (count < 1 || static_cast<std::size_t>(count) > n) {
        throw InvalidArgument("sample count must be in [1, cloud size]");
    }

    Point3 centroid = Point3::Zero();
    for (const auto& p : cloud.points) centroid += p;
    centroid /= static_cast<double>(n);

    std::size_t seed = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = (cloud.points[i] - centroid).squaredNorm();
        if (d > best) {
            best = d;
            seed = i;
        }
    }

    std::vector<Point3> chosen;
    chosen.reserve(static_cast<std::size_t>(count));
    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    std::size_t next = seed;
    for (int k = 0; k < count; ++k) {
        chosen.push_back(cloud.points[next]);
        const Point3& picked = cloud.points[next];
        double far_best = -1.0;
        std::size_t far_idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            min_dist[i] = std::min(min_dist[i], (cloud.points[i] - picked).squaredNorm());
            if (min_dist[i] > far_best) {
                far_best = min_dist[i];
                far_idx = i;
            }
        }
        next = far_idx;
    }
    return chosen;
}

Point3 closest_point_on_segment(const Segment& s, const Point3& p) {
    const Point3 d = s.b - s.a;
    const double len2 = d.squaredNorm();
    if (len2 == 0.0) return s.a;
    const double t = std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0);
    return s.a + t * d;
}

double point_segment_distance(const Segment& s, const Point3& p) {
    return (p - closest_point_on_segment(s, p)).norm();
}

}  // namespace roofwire
