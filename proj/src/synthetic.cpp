#include "roofwire/synthetic.hpp"

#include "roofwire/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace roofwire {

namespace {

struct Triangle {
    Point3 a, b, c;
    double area() const { return 0.5 * (b - a).cross(c - a).norm(); }
};

void add_quad(std::vector<Triangle>& tris, const Point3& a, const Point3& b,
              const Point3& c, const Point3& d) {
    tris.push_back({a, b, c});
    tris.push_back({a, c, d});
}

void validate(const RoofSpec& spec) {
    if (spec.width <= 0.0 || spec.depth <= 0.0 || spec.eave_height <= 0.0) {
        throw InvalidArgument("roof dimensions must be positive");
    }
    const bool pitched = spec.kind == RoofKind::Gable || spec.kind == RoofKind::Hip;
    if (pitched && spec.ridge_height < spec.eave_height) {
        throw InvalidArgument("ridge must not be below the eaves");
    }
    if (spec.point_count < 1) {
        throw InvalidArgument("point count must be positive");
    }
    if (spec.dropout_fraction < 0.0 || spec.dropout_fraction >= 1.0) {
        throw InvalidArgument("dropout fraction must be in [0, 1)");
    }
}

struct RoofShape {
    Wireframe wireframe;
    std::vector<Triangle> faces;
};

RoofShape build_shape(const RoofSpec& spec) {
    const double hw = 0.5 * spec.width;
    const double hd = 0.5 * spec.depth;
    const double eh = spec.eave_height;
    const double rh = spec.ridge_height;

    RoofShape shape;
    auto& wf = shape.wireframe;
    auto& faces = shape.faces;

    switch (spec.kind) {
        case RoofKind::Flat: {
            wf.vertices = {{-hw, -hd, eh}, {hw, -hd, eh}, {hw, hd, eh}, {-hw, hd, eh}};
            wf.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
            add_quad(faces, wf.vertices[0], wf.vertices[1], wf.vertices[2], wf.vertices[3]);
            break;
        }
        case RoofKind::Gable: {
            wf.vertices = {{-hw, -hd, eh}, {hw, -hd, eh}, {hw, hd, eh}, {-hw, hd, eh},
                           {-hw, 0.0, rh}, {hw, 0.0, rh}};
            wf.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3},  // eaves
                        {4, 5},                           // ridge
                        {0, 4}, {3, 4}, {1, 5}, {2, 5}};  // gable slopes
            add_quad(faces, wf.vertices[0], wf.vertices[1], wf.vertices[5], wf.vertices[4]);
            add_quad(faces, wf.vertices[4], wf.vertices[5], wf.vertices[2], wf.vertices[3]);
            break;
        }
        case RoofKind::Hip: {
            // Ridge inset chosen so end slopes match the side slopes where
            // the footprint allows it.
            const double inset = std::min(hd, 0.45 * spec.width);
            wf.vertices = {{-hw, -hd, eh},        {hw, -hd, eh},
                           {hw, hd, eh},          {-hw, hd, eh},
                           {-hw + inset, 0.0, rh}, {hw - inset, 0.0, rh}};
            wf.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3},  // eaves
                        {4, 5},                           // ridge
                        {0, 4}, {3, 4}, {1, 5}, {2, 5}};  // hips
            add_quad(faces, wf.vertices[0], wf.vertices[1], wf.vertices[5], wf.vertices[4]);
            add_quad(faces, wf.vertices[4], wf.vertices[5], wf.vertices[2], wf.vertices[3]);
            faces.push_back({wf.vertices[0], wf.vertices[4], wf.vertices[3]});
            faces.push_back({wf.vertices[1], wf.vertices[2], wf.vertices[5]});
            break;
        }
        case RoofKind::LShaped: {
            wf.vertices = {{-hw, -hd, eh}, {hw, -hd, eh}, {hw, 0.0, eh},
                           {0.0, 0.0, eh}, {0.0, hd, eh}, {-hw, hd, eh}};
            wf.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}};
            add_quad(faces, wf.vertices[0], wf.vertices[1], wf.vertices[2],
                     Point3{-hw, 0.0, eh});
            add_quad(faces, Point3{-hw, 0.0, eh}, wf.vertices[3], wf.vertices[4],
                     wf.vertices[5]);
            break;
        }
    }
    return shape;
}

}  // namespace

RoofSample generate_roof(const RoofSpec& spec) {
    validate(spec);
    const RoofShape shape = build_shape(spec);

    std::vector<double> cumulative;
    cumulative.reserve(shape.faces.size());
    double total_area = 0.0;
    for (const auto& tri : shape.faces) {
        total_area += tri.area();
        cumulative.push_back(total_area);
    }

    Rng rng(spec.seed);
    PointCloud cloud;
    cloud.points.reserve(static_cast<std::size_t>(spec.point_count));
    for (int i = 0; i < spec.point_count; ++i) {
        const double pick = rng.uniform() * total_area;
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), pick);
        const auto& tri = shape.faces[std::min(
            static_cast<std::size_t>(it - cumulative.begin()), shape.faces.size() - 1)];
        double r1 = rng.uniform();
        double r2 = rng.uniform();
        if (r1 + r2 > 1.0) {
            r1 = 1.0 - r1;
            r2 = 1.0 - r2;
        }
        Point3 p = tri.a + r1 * (tri.b - tri.a) + r2 * (tri.c - tri.a);
        if (spec.noise_sigma > 0.0) p += rng.normal3(spec.noise_sigma);
        cloud.points.push_back(p);
    }

    const auto drop = static_cast<std::size_t>(
        std::floor(spec.dropout_fraction * static_cast<double>(cloud.points.size())));
    if (drop > 0) {
        // Partial Fisher-Yates: the first `drop` slots pick the removals.
        std::vector<std::size_t> order(cloud.points.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = 0; i < drop; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(rng.integer(order.size() - i));
            std::swap(order[i], order[j]);
        }
        std::vector<char> dropped(cloud.points.size(), 0);
        for (std::size_t i = 0; i < drop; ++i) dropped[order[i]] = 1;
        PointCloud kept;
        kept.points.reserve(cloud.points.size() - drop);
        for (std::size_t i = 0; i < cloud.points.size(); ++i) {
            if (!dropped[i]) kept.points.push_back(cloud.points[i]);
        }
        cloud = std::move(kept);
    }

    return {std::move(cloud), shape.wireframe};
}

RoofSample augment(const PointCloud& cloud, const Wireframe& wf, const AugmentOp& op,
                   std::uint64_t seed) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    switch (op.kind) {
        case AugmentKind::FlipYZ:
            m(0, 0) = -1.0;
            break;
        case AugmentKind::FlipXZ:
            m(1, 1) = -1.0;
            break;
        case AugmentKind::RotateZ: {
            double angle_deg = op.angle_deg.value_or(0.0);
            if (!op.angle_deg.has_value()) {
                Rng rng(seed);
                angle_deg = rng.uniform(-5.0, 5.0);
            }
            const double a = angle_deg * M_PI / 180.0;
            m(0, 0) = std::cos(a);
            m(0, 1) = -std::sin(a);
            m(1, 0) = std::sin(a);
            m(1, 1) = std::cos(a);
            break;
        }
    }

    RoofSample out;
    out.cloud.points.reserve(cloud.points.size());
    for (const auto& p : cloud.points) out.cloud.points.push_back(m * p);
    out.cloud.attrs = cloud.attrs;
    out.wireframe.edges = wf.edges;
    out.wireframe.vertices.reserve(wf.vertices.size());
    for (const auto& v : wf.vertices) out.wireframe.vertices.push_back(m * v);
    return out;
}

std::vector<Segment> perturb_wireframe(const Wireframe& wf, double sigma,
                                       std::uint64_t seed) {
    if (sigma < 0.0) {
        throw InvalidArgument("perturbation sigma must be non-negative");
    }
    Rng rng(seed);
    std::vector<Segment> out;
    out.reserve(wf.edges.size());
    for (const auto& [i, j] : wf.edges) {
        Segment s{wf.vertices[static_cast<std::size_t>(i)],
                  wf.vertices[static_cast<std::size_t>(j)]};
        if (sigma > 0.0) {
            s.a += rng.normal3(sigma);
            s.b += rng.normal3(sigma);
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace roofwire
