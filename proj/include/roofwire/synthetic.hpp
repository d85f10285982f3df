#pragma once

#include "roofwire/geometry.hpp"

#include <cstdint>
#include <optional>

namespace roofwire {

enum class RoofKind { Flat, Gable, Hip, LShaped };

struct RoofSpec {
    RoofKind kind = RoofKind::Gable;
    double width = 10.0;        // x extent, meters
    double depth = 8.0;         // y extent, meters
    double eave_height = 3.0;
    double ridge_height = 5.0;
    int point_count = 2560;
    double noise_sigma = 0.0;
    double dropout_fraction = 0.0;
    std::uint64_t seed = 0;
};

struct RoofSample {
    PointCloud cloud;
    Wireframe wireframe;
};

/// Exact roof edge graph plus a cloud sampled uniformly by area over the
/// roof faces, Gaussian-perturbed and thinned by the dropout fraction.
/// Bit-reproducible for a fixed spec.
RoofSample generate_roof(const RoofSpec& spec);

enum class AugmentKind { FlipYZ, FlipXZ, RotateZ };

struct AugmentOp {
    AugmentKind kind = AugmentKind::RotateZ;
    /// Rotation angle in degrees; when absent, drawn uniformly in [-5, 5].
    std::optional<double> angle_deg;
};

/// Applies the same flip/rotation to the cloud and the wireframe vertices.
RoofSample augment(const PointCloud& cloud, const Wireframe& wf, const AugmentOp& op,
                   std::uint64_t seed);

/// Ground-truth edges as loose segments with Gaussian-jittered endpoints;
/// shared corners jitter independently per edge.
std::vector<Segment> perturb_wireframe(const Wireframe& wf, double sigma,
                                       std::uint64_t seed);

}  // namespace roofwire
