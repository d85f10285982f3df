#pragma once

#include "roofwire/geometry.hpp"

#include <algorithm>
#include <cmath>

// Independent reference implementations used to freeze expected values.
// They avoid the library's closed-form projection: the squared distance
// along a segment is an exact quadratic in the parameter, so its minimum is
// recovered from three function evaluations.
namespace roofwire::testing {

inline double point_segment_distance_oracle(const Segment& seg, const Point3& p) {
    const auto d2 = [&](double t) {
        return (p - (seg.a + t * (seg.b - seg.a))).squaredNorm();
    };
    const double f0 = d2(0.0);
    const double fh = d2(0.5);
    const double f1 = d2(1.0);
    double best = std::min(f0, f1);
    // Exact quadratic f(t) = alpha t^2 + beta t + gamma through the three
    // evaluations; its clamped vertex is the candidate interior minimum.
    const double alpha = 2.0 * (f0 - 2.0 * fh + f1);
    if (alpha > 0.0) {
        const double beta = f1 - f0 - alpha;
        const double t = std::clamp(-beta / (2.0 * alpha), 0.0, 1.0);
        best = std::min(best, d2(t));
    }
    return std::sqrt(best);
}

/// Dense symmetric Hausdorff: many uniform samples on each edge against the
/// continuous other edge.
inline double hausdorff_distance_oracle(const Segment& ei, const Segment& ej,
                                        int samples = 4096) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        worst = std::max(worst,
                         point_segment_distance_oracle(ej, ei.a + t * (ei.b - ei.a)));
        worst = std::max(worst,
                         point_segment_distance_oracle(ei, ej.a + t * (ej.b - ej.a)));
    }
    return worst;
}

}  // namespace roofwire::testing
