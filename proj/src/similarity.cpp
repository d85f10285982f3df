#include "roofwire/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace roofwire {

namespace {

void require_valid(const Segment& s) {
    if (s.a == s.b) {
        throw InvalidEdge("degenerate segment");
    }
}

void require_valid(const SimilarityWeights& w) {
    if (w.alpha < 0.0 || w.beta < 0.0 || w.gamma < 0.0 ||
        w.alpha + w.beta + w.gamma <= 0.0) {
        throw InvalidArgument("similarity weights must be non-negative with positive sum");
    }
    if (w.samples_per_edge < 2) {
        throw InvalidArgument("similarity needs at least two samples per edge");
    }
}

/// max over uniform samples on src of the distance to the continuous dst.
double one_sided_hausdorff(const Segment& src, const Segment& dst, int samples) {
    const Point3 d = src.b - src.a;
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        worst = std::max(worst, point_segment_distance(dst, src.a + t * d));
    }
    return worst;
}

}  // namespace

double hausdorff_distance(const Segment& ei, const Segment& ej, int samples) {
    require_valid(ei);
    require_valid(ej);
    if (samples < 2) {
        throw InvalidArgument("at least two Hausdorff samples required");
    }
    return std::max(one_sided_hausdorff(ei, ej, samples),
                    one_sided_hausdorff(ej, ei, samples));
}

double direction_similarity(const Segment& ei, const Segment& ej) {
    require_valid(ei);
    require_valid(ej);
    const Point3 di = ei.direction();
    const Point3 dj = ej.direction();
    const double cosine = std::abs(di.dot(dj)) / (di.norm() * dj.norm());
    return 1.0 - std::min(cosine, 1.0);
}

double length_similarity(const Segment& ei, const Segment& ej) {
    require_valid(ei);
    require_valid(ej);
    const double li = ei.length();
    const double lj = ej.length();
    return 1.0 - std::min(li, lj) / std::max(li, lj);
}

double edge_similarity(const Segment& ei, const Segment& ej, const SimilarityWeights& w) {
    require_valid(w);
    return w.alpha * hausdorff_distance(ei, ej, w.samples_per_edge) +
           w.beta * direction_similarity(ei, ej) +
           w.gamma * length_similarity(ei, ej);
}

SimilarityMatrix similarity_matrix(const std::vector<Segment>& preds,
                                   const std::vector<Segment>& gts,
                                   const SimilarityWeights& w) {
    if (preds.empty() || gts.empty()) {
        throw InvalidArgument("similarity matrix needs non-empty edge sets");
    }
    require_valid(w);
    SimilarityMatrix m(static_cast<int>(preds.size()), static_cast<int>(gts.size()));
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) {
            m(i, j) = edge_similarity(preds[static_cast<std::size_t>(i)],
                                      gts[static_cast<std::size_t>(j)], w);
        }
    }
    return m;
}

}  // namespace roofwire
