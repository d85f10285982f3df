#pragma once

#include "roofwire/geometry.hpp"

#include <vector>

namespace roofwire {

/// Balancing coefficients for the combined edge similarity, plus the number
/// of uniform samples used for the Hausdorff term.
struct SimilarityWeights {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    int samples_per_edge = 64;
};

/// Dense rows-by-cols matrix of pairwise edge similarities.
struct SimilarityMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;  // row-major

    SimilarityMatrix() = default;
    SimilarityMatrix(int r, int c)
        : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, 0.0) {}

    double operator()(int i, int j) const {
        return values[static_cast<std::size_t>(i) * cols + j];
    }
    double& operator()(int i, int j) {
        return values[static_cast<std::size_t>(i) * cols + j];
    }
};

/// Symmetric Hausdorff distance between two segments: each direction takes
/// uniform samples on the source edge against the exact closest point on the
/// continuous target edge.
double hausdorff_distance(const Segment& ei, const Segment& ej, int samples);

/// 1 - |cos| of the angle between the edge directions; 0 for (anti)parallel
/// edges, 1 for perpendicular ones.
double direction_similarity(const Segment& ei, const Segment& ej);

/// 1 - min/max of the two edge lengths.
double length_similarity(const Segment& ei, const Segment& ej);

/// alpha * Hausdorff + beta * direction + gamma * length; 0 iff the edges
/// coincide (for positive weights). Lower is more similar.
double edge_similarity(const Segment& ei, const Segment& ej, const SimilarityWeights& w);

/// All-pairs edge similarity; entry (i, j) compares preds[i] with gts[j].
SimilarityMatrix similarity_matrix(const std::vector<Segment>& preds,
                                   const std::vector<Segment>& gts,
                                   const SimilarityWeights& w);

}  // namespace roofwire
