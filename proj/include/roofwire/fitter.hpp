#pragma once

#include "roofwire/losses.hpp"

#include <cstdint>
#include <vector>

namespace roofwire {

struct FitConfig {
    int num_queries = 128;
    int iterations = 2000;
    double step_size = 1e-2;
    int rematch_every = 25;
    double conf_threshold = 0.7;
    double nms_threshold = 0.5;
    double init_length = 1.0;
    std::uint64_t seed = 0;
    LabelMode label_mode = LabelMode::Soft;
};

/// Query edges seeded at the farthest-point-sampled cloud positions, with a
/// noisy axis-aligned initial direction. Deterministic given the seed.
PredictionSet init_queries(const PointCloud& cloud, const FitConfig& cfg);

struct FitResult {
    PredictionSet predictions;
    std::vector<double> loss_trace;  // total loss per iteration, pre-update
};

/// Gradient descent over all edge parameters against the ground-truth
/// wireframe, re-running the bipartite match every rematch_every iterations.
/// Unmatched predictions only receive confidence pressure toward zero. The
/// step halves every quarter of the run.
FitResult fit(const PointCloud& cloud, const Wireframe& gt, const FitConfig& cfg,
              const SimilarityWeights& w, const LossWeights& lw);

/// Keeps edges with confidence >= threshold, preserving order.
PredictionSet filter_by_confidence(const PredictionSet& preds, double threshold);

/// Greedy suppression in descending-confidence order: an edge survives iff
/// its similarity to every already-kept edge exceeds tau. Output is sorted
/// by confidence (descending; ties keep the lower input index first).
PredictionSet edge_nms(const PredictionSet& preds, const SimilarityWeights& w, double tau);

}  // namespace roofwire
