#pragma once

#include "roofwire/matching.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace roofwire {

/// Coefficients balancing the five loss terms.
struct LossWeights {
    double lambda_mid = 1.0;
    double lambda_comp = 1.0;
    double lambda_con = 1.0;
    double lambda_quad = 1.0;
    double lambda_sim = 1.0;
};

struct LossBreakdown {
    double mid = 0.0;
    double comp = 0.0;
    double con = 0.0;
    double quad = 0.0;
    double sim = 0.0;
    double total = 0.0;
    int positives = 0;
    bool no_positives = false;  // set when no prediction was matched
};

/// Confidence-target flavor: soft targets derived from edge similarity, or
/// plain binary matched/unmatched labels.
enum class LabelMode { Soft, Hard };

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

/// Inverse sigmoid with the argument clamped away from {0, 1}.
inline double logit_of(double p) {
    const double q = std::clamp(p, 1e-12, 1.0 - 1e-12);
    return std::log(q / (1.0 - q));
}

/// A set of predicted edges: geometry plus the raw classifier scores.
/// Invariants kept by sync_derived(): confidence = sigmoid(confidence_logit)
/// and quadrant = argmax(quadrant_logits) for every edge.
struct PredictionSet {
    std::vector<ParamEdge> edges;
    std::vector<std::array<double, 4>> quadrant_logits;
    std::vector<double> confidence_logits;

    std::size_t size() const { return edges.size(); }
    Segment segment(std::size_t i) const { return endpoints_from_params(edges[i]); }
    std::vector<Segment> segments() const;

    void sync_derived();
    void validate() const;

    /// Builds predictions that reproduce the given segments, with the stated
    /// confidence logit and a one-hot quadrant margin.
    static PredictionSet from_segments(const std::vector<Segment>& segs,
                                       double confidence_logit = 20.0,
                                       double quadrant_margin = 20.0);
};

/// Mean L1 distance between matched midpoints, averaged over positives.
double loss_midpoint(const PredictionSet& preds, const std::vector<Segment>& gts,
                     const MatchResult& match);

/// Mean L1 distance between matched per-axis components, as loss_midpoint.
double loss_component(const PredictionSet& preds, const std::vector<Segment>& gts,
                      const MatchResult& match);

/// Mean binary cross-entropy between predicted confidences and the targets,
/// averaged over all predictions. Confidences are clamped at 1e-7.
double loss_confidence(const PredictionSet& preds, const SoftLabels& labels);

/// Mean 4-way cross-entropy between quadrant logits and the ground-truth
/// class, averaged over positives.
double loss_quadrant(const PredictionSet& preds, const std::vector<Segment>& gts,
                     const MatchResult& match);

/// Mean edge similarity over matched pairs, recomputed from the given
/// prediction geometry.
double loss_similarity(const std::vector<Segment>& pred_segments,
                       const std::vector<Segment>& gts, const MatchResult& match,
                       const SimilarityWeights& w);

/// Matches predictions to ground truth, then evaluates all five terms.
LossBreakdown total_loss(const PredictionSet& preds, const std::vector<Segment>& gts,
                         const SimilarityWeights& w, const LossWeights& lw,
                         LabelMode mode = LabelMode::Soft);

/// As total_loss but reuses a fixed assignment. Similarities and confidence
/// targets are recomputed from the current geometry.
LossBreakdown total_loss_with_match(const PredictionSet& preds,
                                    const std::vector<Segment>& gts,
                                    const MatchResult& match,
                                    const SimilarityWeights& w, const LossWeights& lw,
                                    LabelMode mode = LabelMode::Soft);

/// Per-edge gradient of the total loss.
struct EdgeGradient {
    Point3 midpoint{Point3::Zero()};
    Point3 comp{Point3::Zero()};
    double confidence_logit = 0.0;
    std::array<double, 4> quadrant_logits{0.0, 0.0, 0.0, 0.0};
};

/// Analytic (sub)gradient of total_loss with the assignment recomputed once
/// and held fixed. Nondifferentiable points (L1 kinks, Hausdorff ties, equal
/// lengths) use the subgradient at the achieving sample, with exact ties
/// mapping to zero.
std::vector<EdgeGradient> grad_total_loss(const PredictionSet& preds,
                                          const std::vector<Segment>& gts,
                                          const SimilarityWeights& w,
                                          const LossWeights& lw,
                                          LabelMode mode = LabelMode::Soft);

/// As grad_total_loss against a caller-supplied fixed assignment.
std::vector<EdgeGradient> grad_total_loss_with_match(const PredictionSet& preds,
                                                     const std::vector<Segment>& gts,
                                                     const MatchResult& match,
                                                     const SimilarityWeights& w,
                                                     const LossWeights& lw,
                                                     LabelMode mode = LabelMode::Soft);

}  // namespace roofwire
