#include "roofwire/fitter.hpp"

#include "roofwire/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace roofwire {

namespace {

constexpr double kMinComponent = 1e-6;

void clamp_components(ParamEdge& edge) {
    edge.comp = edge.comp.cwiseMax(0.0);
    if (edge.comp.maxCoeff() < kMinComponent) {
        edge.comp.x() = kMinComponent;  // keep the edge decodable
    }
}

PredictionSet subset(const PredictionSet& preds, const std::vector<std::size_t>& keep) {
    PredictionSet out;
    out.edges.reserve(keep.size());
    out.quadrant_logits.reserve(keep.size());
    out.confidence_logits.reserve(keep.size());
    for (const std::size_t i : keep) {
        out.edges.push_back(preds.edges[i]);
        out.quadrant_logits.push_back(preds.quadrant_logits[i]);
        out.confidence_logits.push_back(preds.confidence_logits[i]);
    }
    return out;
}

}  // namespace

PredictionSet init_queries(const PointCloud& cloud, const FitConfig& cfg) {
    if (cfg.num_queries < 1) {
        throw InvalidArgument("at least one query edge required");
    }
    if (cloud.size() < static_cast<std::size_t>(cfg.num_queries)) {
        throw InvalidArgument("cloud smaller than the number of query edges");
    }
    const auto seeds = farthest_point_sampling(cloud, cfg.num_queries);

    Rng rng(cfg.seed);
    PredictionSet out;
    out.edges.reserve(seeds.size());
    out.quadrant_logits.assign(seeds.size(), {0.0, 0.0, 0.0, 0.0});
    out.confidence_logits.assign(seeds.size(), 0.0);
    for (const auto& p : seeds) {
        ParamEdge edge;
        edge.midpoint = p;
        const Point3 base{cfg.init_length, 0.0, 0.0};
        edge.comp = (base + rng.normal3(0.1 * cfg.init_length)).cwiseAbs();
        edge.quadrant = 0;
        edge.confidence = sigmoid(0.0);
        clamp_components(edge);
        out.edges.push_back(edge);
    }
    return out;
}

FitResult fit(const PointCloud& cloud, const Wireframe& gt, const FitConfig& cfg,
              const SimilarityWeights& w, const LossWeights& lw) {
    if (gt.edges.empty()) {
        throw InvalidArgument("ground-truth wireframe has no edges");
    }
    if (cfg.num_queries < static_cast<int>(gt.edges.size())) {
        throw InvalidArgument("need at least as many queries as ground-truth edges");
    }
    if (cfg.iterations < 1) {
        throw InvalidArgument("at least one iteration required");
    }

    const std::vector<Segment> gt_segments = gt.segments();
    PredictionSet preds = init_queries(cloud, cfg);

    FitResult result;
    result.loss_trace.reserve(static_cast<std::size_t>(cfg.iterations));

    const int rematch_every = std::max(1, cfg.rematch_every);
    const int quarter = std::max(1, cfg.iterations / 4);
    MatchResult match = match_edges(preds.segments(), gt_segments, w);

    for (int it = 0; it < cfg.iterations; ++it) {
        if (it > 0 && it % rematch_every == 0) {
            match = match_edges(preds.segments(), gt_segments, w);
        }
        const double step = cfg.step_size * std::pow(0.5, it / quarter);

        const LossBreakdown loss =
            total_loss_with_match(preds, gt_segments, match, w, lw, cfg.label_mode);
        result.loss_trace.push_back(loss.total);

        const auto grads =
            grad_total_loss_with_match(preds, gt_segments, match, w, lw, cfg.label_mode);
        for (std::size_t i = 0; i < preds.size(); ++i) {
            ParamEdge& edge = preds.edges[i];
            edge.midpoint -= step * grads[i].midpoint;
            edge.comp -= step * grads[i].comp;
            clamp_components(edge);
            preds.confidence_logits[i] -= step * grads[i].confidence_logit;
            for (int k = 0; k < 4; ++k) {
                preds.quadrant_logits[i][static_cast<std::size_t>(k)] -=
                    step * grads[i].quadrant_logits[static_cast<std::size_t>(k)];
            }
        }
        preds.sync_derived();
    }

    result.predictions = std::move(preds);
    return result;
}

PredictionSet filter_by_confidence(const PredictionSet& preds, double threshold) {
    if (threshold < 0.0 || threshold > 1.0) {
        throw InvalidArgument("confidence threshold must be in [0, 1]");
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds.edges[i].confidence >= threshold) keep.push_back(i);
    }
    return subset(preds, keep);
}

PredictionSet edge_nms(const PredictionSet& preds, const SimilarityWeights& w, double tau) {
    if (tau <= 0.0) {
        throw InvalidArgument("suppression threshold must be positive");
    }
    std::vector<std::size_t> order(preds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return preds.edges[a].confidence > preds.edges[b].confidence;
    });

    std::vector<std::size_t> kept;
    std::vector<Segment> kept_segments;
    for (const std::size_t i : order) {
        const Segment candidate = preds.segment(i);
        bool survives = true;
        for (const Segment& other : kept_segments) {
            if (edge_similarity(candidate, other, w) <= tau) {
                survives = false;
                break;
            }
        }
        if (survives) {
            kept.push_back(i);
            kept_segments.push_back(candidate);
        }
    }
    return subset(preds, kept);
}

}  // namespace roofwire
