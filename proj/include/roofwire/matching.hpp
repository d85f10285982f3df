#pragma once

#include "roofwire/similarity.hpp"

#include <cstddef>
#include <vector>

namespace roofwire {

/// Injective assignment of predicted edges to ground-truth edges.
/// Exactly min(#preds, #gts) pairs; each index appears at most once.
struct MatchResult {
    struct Pair {
        int pred = -1;
        int gt = -1;
        double cost = 0.0;
    };
    std::vector<Pair> pairs;  // sorted by pred index
    std::vector<int> unmatched_preds;
    std::vector<int> unmatched_gts;
};

/// Per-prediction confidence targets in [0, 1]; unmatched predictions get 0.
struct SoftLabels {
    std::vector<double> g_con;
};

/// Minimum-total-cost assignment of the smaller side into the larger.
/// Optimal-cost ties are resolved to the lexicographically smallest pair
/// list. Throws InvalidArgument on non-finite entries.
MatchResult hungarian_assign(const SimilarityMatrix& cost);

/// hungarian_assign over the pairwise edge-similarity matrix.
MatchResult match_edges(const std::vector<Segment>& preds,
                        const std::vector<Segment>& gts,
                        const SimilarityWeights& w);

/// Confidence targets from match costs: a prediction matched at similarity s
/// gets 1 - s when s < 1 and 0 otherwise; unmatched predictions get 0.
SoftLabels soft_confidence_labels(std::size_t num_preds, const MatchResult& match,
                                  const SimilarityMatrix& sims);

/// Binary targets: 1 for matched predictions, 0 for the rest.
SoftLabels hard_confidence_labels(std::size_t num_preds, const MatchResult& match);

}  // namespace roofwire
