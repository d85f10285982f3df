#pragma once

#include "roofwire/geometry.hpp"

#include <vector>

namespace roofwire {

struct EvalConfig {
    double corner_match_threshold = 0.1;  // meters
};

struct CornerMatch {
    int pred = -1;
    int gt = -1;
    double distance = 0.0;
};

/// Minimum-total-distance injective assignment between corner sets, with
/// pairs beyond the distance threshold discarded.
std::vector<CornerMatch> match_corners(const Wireframe& pred, const Wireframe& gt,
                                       const EvalConfig& cfg);

struct EvalReport {
    double aco = 0.0;  // mean matched-corner offset, meters
    double cp = 0.0, cr = 0.0, cf1 = 0.0;
    double ep = 0.0, er = 0.0, ef1 = 0.0;
    int matched_corners = 0;
    int matched_edges = 0;
};

/// Corner and edge precision/recall/F1 plus the average corner offset. An
/// edge counts as matched iff its endpoints are corner-matched to the two
/// endpoints of a single ground-truth edge.
EvalReport evaluate(const Wireframe& pred, const Wireframe& gt, const EvalConfig& cfg);

}  // namespace roofwire
