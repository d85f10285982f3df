#include "roofwire/metrics.hpp"

#include "roofwire/matching.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace roofwire {

std::vector<CornerMatch> match_corners(const Wireframe& pred, const Wireframe& gt,
                                       const EvalConfig& cfg) {
    if (cfg.corner_match_threshold <= 0.0) {
        throw InvalidArgument("corner match threshold must be positive");
    }
    std::vector<CornerMatch> out;
    if (pred.vertices.empty() || gt.vertices.empty()) return out;

    SimilarityMatrix dist(static_cast<int>(pred.vertices.size()),
                          static_cast<int>(gt.vertices.size()));
    for (int i = 0; i < dist.rows; ++i) {
        for (int j = 0; j < dist.cols; ++j) {
            dist(i, j) = (pred.vertices[static_cast<std::size_t>(i)] -
                          gt.vertices[static_cast<std::size_t>(j)])
                             .norm();
        }
    }
    const MatchResult assignment = hungarian_assign(dist);
    for (const auto& pair : assignment.pairs) {
        if (pair.cost <= cfg.corner_match_threshold) {
            out.push_back({pair.pred, pair.gt, pair.cost});
        }
    }
    return out;
}

EvalReport evaluate(const Wireframe& pred, const Wireframe& gt, const EvalConfig& cfg) {
    EvalReport report;
    const auto corners = match_corners(pred, gt, cfg);
    report.matched_corners = static_cast<int>(corners.size());

    if (!corners.empty()) {
        double sum = 0.0;
        for (const auto& c : corners) sum += c.distance;
        report.aco = sum / static_cast<double>(corners.size());
    }
    if (!pred.vertices.empty()) {
        report.cp = static_cast<double>(corners.size()) /
                    static_cast<double>(pred.vertices.size());
    }
    if (!gt.vertices.empty()) {
        report.cr = static_cast<double>(corners.size()) /
                    static_cast<double>(gt.vertices.size());
    }

    std::map<int, int> gt_of_pred;
    for (const auto& c : corners) gt_of_pred[c.pred] = c.gt;
    std::set<std::pair<int, int>> gt_edges;
    for (const auto& [i, j] : gt.edges) gt_edges.insert(std::minmax(i, j));

    int matched_edges = 0;
    for (const auto& [i, j] : pred.edges) {
        const auto a = gt_of_pred.find(i);
        const auto b = gt_of_pred.find(j);
        if (a == gt_of_pred.end() || b == gt_of_pred.end()) continue;
        if (gt_edges.count(std::minmax(a->second, b->second)) > 0) ++matched_edges;
    }
    report.matched_edges = matched_edges;
    if (!pred.edges.empty()) {
        report.ep = static_cast<double>(matched_edges) /
                    static_cast<double>(pred.edges.size());
    }
    if (!gt.edges.empty()) {
        report.er = static_cast<double>(matched_edges) /
                    static_cast<double>(gt.edges.size());
    }

    const auto f1 = [](double p, double r) {
        return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    };
    report.cf1 = f1(report.cp, report.cr);
    report.ef1 = f1(report.ep, report.er);
    return report;
}

}  // namespace roofwire
