#include "roofwire/assembly.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace roofwire {

namespace {

constexpr int kUnvisited = -2;

std::vector<int> neighbors_of(const std::vector<Point3>& points, std::size_t idx,
                              double eps2) {
    std::vector<int> out;
    for (std::size_t j = 0; j < points.size(); ++j) {
        if ((points[idx] - points[j]).squaredNorm() <= eps2) {
            out.push_back(static_cast<int>(j));
        }
    }
    return out;
}

}  // namespace

std::vector<int> dbscan_cluster(const std::vector<Point3>& points,
                                const DbscanParams& params) {
    if (params.eps <= 0.0) {
        throw InvalidArgument("clustering radius must be positive");
    }
    if (params.min_points < 1) {
        throw InvalidArgument("minimum point count must be at least 1");
    }

    const double eps2 = params.eps * params.eps;
    std::vector<int> labels(points.size(), kUnvisited);
    int next_cluster = 0;

    for (std::size_t i = 0; i < points.size(); ++i) {
        if (labels[i] != kUnvisited) continue;
        const auto seed_neighbors = neighbors_of(points, i, eps2);
        if (static_cast<int>(seed_neighbors.size()) < params.min_points) {
            labels[i] = kDbscanNoise;
            continue;
        }
        const int cluster = next_cluster++;
        labels[i] = cluster;
        std::deque<int> frontier(seed_neighbors.begin(), seed_neighbors.end());
        while (!frontier.empty()) {
            const auto j = static_cast<std::size_t>(frontier.front());
            frontier.pop_front();
            if (labels[j] == kDbscanNoise) {
                labels[j] = cluster;  // border point
                continue;
            }
            if (labels[j] != kUnvisited) continue;
            labels[j] = cluster;
            const auto js = neighbors_of(points, j, eps2);
            if (static_cast<int>(js.size()) >= params.min_points) {
                frontier.insert(frontier.end(), js.begin(), js.end());
            }
        }
    }
    return labels;
}

Wireframe assemble_wireframe(const std::vector<Segment>& segments,
                             const DbscanParams& params,
                             AssemblyDiagnostics* diagnostics) {
    AssemblyDiagnostics diag;
    Wireframe wf;
    if (segments.empty()) {
        if (diagnostics) *diagnostics = diag;
        return wf;
    }

    std::vector<Point3> endpoints;
    endpoints.reserve(segments.size() * 2);
    for (const auto& s : segments) {
        endpoints.push_back(s.a);
        endpoints.push_back(s.b);
    }

    const auto labels = dbscan_cluster(endpoints, params);
    int num_clusters = 0;
    for (const int l : labels) num_clusters = std::max(num_clusters, l + 1);
    diag.merged_clusters = num_clusters;

    std::vector<Point3> centroids(static_cast<std::size_t>(num_clusters), Point3::Zero());
    std::vector<int> counts(static_cast<std::size_t>(num_clusters), 0);
    for (std::size_t i = 0; i < endpoints.size(); ++i) {
        if (labels[i] >= 0) {
            centroids[static_cast<std::size_t>(labels[i])] += endpoints[i];
            ++counts[static_cast<std::size_t>(labels[i])];
        }
    }
    for (int c = 0; c < num_clusters; ++c) {
        centroids[static_cast<std::size_t>(c)] /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }

    // Exactly coincident positions share one vertex index.
    std::map<std::tuple<double, double, double>, int> vertex_of;
    auto vertex_index = [&](const Point3& p) {
        const auto key = std::make_tuple(p.x(), p.y(), p.z());
        const auto it = vertex_of.find(key);
        if (it != vertex_of.end()) return it->second;
        const int idx = static_cast<int>(wf.vertices.size());
        wf.vertices.push_back(p);
        vertex_of.emplace(key, idx);
        return idx;
    };

    std::set<std::pair<int, int>> edge_set;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const Point3 pa = labels[2 * s] >= 0
                              ? centroids[static_cast<std::size_t>(labels[2 * s])]
                              : endpoints[2 * s];
        const Point3 pb = labels[2 * s + 1] >= 0
                              ? centroids[static_cast<std::size_t>(labels[2 * s + 1])]
                              : endpoints[2 * s + 1];
        const int ia = vertex_index(pa);
        const int ib = vertex_index(pb);
        if (ia == ib) {
            ++diag.dropped_degenerate_edges;
            continue;
        }
        if (edge_set.insert(std::minmax(ia, ib)).second) {
            wf.edges.push_back(std::minmax(ia, ib));
        }
    }

    if (diagnostics) *diagnostics = diag;
    return wf;
}

}  // namespace roofwire
