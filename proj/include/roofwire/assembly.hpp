#pragma once

#include "roofwire/geometry.hpp"

#include <vector>

namespace roofwire {

struct DbscanParams {
    double eps = 0.05;   // meters
    int min_points = 2;
};

/// Label assigned to points that belong to no cluster.
constexpr int kDbscanNoise = -1;

/// Density-based clustering. A point is core iff at least min_points lie
/// within eps (inclusive, counting itself); clusters are the connected
/// components of core-point reachability. Border points join the first
/// cluster that discovers them under index-order traversal.
std::vector<int> dbscan_cluster(const std::vector<Point3>& points,
                                const DbscanParams& params);

struct AssemblyDiagnostics {
    int dropped_degenerate_edges = 0;
    int merged_clusters = 0;
};

/// Builds a connected wireframe from loose segments: clusters all endpoints,
/// replaces clustered endpoints by their cluster centroid, keeps noise
/// endpoints as-is, deduplicates coincident vertices and repeated edges, and
/// drops edges whose endpoints collapsed together. Never invents an edge
/// absent from the input.
Wireframe assemble_wireframe(const std::vector<Segment>& segments,
                             const DbscanParams& params,
                             AssemblyDiagnostics* diagnostics = nullptr);

}  // namespace roofwire
