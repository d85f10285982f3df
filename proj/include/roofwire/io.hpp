#pragma once

#include "roofwire/losses.hpp"
#include "roofwire/metrics.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace roofwire {

/// File parsing failure; line is 1-based when known.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what, int line_number = 0)
        : std::runtime_error(line_number > 0
                                 ? what + " (line " + std::to_string(line_number) + ")"
                                 : what),
          line(line_number) {}
    int line = 0;
};

/// Whitespace-separated rows of 3 (x y z) or 7 (x y z r g b reflectance)
/// numbers; '#' lines are comments. Arities must not be mixed.
PointCloud parse_xyz(std::string_view text);

std::string write_xyz(const PointCloud& cloud);

/// OBJ subset: "v x y z" vertices and "l i j" line elements (1-based).
/// Other directives are ignored; duplicate lines are deduplicated.
Wireframe parse_obj_wireframe(std::string_view text);

/// Deterministic OBJ output: vertices in index order at 6 decimals, then
/// edges in sorted order.
std::string write_obj_wireframe(const Wireframe& wf);

nlohmann::ordered_json to_json(const PredictionSet& preds);
PredictionSet prediction_set_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const EvalReport& report);

nlohmann::ordered_json to_json(const MatchResult& match, const SimilarityMatrix& sims);

nlohmann::ordered_json loss_trace_to_json(const std::vector<double>& trace);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace roofwire
