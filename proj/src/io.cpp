#include "roofwire/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace roofwire {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream iss(line);
    std::string f;
    while (iss >> f) fields.push_back(f);
    return fields;
}

double parse_number(const std::string& token, int line_number) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE) {
        throw ParseError("malformed number '" + token + "'", line_number);
    }
    return value;
}

long parse_index(const std::string& token, int line_number) {
    errno = 0;
    char* end = nullptr;
    const long value = std::strtol(token.c_str(), &end, 10);
    if (end != token.c_str() + token.size() || errno == ERANGE) {
        throw ParseError("malformed index '" + token + "'", line_number);
    }
    return value;
}

}  // namespace

PointCloud parse_xyz(std::string_view text) {
    PointCloud cloud;
    std::istringstream stream{std::string(text)};
    std::string line;
    int line_number = 0;
    int arity = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto fields = split_fields(line);
        if (fields.empty() || fields[0][0] == '#') continue;
        if (fields.size() != 3 && fields.size() != 7) {
            throw ParseError("expected 3 or 7 fields, got " +
                                 std::to_string(fields.size()),
                             line_number);
        }
        if (arity == 0) {
            arity = static_cast<int>(fields.size());
        } else if (arity != static_cast<int>(fields.size())) {
            throw ParseError("mixed row arities", line_number);
        }
        Point3 p{parse_number(fields[0], line_number),
                 parse_number(fields[1], line_number),
                 parse_number(fields[2], line_number)};
        cloud.points.push_back(p);
        if (arity == 7) {
            cloud.attrs.push_back({parse_number(fields[3], line_number),
                                   parse_number(fields[4], line_number),
                                   parse_number(fields[5], line_number),
                                   parse_number(fields[6], line_number)});
        }
    }
    return cloud;
}

std::string write_xyz(const PointCloud& cloud) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto& p = cloud.points[i];
        out << p.x() << ' ' << p.y() << ' ' << p.z();
        if (cloud.has_attrs()) {
            const auto& a = cloud.attrs[i];
            out << ' ' << a[0] << ' ' << a[1] << ' ' << a[2] << ' ' << a[3];
        }
        out << '\n';
    }
    return out.str();
}

Wireframe parse_obj_wireframe(std::string_view text) {
    Wireframe wf;
    std::set<std::pair<int, int>> seen;
    std::istringstream stream{std::string(text)};
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto fields = split_fields(line);
        if (fields.empty() || fields[0][0] == '#') continue;
        if (fields[0] == "v") {
            if (fields.size() < 4) {
                throw ParseError("vertex needs three coordinates", line_number);
            }
            wf.vertices.push_back({parse_number(fields[1], line_number),
                                   parse_number(fields[2], line_number),
                                   parse_number(fields[3], line_number)});
        } else if (fields[0] == "l") {
            if (fields.size() != 3) {
                throw ParseError("line element needs two indices", line_number);
            }
            const long i = parse_index(fields[1], line_number);
            const long j = parse_index(fields[2], line_number);
            const long n = static_cast<long>(wf.vertices.size());
            if (i < 1 || j < 1 || i > n || j > n) {
                throw ParseError("vertex index out of range", line_number);
            }
            if (i == j) {
                throw ParseError("self-loop edge", line_number);
            }
            const auto e = std::minmax(static_cast<int>(i - 1), static_cast<int>(j - 1));
            if (seen.insert(e).second) wf.edges.push_back(e);
        }
        // other directives ignored
    }
    return wf;
}

std::string write_obj_wireframe(const Wireframe& wf) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(6);
    for (const auto& v : wf.vertices) {
        out << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(wf.edges.size());
    for (const auto& [i, j] : wf.edges) edges.push_back(std::minmax(i, j));
    std::sort(edges.begin(), edges.end());
    for (const auto& [i, j] : edges) {
        out << "l " << i + 1 << ' ' << j + 1 << '\n';
    }
    return out.str();
}

nlohmann::ordered_json to_json(const PredictionSet& preds) {
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const auto& e = preds.edges[i];
        nlohmann::ordered_json j;
        j["midpoint"] = {e.midpoint.x(), e.midpoint.y(), e.midpoint.z()};
        j["comp"] = {e.comp.x(), e.comp.y(), e.comp.z()};
        j["quadrant"] = e.quadrant;
        j["confidence"] = e.confidence;
        j["confidence_logit"] = preds.confidence_logits[i];
        j["quadrant_logits"] = preds.quadrant_logits[i];
        edges.push_back(std::move(j));
    }
    nlohmann::ordered_json out;
    out["edges"] = std::move(edges);
    return out;
}

PredictionSet prediction_set_from_json(const nlohmann::json& j) {
    PredictionSet preds;
    if (!j.contains("edges") || !j["edges"].is_array()) {
        throw ParseError("prediction JSON must contain an 'edges' array");
    }
    for (const auto& e : j["edges"]) {
        ParamEdge pe;
        const auto mid = e.at("midpoint");
        const auto comp = e.at("comp");
        pe.midpoint = {mid.at(0).get<double>(), mid.at(1).get<double>(),
                       mid.at(2).get<double>()};
        pe.comp = {comp.at(0).get<double>(), comp.at(1).get<double>(),
                   comp.at(2).get<double>()};
        pe.quadrant = e.at("quadrant").get<int>();
        pe.confidence = e.at("confidence").get<double>();
        preds.edges.push_back(pe);
        preds.confidence_logits.push_back(
            e.contains("confidence_logit") ? e["confidence_logit"].get<double>()
                                           : logit_of(pe.confidence));
        std::array<double, 4> z{0.0, 0.0, 0.0, 0.0};
        if (e.contains("quadrant_logits")) {
            for (int k = 0; k < 4; ++k) {
                z[static_cast<std::size_t>(k)] = e["quadrant_logits"].at(k).get<double>();
            }
        } else {
            z[static_cast<std::size_t>(pe.quadrant)] = 20.0;
        }
        preds.quadrant_logits.push_back(z);
    }
    return preds;
}

nlohmann::ordered_json to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["aco"] = report.aco;
    j["cp"] = report.cp;
    j["cr"] = report.cr;
    j["cf1"] = report.cf1;
    j["ep"] = report.ep;
    j["er"] = report.er;
    j["ef1"] = report.ef1;
    j["matched_corners"] = report.matched_corners;
    j["matched_edges"] = report.matched_edges;
    return j;
}

nlohmann::ordered_json to_json(const MatchResult& match, const SimilarityMatrix& sims) {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& p : match.pairs) {
        pairs.push_back({{"pred", p.pred}, {"gt", p.gt}, {"cost", p.cost}});
    }
    nlohmann::ordered_json j;
    j["pairs"] = std::move(pairs);
    j["unmatched_preds"] = match.unmatched_preds;
    j["unmatched_gts"] = match.unmatched_gts;
    j["rows"] = sims.rows;
    j["cols"] = sims.cols;
    j["similarity"] = sims.values;
    return j;
}

nlohmann::ordered_json loss_trace_to_json(const std::vector<double>& trace) {
    nlohmann::ordered_json j;
    j["iterations"] = trace.size();
    j["total_loss"] = trace;
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write file: " + path);
    }
    out << contents;
}

}  // namespace roofwire
