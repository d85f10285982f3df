#include "roofwire/losses.hpp"

#include <algorithm>
#include <cmath>

namespace roofwire {

namespace {

constexpr double kConfEps = 1e-7;
// Distances below this carry no usable direction; ties map to the zero
// subgradient so exact and 1-ulp-perfect fits have vanishing gradients.
constexpr double kTinyDist = 1e-9;

double clamp_conf(double p) { return std::clamp(p, kConfEps, 1.0 - kConfEps); }

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

std::array<double, 4> softmax4(const std::array<double, 4>& z) {
    const double m = std::max({z[0], z[1], z[2], z[3]});
    std::array<double, 4> e{};
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        e[static_cast<std::size_t>(k)] = std::exp(z[static_cast<std::size_t>(k)] - m);
        sum += e[static_cast<std::size_t>(k)];
    }
    for (auto& x : e) x /= sum;
    return e;
}

double cross_entropy4(const std::array<double, 4>& z, int cls) {
    const double m = std::max({z[0], z[1], z[2], z[3]});
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) sum += std::exp(z[static_cast<std::size_t>(k)] - m);
    return std::log(sum) + m - z[static_cast<std::size_t>(cls)];
}

/// Gradient of a scalar with respect to the two endpoints of the predicted
/// segment.
struct SegmentGrad {
    Point3 a{Point3::Zero()};
    Point3 b{Point3::Zero()};
};

double hausdorff_with_grad(const Segment& pred, const Segment& gt, int samples,
                           SegmentGrad& g) {
    const Point3 dp = pred.b - pred.a;
    const Point3 dg = gt.b - gt.a;

    // Samples on the prediction against the continuous ground-truth edge.
    double best_fwd = -1.0;
    double best_fwd_t = 0.0;
    Point3 fwd_point{Point3::Zero()}, fwd_closest{Point3::Zero()};
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        const Point3 p = pred.a + t * dp;
        const Point3 q = closest_point_on_segment(gt, p);
        const double d = (p - q).norm();
        if (d > best_fwd) {
            best_fwd = d;
            best_fwd_t = t;
            fwd_point = p;
            fwd_closest = q;
        }
    }

    // Samples on the ground truth against the continuous predicted edge.
    const double pred_len2 = dp.squaredNorm();
    double best_rev = -1.0;
    double best_rev_s = 0.0;
    Point3 rev_point{Point3::Zero()}, rev_closest{Point3::Zero()};
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / (samples - 1);
        const Point3 q = gt.a + t * dg;
        const double s = std::clamp((q - pred.a).dot(dp) / pred_len2, 0.0, 1.0);
        const Point3 cp = pred.a + s * dp;
        const double d = (q - cp).norm();
        if (d > best_rev) {
            best_rev = d;
            best_rev_s = s;
            rev_point = q;
            rev_closest = cp;
        }
    }

    // Subgradient at the achieving sample of the achieving direction.
    if (best_fwd >= best_rev) {
        if (best_fwd > kTinyDist) {
            const Point3 dir = (fwd_point - fwd_closest) / best_fwd;
            g.a += (1.0 - best_fwd_t) * dir;
            g.b += best_fwd_t * dir;
        }
        return best_fwd;
    }
    if (best_rev > kTinyDist) {
        const Point3 dir = (rev_closest - rev_point) / best_rev;
        g.a += (1.0 - best_rev_s) * dir;
        g.b += best_rev_s * dir;
    }
    return best_rev;
}

double direction_with_grad(const Segment& pred, const Segment& gt, SegmentGrad& g) {
    const Point3 dp = pred.direction();
    const Point3 dg = gt.direction();
    const double np = dp.norm();
    const double ng = dg.norm();
    const double cosine = dp.dot(dg) / (np * ng);
    const double value = 1.0 - std::min(std::abs(cosine), 1.0);

    const Point3 dcos = dg / (np * ng) - (cosine / (np * np)) * dp;
    const Point3 dval = -sign_of(cosine) * dcos;
    g.a -= dval;
    g.b += dval;
    return value;
}

double length_with_grad(const Segment& pred, const Segment& gt, SegmentGrad& g) {
    const double lp = pred.length();
    const double lg = gt.length();
    const double value = 1.0 - std::min(lp, lg) / std::max(lp, lg);

    double dval_dlp = 0.0;  // near-ties keep the zero subgradient
    if (std::abs(lp - lg) > 1e-9 * std::max(lp, lg)) {
        dval_dlp = lp < lg ? -1.0 / lg : lg / (lp * lp);
    }
    const Point3 unit = pred.direction() / lp;
    g.a -= dval_dlp * unit;
    g.b += dval_dlp * unit;
    return value;
}

double edge_similarity_with_grad(const Segment& pred, const Segment& gt,
                                 const SimilarityWeights& w, SegmentGrad& g) {
    SegmentGrad gh, gd, gl;
    const double h = hausdorff_with_grad(pred, gt, w.samples_per_edge, gh);
    const double d = direction_with_grad(pred, gt, gd);
    const double l = length_with_grad(pred, gt, gl);
    g.a = w.alpha * gh.a + w.beta * gd.a + w.gamma * gl.a;
    g.b = w.alpha * gh.b + w.beta * gd.b + w.gamma * gl.b;
    return w.alpha * h + w.beta * d + w.gamma * l;
}

void validate_match(const MatchResult& match, std::size_t num_preds, std::size_t num_gts) {
    for (const auto& pair : match.pairs) {
        if (pair.pred < 0 || static_cast<std::size_t>(pair.pred) >= num_preds ||
            pair.gt < 0 || static_cast<std::size_t>(pair.gt) >= num_gts) {
            throw InvalidArgument("match pair index out of range");
        }
    }
}

struct Evaluated {
    LossBreakdown breakdown;
    std::vector<EdgeGradient> grads;
};

Evaluated evaluate_losses(const PredictionSet& preds, const std::vector<Segment>& gts,
                          const MatchResult* match, const SimilarityWeights& w,
                          const LossWeights& lw, LabelMode mode, bool with_grad) {
    preds.validate();
    const std::size_t n = preds.size();

    Evaluated out;
    if (with_grad) out.grads.assign(n, EdgeGradient{});

    MatchResult local;
    if (match == nullptr && n > 0 && !gts.empty()) {
        local = match_edges(preds.segments(), gts, w);
        match = &local;
    }

    const int npos = match ? static_cast<int>(match->pairs.size()) : 0;
    out.breakdown.positives = npos;
    out.breakdown.no_positives = npos == 0;

    std::vector<double> labels(n, 0.0);
    double mid_sum = 0.0, comp_sum = 0.0, quad_sum = 0.0, sim_sum = 0.0;
    if (match) {
        validate_match(*match, n, gts.size());
        for (const auto& pair : match->pairs) {
            const auto i = static_cast<std::size_t>(pair.pred);
            const ParamEdge& pe = preds.edges[i];
            const Segment ps = preds.segment(i);
            const Segment& gs = gts[static_cast<std::size_t>(pair.gt)];
            const ParamEdge gp = params_from_segment(gs);

            const Point3 mid_diff = pe.midpoint - gp.midpoint;
            const Point3 comp_diff = pe.comp - gp.comp;
            mid_sum += mid_diff.cwiseAbs().sum();
            comp_sum += comp_diff.cwiseAbs().sum();
            quad_sum += cross_entropy4(preds.quadrant_logits[i], gp.quadrant);

            SegmentGrad sg;
            const double sim = with_grad ? edge_similarity_with_grad(ps, gs, w, sg)
                                         : edge_similarity(ps, gs, w);
            sim_sum += sim;
            labels[i] = mode == LabelMode::Hard ? 1.0 : (sim < 1.0 ? 1.0 - sim : 0.0);

            if (with_grad) {
                EdgeGradient& eg = out.grads[i];
                const double inv = 1.0 / npos;
                const Point3 signs = quadrant_signs(pe.quadrant);
                for (int k = 0; k < 3; ++k) {
                    eg.midpoint[k] += lw.lambda_mid * inv * sign_of(mid_diff[k]);
                    eg.comp[k] += lw.lambda_comp * inv * sign_of(comp_diff[k]);
                }
                const auto sm = softmax4(preds.quadrant_logits[i]);
                for (int k = 0; k < 4; ++k) {
                    const double onehot = k == gp.quadrant ? 1.0 : 0.0;
                    eg.quadrant_logits[static_cast<std::size_t>(k)] +=
                        lw.lambda_quad * inv * (sm[static_cast<std::size_t>(k)] - onehot);
                }
                // The similarity both enters the loss directly and, in soft
                // mode, moves the confidence target of this pair.
                double coeff = lw.lambda_sim * inv;
                if (mode == LabelMode::Soft && sim < 1.0 && n > 0) {
                    const double ph = clamp_conf(pe.confidence);
                    coeff += lw.lambda_con / static_cast<double>(n) *
                             std::log(ph / (1.0 - ph));
                }
                eg.midpoint += coeff * (sg.a + sg.b);
                eg.comp += coeff * 0.5 * (sg.a - sg.b).cwiseProduct(signs);
            }
        }
    }

    double con_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ph = clamp_conf(preds.edges[i].confidence);
        const double gl = labels[i];
        con_sum += -(gl * std::log(ph) + (1.0 - gl) * std::log(1.0 - ph));
        if (with_grad) {
            out.grads[i].confidence_logit +=
                lw.lambda_con / static_cast<double>(n) * (preds.edges[i].confidence - gl);
        }
    }

    LossBreakdown& b = out.breakdown;
    if (npos > 0) {
        b.mid = mid_sum / npos;
        b.comp = comp_sum / npos;
        b.quad = quad_sum / npos;
        b.sim = sim_sum / npos;
    }
    b.con = n > 0 ? con_sum / static_cast<double>(n) : 0.0;
    b.total = lw.lambda_mid * b.mid + lw.lambda_comp * b.comp + lw.lambda_con * b.con +
              lw.lambda_quad * b.quad + lw.lambda_sim * b.sim;
    return out;
}

}  // namespace

std::vector<Segment> PredictionSet::segments() const {
    std::vector<Segment> out;
    out.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) out.push_back(segment(i));
    return out;
}

void PredictionSet::sync_derived() {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edges[i].confidence = sigmoid(confidence_logits[i]);
        const auto& z = quadrant_logits[i];
        edges[i].quadrant = static_cast<int>(
            std::max_element(z.begin(), z.end()) - z.begin());
    }
}

void PredictionSet::validate() const {
    if (quadrant_logits.size() != edges.size() ||
        confidence_logits.size() != edges.size()) {
        throw InvalidArgument("prediction set arrays must have matching lengths");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (const double z : quadrant_logits[i]) {
            if (!std::isfinite(z)) throw InvalidArgument("quadrant logits must be finite");
        }
        if (!std::isfinite(confidence_logits[i])) {
            throw InvalidArgument("confidence logits must be finite");
        }
    }
}

PredictionSet PredictionSet::from_segments(const std::vector<Segment>& segs,
                                           double confidence_logit,
                                           double quadrant_margin) {
    PredictionSet out;
    out.edges.reserve(segs.size());
    out.quadrant_logits.reserve(segs.size());
    out.confidence_logits.assign(segs.size(), confidence_logit);
    for (const auto& s : segs) {
        ParamEdge pe = params_from_segment(s);
        pe.confidence = sigmoid(confidence_logit);
        out.edges.push_back(pe);
        std::array<double, 4> z{0.0, 0.0, 0.0, 0.0};
        z[static_cast<std::size_t>(pe.quadrant)] = quadrant_margin;
        out.quadrant_logits.push_back(z);
    }
    return out;
}

double loss_midpoint(const PredictionSet& preds, const std::vector<Segment>& gts,
                     const MatchResult& match) {
    validate_match(match, preds.size(), gts.size());
    if (match.pairs.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& pair : match.pairs) {
        const Point3 gm = gts[static_cast<std::size_t>(pair.gt)].midpoint();
        sum += (preds.edges[static_cast<std::size_t>(pair.pred)].midpoint - gm)
                   .cwiseAbs()
                   .sum();
    }
    return sum / static_cast<double>(match.pairs.size());
}

double loss_component(const PredictionSet& preds, const std::vector<Segment>& gts,
                      const MatchResult& match) {
    validate_match(match, preds.size(), gts.size());
    if (match.pairs.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& pair : match.pairs) {
        const Segment& gs = gts[static_cast<std::size_t>(pair.gt)];
        const Point3 gc = (gs.a - gs.b).cwiseAbs();
        sum += (preds.edges[static_cast<std::size_t>(pair.pred)].comp - gc)
                   .cwiseAbs()
                   .sum();
    }
    return sum / static_cast<double>(match.pairs.size());
}

double loss_confidence(const PredictionSet& preds, const SoftLabels& labels) {
    if (labels.g_con.size() != preds.size()) {
        throw InvalidArgument("one confidence target per prediction required");
    }
    if (preds.size() == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const double p = clamp_conf(preds.edges[i].confidence);
        const double g = labels.g_con[i];
        sum += -(g * std::log(p) + (1.0 - g) * std::log(1.0 - p));
    }
    return sum / static_cast<double>(preds.size());
}

double loss_quadrant(const PredictionSet& preds, const std::vector<Segment>& gts,
                     const MatchResult& match) {
    preds.validate();
    validate_match(match, preds.size(), gts.size());
    if (match.pairs.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& pair : match.pairs) {
        const int cls = params_from_segment(gts[static_cast<std::size_t>(pair.gt)]).quadrant;
        sum += cross_entropy4(preds.quadrant_logits[static_cast<std::size_t>(pair.pred)], cls);
    }
    return sum / static_cast<double>(match.pairs.size());
}

double loss_similarity(const std::vector<Segment>& pred_segments,
                       const std::vector<Segment>& gts, const MatchResult& match,
                       const SimilarityWeights& w) {
    validate_match(match, pred_segments.size(), gts.size());
    if (match.pairs.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& pair : match.pairs) {
        sum += edge_similarity(pred_segments[static_cast<std::size_t>(pair.pred)],
                               gts[static_cast<std::size_t>(pair.gt)], w);
    }
    return sum / static_cast<double>(match.pairs.size());
}

LossBreakdown total_loss(const PredictionSet& preds, const std::vector<Segment>& gts,
                         const SimilarityWeights& w, const LossWeights& lw,
                         LabelMode mode) {
    return evaluate_losses(preds, gts, nullptr, w, lw, mode, false).breakdown;
}

LossBreakdown total_loss_with_match(const PredictionSet& preds,
                                    const std::vector<Segment>& gts,
                                    const MatchResult& match,
                                    const SimilarityWeights& w, const LossWeights& lw,
                                    LabelMode mode) {
    return evaluate_losses(preds, gts, &match, w, lw, mode, false).breakdown;
}

std::vector<EdgeGradient> grad_total_loss(const PredictionSet& preds,
                                          const std::vector<Segment>& gts,
                                          const SimilarityWeights& w,
                                          const LossWeights& lw, LabelMode mode) {
    return evaluate_losses(preds, gts, nullptr, w, lw, mode, true).grads;
}

std::vector<EdgeGradient> grad_total_loss_with_match(const PredictionSet& preds,
                                                     const std::vector<Segment>& gts,
                                                     const MatchResult& match,
                                                     const SimilarityWeights& w,
                                                     const LossWeights& lw,
                                                     LabelMode mode) {
    return evaluate_losses(preds, gts, &match, w, lw, mode, true).grads;
}

}  // namespace roofwire
