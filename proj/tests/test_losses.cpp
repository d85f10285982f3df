#include "roofwire/losses.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace roofwire;
using roofwire::testing::random_segment;

namespace {

std::vector<Segment> gable_like_gts(Rng& rng, int count, double extent = 4.0) {
    std::vector<Segment> gts;
    for (int i = 0; i < count; ++i) gts.push_back(random_segment(rng, extent));
    return gts;
}

/// Predictions near the given ground truths plus a few stray edges, with
/// noisy scores; sync'd so the stored quadrant/confidence match the logits.
PredictionSet noisy_predictions(Rng& rng, const std::vector<Segment>& gts,
                                int extras, double jitter) {
    std::vector<Segment> segs;
    for (const auto& g : gts) {
        segs.push_back({g.a + rng.normal3(jitter), g.b + rng.normal3(jitter)});
    }
    for (int i = 0; i < extras; ++i) segs.push_back(random_segment(rng, 4.0));

    PredictionSet preds = PredictionSet::from_segments(segs, 0.0, 2.0);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        preds.confidence_logits[i] = rng.uniform(-2.0, 2.0);
        for (auto& z : preds.quadrant_logits[i]) z += rng.normal(0.5);
    }
    preds.sync_derived();
    return preds;
}

double loss_value(const PredictionSet& preds, const std::vector<Segment>& gts,
                  const SimilarityWeights& w, const LossWeights& lw, LabelMode mode) {
    return total_loss(preds, gts, w, lw, mode).total;
}

/// Central finite differences over every parameter block of every edge.
void check_gradient(const PredictionSet& preds, const std::vector<Segment>& gts,
                    const SimilarityWeights& w, const LossWeights& lw, LabelMode mode,
                    double h = 1e-5, double tol = 1e-4) {
    const auto grads = grad_total_loss(preds, gts, w, lw, mode);
    REQUIRE(grads.size() == preds.size());

    const auto relative_error = [](double analytic, double numeric) {
        return std::abs(analytic - numeric) /
               std::max({std::abs(analytic), std::abs(numeric), 1e-3});
    };

    for (std::size_t i = 0; i < preds.size(); ++i) {
        for (int k = 0; k < 3; ++k) {
            PredictionSet plus = preds, minus = preds;
            plus.edges[i].midpoint[k] += h;
            minus.edges[i].midpoint[k] -= h;
            const double fd = (loss_value(plus, gts, w, lw, mode) -
                               loss_value(minus, gts, w, lw, mode)) /
                              (2.0 * h);
            CHECK(relative_error(grads[i].midpoint[k], fd) < tol);
        }
        for (int k = 0; k < 3; ++k) {
            PredictionSet plus = preds, minus = preds;
            plus.edges[i].comp[k] += h;
            minus.edges[i].comp[k] -= h;
            const double fd = (loss_value(plus, gts, w, lw, mode) -
                               loss_value(minus, gts, w, lw, mode)) /
                              (2.0 * h);
            CHECK(relative_error(grads[i].comp[k], fd) < tol);
        }
        {
            PredictionSet plus = preds, minus = preds;
            plus.confidence_logits[i] += h;
            plus.edges[i].confidence = sigmoid(plus.confidence_logits[i]);
            minus.confidence_logits[i] -= h;
            minus.edges[i].confidence = sigmoid(minus.confidence_logits[i]);
            const double fd = (loss_value(plus, gts, w, lw, mode) -
                               loss_value(minus, gts, w, lw, mode)) /
                              (2.0 * h);
            CHECK(relative_error(grads[i].confidence_logit, fd) < tol);
        }
        for (int k = 0; k < 4; ++k) {
            PredictionSet plus = preds, minus = preds;
            plus.quadrant_logits[i][static_cast<std::size_t>(k)] += h;
            minus.quadrant_logits[i][static_cast<std::size_t>(k)] -= h;
            const double fd = (loss_value(plus, gts, w, lw, mode) -
                               loss_value(minus, gts, w, lw, mode)) /
                              (2.0 * h);
            CHECK(relative_error(grads[i].quadrant_logits[static_cast<std::size_t>(k)],
                                 fd) < tol);
        }
    }
}

MatchResult identity_match(int n) {
    MatchResult m;
    for (int i = 0; i < n; ++i) m.pairs.push_back({i, i, 0.0});
    return m;
}

}  // namespace

TEST_SUITE("losses") {

TEST_CASE("midpoint loss") {
    const std::vector<Segment> gts{{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}},
                                   {{0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}}};
    PredictionSet preds = PredictionSet::from_segments(gts);
    CHECK(loss_midpoint(preds, gts, identity_match(2)) == doctest::Approx(0.0));

    preds.edges[0].midpoint += Point3{0.1, -0.2, 0.0};
    CHECK(loss_midpoint(preds, {gts[0]}, identity_match(1)) == doctest::Approx(0.3));

    preds.edges[1].midpoint += Point3{0.0, 0.1, 0.0};
    CHECK(loss_midpoint(preds, gts, identity_match(2)) == doctest::Approx(0.2));
}

TEST_CASE("component loss") {
    const std::vector<Segment> gts{{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}};
    PredictionSet preds = PredictionSet::from_segments(gts);
    CHECK(loss_component(preds, gts, identity_match(1)) == doctest::Approx(0.0));

    preds.edges[0].comp = Point3{1.0, 1.0, 0.0};
    CHECK(loss_component(preds, gts, identity_match(1)) == doctest::Approx(1.0));
}

TEST_CASE("confidence loss") {
    const std::vector<Segment> segs{{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}},
                                    {{0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}}};

    SUBCASE("zero at matched hard targets") {
        PredictionSet preds = PredictionSet::from_segments(segs, 40.0);
        preds.edges[1].confidence = 0.0;
        const SoftLabels labels{{1.0, 0.0}};
        CHECK(loss_confidence(preds, labels) == doctest::Approx(0.0).epsilon(1e-6));
    }

    SUBCASE("soft target attains its entropy minimum at p equal g") {
        PredictionSet preds = PredictionSet::from_segments({segs[0]});
        preds.edges[0].confidence = 0.7;
        const SoftLabels labels{{0.7}};
        const double at_g = loss_confidence(preds, labels);
        CHECK(at_g == doctest::Approx(0.6108643).epsilon(1e-6));
        // 1-D scan: no other confidence does better.
        for (double p = 0.01; p < 1.0; p += 0.01) {
            preds.edges[0].confidence = p;
            CHECK(loss_confidence(preds, labels) >= at_g - 1e-12);
        }
    }

    SUBCASE("negative at half confidence costs log two") {
        PredictionSet preds = PredictionSet::from_segments({segs[0]});
        preds.edges[0].confidence = 0.5;
        const SoftLabels labels{{0.0}};
        CHECK(loss_confidence(preds, labels) == doctest::Approx(std::log(2.0)));
    }

    SUBCASE("hard labels reduce to standard binary cross-entropy") {
        PredictionSet preds = PredictionSet::from_segments(segs);
        preds.edges[0].confidence = 0.8;
        preds.edges[1].confidence = 0.3;
        const SoftLabels labels{{1.0, 0.0}};
        const double expected = (-std::log(0.8) - std::log(0.7)) / 2.0;
        CHECK(loss_confidence(preds, labels) == doctest::Approx(expected));
    }
}

TEST_CASE("quadrant loss") {
    const std::vector<Segment> gts{{{0.0, 0.0, 0.0}, {1.0, 2.0, 3.0}},
                                   {{0.0, 0.0, 0.0}, {1.0, -2.0, 3.0}}};
    PredictionSet preds = PredictionSet::from_segments(gts, 20.0, 40.0);
    CHECK(loss_quadrant(preds, gts, identity_match(2)) ==
          doctest::Approx(0.0).epsilon(1e-9));

    preds.quadrant_logits[0] = {1.0, 1.0, 1.0, 1.0};
    CHECK(loss_quadrant(preds, {gts[0]}, identity_match(1)) ==
          doctest::Approx(std::log(4.0)));

    // Mean over the two pairs.
    CHECK(loss_quadrant(preds, gts, identity_match(2)) ==
          doctest::Approx(std::log(4.0) / 2.0).epsilon(1e-9));
}

TEST_CASE("similarity loss decreases along the interpolation path") {
    const SimilarityWeights w;
    Rng rng(71);
    const Segment gt = random_segment(rng, 3.0);
    const Segment start{gt.a + Point3{0.4, -0.3, 0.2}, gt.b + Point3{-0.2, 0.5, 0.1}};

    CHECK(loss_similarity({gt}, {gt}, identity_match(1), w) == doctest::Approx(0.0));

    double prev = std::numeric_limits<double>::infinity();
    for (int step = 0; step <= 10; ++step) {
        const double t = step / 10.0;
        const Segment s{start.a + t * (gt.a - start.a), start.b + t * (gt.b - start.b)};
        const double value = loss_similarity({s}, {gt}, identity_match(1), w);
        CHECK(value == doctest::Approx(edge_similarity(s, gt, w)));
        CHECK(value <= prev + 1e-9);
        prev = value;
    }
}

TEST_CASE("total loss composes the weighted terms") {
    const SimilarityWeights w;
    Rng rng(77);
    const auto gts = gable_like_gts(rng, 3);

    SUBCASE("perfect predictions vanish") {
        const PredictionSet preds = PredictionSet::from_segments(gts, 40.0, 40.0);
        const auto b = total_loss(preds, gts, w, LossWeights{});
        CHECK(b.total == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(b.mid == doctest::Approx(0.0));
        CHECK(b.comp == doctest::Approx(0.0));
        CHECK(b.con == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(b.quad == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(b.sim == doctest::Approx(0.0));
        CHECK(b.positives == 3);
        CHECK_FALSE(b.no_positives);
    }

    SUBCASE("single-term weighting isolates that term") {
        const PredictionSet preds = noisy_predictions(rng, gts, 2, 0.2);
        LossWeights lw{};
        lw.lambda_comp = lw.lambda_con = lw.lambda_quad = lw.lambda_sim = 0.0;
        const auto b = total_loss(preds, gts, w, lw);
        CHECK(b.total == doctest::Approx(b.mid));
    }

    SUBCASE("total equals the recomposed breakdown") {
        const PredictionSet preds = noisy_predictions(rng, gts, 2, 0.3);
        LossWeights lw{0.7, 1.3, 0.4, 2.0, 0.9};
        const auto b = total_loss(preds, gts, w, lw);
        CHECK(b.total == doctest::Approx(0.7 * b.mid + 1.3 * b.comp + 0.4 * b.con +
                                         2.0 * b.quad + 0.9 * b.sim));
    }

    SUBCASE("order of predictions and ground truths is irrelevant") {
        const PredictionSet preds = noisy_predictions(rng, gts, 2, 0.3);
        const double base = total_loss(preds, gts, w, LossWeights{}).total;

        std::vector<Segment> gts_rev(gts.rbegin(), gts.rend());
        PredictionSet shuffled;
        const std::vector<std::size_t> order{4, 2, 0, 3, 1};
        for (const auto i : order) {
            shuffled.edges.push_back(preds.edges[i]);
            shuffled.quadrant_logits.push_back(preds.quadrant_logits[i]);
            shuffled.confidence_logits.push_back(preds.confidence_logits[i]);
        }
        CHECK(total_loss(shuffled, gts_rev, w, LossWeights{}).total ==
              doctest::Approx(base).epsilon(1e-12));
    }

    SUBCASE("empty ground truth flags no positives") {
        const PredictionSet preds = noisy_predictions(rng, gts, 2, 0.3);
        const auto b = total_loss(preds, {}, w, LossWeights{});
        CHECK(b.no_positives);
        CHECK(b.positives == 0);
        CHECK(b.mid == 0.0);
        CHECK(b.sim == 0.0);
        CHECK(b.con > 0.0);  // negatives still pay confidence loss
    }
}

TEST_CASE("gradient vanishes at a perfect fit") {
    const SimilarityWeights w;
    Rng rng(81);
    const auto gts = gable_like_gts(rng, 4);
    const PredictionSet preds = PredictionSet::from_segments(gts, 20.0, 20.0);
    const auto grads = grad_total_loss(preds, gts, w, LossWeights{});
    double norm = 0.0;
    for (const auto& g : grads) {
        norm += g.midpoint.squaredNorm() + g.comp.squaredNorm() +
                g.confidence_logit * g.confidence_logit;
        for (const double z : g.quadrant_logits) norm += z * z;
    }
    CHECK(std::sqrt(norm) < 1e-6);
}

TEST_CASE("midpoint-only gradient is the sign vector over positives") {
    const SimilarityWeights w;
    const std::vector<Segment> gts{{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}};
    PredictionSet preds = PredictionSet::from_segments(gts);
    preds.edges[0].midpoint += Point3{0.05, -0.08, 0.0};

    LossWeights lw{};
    lw.lambda_comp = lw.lambda_con = lw.lambda_quad = lw.lambda_sim = 0.0;
    const auto grads = grad_total_loss(preds, gts, w, lw);
    CHECK(grads[0].midpoint == Point3{1.0, -1.0, 0.0});
    CHECK(grads[0].comp == Point3::Zero());
}

TEST_CASE("gradients match finite differences") {
    const SimilarityWeights w;
    Rng rng(91);
    for (int trial = 0; trial < 6; ++trial) {
        const auto gts = gable_like_gts(rng, 3);
        const PredictionSet preds = noisy_predictions(rng, gts, 2, 0.25);
        const LossWeights lw{1.0, 1.0, 1.0, 1.0, 1.0};
        check_gradient(preds, gts, w, lw, LabelMode::Soft);
    }
}

TEST_CASE("gradients match finite differences with hard labels") {
    const SimilarityWeights w;
    Rng rng(95);
    const auto gts = gable_like_gts(rng, 3);
    const PredictionSet preds = noisy_predictions(rng, gts, 2, 0.25);
    check_gradient(preds, gts, w, LossWeights{}, LabelMode::Hard);
}

TEST_CASE("degenerate prediction raises invalid edge") {
    const SimilarityWeights w;
    const std::vector<Segment> gts{{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}};
    PredictionSet preds = PredictionSet::from_segments(gts);
    preds.edges[0].comp = Point3::Zero();
    CHECK_THROWS_AS(grad_total_loss(preds, gts, w, LossWeights{}), InvalidEdge);
}

}  // TEST_SUITE
