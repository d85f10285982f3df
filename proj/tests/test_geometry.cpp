#include "roofwire/geometry.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace roofwire;
using roofwire::testing::random_point;
using roofwire::testing::random_segment;

TEST_SUITE("geometry") {

TEST_CASE("canonical quadrant of axis-aligned and mixed directions") {
    auto d = canonical_quadrant({2.0, 0.0, 0.0});
    CHECK(d.quadrant == 0);
    CHECK(d.comp == Point3{2.0, 0.0, 0.0});

    d = canonical_quadrant({-1.0, 1.0, 0.0});
    CHECK(d.quadrant == 2);
    CHECK(d.comp == Point3{1.0, 1.0, 0.0});

    d = canonical_quadrant({0.0, 0.0, -3.0});
    CHECK(d.quadrant == 0);
    CHECK(d.comp == Point3{0.0, 0.0, 3.0});
}

TEST_CASE("canonical quadrant rejects the zero vector") {
    CHECK_THROWS_AS(canonical_quadrant(Point3::Zero()), InvalidEdge);
}

TEST_CASE("quadrant is sign-flip invariant") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Point3 v = random_point(rng);
        if (v.isZero(0.0)) continue;
        const auto d1 = canonical_quadrant(v);
        const auto d2 = canonical_quadrant(-v);
        CHECK(d1.quadrant == d2.quadrant);
        CHECK(d1.comp == d2.comp);
    }
}

TEST_CASE("endpoints from parameters") {
    const Segment s = endpoints_from_params({{0.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, 0, 1.0});
    CHECK(s.a == Point3{1.0, 0.0, 0.0});
    CHECK(s.b == Point3{-1.0, 0.0, 0.0});

    const Segment t = endpoints_from_params({{0.5, 0.5, 0.0}, {1.0, 1.0, 0.0}, 2, 1.0});
    CHECK(t.a == Point3{1.0, 0.0, 0.0});
    CHECK(t.b == Point3{0.0, 1.0, 0.0});

    CHECK_THROWS_AS(endpoints_from_params({{1.0, 1.0, 1.0}, Point3::Zero(), 0, 1.0}),
                    InvalidEdge);
}

TEST_CASE("parameters from segment") {
    const ParamEdge p = params_from_segment({{1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}});
    CHECK(p.midpoint == Point3::Zero());
    CHECK(p.comp == Point3{2.0, 0.0, 0.0});
    CHECK(p.quadrant == 0);
    CHECK(p.confidence == 1.0);

    const ParamEdge q = params_from_segment({{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}});
    CHECK(q.midpoint == Point3{0.5, 0.5, 0.0});
    CHECK(q.comp == Point3{1.0, 1.0, 0.0});
    CHECK(q.quadrant == 2);

    CHECK_THROWS_AS(params_from_segment({{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}}), InvalidEdge);
}

TEST_CASE("parameterization round-trips over random segments") {
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const Segment s = random_segment(rng);
        const ParamEdge p = params_from_segment(s);
        const Segment back = endpoints_from_params(p);
        // Same undirected segment, up to endpoint order.
        const double direct = std::max((back.a - s.a).norm(), (back.b - s.b).norm());
        const double swapped = std::max((back.a - s.b).norm(), (back.b - s.a).norm());
        CHECK(std::min(direct, swapped) < 1e-12);

        const ParamEdge p2 = params_from_segment(back);
        CHECK((p2.midpoint - p.midpoint).norm() < 1e-12);
        CHECK((p2.comp - p.comp).norm() < 1e-12);
        CHECK(p2.quadrant == p.quadrant);

        // Decoded midpoint is the stored midpoint.
        CHECK((back.midpoint() - p.midpoint).norm() < 1e-15);
    }
}

TEST_CASE("edge sampling hits endpoints and spaces uniformly") {
    const Segment s{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    const auto two = sample_edge_points(s, 2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == s.a);
    CHECK(two[1] == s.b);

    const auto three = sample_edge_points(s, 3);
    REQUIRE(three.size() == 3);
    CHECK(three[1] == Point3{0.5, 0.0, 0.0});

    Rng rng(3);
    const Segment r = random_segment(rng);
    const auto five = sample_edge_points(r, 5);
    const double expected_gap = r.length() / 4.0;
    for (int k = 0; k + 1 < 5; ++k) {
        CHECK((five[static_cast<std::size_t>(k + 1)] - five[static_cast<std::size_t>(k)])
                  .norm() == doctest::Approx(expected_gap).epsilon(1e-12));
    }

    CHECK_THROWS_AS(sample_edge_points(s, 1), InvalidArgument);
}

TEST_CASE("farthest point sampling picks the spread-maximizing pair") {
    PointCloud cloud;
    cloud.points = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {10.0, 0.0, 0.0}};
    const auto picked = farthest_point_sampling(cloud, 2);
    REQUIRE(picked.size() == 2);
    CHECK(picked[0] == Point3{10.0, 0.0, 0.0});
    CHECK(picked[1] == Point3{0.0, 0.0, 0.0});
}

TEST_CASE("farthest point sampling edge cases") {
    Rng rng(5);
    PointCloud cloud;
    for (int i = 0; i < 20; ++i) cloud.points.push_back(random_point(rng));

    SUBCASE("all points when count equals cloud size") {
        auto all = farthest_point_sampling(cloud, 20);
        std::sort(all.begin(), all.end(), [](const Point3& a, const Point3& b) {
            return std::lexicographical_compare(a.data(), a.data() + 3, b.data(),
                                                b.data() + 3);
        });
        auto orig = cloud.points;
        std::sort(orig.begin(), orig.end(), [](const Point3& a, const Point3& b) {
            return std::lexicographical_compare(a.data(), a.data() + 3, b.data(),
                                                b.data() + 3);
        });
        CHECK(all == orig);
    }

    SUBCASE("single sample is the centroid-farthest point") {
        Point3 centroid = Point3::Zero();
        for (const auto& p : cloud.points) centroid += p;
        centroid /= static_cast<double>(cloud.points.size());
        double best = -1.0;
        Point3 expected = Point3::Zero();
        for (const auto& p : cloud.points) {
            if ((p - centroid).squaredNorm() > best) {
                best = (p - centroid).squaredNorm();
                expected = p;
            }
        }
        const auto one = farthest_point_sampling(cloud, 1);
        REQUIRE(one.size() == 1);
        CHECK(one[0] == expected);
    }

    SUBCASE("count beyond the cloud is rejected") {
        CHECK_THROWS_AS(farthest_point_sampling(cloud, 21), InvalidArgument);
    }

    SUBCASE("deterministic across runs") {
        const auto a = farthest_point_sampling(cloud, 7);
        const auto b = farthest_point_sampling(cloud, 7);
        CHECK(a == b);
    }
}

TEST_CASE("point to segment distance") {
    const Segment s{{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    CHECK(point_segment_distance(s, {0.5, 1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(point_segment_distance(s, {2.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK(point_segment_distance(s, {-3.0, 4.0, 0.0}) == doctest::Approx(5.0));
    CHECK(point_segment_distance(s, {0.25, 0.0, 0.0}) == doctest::Approx(0.0));
}

TEST_CASE("wireframe validation") {
    Wireframe wf;
    wf.vertices = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    wf.edges = {{0, 1}, {1, 2}};
    CHECK_NOTHROW(wf.validate());

    Wireframe bad = wf;
    bad.edges.push_back({1, 0});
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);

    bad = wf;
    bad.edges.push_back({2, 2});
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);

    bad = wf;
    bad.edges.push_back({0, 3});
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

}  // TEST_SUITE
