#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "restproj/cloud.hpp"
#include "restproj/covers.hpp"
#include "restproj/errors.hpp"

using namespace restproj;

TEST_CASE("five_r_reduce: worked examples") {
    BallCover disjoint;
    disjoint.dim = 3;
    disjoint.balls = {{{0, 0, 0}, 1.0}, {{5, 0, 0}, 1.0}, {{0, 5, 0}, 0.5}};
    const BallCover out = five_r_reduce(disjoint);
    REQUIRE(out.balls.size() == 3);
    for (const Ball& b : out.balls) {
        bool matched = false;
        for (const Ball& in : disjoint.balls)
            if (norm(b.center - in.center) == 0.0 && b.radius == 5.0 * in.radius) matched = true;
        CHECK(matched);
    }

    BallCover copies;
    copies.dim = 3;
    for (int i = 0; i < 7; ++i) copies.balls.push_back({{0.3, -0.1, 0.2}, 0.25});
    const BallCover one = five_r_reduce(copies);
    REQUIRE(one.balls.size() == 1);
    CHECK(one.balls[0].radius == doctest::Approx(1.25));

    BallCover mixed;
    mixed.dim = 3;
    mixed.balls = {{{0, 0, 0}, 1.0}, {{0.1, 0, 0}, 1.0}, {{3, 0, 0}, 1.0}};
    const BallCover two = five_r_reduce(mixed);
    REQUIRE(two.balls.size() == 2);
    CHECK(norm(two.balls[0].center) == 0.0); // first-index tie break
    CHECK(two.balls[0].radius == doctest::Approx(5.0));
    CHECK(norm(two.balls[1].center - Vec3{3, 0, 0}) == 0.0);

    CHECK_THROWS_AS(five_r_reduce(BallCover{}), precondition_error);
}

TEST_CASE("five_r_reduce: covers the input union, selection disjoint") {
    std::uint64_t st = 31;
    for (int trial = 0; trial < 30; ++trial) {
        BallCover in;
        in.dim = 3;
        const int n = 3 + int(testsupport::urand(st) * 10);
        for (int i = 0; i < n; ++i)
            in.balls.push_back(
                {testsupport::rand_ball(st), 0.05 + 0.4 * testsupport::urand(st)});
        const BallCover out = five_r_reduce(in);

        // pre-dilation subfamily is pairwise disjoint
        for (std::size_t i = 0; i < out.balls.size(); ++i)
            for (std::size_t j = i + 1; j < out.balls.size(); ++j)
                CHECK(dist(out.balls[i].center, out.balls[j].center) >
                      (out.balls[i].radius + out.balls[j].radius) / 5.0);

        for (int s = 0; s < 350; ++s) {
            const Ball& b = in.balls[std::size_t(testsupport::urand(st) * double(n))];
            const Vec3 x = b.center + testsupport::rand_ball(st) * b.radius;
            CHECK(out.contains(x, 1e-12));
        }
    }
}

TEST_CASE("box dimension: segment, point, Cantor") {
    const BoxDimension seg = box_dimension(uniform_segment_cloud(1 << 12), 3, 8);
    CHECK(seg.slope == doctest::Approx(1.0).epsilon(0.05));

    WeightedPointCloud pt;
    pt.dim = 3;
    pt.points = {{0.2, 0.1, 0}};
    pt.masses = {1.0};
    CHECK(box_dimension(pt, 3, 8).slope == 0.0);

    IFSSpec cantor;
    cantor.ratio = 1.0 / 3.0;
    cantor.translations = {{-1.0 / 3.0, 0, 0}, {1.0 / 3.0, 0, 0}};
    const BoxDimension cd = box_dimension(generate_ifs(cantor, 8), 3, 8);
    CHECK(cd.slope == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(0.08));

    CHECK_THROWS_AS(box_dimension(uniform_segment_cloud(16), 3, 8), scale_window_error);
    CHECK_THROWS_AS(box_dimension(uniform_segment_cloud(64), 3, 5), precondition_error);
}

TEST_CASE("box dimension: union dominates the factors") {
    const WeightedPointCloud a = uniform_segment_cloud(1 << 12);
    IFSSpec cantor;
    cantor.ratio = 1.0 / 3.0;
    cantor.translations = {{-1.0 / 3.0, 0, 0}, {1.0 / 3.0, 0, 0}};
    const WeightedPointCloud b = generate_ifs(cantor, 8);
    WeightedPointCloud u;
    u.dim = 3;
    for (std::size_t i = 0; i < a.size(); ++i) {
        u.points.push_back(a.points[i]);
        u.masses.push_back(0.5 * a.masses[i]);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        u.points.push_back(b.points[i] + Vec3{0, 0.4, 0});
        u.masses.push_back(0.5 * b.masses[i]);
    }
    const double slope_a = box_dimension(a, 3, 8).slope;
    const double slope_b = box_dimension(b, 3, 8).slope;
    const double slope_u = box_dimension(u, 3, 8).slope;
    CHECK(slope_u >= std::max(slope_a, slope_b) - 0.05);
}

TEST_CASE("pigeonhole scale") {
    const ScaleReport all10 = pigeonhole_scale({{10, 1.0}});
    CHECK(all10.k == 10);
    CHECK(all10.mass == doctest::Approx(1.0));

    // the exact threshold series qualifies at the first index
    std::map<int, double> series;
    const double c0 = 6.0 / (M_PI * M_PI);
    double total = 0.0;
    for (int k = 1; k <= 40; ++k) {
        series[k] = c0 / double(k * k);
        total += series[k];
    }
    series[40] += 1.0 - total;
    CHECK(pigeonhole_scale(series).k == 1);

    const ScaleReport r = pigeonhole_scale({{4, 0.1}, {5, 0.5}, {6, 0.2}, {7, 0.2}});
    CHECK(r.k == 4);
    CHECK(r.threshold == doctest::Approx(c0 / 16.0));

    CHECK_THROWS_AS(pigeonhole_scale({{3, 0.4}}), precondition_error);
}

TEST_CASE("pigeonhole scale: minimal qualifying k on random masses") {
    std::uint64_t st = 17;
    const double c0 = 6.0 / (M_PI * M_PI);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<int, double> masses;
        double total = 0.0;
        const int base = 2 + int(testsupport::urand(st) * 5);
        for (int k = base; k < base + 8; ++k) {
            masses[k] = testsupport::urand(st);
            total += masses[k];
        }
        for (auto& [k, m] : masses) m /= total;
        const ScaleReport r = pigeonhole_scale(masses);
        for (const auto& [k, m] : masses) {
            if (k < r.k) CHECK(m < c0 / double(k * k));
            if (k == r.k) CHECK(m >= c0 / double(k * k));
        }
    }
}
