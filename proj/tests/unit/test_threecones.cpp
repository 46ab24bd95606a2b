#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "restproj/errors.hpp"
#include "restproj/threecones.hpp"

using namespace restproj;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("cone distance: closed form") {
    CHECK(cone_distance(Vec3{0.3, 0.4, 0.5}) == doctest::Approx(0.0));
    CHECK(cone_distance(Vec3{0, 0, 1}) == doctest::Approx(kInvSqrt2));
    CHECK(cone_distance(Vec3{0, 0, 0}) == doctest::Approx(0.0));

    std::uint64_t st = 3;
    for (int trial = 0; trial < 200; ++trial) {
        const double phi = 2.0 * M_PI * testsupport::urand(st);
        const double t = 0.2 + 0.7 * testsupport::urand(st);
        const double sgn = testsupport::urand(st) < 0.5 ? -1.0 : 1.0;
        const Vec3 base = Vec3{t * std::cos(phi), t * std::sin(phi), sgn * t} * kInvSqrt2;
        const Vec3 normal = Vec3{std::cos(phi), std::sin(phi), -sgn} * kInvSqrt2;
        const double nu = (testsupport::urand(st) - 0.5) * 0.2 * t;
        CHECK(cone_distance(base + normal * nu) == doctest::Approx(std::fabs(nu)).epsilon(1e-10));
    }
}

TEST_CASE("nearest cone line") {
    const ConeLine l1 = nearest_cone_line(Vec3{0, 0.5, 0.5});
    CHECK(norm(l1.dir - Vec3{0, kInvSqrt2, kInvSqrt2}) < 1e-12);

    const ConeLine l2 = nearest_cone_line(Vec3{0.5 + 1e-6, 1e-6, 0.5});
    CHECK(std::fabs(dot(l2.dir, Vec3{kInvSqrt2, 0, kInvSqrt2}) - 1.0) < 1e-5);

    // vertex tie resolves to the +z nappe
    CHECK(nearest_cone_line(Vec3{0.2, 0.0, 0.0}).dir.z > 0.0);

    std::uint64_t st = 9;
    for (int trial = 0; trial < 100; ++trial) {
        const ConeLine l = nearest_cone_line(testsupport::rand_ball(st));
        CHECK(std::fabs(l.dir.x * l.dir.x + l.dir.y * l.dir.y - l.dir.z * l.dir.z) < 1e-12);
        CHECK(std::fabs(norm(l.dir) - 1.0) < 1e-12);
    }
}

TEST_CASE("radical plane") {
    const Plane3 vz = radical_plane(Vec3{0, 0, 1});
    CHECK(vz.distance_to(Vec3{0.3, -0.7, 0.5}) == doctest::Approx(0.0));
    CHECK(vz.distance_to(Vec3{0, 0, 0.8}) == doctest::Approx(0.3));

    const Plane3 vx = radical_plane(Vec3{1, 0, 0});
    CHECK(vx.distance_to(Vec3{0.5, 0.2, -0.1}) == doctest::Approx(0.0));

    std::uint64_t st = 13;
    for (int trial = 0; trial < 50; ++trial) {
        const Vec3 p = testsupport::rand_ball(st);
        if (norm(p) < 1e-3) continue;
        CHECK(radical_plane(p).distance_to(p * 0.5) == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS(radical_plane(Vec3{0, 0, 0}), precondition_error);
}

TEST_CASE("radical plane: oracle soundness at delta = 1e-3") {
    std::uint64_t st = 21;
    const double delta = 1e-3;
    for (int trial = 0; trial < 5; ++trial) {
        Vec3 p = testsupport::rand_ball(st);
        while (norm(p) < 0.1) p = testsupport::rand_ball(st);
        const Plane3 vp = radical_plane(p);
        const auto pts = testsupport::pair_cone_oracle_points(p, delta, 4000);
        const double bound = 3.0 * delta / norm(p) + 0.5 * delta;
        for (const Vec3& x : pts) CHECK(vp.distance_to(x) <= bound);
    }
}

TEST_CASE("neighborhood absorption A(r) /\\ B(s) inside [A(r+s) /\\ B](s)") {
    std::uint64_t st = 25;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Vec3> A, B;
        for (int i = 0; i < 6; ++i) A.push_back(testsupport::rand_ball(st));
        for (int i = 0; i < 6; ++i) B.push_back(testsupport::rand_ball(st));
        const double r = 0.05 + 0.4 * testsupport::urand(st);
        const double s = 0.05 + 0.4 * testsupport::urand(st);
        auto set_dist = [](const Vec3& x, const std::vector<Vec3>& S) {
            double best = 1e18;
            for (const Vec3& y : S) best = std::min(best, dist(x, y));
            return best;
        };
        for (int k = 0; k < 30; ++k) {
            const Vec3 x = testsupport::rand_ball(st);
            if (set_dist(x, A) > r || set_dist(x, B) > s) continue;
            // find a witness b in A(r+s) /\ B with |x-b| <= s
            bool witness = false;
            for (const Vec3& b : B)
                if (dist(x, b) <= s && set_dist(b, A) <= r + s) witness = true;
            CHECK(witness);
        }
    }
}

TEST_CASE("tangent line cover") {
    const LineNeighborhood ln = tangent_line_cover(Vec3{0, 0.5, 0.5}, std::pow(2.0, -9), 0.15);
    CHECK(norm(ln.line.dir - Vec3{0, kInvSqrt2, kInvSqrt2}) < 1e-12);
    CHECK(ln.radius == doctest::Approx(std::pow(std::pow(2.0, -9), 0.15)));

    const LineNeighborhood ln2 =
        tangent_line_cover(Vec3{0.5, 1e-6, 0.5 + 1e-6}, std::pow(2.0, -9), 0.15);
    CHECK(std::fabs(dot(ln2.line.dir, Vec3{kInvSqrt2, 0, kInvSqrt2})) > 1.0 - 1e-5);

    CHECK_THROWS_AS(tangent_line_cover(Vec3{0, 0, 0.9}, std::pow(2.0, -9), 0.15), branch_error);
    CHECK_THROWS_AS(tangent_line_cover(Vec3{1e-4, 1e-4, 0}, std::pow(2.0, -9), 0.15),
                    precondition_error);

    // oracle: the pair intersection hugs the tangent line
    const Vec3 p{0, 0.5, 0.5};
    const double delta = std::pow(2.0, -9);
    const auto pts = testsupport::pair_cone_oracle_points(p, delta, 4000);
    const LineNeighborhood cover = tangent_line_cover(p, delta, 0.15);
    for (const Vec3& x : pts) CHECK(cover.line.distance_to(x) <= cover.radius);
}

TEST_CASE("separation test") {
    const Vec3 q{0.3, 0.4, 0.1};
    const Vec3 p = q * 2.0;
    const SeparationReport rep = separation_test(p, q, std::pow(2.0, -20), 0.1, 0.6);
    CHECK(rep.separated);
    CHECK(rep.distance > rep.threshold);

    CHECK_THROWS_AS(separation_test(q, q, std::pow(2.0, -20), 0.1, 0.6), precondition_error);
    CHECK_THROWS_AS(separation_test(Vec3{0, 0.5, 0.5}, q, std::pow(2.0, -20), 0.1, 0.6),
                    branch_error);
    // far from collinear: wrong branch
    CHECK_THROWS_AS(separation_test(Vec3{0.1, 0.1, 0.6}, q, std::pow(2.0, -20), 0.1, 0.6),
                    branch_error);
}

TEST_CASE("plane pair line") {
    const PlanePairLine ppl = plane_pair_line(Vec3{0, 0, 1}, Vec3{1, 0, 0}, std::pow(2.0, -12),
                                              0.15);
    CHECK(std::fabs(ppl.line.point.x - 0.5) < 1e-12);
    CHECK(std::fabs(ppl.line.point.z - 0.5) < 1e-12);
    CHECK(std::fabs(std::fabs(ppl.line.dir.y) - 1.0) < 1e-12);

    CHECK_THROWS_AS(plane_pair_line(Vec3{0, 0, 0.4}, Vec3{0, 0, 0.8}, std::pow(2.0, -12), 0.15),
                    branch_error);

    // brute force: points near both plane caps stay near the returned line
    std::uint64_t st = 77;
    const double delta = std::pow(2.0, -10);
    const Vec3 p{0.2, -0.6, 0.55}, q{-0.5, 0.3, 0.2};
    const PlanePairLine line = plane_pair_line(p, q, delta, 0.15);
    const Plane3 vp = radical_plane(p), vq = radical_plane(q);
    const double band = 8.0 * std::pow(delta, 0.85);
    for (int i = 0; i < 200000; ++i) {
        const Vec3 x = testsupport::rand_ball(st);
        if (vp.distance_to(x) > band || vq.distance_to(x) > band) continue;
        CHECK(dist_to_line(x - line.line.point, line.line.dir) <= std::pow(delta, 0.15));
    }
}

TEST_CASE("line cone cover") {
    const double delta = std::pow(2.0, -12), c = 0.15;

    const auto one = line_cone_cover(Line3{{0.5, 0, 0.5}, {0, 1, 0}}, delta, c);
    REQUIRE(one.size() == 1);
    CHECK(std::fabs(std::fabs(dot(one[0].line.dir, Vec3{kInvSqrt2, 0, kInvSqrt2})) - 1.0) < 1e-9);

    const auto two = line_cone_cover(Line3{{0, 0, 0.5}, {1, 0, 0}}, delta, c);
    REQUIRE(two.size() == 2);
    for (const auto& ln : two)
        CHECK(std::fabs(std::fabs(dot(ln.line.dir, Vec3{kInvSqrt2, 0, kInvSqrt2}))) >
              1.0 - 1e-9);

    const auto none = line_cone_cover(Line3{{0, 0, 2.0}, {1, 0, 0}}, delta, c);
    CHECK(none.empty());
}

TEST_CASE("three cones cover: worked pair and oracle") {
    const double delta = std::pow(2.0, -12), c = 0.15;
    const ThreeConesResult r = three_cones_cover(Vec3{0, 0, 1}, Vec3{1, 0, 0}, delta, c);
    CHECK(r.branch == ThreeConesBranch::generic);
    REQUIRE(r.lines.size() == 1);
    CHECK(std::fabs(std::fabs(dot(r.lines[0].dir, Vec3{kInvSqrt2, 0, kInvSqrt2})) - 1.0) < 1e-9);

    const auto pts =
        testsupport::threecones_oracle_points(Vec3{0, 0, 1}, Vec3{1, 0, 0}, delta, 20000);
    CHECK(pts.size() > 0);
    for (const Vec3& x : pts) CHECK(r.lines[0].distance_to(x) <= r.radius);
}

TEST_CASE("three cones cover: branch dispatch") {
    const double delta = std::pow(2.0, -12), c = 0.15;

    const ThreeConesResult near =
        three_cones_cover(Vec3{0, 0.5, 0.5}, Vec3{0.6, 0, -0.1}, delta, c);
    CHECK(near.branch == ThreeConesBranch::near_cone);
    REQUIRE(near.lines.size() == 1);
    CHECK(norm(near.lines[0].dir - Vec3{0, kInvSqrt2, kInvSqrt2}) < 1e-9);

    const Vec3 q{0.3, 0.4, 0.1};
    const ThreeConesResult sep = three_cones_cover(q * 0.5, q, delta, c);
    CHECK(sep.branch == ThreeConesBranch::separated);
    CHECK(sep.empty());
    REQUIRE(sep.separation.has_value());
    CHECK(sep.separation->separated);

    CHECK_THROWS_AS(three_cones_cover(Vec3{1e-4, 0, 0}, q, delta, c), precondition_error);
    CHECK_THROWS_AS(three_cones_cover(q, q * (1.0 + 1e-9), delta, c), precondition_error);
}
