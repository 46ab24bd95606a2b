#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "restproj/cloud.hpp"
#include "restproj/errors.hpp"

using namespace restproj;

namespace {
IFSSpec cantor2() {
    IFSSpec s;
    s.ratio = 1.0 / 3.0;
    s.translations = {{-1.0 / 3.0, 0, 0}, {1.0 / 3.0, 0, 0}};
    return s;
}
IFSSpec cantor4() {
    IFSSpec s;
    s.ratio = 1.0 / 3.0;
    s.translations = {{-0.4, -0.4, 0}, {-0.4, 0.4, 0}, {0.4, -0.4, 0}, {0.4, 0.4, 0}};
    return s;
}
IFSSpec cube8() {
    IFSSpec s;
    s.ratio = 0.5;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) s.translations.push_back({0.25 * sx, 0.25 * sy, 0.25 * sz});
    return s;
}
} // namespace

TEST_CASE("generate_ifs basics") {
    IFSSpec one;
    one.ratio = 0.5;
    one.translations = {{0.2, 0.0, 0.0}};
    const WeightedPointCloud c = generate_ifs(one, 3);
    REQUIRE(c.size() == 1);
    CHECK(c.masses[0] == doctest::Approx(1.0));
    CHECK(c.points[0].x == doctest::Approx(0.2 * (1.0 + 0.5 + 0.25)));

    CHECK(cantor4().similarity_dimension() ==
          doctest::Approx(std::log(4.0) / std::log(3.0)).epsilon(1e-12));

    const WeightedPointCloud cube = generate_ifs(cube8(), 2);
    REQUIRE(cube.size() == 64);
    cube.validate();
    std::set<double> xs;
    for (const Vec3& p : cube.points) xs.insert(p.x);
    CHECK(xs == std::set<double>{-0.375, -0.125, 0.125, 0.375});

    CHECK_THROWS_AS(generate_ifs(cube8(), 8), resource_error);

    IFSSpec bad;
    bad.ratio = 0.5;
    bad.translations = {{0.9, 0, 0}}; // 0.5 + 0.9 > 1
    CHECK_THROWS_AS(generate_ifs(bad, 1), precondition_error);
}

TEST_CASE("frostman exponent") {
    const std::vector<double> radii{1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8};
    const FrostmanFit seg = frostman_exponent(uniform_segment_cloud(1024), radii);
    CHECK(seg.s_hat == doctest::Approx(1.0).epsilon(0.05));
    CHECK_FALSE(seg.degenerate);

    WeightedPointCloud single;
    single.dim = 3;
    single.points = {{0, 0, 0}};
    single.masses = {1.0};
    CHECK(frostman_exponent(single, radii).degenerate);
    CHECK(frostman_exponent(single, radii).s_hat == 0.0);

    const FrostmanFit ifs = frostman_exponent(generate_ifs(cantor4(), 6),
                                              {1.0 / 128, 1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8});
    CHECK(ifs.s_hat == doctest::Approx(std::log(4.0) / std::log(3.0)).epsilon(0.065));
}

TEST_CASE("frostman exponent of a product construction") {
    // product of two Cantor factors against the sum of the factor exponents
    const WeightedPointCloud fx = generate_ifs(cantor2(), 5);
    WeightedPointCloud prod;
    prod.dim = 2;
    for (const Vec3& a : fx.points)
        for (const Vec3& b : fx.points) {
            prod.points.push_back({a.x, b.x, 0.0});
            prod.masses.push_back(1.0 / double(fx.size() * fx.size()));
        }
    const std::vector<double> radii{1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8};
    const double s_factor = frostman_exponent(fx, radii).s_hat;
    const double s_prod = frostman_exponent(prod, radii).s_hat;
    CHECK(s_prod <= 2.0 * s_factor + 0.1);
}

TEST_CASE("riesz energy") {
    WeightedPointCloud two;
    two.dim = 1;
    two.points = {{0, 0, 0}, {1, 0, 0}};
    two.masses = {0.5, 0.5};
    CHECK(riesz_energy(two, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(riesz_energy(two, 2.0) == doctest::Approx(0.5).epsilon(1e-12));

    WeightedPointCloud single;
    single.dim = 1;
    single.points = {{0.3, 0, 0}};
    single.masses = {1.0};
    CHECK(riesz_energy(single, 1.0) == 0.0);

    WeightedPointCloud dup;
    dup.dim = 1;
    dup.points = {{0.1, 0, 0}, {0.5, 0, 0}, {0.1, 0, 0}};
    dup.masses = {0.25, 0.5, 0.25};
    CHECK_THROWS_AS(riesz_energy(dup, 1.0), singular_pair_error);
    try {
        riesz_energy(dup, 1.0);
    } catch (const singular_pair_error& e) {
        CHECK(e.first == 0);
        CHECK(e.second == 2);
    }

    // analytic value of the double integral over the unit segment at s = 1/2
    const double e = riesz_energy(uniform_segment_cloud(2048), 0.5);
    CHECK(e == doctest::Approx(8.0 / 3.0).epsilon(0.02));
}

TEST_CASE("riesz energy monotone in s when diam <= 1") {
    const WeightedPointCloud c = uniform_segment_cloud(64);
    double prev = 0.0;
    for (double s : {0.2, 0.5, 0.9, 1.5}) {
        const double e = riesz_energy(c, s);
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("mass bound check") {
    const WeightedPointCloud seg = uniform_segment_cloud(512);
    const MassBoundCheck whole = mass_bound_check(seg, BallRegion{{0.5, 0, 0}, 0.5}, 0.5);
    CHECK(whole.lhs == doctest::Approx(1.0));
    CHECK(whole.rhs == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(0.02));
    CHECK(whole.ok);

    const MassBoundCheck empty = mass_bound_check(seg, BallRegion{{5, 5, 0}, 0.1}, 0.5);
    CHECK(empty.lhs == 0.0);
    CHECK(empty.ok);
}

TEST_CASE("mass bound on pushforward clouds over random discs") {
    const DirectionCurve curve = DirectionCurve::special();
    const ProjectionFamily bad(FamilyTag::bad_plane, curve);
    const WeightedPointCloud flat = pushforward(generate_ifs(cantor4(), 5), bad, 1.0);
    std::uint64_t st = 2024;
    int checked = 0;
    while (checked < 20) {
        BallRegion reg;
        reg.center = {2.0 * testsupport::urand(st) - 1.0, 2.0 * testsupport::urand(st) - 1.0, 0};
        reg.radius = 0.05 + 0.5 * testsupport::urand(st);
        int inside = 0;
        for (const Vec3& p : flat.points)
            if (dist(p, reg.center) <= reg.radius && ++inside >= 2) break;
        if (inside < 2) continue;
        ++checked;
        CHECK(mass_bound_check(flat, reg, 1.0).ok);
    }
}

TEST_CASE("pushforward conserves masses") {
    const DirectionCurve curve = DirectionCurve::special();
    const WeightedPointCloud cloud = generate_ifs(cantor4(), 4);
    for (FamilyTag tag : {FamilyTag::line, FamilyTag::plane, FamilyTag::bad_plane}) {
        const ProjectionFamily fam(tag, curve);
        const WeightedPointCloud out = pushforward(cloud, fam, 0.7);
        CHECK(out.dim == (tag == FamilyTag::line ? 1 : 2));
        REQUIRE(out.masses.size() == cloud.masses.size());
        for (std::size_t i = 0; i < out.masses.size(); ++i)
            CHECK(out.masses[i] == cloud.masses[i]);
        CHECK(std::fabs(out.total_mass() - 1.0) < 1e-9);
    }
}

TEST_CASE("cloud serialization round-trips exactly") {
    std::uint64_t st = 5;
    for (int dim : {1, 2, 3}) {
        WeightedPointCloud c;
        c.dim = dim;
        const int n = 37;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            Vec3 p = testsupport::rand_ball(st) * 0.9;
            if (dim < 3) p.z = 0.0;
            if (dim < 2) p.y = 0.0;
            c.points.push_back(p);
            const double m = 0.1 + testsupport::urand(st);
            c.masses.push_back(m);
            total += m;
        }
        for (double& m : c.masses) m /= total;
        std::stringstream ss;
        write_cloud(ss, c);
        const WeightedPointCloud back = read_cloud(ss);
        REQUIRE(back.size() == c.size());
        CHECK(back.dim == c.dim);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(back.points[i].x == c.points[i].x);
            CHECK(back.points[i].y == c.points[i].y);
            CHECK(back.points[i].z == c.points[i].z);
            CHECK(back.masses[i] == c.masses[i]);
        }
    }
}
