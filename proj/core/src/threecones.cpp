#include "restproj/threecones.hpp"

#include <algorithm>
#include <cmath>

#include "restproj/errors.hpp"

namespace restproj {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;

double ray_distance_2d(double w, double z, double dz) {
    // distance from (w, z) to the ray {r (1, dz)/sqrt(2) : r >= 0}, dz = +-1
    const double t = (w + dz * z) * kInvSqrt2;
    if (t <= 0.0) return std::hypot(w, z);
    return std::fabs(w - dz * z) * kInvSqrt2;
}

struct Disc {
    Vec3 center;
    Vec3 normal;
    double radius{0.0};
    bool empty{false};
};

Disc plane_ball_cap(const Plane3& pl) {
    Disc d;
    d.normal = pl.normal;
    const double off = dot(pl.base, pl.normal);
    d.center = pl.normal * off;
    if (std::fabs(off) >= 1.0) {
        d.empty = true;
        return d;
    }
    d.radius = std::sqrt(1.0 - off * off);
    return d;
}

Vec3 project_onto_disc(const Vec3& x, const Disc& d) {
    Vec3 y = x - d.normal * dot(x - d.center, d.normal);
    const Vec3 rel = y - d.center;
    const double r = norm(rel);
    if (r > d.radius && r > 0.0) y = d.center + rel * (d.radius / r);
    return y;
}

// Exact distance between two discs (convex sets): alternating projections.
double disc_distance(const Disc& a, const Disc& b) {
    Vec3 x = b.center;
    Vec3 pa = project_onto_disc(x, a);
    Vec3 pb = project_onto_disc(pa, b);
    for (int it = 0; it < 500; ++it) {
        const Vec3 na = project_onto_disc(pb, a);
        const Vec3 nb = project_onto_disc(na, b);
        if (dist(na, pa) + dist(nb, pb) < 1e-14) {
            pa = na;
            pb = nb;
            break;
        }
        pa = na;
        pb = nb;
    }
    return dist(pa, pb);
}

} // namespace

double cone_distance(const Vec3& v) {
    const double w = std::hypot(v.x, v.y);
    return std::min(ray_distance_2d(w, v.z, 1.0), ray_distance_2d(w, v.z, -1.0));
}

ConeLine nearest_cone_line(const Vec3& v) {
    const double w = std::hypot(v.x, v.y);
    double cphi = 1.0, sphi = 0.0;
    if (w > 1e-300) {
        cphi = v.x / w;
        sphi = v.y / w;
    }
    const double s = v.z < 0.0 ? -1.0 : 1.0;
    return ConeLine{Vec3{cphi, sphi, s} * kInvSqrt2};
}

Plane3 radical_plane(const Vec3& p) {
    if (norm(p) == 0.0) throw precondition_error("radical_plane: p = 0 is degenerate");
    return Plane3{p * 0.5, unit(Vec3{p.x, p.y, -p.z})};
}

LineNeighborhood tangent_line_cover(const Vec3& p, double delta, double c) {
    if (!(norm(p) >= std::pow(delta, c)))
        throw precondition_error("tangent_line_cover: |p| below delta^c");
    if (cone_distance(p) > std::pow(delta, 0.25))
        throw branch_error("tangent_line_cover: p too far from the cone; use the generic path");
    return LineNeighborhood{nearest_cone_line(p), std::pow(delta, c)};
}

namespace {

SeparationReport separation_core(const Vec3& p, const Vec3& q, double delta, double c,
                                 double tau, const ThreeConesConstants& k) {
    SeparationReport rep;
    rep.threshold = 3.0 * k.R * std::pow(delta, 1.0 - c);

    const Vec3 xi = unit(q);
    rep.xi3_guard = std::min(std::fabs(xi.z - kInvSqrt2), std::fabs(xi.z + kInvSqrt2));
    const double r = dot(p, xi);
    const double slant = std::fabs(1.0 - 2.0 * xi.z * xi.z) * 0.5;
    rep.fast_lower_bound =
        std::fabs(r - norm(q)) * slant - 3.0 * std::pow(delta, tau);

    if (rep.fast_lower_bound > rep.threshold) {
        rep.separated = true;
        rep.distance = rep.fast_lower_bound;
        return rep;
    }

    const Disc dp = plane_ball_cap(radical_plane(p));
    const Disc dq = plane_ball_cap(radical_plane(q));
    if (dp.empty || dq.empty) {
        rep.separated = true;
        rep.distance = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.distance = disc_distance(dp, dq);
    rep.separated = rep.distance > rep.threshold;
    return rep;
}

} // namespace

SeparationReport separation_test(const Vec3& p, const Vec3& q, double delta, double c,
                                 double tau, const ThreeConesConstants& k) {
    const double quarter = std::pow(delta, 0.25);
    if (cone_distance(p) <= quarter || cone_distance(q) <= quarter)
        throw branch_error("separation_test: shift within delta^(1/4) of the cone");
    if (dist_to_line(p, unit(q)) > std::pow(delta, tau))
        throw branch_error("separation_test: shifts are not nearly collinear");
    const double sep = std::min({norm(p), norm(q), norm(p - q)});
    if (sep < std::pow(delta, c))
        throw precondition_error("separation_test: |p|, |q|, |p-q| must all exceed delta^c");
    return separation_core(p, q, delta, c, tau, k);
}

PlanePairLine plane_pair_line(const Vec3& p, const Vec3& q, double delta, double c, double tau) {
    if (dist_to_line(p, unit(q)) < std::pow(delta, tau))
        throw branch_error("plane_pair_line: shifts nearly collinear; use the separation path");
    const Plane3 vp = radical_plane(p);
    const Plane3 vq = radical_plane(q);
    const Vec3 crossn = cross(vp.normal, vq.normal);
    const double cn = norm(crossn);
    if (cn < 1e-12) throw branch_error("plane_pair_line: parallel planes, no line");

    const double dp = dot(vp.base, vp.normal);
    const double dq = dot(vq.base, vq.normal);
    const double g = dot(vp.normal, vq.normal);
    const double det = 1.0 - g * g;
    const double alpha = (dp - g * dq) / det;
    const double beta = (dq - g * dp) / det;
    PlanePairLine out;
    out.line.point = vp.normal * alpha + vq.normal * beta;
    out.line.dir = crossn / cn;
    out.radius = std::pow(delta, c);
    return out;
}

std::vector<LineNeighborhood> line_cone_cover(const Line3& line, double delta, double c) {
    if (std::fabs(norm(line.dir) - 1.0) > 1e-9)
        throw precondition_error("line_cone_cover: direction must be unit");
    const double out_radius = std::pow(delta, c * c / 5.0);
    const Vec3 xi = line.dir;

    if (cone_distance(xi * std::sqrt(2.0)) <= std::pow(delta, c / 4.0)) {
        // direction nearly on the cone: the whole tube hugs one line
        double best = std::numeric_limits<double>::infinity();
        double best_r = 0.0;
        const int n = 4096;
        for (int i = 0; i <= n; ++i) {
            const double r = -2.0 + 4.0 * double(i) / double(n);
            const double d = cone_distance(line.point + xi * r);
            if (d < best) {
                best = d;
                best_r = r;
            }
        }
        if (best > std::pow(delta, c) + delta) return {};
        const Vec3 anchor = line.point + xi * best_r;
        if (norm(anchor) > 1.0 + std::pow(delta, c)) return {};
        return {LineNeighborhood{nearest_cone_line(anchor), out_radius}};
    }

    const double A = xi.x * xi.x + xi.y * xi.y - xi.z * xi.z;
    const Vec3& q0 = line.point;
    const double B = 2.0 * (xi.x * q0.x + xi.y * q0.y - xi.z * q0.z);
    const double C0 = q0.x * q0.x + q0.y * q0.y - q0.z * q0.z;
    const double disc = B * B - 4.0 * A * C0;
    if (disc < 0.0) return {};

    std::vector<LineNeighborhood> out;
    const double sq = std::sqrt(disc);
    for (const double r : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
        const Vec3 x = q0 + xi * r;
        if (norm(x) > 1.0 + std::pow(delta, c)) continue; // outside B(0,1)
        const ConeLine l = nearest_cone_line(x);
        bool dup = false;
        for (const LineNeighborhood& seen : out)
            if (std::fabs(dot(seen.line.dir, l.dir)) > 1.0 - 1e-12) dup = true;
        if (!dup) out.push_back({l, out_radius});
    }
    return out;
}

ThreeConesResult three_cones_cover(const Vec3& p, const Vec3& q, double delta, double c,
                                   const ThreeConesConstants& k) {
    const double dc = std::pow(delta, c);
    const double np = norm(p), nq = norm(q), npq = norm(p - q);
    if (np > 1.0 + 1e-12 || nq > 1.0 + 1e-12)
        throw precondition_error("three_cones_cover: shifts must lie in B(0,1)");
    if (np < dc) throw precondition_error("three_cones_cover: |p| below delta^c");
    if (nq < dc) throw precondition_error("three_cones_cover: |q| below delta^c");
    if (npq < dc) throw precondition_error("three_cones_cover: |p-q| below delta^c");

    ThreeConesResult res;
    res.radius = dc;

    // At fixed (delta, c) the tangent-circle argument only stays inside a
    // delta^c tube when the shift is within ~delta^(1/2) of the cone; shifts
    // in the (delta^(1/2), delta^(1/4)] shell go down the radical-plane path
    // instead.
    const double near_gate = std::sqrt(delta);
    const double dp = cone_distance(p), dq = cone_distance(q);
    if (std::min(dp, dq) <= near_gate) {
        const Vec3& s = dp <= dq ? p : q;
        res.branch = ThreeConesBranch::near_cone;
        res.lines = {tangent_line_cover(s, delta, c).line};
        return res;
    }

    const bool collinear = dist_to_line(p, unit(q)) <= std::pow(delta, k.tau) ||
                           dist_to_line(q, unit(p)) <= std::pow(delta, k.tau);
    if (collinear) {
        const SeparationReport rep = separation_core(p, q, delta, c, k.tau, k);
        res.separation = rep;
        if (rep.separated) {
            res.branch = ThreeConesBranch::separated;
            return res;
        }
        const double cn = norm(cross(unit(Vec3{p.x, p.y, -p.z}), unit(Vec3{q.x, q.y, -q.z})));
        if (cn < 1e-12)
            throw branch_error(
                "three_cones_cover: collinear pair with coincident radical planes at this scale");
        // not separated but the planes still intersect: fall through
    }

    res.branch = ThreeConesBranch::generic;
    PlanePairLine ppl;
    if (collinear) {
        // bypass the collinearity gate of plane_pair_line; the planes meet
        const Plane3 vp = radical_plane(p), vq = radical_plane(q);
        const Vec3 crossn = cross(vp.normal, vq.normal);
        ppl.line.dir = crossn / norm(crossn);
        const double dpp = dot(vp.base, vp.normal), dqq = dot(vq.base, vq.normal);
        const double g = dot(vp.normal, vq.normal);
        const double det = 1.0 - g * g;
        ppl.line.point =
            vp.normal * ((dpp - g * dqq) / det) + vq.normal * ((dqq - g * dpp) / det);
        ppl.radius = dc;
    } else {
        ppl = plane_pair_line(p, q, delta, c, k.tau);
    }
    for (const LineNeighborhood& ln : line_cone_cover(ppl.line, delta, c))
        res.lines.push_back(ln.line);
    return res;
}

} // namespace restproj
