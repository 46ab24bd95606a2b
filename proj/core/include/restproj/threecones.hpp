#pragma once
#include <optional>
#include <vector>

#include "restproj/vec3.hpp"

namespace restproj {

/// The rotationally symmetric double cone C = {x^2 + y^2 = z^2}.

/// Exact distance to C via the 2D reduction: distance to the lines |w| = z
/// in the (|(x,y)|, z) half-plane.
double cone_distance(const Vec3& v);

/// A line on C through the origin: direction (cos phi, sin phi, s)/sqrt(2).
struct ConeLine {
    Vec3 dir; // unit, satisfies dir_x^2 + dir_y^2 = dir_z^2

    double distance_to(const Vec3& v) const { return dist_to_line(v, dir); }
};

/// Closed-form azimuthal projection; ties at the vertex go to the +z nappe.
ConeLine nearest_cone_line(const Vec3& v);

struct Plane3 {
    Vec3 base;
    Vec3 normal; // unit

    double distance_to(const Vec3& v) const { return std::fabs(dot(v - base, normal)); }
};

/// The plane through p/2 with normal (p1, p2, -p3)/|p|; contains C /\ (p + C).
Plane3 radical_plane(const Vec3& p);

struct LineNeighborhood {
    ConeLine line;
    double radius{0.0};
};

/// Cover of C(delta) /\ (p + C(delta)) for p within delta^(1/4) of C: the
/// cone line nearest to p, with radius delta^c.
LineNeighborhood tangent_line_cover(const Vec3& p, double delta, double c);

struct ThreeConesConstants {
    double R{8.0};    // absolute constant in the R delta^(1-c) neighborhoods
    double tau{0.6};  // collinearity exponent, fixed in (1/2, 1)
};

struct SeparationReport {
    bool separated{false};
    double distance{0.0};       // dist(V_p /\ B(0,1), V_q /\ B(0,1))
    double threshold{0.0};      // 3 R delta^(1-c)
    double fast_lower_bound{0.0};
    double xi3_guard{0.0};      // dist(xi_3, {-1/sqrt2, 1/sqrt2})
    explicit operator bool() const { return separated; }
};

/// Whether the radical-plane caps of two nearly collinear shifts are more
/// than 3 R delta^(1-c) apart (in which case the triple intersection is
/// empty).
SeparationReport separation_test(const Vec3& p, const Vec3& q, double delta, double c,
                                 double tau, const ThreeConesConstants& k = {});

struct Line3 {
    Vec3 point;
    Vec3 dir; // unit
};

struct PlanePairLine {
    Line3 line;
    double radius{0.0};
};

/// The line V_p /\ V_q with radius delta^c. Parallel normals raise a
/// branch_error (callers should be on the separation path).
PlanePairLine plane_pair_line(const Vec3& p, const Vec3& q, double delta, double c,
                              double tau = ThreeConesConstants{}.tau);

/// The at most two cone lines whose delta^(c^2/5)-neighborhoods cover
/// L(delta^c) /\ C(delta). Empty when the line misses the cone inside
/// B(0,1).
std::vector<LineNeighborhood> line_cone_cover(const Line3& line, double delta, double c);

enum class ThreeConesBranch { near_cone, separated, generic };

struct ThreeConesResult {
    ThreeConesBranch branch{ThreeConesBranch::generic};
    std::vector<ConeLine> lines; // at most two
    double radius{0.0};          // delta^c
    std::optional<SeparationReport> separation;

    bool empty() const { return lines.empty(); }
};

/// Decision tree for C(delta) /\ (p + C(delta)) /\ (q + C(delta)) /\ B(0,1):
/// near-cone shifts delegate to tangent_line_cover, nearly collinear pairs
/// run the separation test, and the generic path intersects radical planes
/// and clips the resulting line against the cone.
ThreeConesResult three_cones_cover(const Vec3& p, const Vec3& q, double delta, double c,
                                   const ThreeConesConstants& k = {});

} // namespace restproj
