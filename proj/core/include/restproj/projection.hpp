#pragma once
#include <variant>

#include "restproj/curve.hpp"
#include "restproj/vec3.hpp"

namespace restproj {

enum class FamilyTag {
    line,      // rho_theta : R^3 -> R, x . gamma(theta)
    plane,     // pi_theta  : R^3 -> R^2, projection onto gamma(theta)^perp
    bad_plane, // pi~_theta : R^3 -> R^2, kernel span(gamma x gamma')
};

/// Orthonormal frame of a 2-plane plus its unit normal.
struct PlaneFrame {
    Vec3 e1, e2, normal;
};

/// One of the three projection families built over a direction curve.
///
/// Plane frames are reproducible: pi uses Gram-Schmidt against a fixed seed
/// vector (fallback seed when near-parallel), pi~ uses the curve's own
/// (gamma, gamma'/|gamma'|) frame.
class ProjectionFamily {
  public:
    ProjectionFamily(FamilyTag tag, DirectionCurve curve);

    FamilyTag tag() const { return tag_; }
    const DirectionCurve& curve() const { return curve_; }

    /// Frame of the codomain plane at theta (plane families only).
    PlaneFrame frame(double theta) const;

    /// Scalar for the line family, 2D coordinates for the plane families.
    std::variant<double, Vec2> project(double theta, const Vec3& x) const;

    /// |projection| as a plain number for any family.
    double project_abs(double theta, const Vec3& x) const;

  private:
    FamilyTag tag_;
    DirectionCurve curve_;
};

/// Grid-estimated length of {theta in J : |proj_theta(x)| <= delta}.
/// Uniform grids are refined (doubling) until two successive estimates agree
/// to 1%, starting from theta_grid samples.
double sublevel_measure(const ProjectionFamily& family, const Vec3& x, double delta,
                        int theta_grid);

} // namespace restproj
