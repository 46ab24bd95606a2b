#include "restproj/projection.hpp"

#include <cmath>
#include <stdexcept>

#include "restproj/errors.hpp"

namespace restproj {

ProjectionFamily::ProjectionFamily(FamilyTag tag, DirectionCurve curve)
    : tag_(tag), curve_(std::move(curve)) {}

PlaneFrame ProjectionFamily::frame(double theta) const {
    const CurveJet j = curve_.eval(theta);
    PlaneFrame f;
    if (tag_ == FamilyTag::plane) {
        f.normal = unit(j.g);
        // Gram-Schmidt against a fixed seed; deterministic fallback when the
        // seed is nearly parallel to the normal.
        Vec3 seed{0.0, 0.0, 1.0};
        Vec3 v = seed - f.normal * dot(seed, f.normal);
        if (norm(v) < 1e-6) {
            seed = Vec3{1.0, 0.0, 0.0};
            v = seed - f.normal * dot(seed, f.normal);
        }
        f.e1 = unit(v);
        f.e2 = cross(f.normal, f.e1);
    } else if (tag_ == FamilyTag::bad_plane) {
        f.normal = unit(cross(j.g, j.dg));
        f.e1 = unit(j.g);
        f.e2 = unit(j.dg);
    } else {
        throw std::logic_error("frame(): line family has no plane frame");
    }
    return f;
}

std::variant<double, Vec2> ProjectionFamily::project(double theta, const Vec3& x) const {
    const CurveJet j = curve_.eval(theta);
    if (tag_ == FamilyTag::line) return dot(x, unit(j.g));
    const PlaneFrame f = frame(theta);
    return Vec2{dot(x, f.e1), dot(x, f.e2)};
}

double ProjectionFamily::project_abs(double theta, const Vec3& x) const {
    const auto p = project(theta, x);
    if (std::holds_alternative<double>(p)) return std::fabs(std::get<double>(p));
    return norm(std::get<Vec2>(p));
}

double sublevel_measure(const ProjectionFamily& family, const Vec3& x, double delta,
                        int theta_grid) {
    if (!(delta > 0.0)) throw precondition_error("sublevel_measure: delta must be positive");
    if (norm(x) == 0.0)
        throw precondition_error("sublevel_measure: x = 0 is degenerate (set is all of J)");
    if (theta_grid < 2) throw precondition_error("sublevel_measure: need at least 2 samples");

    const Interval J = family.curve().domain();
    auto estimate = [&](int n) {
        const double h = J.length() / double(n);
        // midpoint rule on the indicator
        long hits = 0;
        for (int i = 0; i < n; ++i) {
            const double th = J.lo + h * (double(i) + 0.5);
            if (family.project_abs(th, x) <= delta) ++hits;
        }
        return double(hits) * h;
    };

    int n = theta_grid;
    double prev = estimate(n);
    for (int level = 0; level < 8; ++level) {
        n *= 2;
        const double cur = estimate(n);
        const double scale = std::max(std::fabs(cur), std::fabs(prev));
        if (scale == 0.0) return 0.0;
        if (std::fabs(cur - prev) < 0.01 * scale) return cur;
        prev = cur;
    }
    return prev;
}

} // namespace restproj
