#pragma once
#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "restproj/covers.hpp"
#include "restproj/curve.hpp"
#include "restproj/vec3.hpp"

namespace restproj {

/// A cone patch written in graph coordinates: {(t, h f(t/h), h) : h >= 0,
/// t/h in [u_min, u_max]} with f strictly convex (f'' >= eta > 0).
///
/// Graph coordinates are a rotation of world coordinates about the z-axis;
/// to_world/to_graph convert between them.
class GraphCone {
  public:
    /// f(u) = -sqrt(1 - u^2) on [-1/2, 1/2]: eta = 1, Lipschitz 1/sqrt(3).
    static GraphCone circular(double u_min = -0.5, double u_max = 0.5);

    double u_min() const;
    double u_max() const;
    double u_abs() const; // max(|u_min|, |u_max|)

    double f(double u) const;   // domain error outside [u_min, u_max]
    double fp(double u) const;
    double fpp(double u) const;

    /// Lipschitz extension: linear continuation beyond the endpoints.
    double f_ext(double u) const;
    double fp_ext(double u) const;

    double eta() const;      // min f'' over the domain
    double lip() const;      // max |f'|
    double sup_f() const;    // max |f|
    double sup_f_minus_ufp() const; // max |f(u) - u f'(u)|, slab drift rate
    double patch_bound() const;     // max |(u, f(u), 1)|

    Vec3 to_graph(const Vec3& world) const;
    Vec3 to_world(const Vec3& graph) const;

    struct Impl;
    explicit GraphCone(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  private:
    std::shared_ptr<const Impl> impl_;
};

/// Reparametrizes the cone over gamma(J) as a graph cone. Fails when the
/// curve leaves the upper hemisphere, when the projected curvature vanishes,
/// or when J is too long for a single graph chart.
GraphCone graph_cone_from_curve(const DirectionCurve& curve, Interval J);

/// Shift parameters of a translated cone patch: translating by p turns the
/// second graph into t -> (h+a) f((t+b)/(h+a)) + c in graph coordinates.
struct ConeShift {
    double a{0.0}, b{0.0}, c{0.0};
    Vec3 p; // original world translation
};

ConeShift cone_shift(const GraphCone& cone, const Vec3& p);

/// Common t-domain of the two graphs at height h (possibly empty).
struct SliceDomain {
    double h{0.0};
    double lo{0.0}, hi{0.0};
    bool empty{true};
};

SliceDomain slice_interval(const GraphCone& cone, const ConeShift& shift, double h);

struct SliceDifference {
    double d{0.0};
    double dprime{0.0};
};

/// d_h(t) = h f(t/h) - [(h+a) f((t+b)/(h+a)) + c] and its t-derivative.
/// Requires min(h, h+a) > 0 and t in the slice domain.
SliceDifference slice_difference(const GraphCone& cone, const ConeShift& shift, double h,
                                 double t);

/// The monotonicity split point h b / a (+-infinity when a = 0).
double slice_split_point(const ConeShift& shift, double h);

enum class SpecialPointKind { zero, endpoint };

struct SpecialPoints {
    double s1{0.0}, s2{0.0};
    SpecialPointKind kind1{SpecialPointKind::endpoint};
    SpecialPointKind kind2{SpecialPointKind::endpoint};
    // distance of each zero to the split point (0 for endpoint kinds)
    double gap1{0.0}, gap2{0.0};
};

/// Per-slab anchors of the covering intervals: the zeros of d_h on each side
/// of the split point, or the slice endpoints when no zero exists. Throws
/// degenerate_shift_error when the transversality scan finds
/// |d| <= delta^tau and |d'| <= delta^tau simultaneously.
SpecialPoints special_points(const GraphCone& cone, const ConeShift& shift, double h,
                             double delta, double tau);

/// Covers the intersection of the delta-neighborhoods of two Lipschitz
/// graphs by balls centred on the first graph over the sublevel set
/// {|g1 - g2| <= 6 L delta}.
BallCover graph_intersection_cover(const std::function<double(double)>& g1, Interval i1,
                                   const std::function<double(double)>& g2, Interval i2,
                                   double delta, double lip);

struct TwoConesOptions {
    /// Exponent slack constant C in the slab width delta^(1/2 + 2 tau + C eps).
    double slab_exponent_C{4.0};
    int scan_heights{128};
    int scan_ts{128};
};

struct TwoConesResult {
    BallCover cover;                // main balls, world coordinates
    char case_tag{'a'};             // 'a' or 'b'
    std::array<Ball, 2> cap_balls;  // vertex caps, always present
    std::vector<double> slab_heights; // one per main ball
    double slab_width{0.0};
    double interval_threshold{0.0}; // |d| threshold used per slab
};

/// Quantitative cover of Cone(delta) /\ (Cone(delta) + p) /\ B(0,1) above
/// the vertex caps. Every main ball centre lies on the first cone patch.
TwoConesResult two_cones_cover(const DirectionCurve& curve, Interval J, const Vec3& p,
                               double delta, double eps, double tau,
                               const TwoConesOptions& opt = {});

/// Text rows "cx cy cz radius slab_h case_tag"; caps are tagged "cap".
void write_cover_dump(std::ostream& os, const TwoConesResult& result);

} // namespace restproj
