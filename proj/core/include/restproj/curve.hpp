#pragma once
#include <functional>
#include <memory>

#include "restproj/vec3.hpp"

namespace restproj {

/// Closed parameter interval.
struct Interval {
    double lo{0.0}, hi{0.0};
    double length() const { return hi - lo; }
    bool contains(double t, double tol = 0.0) const { return t >= lo - tol && t <= hi + tol; }
};

struct CurveJet {
    Vec3 g;   // gamma(theta)
    Vec3 dg;  // gamma'(theta)
    Vec3 ddg; // gamma''(theta)
};

enum class CurveKind { special, custom };

/// A C^3 direction curve theta -> S^2 with analytic derivatives.
///
/// Custom curves must supply their own derivative evaluators; the core never
/// differentiates numerically.
class DirectionCurve {
  public:
    using Evaluator = std::function<CurveJet(double)>;

    /// gamma(theta) = (cos theta, sin theta, 1)/sqrt(2) on [0, 2pi].
    static DirectionCurve special();

    static DirectionCurve custom(Interval domain, Evaluator eval);

    CurveKind kind() const { return kind_; }
    const Interval& domain() const { return domain_; }

    /// Evaluates (gamma, gamma', gamma''); theta outside the domain is a
    /// domain error.
    CurveJet eval(double theta) const;

    /// min over a uniform grid of |det[gamma, gamma', gamma'']|.
    double nondegeneracy_margin(int samples) const;

  private:
    DirectionCurve(CurveKind k, Interval d, Evaluator e);
    CurveKind kind_;
    Interval domain_;
    Evaluator eval_;
};

} // namespace restproj
