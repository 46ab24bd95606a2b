#include "restproj/curve.hpp"

#include <cmath>
#include <stdexcept>

#include "restproj/errors.hpp"

namespace restproj {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

DirectionCurve::DirectionCurve(CurveKind k, Interval d, Evaluator e)
    : kind_(k), domain_(d), eval_(std::move(e)) {}

DirectionCurve DirectionCurve::special() {
    Evaluator f = [](double th) {
        const double c = std::cos(th), s = std::sin(th);
        CurveJet j;
        j.g = Vec3{c, s, 1.0} * kInvSqrt2;
        j.dg = Vec3{-s, c, 0.0} * kInvSqrt2;
        j.ddg = Vec3{-c, -s, 0.0} * kInvSqrt2;
        return j;
    };
    return DirectionCurve(CurveKind::special, Interval{0.0, 2.0 * M_PI}, std::move(f));
}

DirectionCurve DirectionCurve::custom(Interval domain, Evaluator eval) {
    if (!(domain.hi > domain.lo)) throw precondition_error("custom curve: empty domain");
    if (!eval) throw precondition_error("custom curve: missing evaluator");
    return DirectionCurve(CurveKind::custom, domain, std::move(eval));
}

CurveJet DirectionCurve::eval(double theta) const {
    if (!domain_.contains(theta, 1e-12))
        throw std::domain_error("curve: theta outside the parameter interval");
    return eval_(theta);
}

double DirectionCurve::nondegeneracy_margin(int samples) const {
    if (samples < 2) throw precondition_error("nondegeneracy_margin: samples >= 2 required");
    const double h = domain_.length() / double(samples - 1);
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const CurveJet j = eval_(domain_.lo + h * double(i));
        m = std::min(m, std::fabs(triple(j.g, j.dg, j.ddg)));
    }
    return m;
}

} // namespace restproj
