#include "restproj/conegeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "restproj/errors.hpp"

namespace restproj {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double bisect_level(const std::function<double(double)>& fn, double lo, double hi, double level,
                    double tol) {
    // fn monotone on [lo, hi] with fn(lo), fn(hi) straddling `level`
    double flo = fn(lo) - level;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid) - level;
        if ((fm <= 0.0) == (flo <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Band {
    double lo, hi;
};

// {t in [lo, hi] : |fn(t)| <= band} for monotone fn; empty optional if none.
std::optional<Band> monotone_sublevel(const std::function<double(double)>& fn, double lo,
                                      double hi, double band, double tol) {
    if (!(hi >= lo)) return std::nullopt;
    const double flo = fn(lo), fhi = fn(hi);
    const bool increasing = fhi >= flo;
    const double fa = increasing ? flo : fhi; // value at the "low" end
    const double fb = increasing ? fhi : flo;
    if (fb < -band || fa > band) return std::nullopt;

    double t_lo, t_hi;
    if (increasing) {
        t_lo = flo >= -band ? lo : bisect_level(fn, lo, hi, -band, tol);
        t_hi = fhi <= band ? hi : bisect_level(fn, lo, hi, band, tol);
    } else {
        t_lo = flo <= band ? lo : bisect_level(fn, lo, hi, band, tol);
        t_hi = fhi >= -band ? hi : bisect_level(fn, lo, hi, -band, tol);
    }
    if (t_hi < t_lo) return std::nullopt;
    return Band{t_lo - tol, t_hi + tol};
}
} // namespace

struct GraphCone::Impl {
    double u_min{-0.5}, u_max{0.5};
    std::function<double(double)> f, fp, fpp;
    // frame: e_u in the xy-plane, e_v = rot90(e_u)
    double eu_x{1.0}, eu_y{0.0};
    double eta{0.0}, lip{0.0}, sup_f{0.0}, sup_fmufp{0.0}, patch_bound{0.0};
    double f_lo{0.0}, f_hi{0.0}, fp_lo{0.0}, fp_hi{0.0};

    void finalize() {
        const int n = 1024;
        eta = kInf;
        lip = 0.0;
        sup_f = 0.0;
        sup_fmufp = 0.0;
        patch_bound = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double u = u_min + (u_max - u_min) * double(i) / double(n);
            const double fu = f(u), fpu = fp(u), fppu = fpp(u);
            eta = std::min(eta, fppu);
            lip = std::max(lip, std::fabs(fpu));
            sup_f = std::max(sup_f, std::fabs(fu));
            sup_fmufp = std::max(sup_fmufp, std::fabs(fu - u * fpu));
            patch_bound = std::max(patch_bound, std::sqrt(u * u + fu * fu + 1.0));
        }
        f_lo = f(u_min);
        f_hi = f(u_max);
        fp_lo = fp(u_min);
        fp_hi = fp(u_max);
    }
};

GraphCone GraphCone::circular(double u_min, double u_max) {
    if (!(u_min < u_max && u_min > -1.0 && u_max < 1.0))
        throw precondition_error("circular cone: need -1 < u_min < u_max < 1");
    auto impl = std::make_shared<Impl>();
    impl->u_min = u_min;
    impl->u_max = u_max;
    impl->f = [](double u) { return -std::sqrt(1.0 - u * u); };
    impl->fp = [](double u) { return u / std::sqrt(1.0 - u * u); };
    impl->fpp = [](double u) { return std::pow(1.0 - u * u, -1.5); };
    impl->finalize();
    return GraphCone(std::move(impl));
}

double GraphCone::u_min() const { return impl_->u_min; }
double GraphCone::u_max() const { return impl_->u_max; }
double GraphCone::u_abs() const { return std::max(std::fabs(impl_->u_min), std::fabs(impl_->u_max)); }
double GraphCone::eta() const { return impl_->eta; }
double GraphCone::lip() const { return impl_->lip; }
double GraphCone::sup_f() const { return impl_->sup_f; }
double GraphCone::sup_f_minus_ufp() const { return impl_->sup_fmufp; }
double GraphCone::patch_bound() const { return impl_->patch_bound; }

double GraphCone::f(double u) const {
    if (u < impl_->u_min - 1e-12 || u > impl_->u_max + 1e-12)
        throw std::domain_error("graph cone: u outside the chart interval");
    return impl_->f(std::clamp(u, impl_->u_min, impl_->u_max));
}

double GraphCone::fp(double u) const {
    if (u < impl_->u_min - 1e-12 || u > impl_->u_max + 1e-12)
        throw std::domain_error("graph cone: u outside the chart interval");
    return impl_->fp(std::clamp(u, impl_->u_min, impl_->u_max));
}

double GraphCone::fpp(double u) const {
    if (u < impl_->u_min - 1e-12 || u > impl_->u_max + 1e-12)
        throw std::domain_error("graph cone: u outside the chart interval");
    return impl_->fpp(std::clamp(u, impl_->u_min, impl_->u_max));
}

double GraphCone::f_ext(double u) const {
    if (u < impl_->u_min) return impl_->f_lo + impl_->fp_lo * (u - impl_->u_min);
    if (u > impl_->u_max) return impl_->f_hi + impl_->fp_hi * (u - impl_->u_max);
    return impl_->f(u);
}

double GraphCone::fp_ext(double u) const {
    if (u < impl_->u_min) return impl_->fp_lo;
    if (u > impl_->u_max) return impl_->fp_hi;
    return impl_->fp(u);
}

Vec3 GraphCone::to_graph(const Vec3& w) const {
    const double ex = impl_->eu_x, ey = impl_->eu_y;
    return {w.x * ex + w.y * ey, -w.x * ey + w.y * ex, w.z};
}

Vec3 GraphCone::to_world(const Vec3& g) const {
    const double ex = impl_->eu_x, ey = impl_->eu_y;
    return {g.x * ex - g.y * ey, g.x * ey + g.y * ex, g.z};
}

namespace {

// The radial projection of the curve onto the tangent plane {z = 1}:
// lambda(theta) = (g1/g3, g2/g3) with two derivatives.
struct LambdaJet {
    double l1, l2, l1p, l2p, l1pp, l2pp;
};

LambdaJet lambda_jet(const CurveJet& j) {
    const double g3 = j.g.z, g3p = j.dg.z, g3pp = j.ddg.z;
    const double inv = 1.0 / g3, inv2 = inv * inv, inv3 = inv2 * inv;
    LambdaJet l;
    l.l1 = j.g.x * inv;
    l.l2 = j.g.y * inv;
    l.l1p = (j.dg.x * g3 - j.g.x * g3p) * inv2;
    l.l2p = (j.dg.y * g3 - j.g.y * g3p) * inv2;
    l.l1pp = (j.ddg.x * g3 - j.g.x * g3pp) * inv2 - 2.0 * g3p * (j.dg.x * g3 - j.g.x * g3p) * inv3;
    l.l2pp = (j.ddg.y * g3 - j.g.y * g3pp) * inv2 - 2.0 * g3p * (j.dg.y * g3 - j.g.y * g3p) * inv3;
    return l;
}

struct CurveChart {
    DirectionCurve curve;
    double eu_x, eu_y;
    std::vector<double> thetas; // ascending in u
    std::vector<double> us;

    CurveChart(DirectionCurve c) : curve(std::move(c)), eu_x(1), eu_y(0) {}

    double u_of(const LambdaJet& l) const { return l.l1 * eu_x + l.l2 * eu_y; }
    double v_of(const LambdaJet& l) const { return -l.l1 * eu_y + l.l2 * eu_x; }
    double up_of(const LambdaJet& l) const { return l.l1p * eu_x + l.l2p * eu_y; }
    double vp_of(const LambdaJet& l) const { return -l.l1p * eu_y + l.l2p * eu_x; }
    double cross2(const LambdaJet& l) const { return l.l1p * l.l2pp - l.l2p * l.l1pp; }

    double theta_for_u(double u) const {
        const double ulo = us.front(), uhi = us.back();
        u = std::clamp(u, ulo, uhi);
        auto it = std::upper_bound(us.begin(), us.end(), u);
        std::size_t idx = it == us.begin() ? 0 : std::size_t(it - us.begin()) - 1;
        idx = std::min(idx, us.size() - 2);
        double tlo = thetas[idx], thi = thetas[idx + 1];
        for (int k = 0; k < 60; ++k) {
            const double tm = 0.5 * (tlo + thi);
            const double um = u_of(lambda_jet(curve.eval(tm)));
            const bool asc = us[idx + 1] >= us[idx];
            if ((um < u) == asc)
                tlo = tm;
            else
                thi = tm;
        }
        return 0.5 * (tlo + thi);
    }
};

} // namespace

GraphCone graph_cone_from_curve(const DirectionCurve& curve, Interval J) {
    if (!curve.domain().contains(J.lo, 1e-12) || !curve.domain().contains(J.hi, 1e-12))
        throw precondition_error("graph cone: J must lie inside the curve domain");
    if (!(J.hi > J.lo)) throw precondition_error("graph cone: empty interval J");

    const int n = 1024;
    auto chart = std::make_shared<CurveChart>(curve);

    std::vector<LambdaJet> jets;
    jets.reserve(n + 1);
    double min_g3 = kInf;
    for (int i = 0; i <= n; ++i) {
        const double th = J.lo + J.length() * double(i) / double(n);
        const CurveJet j = curve.eval(th);
        min_g3 = std::min(min_g3, j.g.z);
        if (j.g.z < 1e-6)
            throw precondition_error("graph cone: curve leaves the upper hemisphere on J");
        jets.push_back(lambda_jet(j));
        chart->thetas.push_back(th);
    }

    // projected curvature must not vanish: gamma'' . (gamma x gamma') =
    // g3^3 lambda'' . (lambda x lambda')
    double min_cross = kInf, cross_sign = 0.0;
    for (const LambdaJet& l : jets) {
        const double c2 = l.l1p * l.l2pp - l.l2p * l.l1pp;
        min_cross = std::min(min_cross, std::fabs(c2));
        if (cross_sign == 0.0) cross_sign = c2 > 0 ? 1.0 : -1.0;
        if (c2 * cross_sign <= 0.0) min_cross = 0.0;
    }
    if (min_cross < 1e-9)
        throw precondition_error("graph cone: projected curvature vanishes on J");

    // frame: tangent direction at the midpoint, sign chosen so f'' > 0
    const LambdaJet lm = jets[std::size_t(n / 2)];
    double tx = lm.l1p, ty = lm.l2p;
    const double tn = std::hypot(tx, ty);
    if (tn < 1e-12) throw branch_error("graph cone: stationary projection; shrink J");
    tx /= tn;
    ty /= tn;
    if (cross_sign < 0.0) {
        tx = -tx;
        ty = -ty;
    }
    chart->eu_x = tx;
    chart->eu_y = ty;

    // u must be strictly increasing along J for a single chart
    double min_up = kInf;
    for (const LambdaJet& l : jets) min_up = std::min(min_up, chart->up_of(l));
    if (min_up < 1e-9)
        throw branch_error("graph cone: chart not a graph over J; shrink J");

    for (const LambdaJet& l : jets) chart->us.push_back(chart->u_of(l));

    auto impl = std::make_shared<GraphCone::Impl>();
    impl->u_min = chart->us.front();
    impl->u_max = chart->us.back();
    impl->eu_x = chart->eu_x;
    impl->eu_y = chart->eu_y;
    impl->f = [chart](double u) {
        return chart->v_of(lambda_jet(chart->curve.eval(chart->theta_for_u(u))));
    };
    impl->fp = [chart](double u) {
        const LambdaJet l = lambda_jet(chart->curve.eval(chart->theta_for_u(u)));
        return chart->vp_of(l) / chart->up_of(l);
    };
    impl->fpp = [chart](double u) {
        const LambdaJet l = lambda_jet(chart->curve.eval(chart->theta_for_u(u)));
        const double up = chart->up_of(l);
        return chart->cross2(l) / (up * up * up);
    };
    impl->finalize();
    if (impl->eta <= 0.0)
        throw precondition_error("graph cone: convexity floor is not positive on J");
    return GraphCone(std::move(impl));
}

ConeShift cone_shift(const GraphCone& cone, const Vec3& p) {
    const Vec3 local = cone.to_graph(p);
    ConeShift s;
    s.a = -local.z;
    s.b = -local.x;
    s.c = local.y;
    s.p = p;
    return s;
}

SliceDomain slice_interval(const GraphCone& cone, const ConeShift& shift, double h) {
    SliceDomain dom;
    dom.h = h;
    const double ha = h + shift.a;
    if (!(h > 0.0) || !(ha > 0.0)) return dom;
    dom.lo = std::max(h * cone.u_min(), ha * cone.u_min() - shift.b);
    dom.hi = std::min(h * cone.u_max(), ha * cone.u_max() - shift.b);
    dom.empty = !(dom.lo <= dom.hi);
    return dom;
}

SliceDifference slice_difference(const GraphCone& cone, const ConeShift& shift, double h,
                                 double t) {
    const double ha = h + shift.a;
    if (!(std::min(h, ha) > 0.0))
        throw std::domain_error("slice_difference: height below both cone vertices");
    const SliceDomain dom = slice_interval(cone, shift, h);
    if (dom.empty || t < dom.lo - 1e-12 || t > dom.hi + 1e-12)
        throw std::domain_error("slice_difference: t outside the slice domain");
    SliceDifference out;
    out.d = h * cone.f(t / h) - (ha * cone.f((t + shift.b) / ha) + shift.c);
    out.dprime = cone.fp(t / h) - cone.fp((t + shift.b) / ha);
    return out;
}

double slice_split_point(const ConeShift& shift, double h) {
    if (shift.a != 0.0) return h * shift.b / shift.a;
    return shift.b <= 0.0 ? kInf : -kInf;
}

SpecialPoints special_points(const GraphCone& cone, const ConeShift& shift, double h,
                             double delta, double tau) {
    const SliceDomain dom = slice_interval(cone, shift, h);
    if (dom.empty) throw precondition_error("special_points: empty slice domain");
    const double level = std::pow(delta, tau);

    // transversality scan: |d| <= delta^tau must force |d'| >= delta^tau
    const int scan = 512;
    for (int i = 0; i <= scan; ++i) {
        const double t = dom.lo + (dom.hi - dom.lo) * double(i) / double(scan);
        const SliceDifference sd = slice_difference(cone, shift, h, t);
        if (std::fabs(sd.d) <= level && std::fabs(sd.dprime) < level)
            throw degenerate_shift_error("special_points: transversality fails; use the flat-shift branch");
    }

    const double ts = slice_split_point(shift, h);
    auto dfun = [&](double t) { return slice_difference(cone, shift, h, t).d; };
    const double tol = std::max(delta * delta, 1e-14);

    SpecialPoints sp;
    // left of the split point
    {
        const double lo = dom.lo, hi = std::min(dom.hi, ts);
        bool found = false;
        if (hi >= lo) {
            const double da = dfun(lo), db = dfun(hi);
            if ((da <= 0.0) != (db <= 0.0)) {
                sp.s1 = bisect_level(dfun, lo, hi, 0.0, tol);
                sp.kind1 = SpecialPointKind::zero;
                sp.gap1 = std::isfinite(ts) ? std::fabs(sp.s1 - ts) : kInf;
                found = true;
            }
        }
        if (!found) {
            sp.s1 = dom.lo;
            sp.kind1 = SpecialPointKind::endpoint;
        }
    }
    // right of the split point
    {
        const double lo = std::max(dom.lo, ts), hi = dom.hi;
        bool found = false;
        if (hi >= lo) {
            const double da = dfun(lo), db = dfun(hi);
            if ((da <= 0.0) != (db <= 0.0)) {
                sp.s2 = bisect_level(dfun, lo, hi, 0.0, tol);
                sp.kind2 = SpecialPointKind::zero;
                sp.gap2 = std::isfinite(ts) ? std::fabs(sp.s2 - ts) : kInf;
                found = true;
            }
        }
        if (!found) {
            sp.s2 = dom.hi;
            sp.kind2 = SpecialPointKind::endpoint;
        }
    }
    if (sp.s1 > sp.s2) std::swap(sp.s1, sp.s2);
    return sp;
}

BallCover graph_intersection_cover(const std::function<double(double)>& g1, Interval i1,
                                   const std::function<double(double)>& g2, Interval i2,
                                   double delta, double lip) {
    if (lip < 1.0) throw precondition_error("graph_intersection_cover: L >= 1 required");
    const double lo = std::max(i1.lo, i2.lo), hi = std::min(i1.hi, i2.hi);
    if (!(lo <= hi)) throw precondition_error("graph_intersection_cover: disjoint domains");

    BallCover out;
    out.dim = 2;
    const double band = 6.0 * lip * delta;
    const int n = 4096;
    const double pitch = (hi - lo) / double(n);
    // widened threshold keeps grid gaps sound: |g1-g2| is 2L-Lipschitz
    const double accept = band + 2.0 * lip * pitch;

    int run_start = -1;
    auto flush = [&](int first, int last) {
        double alpha = std::max(lo, lo + pitch * (double(first) - 1.0));
        double beta = std::min(hi, lo + pitch * (double(last) + 2.0));
        const double mid = 0.5 * (alpha + beta);
        const double half = 0.5 * (beta - alpha);
        out.balls.push_back(
            {Vec3{mid, g1(mid), 0.0}, half * std::sqrt(1.0 + lip * lip) + band});
    };
    for (int i = 0; i <= n; ++i) {
        const double t = lo + pitch * double(i);
        const bool hit = std::fabs(g1(t) - g2(t)) <= accept;
        if (hit && run_start < 0) run_start = i;
        if (!hit && run_start >= 0) {
            flush(run_start, i - 1);
            run_start = -1;
        }
    }
    if (run_start >= 0) flush(run_start, n);
    return out;
}

TwoConesResult two_cones_cover(const DirectionCurve& curve, Interval J, const Vec3& p,
                               double delta, double eps, double tau,
                               const TwoConesOptions& opt) {
    if (!(delta > 0.0 && delta < 1.0)) throw precondition_error("two_cones_cover: delta in (0,1)");
    const double pn = norm(p);
    const double he = std::pow(delta, eps);
    if (pn < he || pn > 1.0 + 1e-12)
        throw precondition_error("two_cones_cover: |p| must lie in [delta^eps, 1]");
    const double tau_floor = 4.0 * eps + 0.01;
    if (!(tau >= tau_floor && tau < 0.5))
        throw precondition_error("two_cones_cover: tau must lie in [4 eps + 0.01, 1/2)");

    const GraphCone cone = graph_cone_from_curve(curve, J);
    const ConeShift shift = cone_shift(cone, p);
    const double a = shift.a, b = shift.b, c = shift.c;

    TwoConesResult res;
    res.cover.dim = 3;

    // vertex caps: everything with min(h, h+a) < delta^eps
    const double cap_r = cone.patch_bound() * (he + delta) + delta;
    res.cap_balls[0] = Ball{Vec3{0, 0, 0}, cap_r};
    res.cap_balls[1] = Ball{p, cap_r};

    const double h_lo = std::max(he, he - a);
    const double h_hi = 1.0 + delta;

    const double level = std::pow(delta, tau);

    // flat-shift detection: |d| and |d'| simultaneously below delta^tau
    bool flat = false;
    if (h_lo < h_hi) {
        if (a != 0.0) {
            const double ba = b / a;
            if (ba >= cone.u_min() && ba <= cone.u_max() &&
                std::fabs(a * cone.f(ba) + c) <= level) {
                for (int i = 0; i <= opt.scan_heights && !flat; ++i) {
                    const double h = h_lo + (h_hi - h_lo) * double(i) / double(opt.scan_heights);
                    const SliceDomain dom = slice_interval(cone, shift, h);
                    if (!dom.empty && h * ba >= dom.lo - 1e-12 && h * ba <= dom.hi + 1e-12)
                        flat = true;
                }
            }
        }
        for (int i = 0; i <= opt.scan_heights && !flat; ++i) {
            const double h = h_lo + (h_hi - h_lo) * double(i) / double(opt.scan_heights);
            const SliceDomain dom = slice_interval(cone, shift, h);
            if (dom.empty) continue;
            for (int j = 0; j <= opt.scan_ts && !flat; ++j) {
                const double t = dom.lo + (dom.hi - dom.lo) * double(j) / double(opt.scan_ts);
                const SliceDifference sd = slice_difference(cone, shift, h, t);
                if (std::fabs(sd.d) <= level && std::fabs(sd.dprime) <= level) flat = true;
            }
        }
    }
    res.case_tag = flat ? 'b' : 'a';

    const double C = opt.slab_exponent_C;
    double w = flat ? std::pow(delta, 0.75 * tau + C * eps)
                    : std::pow(delta, 0.5 + 2.0 * tau + C * eps);
    w = std::max(w, 0.5 * delta);
    const double merge_span = std::pow(delta, 0.25 * tau);

    const double u_abs = cone.u_abs();
    const double L = cone.lip();
    const double Lstar = std::max(1.0, L);
    const double F = cone.sup_f_minus_ufp();
    const double tol = std::max(delta * delta * 0.25, 1e-14);

    std::vector<Ball> balls;
    std::vector<double> slab_h;
    double A_max = 0.0;

    const double ha_min = he; // min(h, h+a) >= delta^eps on every slab
    (void)ha_min;

    for (double base = h_lo; base < h_hi; base += w) {
        const double hc = base + 0.5 * w;
        const double ha = hc + a;
        if (!(hc > 0.0 && ha > 0.0)) continue;

        const double pad_t = (0.5 * w + delta) * u_abs + delta;
        const double lo_dom = std::max(hc * cone.u_min(), ha * cone.u_min() - b) - pad_t;
        const double hi_dom = std::min(hc * cone.u_max(), ha * cone.u_max() - b) + pad_t;
        if (!(lo_dom <= hi_dom)) continue;

        const double r_slab = delta + (0.5 * w + delta) * F;
        const double A = 6.0 * Lstar * r_slab;
        A_max = std::max(A_max, A);

        auto dext = [&](double t) {
            return hc * cone.f_ext(t / hc) - (ha * cone.f_ext((t + b) / ha) + c);
        };

        const double ts = slice_split_point(shift, hc);
        std::vector<Band> bands;
        const double mid_cut = std::clamp(ts, lo_dom, hi_dom);
        if (mid_cut > lo_dom)
            if (auto bd = monotone_sublevel(dext, lo_dom, mid_cut, A, tol)) bands.push_back(*bd);
        if (mid_cut < hi_dom)
            if (auto bd = monotone_sublevel(dext, mid_cut, hi_dom, A, tol)) bands.push_back(*bd);
        if (bands.size() == 2 && bands[1].lo <= bands[0].hi + 4.0 * tol) {
            bands[0].hi = bands[1].hi;
            bands.pop_back();
        }

        for (const Band& bd : bands) {
            double tm = 0.5 * (bd.lo + bd.hi);
            const double tm_on_patch = std::clamp(tm, hc * cone.u_min(), hc * cone.u_max());
            const double shift_pen = std::fabs(tm_on_patch - tm);
            tm = tm_on_patch;
            const double half = 0.5 * (bd.hi - bd.lo);
            const double rho2 =
                (half + shift_pen) * std::sqrt(1.0 + Lstar * Lstar) + A + 2.0 * tol;
            const double r3 = std::sqrt(rho2 * rho2 + 0.25 * w * w) + 1e-12;
            const Vec3 center = cone.to_world(Vec3{tm, hc * cone.f(tm / hc), hc});
            if (norm(center) > 1.0 + r3 + delta) continue; // misses B(0,1)
            balls.push_back({center, r3});
            slab_h.push_back(hc);
        }
    }

    if (flat && !balls.empty()) {
        std::vector<Ball> merged;
        std::vector<double> merged_h;
        std::size_t i = 0;
        while (i < balls.size()) {
            std::size_t j = i;
            while (j + 1 < balls.size() && slab_h[j + 1] - slab_h[i] <= merge_span) ++j;
            const std::size_t mid = (i + j) / 2;
            Ball g = balls[mid];
            double r = g.radius;
            for (std::size_t k = i; k <= j; ++k)
                r = std::max(r, dist(balls[k].center, g.center) + balls[k].radius);
            g.radius = r;
            merged.push_back(g);
            merged_h.push_back(slab_h[mid]);
            i = j + 1;
        }
        balls = std::move(merged);
        slab_h = std::move(merged_h);
    }

    res.cover.balls = std::move(balls);
    res.slab_heights = std::move(slab_h);
    res.slab_width = w;
    res.interval_threshold = A_max;
    return res;
}

void write_cover_dump(std::ostream& os, const TwoConesResult& result) {
    char buf[160];
    for (int i = 0; i < 2; ++i) {
        const Ball& b = result.cap_balls[std::size_t(i)];
        const int n = std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g cap\n",
                                    b.center.x, b.center.y, b.center.z, b.radius, 0.0);
        os.write(buf, n);
    }
    for (std::size_t i = 0; i < result.cover.balls.size(); ++i) {
        const Ball& b = result.cover.balls[i];
        const int n = std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %c\n",
                                    b.center.x, b.center.y, b.center.z, b.radius,
                                    result.slab_heights[i], result.case_tag);
        os.write(buf, n);
    }
}

} // namespace restproj
