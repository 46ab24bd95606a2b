#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include "restproj/threecones.hpp"

namespace testsupport {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;

double wrap_2pi(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    return a < 0.0 ? a + 2.0 * M_PI : a;
}

bool azimuth_in(double phi, Interval J) {
    const double lo = wrap_2pi(J.lo);
    const double len = J.hi - J.lo;
    double off = wrap_2pi(phi) - lo;
    if (off < 0.0) off += 2.0 * M_PI;
    return off <= len;
}

template <typename Member>
std::vector<Vec3> collect_patch_grid(Interval J, double delta, std::size_t max_points,
                                     const Member& member) {
    std::vector<Vec3> out;
    const double pitch = 0.5 * delta;
    const double h_max = 1.0; // |point| = h sqrt2 handled by the |x|<=1 filter
    const int nh = int(std::ceil(h_max * std::sqrt(2.0) / pitch));
    const std::vector<double> offsets{-delta, -0.5 * delta, 0.0, 0.5 * delta, delta};
    for (int ih = 1; ih <= nh; ++ih) {
        const double h = h_max * double(ih) / double(nh);
        const int nth = std::max(2, int(std::ceil(h * J.length() / pitch)));
        for (int it = 0; it <= nth; ++it) {
            const double th = J.lo + J.length() * double(it) / double(nth);
            const Vec3 base{h * std::cos(th), h * std::sin(th), h};
            const Vec3 normal = Vec3{std::cos(th), std::sin(th), -1.0} * kInvSqrt2;
            for (double nu : offsets) {
                const Vec3 x = base + normal * nu;
                if (norm(x) > 1.0) continue;
                if (member(x)) out.push_back(x);
            }
        }
    }
    if (out.size() > max_points) {
        std::vector<Vec3> thin;
        const std::size_t stride = (out.size() + max_points - 1) / max_points;
        for (std::size_t i = 0; i < out.size(); i += stride) thin.push_back(out[i]);
        out = std::move(thin);
    }
    return out;
}

template <typename Member>
std::vector<Vec3> collect_double_cone_grid(double delta, std::size_t max_points,
                                           const Member& member) {
    std::vector<Vec3> out;
    const double pitch = 0.5 * delta;
    const int nt = int(std::ceil(2.0 / pitch));
    const std::vector<double> offsets{-delta, 0.0, delta};
    for (int it = -nt; it <= nt; ++it) {
        if (it == 0) continue;
        const double t = double(it) / double(nt); // |point| = |t|
        const int nphi = std::max(4, int(std::ceil(2.0 * M_PI * std::fabs(t) / pitch)));
        for (int ip = 0; ip < nphi; ++ip) {
            const double phi = 2.0 * M_PI * double(ip) / double(nphi);
            const Vec3 base = Vec3{t * std::cos(phi), t * std::sin(phi), t} * kInvSqrt2;
            const Vec3 normal = Vec3{std::cos(phi), std::sin(phi), -1.0} * kInvSqrt2;
            for (double nu : offsets) {
                const Vec3 x = base + normal * nu;
                if (norm(x) > 1.0) continue;
                if (member(x)) out.push_back(x);
            }
        }
    }
    if (out.size() > max_points) {
        std::vector<Vec3> thin;
        const std::size_t stride = (out.size() + max_points - 1) / max_points;
        for (std::size_t i = 0; i < out.size(); i += stride) thin.push_back(out[i]);
        out = std::move(thin);
    }
    return out;
}

} // namespace

double urand(std::uint64_t& state) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    const std::uint64_t bits = state ^ (state >> 31);
    return double(bits >> 11) * 0x1.0p-53;
}

Vec3 rand_ball(std::uint64_t& state) {
    for (;;) {
        const Vec3 v{2.0 * urand(state) - 1.0, 2.0 * urand(state) - 1.0,
                     2.0 * urand(state) - 1.0};
        if (norm(v) <= 1.0) return v;
    }
}

double special_patch_distance(const Vec3& q, Interval J) {
    const double w = std::hypot(q.x, q.y);
    if (azimuth_in(std::atan2(q.y, q.x), J)) {
        const double t = (w + q.z) * kInvSqrt2;
        if (t <= 0.0) return norm(q);
        return std::fabs(w - q.z) * kInvSqrt2;
    }
    const Vec3 d_lo = Vec3{std::cos(J.lo), std::sin(J.lo), 1.0} * kInvSqrt2;
    const Vec3 d_hi = Vec3{std::cos(J.hi), std::sin(J.hi), 1.0} * kInvSqrt2;
    return std::min(dist_to_ray(q, d_lo), dist_to_ray(q, d_hi));
}

namespace {
// necessary condition for dist(v, C) <= delta with |v| <= 2: the cone form
// q(v) = v1^2 + v2^2 - v3^2 satisfies |q(v)| <= 2 dist |v| <= 6 delta
inline bool near_cone_form(const Vec3& v, double delta) {
    return std::fabs(v.x * v.x + v.y * v.y - v.z * v.z) <= 6.0 * delta;
}
} // namespace

std::vector<Vec3> twocones_oracle_points(Interval J, const Vec3& p, double delta,
                                         std::size_t max_points) {
    return collect_patch_grid(J, delta, max_points, [&](const Vec3& x) {
        const Vec3 v = x - p;
        if (v.z < -1.01 * delta || !near_cone_form(v, delta)) return false;
        return special_patch_distance(v, J) <= delta;
    });
}

std::vector<Vec3> pair_cone_oracle_points(const Vec3& p, double delta, std::size_t max_points) {
    return collect_double_cone_grid(delta, max_points, [&](const Vec3& x) {
        const Vec3 v = x - p;
        return near_cone_form(v, delta) && restproj::cone_distance(v) <= delta;
    });
}

std::vector<Vec3> threecones_oracle_points(const Vec3& p, const Vec3& q, double delta,
                                           std::size_t max_points) {
    return collect_double_cone_grid(delta, max_points, [&](const Vec3& x) {
        const Vec3 vp = x - p;
        if (!near_cone_form(vp, delta)) return false;
        const Vec3 vq = x - q;
        if (!near_cone_form(vq, delta)) return false;
        return restproj::cone_distance(vp) <= delta && restproj::cone_distance(vq) <= delta;
    });
}

double curve_fd_mismatch(const restproj::DirectionCurve& curve, int samples, double h) {
    const Interval J = curve.domain();
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double th = J.lo + h * 2.0 + (J.length() - 4.0 * h) * double(i) / double(samples - 1);
        const auto jm = curve.eval(th - h), j0 = curve.eval(th), jp = curve.eval(th + h);
        const Vec3 fd1 = (jp.g - jm.g) / (2.0 * h);
        const Vec3 fd2 = (jp.g - j0.g * 2.0 + jm.g) / (h * h);
        worst = std::max(worst, norm(fd1 - j0.dg));
        worst = std::max(worst, norm(fd2 - j0.ddg));
    }
    return worst;
}

} // namespace testsupport
