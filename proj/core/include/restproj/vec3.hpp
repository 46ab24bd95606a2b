#pragma once
#include <cmath>
#include <stdexcept>

namespace restproj {

struct Vec3 {
    double x{0.0}, y{0.0}, z{0.0};

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 unit(const Vec3& v, double eps = 1e-14) {
    const double n = norm(v);
    if (n < eps) throw std::domain_error("unit(): zero-length vector");
    return v / n;
}

/// Scalar triple product a . (b x c).
inline double triple(const Vec3& a, const Vec3& b, const Vec3& c) {
    return dot(a, cross(b, c));
}

/// Distance from v to the full line spanned by the unit vector d.
inline double dist_to_line(const Vec3& v, const Vec3& d) {
    const double t = dot(v, d);
    const double r2 = norm2(v) - t * t;
    return r2 > 0.0 ? std::sqrt(r2) : 0.0;
}

/// Distance from v to the half-line {r d : r >= 0}, d unit.
inline double dist_to_ray(const Vec3& v, const Vec3& d) {
    const double t = dot(v, d);
    if (t <= 0.0) return norm(v);
    return dist_to_line(v, d);
}

struct Vec2 {
    double u{0.0}, v{0.0};
};

inline double norm(const Vec2& a) { return std::hypot(a.u, a.v); }

} // namespace restproj
