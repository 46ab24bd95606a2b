#include "restproj/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "restproj/errors.hpp"
#include "restproj/fitting.hpp"

namespace restproj {

double WeightedPointCloud::total_mass() const {
    // Neumaier sum: deterministic to the last bit in index order.
    double s = 0.0, comp = 0.0;
    for (double m : masses) {
        const double t = s + m;
        comp += std::fabs(s) >= std::fabs(m) ? (s - t) + m : (m - t) + s;
        s = t;
    }
    return s + comp;
}

void WeightedPointCloud::validate() const {
    if (points.size() != masses.size())
        throw precondition_error("cloud: points/masses size mismatch");
    if (dim < 1 || dim > 3) throw precondition_error("cloud: dim must be 1, 2 or 3");
    for (double m : masses)
        if (!(m >= 0.0)) throw precondition_error("cloud: negative mass");
    if (std::fabs(total_mass() - 1.0) > 1e-9)
        throw precondition_error("cloud: masses must sum to 1");
    if (dim == 3) {
        for (const Vec3& p : points)
            if (norm(p) > 1.0 + 1e-9) throw precondition_error("cloud: point outside B(0,1)");
    }
}

void write_cloud(std::ostream& os, const WeightedPointCloud& cloud) {
    os << cloud.size() << ' ' << cloud.dim << '\n';
    char buf[128];
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.points[i];
        int n = 0;
        if (cloud.dim == 3)
            n = std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", p.x, p.y, p.z,
                              cloud.masses[i]);
        else if (cloud.dim == 2)
            n = std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", p.x, p.y, cloud.masses[i]);
        else
            n = std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, cloud.masses[i]);
        os.write(buf, n);
    }
}

WeightedPointCloud read_cloud(std::istream& is) {
    WeightedPointCloud c;
    std::size_t n = 0;
    if (!(is >> n >> c.dim)) throw std::runtime_error("read_cloud: bad header");
    c.points.resize(n);
    c.masses.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 p;
        if (c.dim == 3) {
            if (!(is >> p.x >> p.y >> p.z >> c.masses[i]))
                throw std::runtime_error("read_cloud: truncated row");
        } else if (c.dim == 2) {
            if (!(is >> p.x >> p.y >> c.masses[i]))
                throw std::runtime_error("read_cloud: truncated row");
        } else {
            if (!(is >> p.x >> c.masses[i])) throw std::runtime_error("read_cloud: truncated row");
        }
        c.points[i] = p;
    }
    c.validate();
    return c;
}

void IFSSpec::validate() const {
    if (!(ratio > 0.0 && ratio < 1.0)) throw precondition_error("ifs: ratio must be in (0,1)");
    if (translations.empty()) throw precondition_error("ifs: needs at least one map");
    for (const Vec3& t : translations)
        if (ratio + norm(t) > 1.0 + 1e-12)
            throw precondition_error("ifs: map does not send B(0,1) into B(0,1)");
}

double IFSSpec::similarity_dimension() const {
    return std::log(double(translations.size())) / std::log(1.0 / ratio);
}

WeightedPointCloud generate_ifs(const IFSSpec& spec, int depth, std::size_t point_budget) {
    spec.validate();
    if (depth < 0) throw precondition_error("generate_ifs: depth must be nonnegative");
    const std::size_t nmaps = spec.translations.size();
    double count = 1.0;
    for (int d = 0; d < depth; ++d) {
        count *= double(nmaps);
        if (count > double(point_budget))
            throw resource_error("generate_ifs: N^depth exceeds the point budget");
    }
    const std::size_t total = std::size_t(count);

    WeightedPointCloud cloud;
    cloud.dim = 3;
    cloud.points.reserve(total);
    cloud.masses.assign(total, 1.0 / double(total));

    // Depth-first in lexicographic word order; each word maps the origin.
    std::vector<std::size_t> word(std::size_t(depth), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (int d = depth - 1; d >= 0; --d) {
            word[std::size_t(d)] = rem % nmaps;
            rem /= nmaps;
        }
        Vec3 p{0, 0, 0};
        for (int d = depth - 1; d >= 0; --d)
            p = p * spec.ratio + spec.translations[word[std::size_t(d)]];
        cloud.points.push_back(p);
    }
    return cloud;
}

WeightedPointCloud uniform_segment_cloud(std::size_t n, double a, double b) {
    if (n == 0) throw precondition_error("uniform_segment_cloud: empty");
    WeightedPointCloud c;
    c.dim = 1;
    c.points.reserve(n);
    c.masses.assign(n, 1.0 / double(n));
    const double h = (b - a) / double(n);
    for (std::size_t i = 0; i < n; ++i)
        c.points.push_back({a + h * (double(i) + 0.5), 0.0, 0.0});
    return c;
}

FrostmanFit frostman_exponent(const WeightedPointCloud& cloud, const std::vector<double>& radii) {
    if (cloud.size() < 2) {
        FrostmanFit f;
        f.degenerate = true;
        return f;
    }
    if (radii.size() < 2) throw precondition_error("frostman_exponent: need several radii");
    const auto [rmin_it, rmax_it] = std::minmax_element(radii.begin(), radii.end());
    if (!(*rmax_it >= 4.0 * *rmin_it))
        throw precondition_error("frostman_exponent: radii must span >= 2 dyadic octaves");

    std::vector<double> sorted = radii;
    std::sort(sorted.begin(), sorted.end());

    const std::size_t n = cloud.size();
    std::vector<double> maxmass(sorted.size(), 0.0);
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) d2[j] = norm2(cloud.points[i] - cloud.points[j]);
        for (std::size_t k = 0; k < sorted.size(); ++k) {
            const double r2 = sorted[k] * sorted[k];
            double m = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (d2[j] <= r2) m += cloud.masses[j];
            maxmass[k] = std::max(maxmass[k], m);
        }
    }
    const LinearFit fit = fit_loglog_slope(sorted, maxmass);
    FrostmanFit f;
    f.s_hat = fit.slope;
    f.c_hat = std::exp(fit.intercept);
    f.r_min = sorted.front();
    f.r_max = sorted.back();
    return f;
}

double riesz_energy(const WeightedPointCloud& cloud, double s) {
    if (!(s > 0.0)) throw precondition_error("riesz_energy: s must be positive");
    const std::size_t n = cloud.size();
    if (n < 2) return 0.0;
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dist(cloud.points[i], cloud.points[j]);
            if (d == 0.0) throw singular_pair_error(i, j);
            const double term = 2.0 * cloud.masses[i] * cloud.masses[j] * std::pow(d, -s);
            const double t = sum + term;
            comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
    }
    return sum + comp;
}

MassBoundCheck mass_bound_check(const WeightedPointCloud& cloud, const BallRegion& region,
                                double s) {
    MassBoundCheck out;
    const double energy = riesz_energy(cloud, s);
    double lhs = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (dist(cloud.points[i], region.center) <= region.radius) lhs += cloud.masses[i];
    out.lhs = lhs;
    out.rhs = std::sqrt(energy) * std::pow(2.0 * region.radius, s / 2.0);
    out.ok = out.lhs <= out.rhs + 1e-12;
    return out;
}

WeightedPointCloud pushforward(const WeightedPointCloud& cloud, const ProjectionFamily& family,
                               double theta) {
    WeightedPointCloud out;
    out.dim = family.tag() == FamilyTag::line ? 1 : 2;
    out.masses = cloud.masses;
    out.points.reserve(cloud.size());
    for (const Vec3& p : cloud.points) {
        const auto pr = family.project(theta, p);
        if (out.dim == 1)
            out.points.push_back({std::get<double>(pr), 0.0, 0.0});
        else {
            const Vec2 q = std::get<Vec2>(pr);
            out.points.push_back({q.u, q.v, 0.0});
        }
    }
    return out;
}

} // namespace restproj
