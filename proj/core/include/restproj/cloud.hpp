#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "restproj/projection.hpp"
#include "restproj/vec3.hpp"

namespace restproj {

/// Discrete measure: points with nonnegative masses summing to 1.
///
/// dim is 1, 2 or 3; unused coordinates are zero. 3D clouds live in B(0,1).
struct WeightedPointCloud {
    int dim{3};
    std::vector<Vec3> points;
    std::vector<double> masses;

    std::size_t size() const { return points.size(); }
    double total_mass() const;

    /// Throws if masses are negative, sums differ from 1 beyond 1e-9, or a 3D
    /// cloud leaves B(0,1).
    void validate() const;
};

/// Plain-text serialization: "N dim" header, then one row per point
/// ("x y z mass", "u v mass" or "u mass").
void write_cloud(std::ostream& os, const WeightedPointCloud& cloud);
WeightedPointCloud read_cloud(std::istream& is);

/// Equal-ratio contractions x -> r x + t_i, all mapping B(0,1) into itself.
struct IFSSpec {
    double ratio{0.5};
    std::vector<Vec3> translations;

    void validate() const;
    /// log N / log(1/r).
    double similarity_dimension() const;
};

/// One point per depth-word (image of the origin under the composed maps),
/// mass N^-depth, lexicographic word order.
WeightedPointCloud generate_ifs(const IFSSpec& spec, int depth,
                                std::size_t point_budget = std::size_t{1} << 21);

/// n midpoints of a uniform partition of the segment [a, b] along the x-axis.
WeightedPointCloud uniform_segment_cloud(std::size_t n, double a = 0.0, double b = 1.0);

struct FrostmanFit {
    double s_hat{0.0};
    double c_hat{0.0};
    bool degenerate{false};
    // radius window the fit was computed on
    double r_min{0.0}, r_max{0.0};
};

/// Least-squares fit of log max_x mu(B(x,r)) against log r over the given
/// radii (>= 2 dyadic octaves).
FrostmanFit frostman_exponent(const WeightedPointCloud& cloud, const std::vector<double>& radii);

/// Off-diagonal Riesz s-energy sum_{i != j} m_i m_j |x_i - x_j|^-s.
/// Duplicate points are a singular_pair_error.
double riesz_energy(const WeightedPointCloud& cloud, double s);

struct BallRegion {
    Vec3 center;
    double radius{0.0};
};

struct MassBoundCheck {
    double lhs{0.0}; // nu(B)
    double rhs{0.0}; // I_s(nu)^(1/2) * d(B)^(s/2)
    bool ok{false};
};

/// Checks nu(B) <= I_s(nu)^(1/2) d(B)^(s/2) for one ball region.
MassBoundCheck mass_bound_check(const WeightedPointCloud& cloud, const BallRegion& region,
                                double s);

/// Image cloud under proj_theta; masses are copied verbatim.
WeightedPointCloud pushforward(const WeightedPointCloud& cloud, const ProjectionFamily& family,
                               double theta);

} // namespace restproj
