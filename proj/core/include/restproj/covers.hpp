#pragma once
#include <map>
#include <optional>
#include <vector>

#include "restproj/cloud.hpp"
#include "restproj/vec3.hpp"

namespace restproj {

struct Ball {
    Vec3 center;
    double radius{0.0};
};

/// Finite ball family in dimension 1, 2 or 3.
struct BallCover {
    int dim{3};
    std::vector<Ball> balls;
    std::optional<int> scale_k; // when dyadic: radii in [2^-k, 5 * 2^-k]

    bool contains(const Vec3& p, double slack = 0.0) const {
        for (const Ball& b : balls)
            if (dist(p, b.center) <= b.radius + slack) return true;
        return false;
    }

    /// Max number of balls any single point of the ball centers hits.
    int overlap_bound() const;

    void validate() const;
};

/// Greedy Vitali reduction: picks a disjoint subfamily by decreasing radius
/// (ties by insertion index) and returns its 5x dilates. The result covers
/// the union of the input.
BallCover five_r_reduce(const BallCover& cover);

struct BoxDimension {
    double slope{0.0};
    double fit_quality{0.0}; // r^2 of the log-log fit
    std::vector<std::size_t> counts;
};

/// Box-counting slope of log N(2^-k) against k log 2 over k in
/// [k_lo, k_hi]. Requires >= 4 octaves and cloud spacing finer than 2^-k_hi.
BoxDimension box_dimension(const WeightedPointCloud& cloud, int k_lo, int k_hi);

struct ScaleReport {
    int k{0};
    double mass{0.0};
    double threshold{0.0};
};

/// Smallest k with m_k >= c0 k^-2, c0 = 6/pi^2. Total mass must be >= 1-1e-9.
ScaleReport pigeonhole_scale(const std::map<int, double>& mass_per_scale);

} // namespace restproj
