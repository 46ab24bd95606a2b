#include "restproj/covers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "restproj/errors.hpp"
#include "restproj/fitting.hpp"

namespace restproj {

int BallCover::overlap_bound() const {
    int worst = 0;
    for (const Ball& probe : balls) {
        int hits = 0;
        for (const Ball& b : balls)
            if (dist(probe.center, b.center) <= b.radius) ++hits;
        worst = std::max(worst, hits);
    }
    return worst;
}

void BallCover::validate() const {
    for (const Ball& b : balls)
        if (!(b.radius > 0.0)) throw precondition_error("ball cover: nonpositive radius");
    if (scale_k) {
        const double lo = std::pow(2.0, -*scale_k), hi = 5.0 * lo;
        for (const Ball& b : balls)
            if (b.radius < lo - 1e-12 || b.radius > hi + 1e-12)
                throw precondition_error("ball cover: radius outside dyadic band");
    }
}

BallCover five_r_reduce(const BallCover& cover) {
    if (cover.balls.empty()) throw precondition_error("five_r_reduce: empty input");
    const std::size_t n = cover.balls.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cover.balls[a].radius > cover.balls[b].radius;
    });

    std::vector<bool> removed(n, false);
    BallCover out;
    out.dim = cover.dim;
    for (std::size_t oi = 0; oi < n; ++oi) {
        const std::size_t i = order[oi];
        if (removed[i]) continue;
        const Ball& chosen = cover.balls[i];
        out.balls.push_back({chosen.center, 5.0 * chosen.radius});
        for (std::size_t oj = oi + 1; oj < n; ++oj) {
            const std::size_t j = order[oj];
            if (removed[j]) continue;
            if (dist(chosen.center, cover.balls[j].center) <=
                chosen.radius + cover.balls[j].radius)
                removed[j] = true;
        }
    }
    return out;
}

namespace {

std::size_t count_occupied_cells(const WeightedPointCloud& cloud, int k) {
    const double scale = std::pow(2.0, double(k));
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(cloud.size() * 2);
    for (const Vec3& p : cloud.points) {
        // offset keeps floor() away from negative-zero cell splits near -1
        const std::int64_t cx = std::int64_t(std::floor((p.x + 2.0) * scale));
        const std::int64_t cy = cloud.dim >= 2 ? std::int64_t(std::floor((p.y + 2.0) * scale)) : 0;
        const std::int64_t cz = cloud.dim >= 3 ? std::int64_t(std::floor((p.z + 2.0) * scale)) : 0;
        const std::uint64_t key = (std::uint64_t(cx & 0x1fffff)) |
                                  (std::uint64_t(cy & 0x1fffff) << 21) |
                                  (std::uint64_t(cz & 0x1fffff) << 42);
        cells.insert(key);
    }
    return cells.size();
}

// Every point has a neighbour within r (hashed; the spacing test for the
// scale-window precondition).
bool spacing_finer_than(const WeightedPointCloud& cloud, double r) {
    const std::size_t n = cloud.size();
    const double inv = 1.0 / r;
    auto cell_of = [&](const Vec3& p) {
        return std::array<std::int64_t, 3>{std::int64_t(std::floor((p.x + 2.0) * inv)),
                                           std::int64_t(std::floor((p.y + 2.0) * inv)),
                                           std::int64_t(std::floor((p.z + 2.0) * inv))};
    };
    auto key_of = [](const std::array<std::int64_t, 3>& c) {
        return (std::uint64_t(c[0] & 0x1fffff)) | (std::uint64_t(c[1] & 0x1fffff) << 21) |
               (std::uint64_t(c[2] & 0x1fffff) << 42);
    };
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
    grid.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) grid[key_of(cell_of(cloud.points[i]))].push_back(std::uint32_t(i));

    const double r2 = r * r;
    for (std::size_t i = 0; i < n; ++i) {
        const auto base = cell_of(cloud.points[i]);
        bool found = false;
        for (std::int64_t dx = -1; dx <= 1 && !found; ++dx)
            for (std::int64_t dy = -1; dy <= 1 && !found; ++dy)
                for (std::int64_t dz = -1; dz <= 1 && !found; ++dz) {
                    const auto it = grid.find(key_of({base[0] + dx, base[1] + dy, base[2] + dz}));
                    if (it == grid.end()) continue;
                    for (std::uint32_t j : it->second)
                        if (j != i && norm2(cloud.points[i] - cloud.points[j]) <= r2) {
                            found = true;
                            break;
                        }
                }
        if (!found) return false;
    }
    return true;
}

} // namespace

BoxDimension box_dimension(const WeightedPointCloud& cloud, int k_lo, int k_hi) {
    if (k_hi - k_lo < 4) throw precondition_error("box_dimension: k range must span >= 4 octaves");
    BoxDimension out;
    if (cloud.size() <= 1) {
        out.slope = 0.0;
        out.fit_quality = 1.0;
        out.counts.assign(std::size_t(k_hi - k_lo + 1), cloud.size());
        return out;
    }
    if (!spacing_finer_than(cloud, std::pow(2.0, double(-k_hi))))
        throw scale_window_error("box_dimension: cloud spacing coarser than 2^-k_max");

    std::vector<double> xs, ys;
    for (int k = k_lo; k <= k_hi; ++k) {
        const std::size_t c = count_occupied_cells(cloud, k);
        out.counts.push_back(c);
        xs.push_back(double(k) * std::log(2.0));
        ys.push_back(std::log(double(c)));
    }
    const LinearFit fit = fit_linear(xs, ys);
    out.slope = fit.slope;
    out.fit_quality = fit.r2;
    return out;
}

ScaleReport pigeonhole_scale(const std::map<int, double>& mass_per_scale) {
    double total = 0.0;
    for (const auto& [k, m] : mass_per_scale) {
        if (k < 1) throw precondition_error("pigeonhole_scale: scales must be >= 1");
        total += m;
    }
    if (total < 1.0 - 1e-9)
        throw precondition_error("pigeonhole_scale: total mass below 1");
    const double c0 = 6.0 / (M_PI * M_PI);
    for (const auto& [k, m] : mass_per_scale) {
        const double threshold = c0 / (double(k) * double(k));
        if (m >= threshold) return {k, m, threshold};
    }
    // Unreachable when the precondition holds: sum of thresholds is <= 1.
    throw std::logic_error("pigeonhole_scale: no qualifying scale");
}

} // namespace restproj
