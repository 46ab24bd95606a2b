#include "restproj/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "restproj/errors.hpp"

namespace restproj {

ConeField::ConeField(DirectionCurve curve, std::vector<double> thetas, double thickening,
                     ConeDirections dirs, ConeSide side)
    : curve_(std::move(curve)), thetas_(std::move(thetas)), thickening_(thickening),
      dirs_kind_(dirs), side_(side) {
    if (!(thickening_ > 0.0)) throw precondition_error("cone field: thickening must be positive");
    if (thetas_.empty()) throw precondition_error("cone field: empty theta set");
    dirs_.reserve(thetas_.size());
    for (double th : thetas_) {
        const CurveJet j = curve_.eval(th);
        dirs_.push_back(dirs_kind_ == ConeDirections::gamma ? unit(j.g) : unit(cross(j.g, j.dg)));
    }
    if (thetas_.size() >= 2) {
        // pitch is the underlying grid spacing; punctured grids keep the
        // spacing of their surviving neighbours
        double min_gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < thetas_.size(); ++i) {
            const double dt = std::fabs(thetas_[i + 1] - thetas_[i]);
            if (dt > 0.0) {
                min_gap = std::min(min_gap, dt);
                dir_lip_ = std::max(dir_lip_, dist(dirs_[i + 1], dirs_[i]) / dt);
            }
        }
        pitch_ = std::isfinite(min_gap) ? min_gap : 0.0;
    }
}

double ConeField::min_distance(const Vec3& v) const {
    double best = std::numeric_limits<double>::infinity();
    const Vec3 w = reflected_ ? -v : v;
    for (const Vec3& d : dirs_) {
        const double dd = side_ == ConeSide::plus ? dist_to_ray(w, d) : dist_to_line(w, d);
        if (dd < best) best = dd;
    }
    return best;
}

ConeField ConeField::reflected() const {
    ConeField f = *this;
    f.reflected_ = !f.reflected_;
    return f;
}

std::vector<double> uniform_thetas(Interval E, int n) {
    if (n < 1) throw precondition_error("uniform_thetas: n >= 1");
    std::vector<double> out;
    out.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) out.push_back(E.lo + E.length() * (double(i) + 0.5) / double(n));
    return out;
}

double cone_mass(const WeightedPointCloud& cloud, const ConeField& field, const Vec3& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        if (field.contains(cloud.points[i] - y)) m += cloud.masses[i];
    return m;
}

TubeSystem build_tube_system(const WeightedPointCloud& cloud, const ProjectionFamily& family,
                             const std::vector<double>& thetas, double theta_weight, double delta,
                             double sigma, double cap) {
    if (!(delta > 0.0)) throw precondition_error("tube system: delta must be positive");
    TubeSystem sys{family, thetas, theta_weight, delta, sigma, {}};
    const int dim = family.tag() == FamilyTag::line ? 1 : 2;
    const double budget = cap * std::pow(delta, -sigma);

    for (double th : thetas) {
        std::unordered_map<std::uint64_t, Vec3> cells;
        for (const Vec3& p : cloud.points) {
            const auto pr = family.project(th, p);
            double u = 0.0, v = 0.0;
            if (dim == 1)
                u = std::get<double>(pr);
            else {
                u = std::get<Vec2>(pr).u;
                v = std::get<Vec2>(pr).v;
            }
            const std::int64_t cu = std::int64_t(std::floor((u + 4.0) / (2.0 * delta)));
            const std::int64_t cv = std::int64_t(std::floor((v + 4.0) / (2.0 * delta)));
            const std::uint64_t key = std::uint64_t(cu & 0xffffffff) |
                                      (std::uint64_t(cv & 0xffffffff) << 32);
            if (!cells.count(key))
                cells[key] = Vec3{(double(cu) + 0.5) * 2.0 * delta - 4.0,
                                  dim == 1 ? 0.0 : (double(cv) + 0.5) * 2.0 * delta - 4.0, 0.0};
        }
        if (double(cells.size()) > budget)
            throw resource_error("tube system: cover exceeds cap * delta^-sigma balls");
        BallCover cover;
        cover.dim = dim;
        cover.balls.reserve(cells.size());
        std::vector<std::pair<std::uint64_t, Vec3>> ordered(cells.begin(), cells.end());
        std::sort(ordered.begin(), ordered.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        const double radius = dim == 1 ? delta : delta * std::sqrt(2.0);
        for (const auto& [key, center] : ordered) cover.balls.push_back({center, radius});
        sys.covers.push_back(std::move(cover));
    }
    return sys;
}

TubeEnergyResult tube_energy(const WeightedPointCloud& cloud, const TubeSystem& system,
                             bool compute_pair_lengths) {
    const std::size_t n = cloud.size();
    TubeEnergyResult res;
    res.n_points = n;
    if (compute_pair_lengths) res.pair_theta_length.assign(n * (n + 1) / 2, 0.0);

    std::vector<std::vector<std::uint32_t>> members; // per ball
    std::vector<char> related(n * n);

    for (std::size_t ti = 0; ti < system.thetas.size(); ++ti) {
        const double th = system.thetas[ti];
        const BallCover& cover = system.covers[ti];
        members.assign(cover.balls.size(), {});
        std::vector<int> mult(n, 0);

        for (std::size_t i = 0; i < n; ++i) {
            const auto pr = system.family.project(th, cloud.points[i]);
            Vec3 q{0, 0, 0};
            if (cover.dim == 1)
                q.x = std::get<double>(pr);
            else {
                q.x = std::get<Vec2>(pr).u;
                q.y = std::get<Vec2>(pr).v;
            }
            bool hit = false;
            for (std::size_t b = 0; b < cover.balls.size(); ++b) {
                if (dist(q, cover.balls[b].center) <= cover.balls[b].radius + 1e-12) {
                    members[b].push_back(std::uint32_t(i));
                    ++mult[i];
                    hit = true;
                }
            }
            if (!hit)
                throw coverage_error("tube_energy: projected point " + std::to_string(i) +
                                     " uncovered at theta " + std::to_string(th));
        }

        std::fill(related.begin(), related.end(), 0);
        TubeEnergyRow row;
        row.theta = th;
        row.n_tubes = cover.balls.size();
        double union_mass = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mult[i] > 0) union_mass += cloud.masses[i];
        row.union_mass = union_mass;
        row.max_multiplicity = *std::max_element(mult.begin(), mult.end());

        for (const auto& S : members) {
            double tube_mass = 0.0;
            for (std::uint32_t i : S) tube_mass += cloud.masses[i];
            row.sum_sq += tube_mass * tube_mass;
            for (std::uint32_t i : S)
                for (std::uint32_t j : S) related[std::size_t(i) * n + j] = 1;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (related[i * n + j]) row.pair_mass += cloud.masses[i] * cloud.masses[j];

        if (compute_pair_lengths) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    if (related[i * n + j])
                        res.pair_theta_length[i * n - i * (i + 1) / 2 + (j - i)] +=
                            system.theta_weight;
        }
        res.energy_theta_first += system.theta_weight * row.pair_mass;
        res.rows.push_back(row);
    }

    if (compute_pair_lengths) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double len = res.pair_length(i, j);
                const double m = cloud.masses[i] * cloud.masses[j];
                res.energy_pair_first += (i == j ? 1.0 : 2.0) * m * len;
            }
    } else {
        res.energy_pair_first = res.energy_theta_first;
    }
    return res;
}

HeavyTupleResult heavy_tuple_search(const WeightedPointCloud& cloud, const ConeField& field,
                                    int k, double sep, double thresh, std::size_t budget,
                                    std::uint64_t seed) {
    if (k != 2 && k != 3) throw precondition_error("heavy_tuple_search: k must be 2 or 3");
    if (k == 2 && field.side() != ConeSide::plus)
        throw precondition_error("heavy_tuple_search: pair search expects the one-sided cone");
    if (!(sep > 0.0 && sep < 1.0) || !(thresh > 0.0 && thresh < 1.0))
        throw precondition_error("heavy_tuple_search: sep and thresh must lie in (0,1)");

    const std::size_t n = cloud.size();
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> M(n * words, 0); // M[i] bitset over z: z in x_i + field
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t z = 0; z < n; ++z)
            if (field.contains(cloud.points[z] - cloud.points[i]))
                M[i * words + z / 64] |= std::uint64_t(1) << (z % 64);

    // S_z = mu(z - field) over atoms; exact Hoelder aggregate A = sum m_z S_z^k
    HeavyTupleResult res;
    double mean = 0.0;
    std::vector<double> S(n, 0.0);
    for (std::size_t z = 0; z < n; ++z) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (M[i * words + z / 64] >> (z % 64) & 1) s += cloud.masses[i];
        S[z] = s;
        res.holder_aggregate += cloud.masses[z] * std::pow(s, double(k));
        mean += cloud.masses[z] * s;
    }
    res.holder_lower_bound = std::pow(mean, double(k));

    auto tuple_mass = [&](std::size_t i, std::size_t j, std::size_t l) {
        double m = 0.0;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t bits = M[i * words + w] & M[j * words + w];
            if (k == 3) bits &= M[l * words + w];
            while (bits) {
                const int b = std::countr_zero(bits);
                m += cloud.masses[w * 64 + std::size_t(b)];
                bits &= bits - 1;
            }
        }
        return m;
    };
    auto far = [&](std::size_t i, std::size_t j) {
        return dist(cloud.points[i], cloud.points[j]) >= sep;
    };

    std::size_t examined = 0;
    if (k == 2) {
        for (std::size_t i = 0; i < n && examined < budget; ++i)
            for (std::size_t j = i + 1; j < n && examined < budget; ++j) {
                if (!far(i, j)) continue;
                ++examined;
                const double m = tuple_mass(i, j, 0);
                if (m >= thresh) {
                    res.tuple = {i, j, j};
                    res.tuple_mass = m;
                    return res;
                }
            }
    } else {
        for (std::size_t i = 0; i < n && examined < budget; ++i)
            for (std::size_t j = i + 1; j < n && examined < budget; ++j) {
                if (!far(i, j)) continue;
                for (std::size_t l = j + 1; l < n && examined < budget; ++l) {
                    if (!far(i, l) || !far(j, l)) continue;
                    ++examined;
                    const double m = tuple_mass(i, j, l);
                    if (m >= thresh) {
                        res.tuple = {i, j, l};
                        res.tuple_mass = m;
                        return res;
                    }
                }
            }
    }
    if (examined >= budget) {
        std::mt19937_64 rng(seed);
        for (std::size_t t = 0; t < budget / 4; ++t) {
            const std::size_t i = rng() % n, j = rng() % n, l = k == 3 ? rng() % n : j;
            if (i == j || (k == 3 && (i == l || j == l))) continue;
            if (!far(i, j) || (k == 3 && (!far(i, l) || !far(j, l)))) continue;
            const double m = tuple_mass(i, j, l);
            if (m >= thresh) {
                res.tuple = {std::min(i, j), std::max(i, j), l};
                res.tuple_mass = m;
                return res;
            }
        }
    }
    return res;
}

RestrictedSublevel restricted_sublevel(const Vec3& x, const Vec3& y, const ConeField& field,
                                       double delta, double tau, double c_filter) {
    const Vec3 v = y - x;
    RestrictedSublevel out;
    out.min_cone_dist = field.min_distance(v);
    if (out.min_cone_dist <= field.thickening())
        throw branch_error("restricted_sublevel: y - x lies inside the thickened cone");
    const double filter = c_filter * std::pow(delta, tau);
    const double w = field.grid_pitch();
    double len = 0.0;
    for (std::size_t i = 0; i < field.thetas().size(); ++i) {
        const CurveJet j = field.jet(i);
        if (std::fabs(dot(v, j.g)) <= delta && std::fabs(dot(v, j.dg)) > filter) len += w;
    }
    out.length = len;
    return out;
}

SublevelProbe make_sublevel_probe(const DirectionCurve& curve, double theta0, double level,
                                  int grid_n) {
    if (!(level > 0.0 && level < 0.49))
        throw precondition_error("sublevel probe: level must lie in (0, 0.49)");
    if (grid_n < 16) throw precondition_error("sublevel probe: grid too coarse");
    const CurveJet j0 = curve.eval(theta0);
    const Vec3 bhat = unit(cross(j0.g, j0.dg));
    const Vec3 ghat = unit(j0.dg);
    const double alpha = std::asin(std::min(2.0 * level, 0.98));
    SublevelProbe probe;
    probe.xi = unit(bhat * std::cos(alpha) + ghat * std::sin(alpha));

    const Interval J = curve.domain();
    probe.weight = J.length() / double(grid_n);
    const double period = J.length();
    for (int i = 0; i < grid_n; ++i) {
        const double th = J.lo + period * (double(i) + 0.5) / double(grid_n);
        double off = std::fabs(th - theta0);
        off = std::min(off, period - off); // curve domains are one full turn
        if (off <= 0.3 * alpha) {
            probe.thetas.push_back(th);
            continue;
        }
        const CurveJet j = curve.eval(th);
        const Vec3 b = unit(cross(j.g, j.dg));
        if (dist_to_line(probe.xi, b) > 1.3 * level) probe.thetas.push_back(th);
    }
    return probe;
}

GoodSetMasses good_set_masses(const WeightedPointCloud& cloud, const DirectionCurve& curve,
                              const std::vector<double>& thetas, double delta, double tau) {
    const ConeField two(curve, thetas, delta, ConeDirections::gamma, ConeSide::two_sided);
    const ConeField plus(curve, thetas, delta, ConeDirections::gamma, ConeSide::plus);
    const ConeField minus = plus.reflected();
    const double t_full = std::pow(delta, tau);
    const double t_half = 0.5 * t_full;

    GoodSetMasses out;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& y = cloud.points[i];
        if (cone_mass(cloud, two, y) >= t_full) out.g += cloud.masses[i];
        if (cone_mass(cloud, plus, y) >= t_half) out.g_plus += cloud.masses[i];
        if (cone_mass(cloud, minus, y) >= t_half) out.g_minus += cloud.masses[i];
    }
    return out;
}

} // namespace restproj
