#pragma once
#include <array>
#include <optional>
#include <vector>

#include "restproj/cloud.hpp"
#include "restproj/covers.hpp"
#include "restproj/curve.hpp"
#include "restproj/projection.hpp"

namespace restproj {

enum class ConeSide { two_sided, plus };
enum class ConeDirections { gamma, bad };

/// Thickened union of (half-)lines over a theta subset: the cones that drive
/// the proof chain. Membership is distance to the sampled directions; the
/// grid correction is bounded by pitch * direction_lipschitz().
class ConeField {
  public:
    ConeField(DirectionCurve curve, std::vector<double> thetas, double thickening,
              ConeDirections dirs, ConeSide side);

    const std::vector<double>& thetas() const { return thetas_; }
    const DirectionCurve& curve() const { return curve_; }
    double thickening() const { return thickening_; }
    ConeSide side() const { return side_; }
    ConeDirections directions_kind() const { return dirs_kind_; }

    /// min over the sampled directions of the line (or ray) distance.
    double min_distance(const Vec3& v) const;
    bool contains(const Vec3& v) const { return min_distance(v) <= thickening_; }

    /// Same cone reflected through the origin (for y - C+ translates).
    ConeField reflected() const;

    /// Empirical Lipschitz constant of theta -> direction on the grid.
    double direction_lipschitz() const { return dir_lip_; }
    double grid_pitch() const { return pitch_; }

    CurveJet jet(std::size_t i) const { return curve_.eval(thetas_[i]); }

  private:
    DirectionCurve curve_;
    std::vector<double> thetas_;
    double thickening_;
    ConeDirections dirs_kind_;
    ConeSide side_;
    std::vector<Vec3> dirs_;
    double dir_lip_{0.0};
    double pitch_{0.0};
    bool reflected_{false};
    friend ConeField make_reflected(const ConeField&);
};

/// Uniform theta grid over an interval.
std::vector<double> uniform_thetas(Interval E, int n);

/// mu(y + field): total mass of cloud points inside the translated cone.
double cone_mass(const WeightedPointCloud& cloud, const ConeField& field, const Vec3& y);

/// Per-theta covers of the projected cloud at scale delta; the tube over a
/// ball B is proj_theta^-1(B).
struct TubeSystem {
    ProjectionFamily family;
    std::vector<double> thetas;
    double theta_weight{0.0}; // length element per grid theta
    double delta{0.0};
    double sigma{0.0};
    std::vector<BallCover> covers; // one per theta
};

/// Builds dyadic-cell covers of each projection; throws when a cover needs
/// more than cap * delta^-sigma balls.
TubeSystem build_tube_system(const WeightedPointCloud& cloud, const ProjectionFamily& family,
                             const std::vector<double>& thetas, double theta_weight, double delta,
                             double sigma, double cap = 4.0);

struct TubeEnergyRow {
    double theta{0.0};
    double pair_mass{0.0};   // (mu x mu){x ~_theta y}
    double sum_sq{0.0};      // sum_j mu(T_j)^2
    double union_mass{0.0};  // mu(union of tubes)
    std::size_t n_tubes{0};
    int max_multiplicity{0}; // max number of tubes through one point
};

struct TubeEnergyResult {
    double energy_theta_first{0.0};
    double energy_pair_first{0.0};
    std::vector<TubeEnergyRow> rows;
    /// theta-measure of {theta : i ~_theta j}, upper-triangular including the
    /// diagonal; filled when requested.
    std::vector<double> pair_theta_length;
    std::size_t n_points{0};

    double pair_length(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return pair_theta_length[i * n_points - i * (i + 1) / 2 + (j - i)];
    }
};

/// The energy sum over the tube relation, evaluated theta-first and
/// pair-first (identical up to roundoff). A projected point missing every
/// ball of its cover is a coverage_error.
TubeEnergyResult tube_energy(const WeightedPointCloud& cloud, const TubeSystem& system,
                             bool compute_pair_lengths = false);

struct HeavyTupleResult {
    std::optional<std::array<std::size_t, 3>> tuple; // k entries used
    double tuple_mass{0.0};
    /// Exact atom-set value of A = integral of mu(intersection of translated
    /// cones) over d mu^k.
    double holder_aggregate{0.0};
    /// Jensen lower bound (integral of mu(y - field) d mu)^k.
    double holder_lower_bound{0.0};
};

/// Searches support atoms for k points, pairwise >= sep apart, whose
/// translated cones share at least thresh mass. Exhaustive up to `budget`
/// tuples, then seeded random sampling.
HeavyTupleResult heavy_tuple_search(const WeightedPointCloud& cloud, const ConeField& field,
                                    int k, double sep, double thresh,
                                    std::size_t budget = 2'000'000,
                                    std::uint64_t seed = 0x5eed);

struct RestrictedSublevel {
    double length{0.0};       // theta-measure of the filtered sublevel set
    double min_cone_dist{0.0}; // distance of y - x to the sampled cone
};

/// theta-measure of {theta in E : |(x-y).gamma| <= delta, |(x-y).gamma'| >
/// c_filter delta^tau}; requires y - x outside the field.
RestrictedSublevel restricted_sublevel(const Vec3& x, const Vec3& y, const ConeField& field,
                                       double delta, double tau, double c_filter = 0.5);

struct SublevelProbe {
    Vec3 xi;                    // unit direction
    std::vector<double> thetas; // grid thetas with clearance above the level
    double weight{0.0};         // grid pitch
};

/// Builds the configuration that makes the restricted sublevel bound sharp
/// at clearance `level`: xi sits at angle alpha = asin(2 level) from the bad
/// direction b_theta0 towards gamma', so xi.gamma has a simple zero at
/// theta0 with slope ~level. The grid keeps a protected window around
/// theta0 and drops every other theta whose direction comes within
/// 1.3 * level of xi, so the probe stays admissible at thickening `level`.
SublevelProbe make_sublevel_probe(const DirectionCurve& curve, double theta0, double level,
                                  int grid_n);

struct GoodSetMasses {
    double g{0.0};       // mu{y : mu(y + C(delta)) >= delta^tau}
    double g_plus{0.0};  // threshold delta^tau / 2 on the one-sided cone
    double g_minus{0.0}; // same for y - C+
};

/// Good-set masses over the cloud's own atoms.
GoodSetMasses good_set_masses(const WeightedPointCloud& cloud, const DirectionCurve& curve,
                              const std::vector<double>& thetas, double delta, double tau);

} // namespace restproj
