#pragma once
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "restproj/vec3.hpp"

namespace restproj {

/// Config-file or flag validation failure (CLI exit code 2).
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ScenarioConfig {
    std::string scenario;       // curve-check | sublevel | dimsweep | twocones |
                                // threecones | pipeline
    std::string curve{"special"};
    std::string ifs{"sierpinski3"};
    int ifs_depth{9};
    int delta_k_min{6};         // ladder 2^-k, k = delta_k_min .. delta_k_max
    int delta_k_max{14};
    double epsilon{0.06};
    double tau{0.25};
    double c{0.15};
    double sigma{0.7};          // line-family counting exponent (> 1/2)
    double sigma_plane{1.2};    // plane-family counting exponent (> 1)
    double s{1.0};              // Frostman/energy index
    double slab_C{4.0};         // exponent slack in the two-cones slab width
    double R{8.0};              // three-cones absolute constant
    int theta_samples{64};
    int boxdim_k_min{3};
    int boxdim_k_max{8};
    int n_pairs{5};             // threecones random pairs
    std::uint64_t seed{42};
    unsigned threads{1};
    std::string out;            // CSV path ("" = stdout only)
    std::optional<Vec3> p, q;   // explicit shifts for twocones / threecones

    void validate() const;      // throws config_error
    std::vector<double> delta_ladder() const;
};

ScenarioConfig parse_config_file(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text);

struct ResultTable {
    std::string schema; // written as "#schema=..."
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// %.17g formatting; the CSV writer emits byte-identical output for
/// identical tables.
std::string format_double(double v);
void write_csv(std::ostream& os, const ResultTable& table);

/// Runs one scenario, writes the CSV to config.out when set, and returns the
/// table. Module errors propagate as exceptions.
ResultTable run_scenario(const ScenarioConfig& config);

} // namespace restproj
