#pragma once
#include <cstddef>
#include <vector>

namespace restproj {

struct LinearFit {
    double slope{0.0};
    double intercept{0.0};
    double r2{0.0};
    std::size_t points_used{0};
    std::size_t points_dropped{0};
};

/// Ordinary least squares of y against x.
LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys);

/// OLS on (log x, log y). Entries with y <= 0 are dropped and counted;
/// fewer than 3 usable points is an error. xs must be strictly monotone
/// and positive.
LinearFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace restproj
