#include "restproj/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace restproj {

LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_linear: size mismatch");
    const std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("fit_linear: need at least 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += xs[i]; sy += ys[i]; }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_linear: degenerate abscissae");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    f.points_used = n;
    return f;
}

LinearFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0.0) throw std::invalid_argument("fit_loglog_slope: xs must be positive");
        if (i > 0 && !((xs[i] > xs[i - 1]) || (xs[i] < xs[i - 1])))
            throw std::invalid_argument("fit_loglog_slope: xs must be strictly monotone");
        if (i > 1) {
            const bool inc = xs[1] > xs[0];
            if (inc != (xs[i] > xs[i - 1]))
                throw std::invalid_argument("fit_loglog_slope: xs must be strictly monotone");
        }
    }
    std::vector<double> lx, ly;
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        } else {
            ++dropped;
        }
    }
    if (lx.size() < 3)
        throw std::invalid_argument("fit_loglog_slope: fewer than 3 usable points after dropping " +
                                    std::to_string(dropped) + " nonpositive entries");
    LinearFit f = fit_linear(lx, ly);
    f.points_dropped = dropped;
    return f;
}

} // namespace restproj
