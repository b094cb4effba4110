#pragma once

#include <string>
#include <vector>

namespace classent {

struct FitPoint {
    double x;  // subregion length l (or spacing eps for the extrapolation)
    double y;
};

struct FitResult {
    std::string model;
    std::vector<std::string> parameter_names;
    std::vector<double> parameters;
    double rss;
    std::vector<double> residuals;
    int point_count;
};

/// y = a ln(l/eps) + b, exact normal-equation solution.
FitResult fit_log_area_law(const std::vector<FitPoint>& points, double eps);

/// y = a/4 * ln[L/(pi l) sin(pi l/L)] + b; drops points within one
/// spacing-free margin of the boundaries 0 and L.
FitResult fit_finite_size(const std::vector<FitPoint>& points, double total_length);

/// y = c/4 * ln[sinh(pi T l)/(pi eps T)] + b.
FitResult fit_thermal(const std::vector<FitPoint>& points, double temperature, double eps);

/// y = c1 + c2 * x^{c3}; c3 scanned over [0.1, 3] in steps of 1e-3 with a
/// linear solve per candidate, smallest c3 wins ties.
FitResult fit_continuum_extrapolation(const std::vector<FitPoint>& points);

/// Keeps points with eps < l < L - eps; area-law fits use interior points only.
std::vector<FitPoint> filter_interior(const std::vector<FitPoint>& points, double eps,
                                      double total_length);

}  // namespace classent
