#include "classent/fits.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace classent {

namespace {

// Least squares for y = p0 * regressor(x) + p1.
FitResult linear_fit(const std::vector<FitPoint>& points, const std::string& model,
                     const std::vector<std::string>& names,
                     const std::function<double(double)>& regressor) {
    const int n = static_cast<int>(points.size());
    if (n < 3) throw std::invalid_argument(model + ": need at least 3 points");
    double sxx = 0.0, sx = 0.0, sxy = 0.0, sy = 0.0;
    for (const auto& p : points) {
        const double t = regressor(p.x);
        sxx += t * t;
        sx += t;
        sxy += t * p.y;
        sy += p.y;
    }
    const double det = sxx * n - sx * sx;
    if (std::abs(det) < 1e-12 * (std::abs(sxx * n) + 1.0))
        throw std::invalid_argument(model + ": rank-deficient regressor (all x equal?)");
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sxx * sy - sx * sxy) / det;

    FitResult res{model, names, {slope, intercept}, 0.0, {}, n};
    res.residuals.reserve(n);
    for (const auto& p : points) {
        const double r = p.y - (slope * regressor(p.x) + intercept);
        res.residuals.push_back(r);
        res.rss += r * r;
    }
    return res;
}

}  // namespace

std::vector<FitPoint> filter_interior(const std::vector<FitPoint>& points, double eps,
                                      double total_length) {
    std::vector<FitPoint> out;
    for (const auto& p : points)
        if (p.x > eps && p.x < total_length - eps) out.push_back(p);
    return out;
}

FitResult fit_log_area_law(const std::vector<FitPoint>& points, double eps) {
    return linear_fit(points, "log_area_law", {"a", "b"},
                      [eps](double l) { return std::log(l / eps); });
}

// Model y = (a/4) * ln[(2/pi) sin(pi l/L)] + b: the chord-length logarithm
// normalized to ln(2/pi) at the half split, symmetric under l <-> L-l like
// the mutual information it fits.
FitResult fit_finite_size(const std::vector<FitPoint>& points, double total_length) {
    for (const auto& p : points)
        if (!(p.x > 0.0 && p.x < total_length))
            throw std::invalid_argument("fit_finite_size: need 0 < l < L");
    auto reg = [total_length](double l) {
        return std::log(2.0 / M_PI * std::sin(M_PI * l / total_length));
    };
    FitResult res = linear_fit(points, "finite_size", {"a", "b"}, reg);
    res.parameters[0] *= 4.0;
    return res;
}

// Model y = (c/4) * ln[sinh(pi T l)/(pi eps T)] + b, same normalization.
FitResult fit_thermal(const std::vector<FitPoint>& points, double temperature, double eps) {
    if (!(temperature > 0.0)) throw std::invalid_argument("fit_thermal: need T > 0");
    auto reg = [temperature, eps](double l) {
        // log(sinh(x)) evaluated as x + log1p(-exp(-2x)) - log 2 to survive large x
        const double x = M_PI * temperature * l;
        const double log_sinh = x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
        return log_sinh - std::log(M_PI * eps * temperature);
    };
    FitResult res = linear_fit(points, "thermal", {"c", "b"}, reg);
    res.parameters[0] *= 4.0;
    return res;
}

FitResult fit_continuum_extrapolation(const std::vector<FitPoint>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw std::invalid_argument("fit_continuum_extrapolation: need at least 4 points");
    for (const auto& p : points)
        if (!(p.x > 0.0)) throw std::invalid_argument("fit_continuum_extrapolation: need eps > 0");

    double best_rss = std::numeric_limits<double>::infinity();
    double best_c1 = 0.0, best_c2 = 0.0, best_c3 = 0.0;
    for (int step = 0; step <= 2900; ++step) {
        const double c3 = 0.1 + 1e-3 * step;
        double sxx = 0.0, sx = 0.0, sxy = 0.0, sy = 0.0;
        for (const auto& p : points) {
            const double t = std::pow(p.x, c3);
            sxx += t * t;
            sx += t;
            sxy += t * p.y;
            sy += p.y;
        }
        const double det = sxx * n - sx * sx;
        if (std::abs(det) < 1e-14) continue;
        const double c2 = (n * sxy - sx * sy) / det;
        const double c1 = (sxx * sy - sx * sxy) / det;
        double rss = 0.0;
        for (const auto& p : points) {
            const double r = p.y - (c1 + c2 * std::pow(p.x, c3));
            rss += r * r;
        }
        if (rss < best_rss) {  // strict: smallest c3 wins ties
            best_rss = rss;
            best_c1 = c1;
            best_c2 = c2;
            best_c3 = c3;
        }
    }
    FitResult res{"continuum_extrapolation", {"c1", "c2", "c3"}, {best_c1, best_c2, best_c3},
                  best_rss, {}, n};
    for (const auto& p : points)
        res.residuals.push_back(p.y - (best_c1 + best_c2 * std::pow(p.x, best_c3)));
    return res;
}

}  // namespace classent
