#include "classent/covariance.hpp"

#include <cmath>
#include <stdexcept>

namespace classent {

Eigen::MatrixXd toeplitz_from_first_row(const Eigen::VectorXd& row) {
    const int n = static_cast<int>(row.size());
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
        for (int jp = 0; jp < n; ++jp) m(j, jp) = row(std::abs(j - jp));
    return m;
}

double bose_weight(double x) {
    if (x > 700.0) return 1.0;  // 2/(e^x-1) below double underflow range
    return 1.0 + 2.0 / std::expm1(x);
}

namespace {

// First row of the weighted kernel (1/N) sum_k weight(w_k) cos(2 pi d k / N),
// summed in momentum-index order for reproducibility.
template <typename WeightFn>
Eigen::VectorXd kernel_first_row(const LatticeSpec& spec, WeightFn weight) {
    const int n = spec.n_sites;
    const auto ks = momentum_indices(spec);
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n);
    for (int d = 0; d < n; ++d) {
        double acc = 0.0;
        for (int k : ks) acc += weight(k) * std::cos(2.0 * M_PI * static_cast<double>(d) * k / n);
        row(d) = acc / n;
    }
    return row;
}

}  // namespace

CovariancePair ground_covariance(const LatticeSpec& spec) {
    auto f_row = kernel_first_row(spec, [&](int k) { return 0.5 / dispersion(spec, k); });
    auto g_row = kernel_first_row(spec, [&](int k) { return 0.5 * dispersion(spec, k); });
    return {WeightedCovariance(Sector::FieldF, spec, toeplitz_from_first_row(f_row)),
            WeightedCovariance(Sector::MomentumG, spec, toeplitz_from_first_row(g_row)),
            "ground"};
}

CovariancePair thermal_covariance(const LatticeSpec& spec, double temperature) {
    if (!(temperature > 0.0)) throw std::invalid_argument("thermal_covariance: temperature must be positive");
    auto th = [&](int k) { return bose_weight(dispersion(spec, k) / temperature); };
    auto f_row = kernel_first_row(spec, [&](int k) { return 0.5 / dispersion(spec, k) * th(k); });
    auto g_row = kernel_first_row(spec, [&](int k) { return 0.5 * dispersion(spec, k) * th(k); });
    return {WeightedCovariance(Sector::FieldF, spec, toeplitz_from_first_row(f_row)),
            WeightedCovariance(Sector::MomentumG, spec, toeplitz_from_first_row(g_row)),
            "thermal"};
}

CovariancePair vacuum_covariance(const LatticeSpec& spec) {
    const int n = spec.n_sites;
    Eigen::MatrixXd f = 0.5 * spec.spacing * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd g = 0.5 / spec.spacing * Eigen::MatrixXd::Identity(n, n);
    return {WeightedCovariance(Sector::FieldF, spec, std::move(f)),
            WeightedCovariance(Sector::MomentumG, spec, std::move(g)),
            "vacuum"};
}

CovariancePair husimi_covariance(const CovariancePair& pair) {
    const LatticeSpec& spec = pair.f.spec;
    const int n = spec.n_sites;
    Eigen::MatrixXd f = pair.f.entries + 0.5 * spec.spacing * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd g = pair.g.entries + 0.5 / spec.spacing * Eigen::MatrixXd::Identity(n, n);
    return {WeightedCovariance(Sector::FieldF, spec, std::move(f)),
            WeightedCovariance(Sector::MomentumG, spec, std::move(g)),
            pair.state};
}

std::pair<double, double> momentum_diagonal(const LatticeSpec& spec, int k) {
    const double w = dispersion(spec, k);
    const double len = spec.length();
    return {0.5 * len / w, 0.5 * len * w};
}

}  // namespace classent
