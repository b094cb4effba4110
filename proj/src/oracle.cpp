#include "classent/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "classent/covariance.hpp"
#include "classent/region.hpp"

namespace classent {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cd = std::complex<double>;

constexpr cd kI{0.0, 1.0};

MatrixXd sqrt_transform(const MatrixXd& cov) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(cov);
    if (es.info() != Eigen::Success) throw std::runtime_error("quadrature: eigensolver failed");
    VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * vals.cwiseSqrt().asDiagonal();
}

}  // namespace

HermiteRule hermite_rule(int order) {
    if (order < 1) throw std::invalid_argument("hermite_rule: order must be positive");
    MatrixXd jacobi = MatrixXd::Zero(order, order);
    for (int i = 1; i < order; ++i) {
        const double b = std::sqrt(static_cast<double>(i));
        jacobi(i, i - 1) = b;
        jacobi(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(jacobi);
    HermiteRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights = es.eigenvectors().row(0).transpose().array().square();
    return rule;
}

QuadratureGrid::QuadratureGrid(const MatrixXd& gauss_cov, int order)
    : rule_(hermite_rule(order)), transform_(sqrt_transform(gauss_cov)) {
    if (gauss_cov.rows() > 6) throw std::invalid_argument("QuadratureGrid: dimension above 6");
}

double QuadratureGrid::weight_sum() const {
    const double per_dim = rule_.weights.sum();
    return std::pow(per_dim, static_cast<double>(transform_.cols()));
}

double quadrature_renyi(const MatrixXd& gauss_cov, const QuadraticForm& form, double r,
                        int order) {
    if (!(r > 0.0)) throw std::invalid_argument("quadrature_renyi: order must be positive");
    const int d = static_cast<int>(gauss_cov.rows());
    const MatrixXd re_lambda = form.big_lambda.real();
    auto kappa_pow = [&](const VectorXd& nu) {
        const double kappa = form.lambda + nu.dot(re_lambda * nu);
        return std::pow(kappa, r);
    };
    const VectorXd zero = VectorXd::Zero(d);
    const double e1 = QuadratureGrid(gauss_cov, order).expect(zero, r, kappa_pow);
    const double e2 = QuadratureGrid(gauss_cov, order + 6).expect(zero, r, kappa_pow);
    if (std::abs(e1 - e2) > 1e-7 * (1.0 + std::abs(e1)))
        throw std::runtime_error("quadrature_renyi: no convergence under order doubling");
    const double log_r_term = (std::abs(r - 1.0) < 1e-12) ? 1.0 : std::log(r) / (r - 1.0);
    return 0.5 * (d * std::log(2.0 * M_PI) + log_det_spd(gauss_cov)) + 0.5 * d * log_r_term +
           std::log(e2) / (1.0 - r);
}

GlobalDensity global_particle_density(const LatticeSpec& spec, int k, DistributionKind kind) {
    const int n = spec.n_sites;
    const auto pair = ground_covariance(spec);
    const auto diag = momentum_diagonal(spec, k);
    const VectorXcd v = plane_wave(spec, 0, n, k);
    const MatrixXcd vv = v * v.adjoint();

    GlobalDensity g;
    switch (kind) {
        case DistributionKind::FieldMarginal:
            g.sector_cov = {pair.f.entries};
            g.theta = 0.0;
            g.big_theta = vv / diag.first;
            return g;
        case DistributionKind::MomentumMarginal:
            g.sector_cov = {pair.g.entries};
            g.theta = 0.0;
            g.big_theta = vv / diag.second;
            return g;
        case DistributionKind::Wigner: {
            g.sector_cov = {pair.f.entries, pair.g.entries};
            g.theta = -1.0;
            g.big_theta = MatrixXcd::Zero(2 * n, 2 * n);
            g.big_theta.topLeftCorner(n, n) = vv / diag.first;
            g.big_theta.bottomRightCorner(n, n) = vv / diag.second;
            g.big_theta.topRightCorner(n, n) = -kI * (2.0 / spec.length()) * vv;
            g.big_theta.bottomLeftCorner(n, n) = kI * (2.0 / spec.length()) * vv;
            return g;
        }
        case DistributionKind::Husimi: {
            const auto hpair = husimi_covariance(pair);
            const double w = dispersion(spec, k);
            const double e = spec.spacing;
            const double den = (1.0 + e * w) * (1.0 + e * w);
            const double len = spec.length();
            g.sector_cov = {hpair.f.entries, hpair.g.entries};
            g.theta = 0.0;
            g.big_theta = MatrixXcd::Zero(2 * n, 2 * n);
            g.big_theta.topLeftCorner(n, n) = (2.0 / len * w / den) * vv;
            g.big_theta.bottomRightCorner(n, n) = (2.0 / len * e * e * w / den) * vv;
            const MatrixXcd mix = -kI * 0.5 * len * (4.0 / (len * len) * e * w / den) * vv;
            g.big_theta.topRightCorner(n, n) = mix;
            g.big_theta.bottomLeftCorner(n, n) = mix.adjoint();
            return g;
        }
    }
    throw std::logic_error("global_particle_density: unknown kind");
}

MarginalizeResult quadrature_marginalize(const GlobalDensity& global, const Region& region,
                                         int order) {
    const int n = static_cast<int>(global.sector_cov.front().rows());
    const int m = region.m_sites;
    if (m >= n) throw std::invalid_argument("quadrature_marginalize: need M < N");
    const int sectors = static_cast<int>(global.sector_cov.size());
    const int da = sectors * m;
    const int db = sectors * (n - m);

    // Textbook Gaussian conditioning per sector.
    std::vector<MatrixXd> omega(sectors);
    MatrixXd cov_b = MatrixXd::Zero(db, db);
    for (int s = 0; s < sectors; ++s) {
        const auto blocks = split_blocks(global.sector_cov[s], region);
        SpdFactor fa(blocks.a_block);
        omega[s] = blocks.m_block.transpose() * fa.solve(MatrixXd(MatrixXd::Identity(m, m)));
        cov_b.block(s * (n - m), s * (n - m), n - m, n - m) = schur_complement_b(blocks);
    }

    const MatrixXd re_theta = global.big_theta.real();
    auto kappa = [&](const VectorXd& full) { return global.theta + full.dot(re_theta * full); };
    // Stacks per-sector A and B slices back into the global basis.
    auto assemble = [&](const VectorXd& xa, const VectorXd& xb) {
        VectorXd full(sectors * n);
        for (int s = 0; s < sectors; ++s) {
            full.segment(s * n, m) = xa.segment(s * m, m);
            full.segment(s * n + m, n - m) = xb.segment(s * (n - m), n - m);
        }
        return full;
    };
    QuadratureGrid grid_b(cov_b, order);
    auto t_of = [&](const VectorXd& xa) {
        VectorXd mean_b(db);
        for (int s = 0; s < sectors; ++s)
            mean_b.segment(s * (n - m), n - m) = omega[s] * xa.segment(s * m, m);
        return grid_b.expect(mean_b, 1.0,
                             [&](const VectorXd& xb) { return kappa(assemble(xa, xb)); });
    };

    MarginalizeResult res;
    res.lambda = t_of(VectorXd::Zero(da));
    res.re_lambda = MatrixXd::Zero(da, da);
    const double h = 1.0;
    std::vector<double> t_plus(da);
    for (int i = 0; i < da; ++i) {
        VectorXd e = VectorXd::Zero(da);
        e(i) = h;
        t_plus[i] = t_of(e);
        const double t_minus = t_of(-e);
        res.re_lambda(i, i) = (t_plus[i] + t_minus - 2.0 * res.lambda) / (2.0 * h * h);
    }
    for (int i = 0; i < da; ++i)
        for (int j = i + 1; j < da; ++j) {
            VectorXd e = VectorXd::Zero(da);
            e(i) = h;
            e(j) = h;
            const double tij = t_of(e);
            const double val = (tij - t_plus[i] - t_plus[j] + res.lambda) / (2.0 * h * h);
            res.re_lambda(i, j) = val;
            res.re_lambda(j, i) = val;
        }

    // Second moment over the full circle; the integrand is a quartic
    // polynomial, so a low tensor order is already exact.
    MatrixXd cov_full = MatrixXd::Zero(sectors * n, sectors * n);
    for (int s = 0; s < sectors; ++s) cov_full.block(s * n, s * n, n, n) = global.sector_cov[s];
    QuadratureGrid grid_full(cov_full, std::min(order, 8));
    res.second_moment = MatrixXd::Zero(da, da);
    for (int i = 0; i < da; ++i)
        for (int j = i; j < da; ++j) {
            const int gi = (i / m) * n + (i % m);
            const int gj = (j / m) * n + (j % m);
            const double mij =
                grid_full.expect(VectorXd::Zero(sectors * n), 1.0, [&](const VectorXd& nu) {
                    return kappa(nu) * nu(gi) * nu(gj);
                });
            res.second_moment(i, j) = mij;
            res.second_moment(j, i) = mij;
        }
    return res;
}

}  // namespace classent
