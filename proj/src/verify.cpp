#include "classent/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "classent/covariance.hpp"
#include "classent/entropy.hpp"
#include "classent/lattice.hpp"
#include "classent/oracle.hpp"
#include "classent/quadform.hpp"
#include "classent/region.hpp"
#include "classent/wick.hpp"

namespace classent {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;

CheckResult make_check(const std::string& name, double worst, double tol) {
    return {name, worst <= tol, worst, "tolerance " + std::to_string(tol)};
}

double form_deviation(const QuadraticForm& a, const QuadraticForm& b) {
    double dev = std::abs(a.lambda - b.lambda);
    dev = std::max(dev, (a.big_lambda - b.big_lambda).cwiseAbs().maxCoeff());
    return dev;
}

}  // namespace

std::vector<CheckResult> verify_quadform() {
    std::vector<CheckResult> out;

    double dev_fast_literal = 0.0;
    double dev_norm = 0.0;
    double dev_herm = 0.0;
    for (const auto& [eps, mass] : {std::pair{0.5, 0.7}, std::pair{1.0, 0.05}}) {
        for (int n = 2; n <= 8; ++n) {
            const LatticeSpec spec(n, eps, mass);
            const auto pair = ground_covariance(spec);
            const auto hpair = husimi_covariance(pair);
            for (int m = 1; m <= n; ++m) {
                const Region region(m);
                const auto bf = split_blocks(pair.f, region);
                const auto bg = split_blocks(pair.g, region);
                const auto hbf = split_blocks(hpair.f, region);
                const auto hbg = split_blocks(hpair.g, region);
                for (int k : momentum_indices(spec)) {
                    const QuadraticForm forms[] = {
                        marginal_particle_form(spec, k, Sector::FieldF, bf),
                        marginal_particle_form(spec, k, Sector::MomentumG, bg),
                        wigner_particle_form(spec, k, bf, bg),
                        husimi_particle_form(spec, k, hbf, hbg)};
                    const QuadraticForm literal[] = {
                        literal_sum_form(spec, k, DistributionKind::FieldMarginal, bf, bg),
                        literal_sum_form(spec, k, DistributionKind::MomentumMarginal, bf, bg),
                        literal_sum_form(spec, k, DistributionKind::Wigner, bf, bg),
                        literal_sum_form(spec, k, DistributionKind::Husimi, hbf, hbg)};
                    const RegionBlocks* gauss_f[] = {&bf, &bg, &bf, &hbf};
                    const RegionBlocks* gauss_g[] = {&bg, &bg, &bg, &hbg};
                    for (int q = 0; q < 4; ++q) {
                        dev_fast_literal =
                            std::max(dev_fast_literal, form_deviation(forms[q], literal[q]));
                        const int dim = static_cast<int>(forms[q].big_lambda.rows());
                        MatrixXd gauss = MatrixXd::Zero(dim, dim);
                        if (dim == m) {
                            gauss = gauss_f[q]->a_block;
                        } else {
                            gauss.topLeftCorner(m, m) = gauss_f[q]->a_block;
                            gauss.bottomRightCorner(m, m) = gauss_g[q]->a_block;
                        }
                        dev_norm = std::max(
                            dev_norm, std::abs(normalization_residual(forms[q], gauss)));
                        if (q < 3) dev_herm = std::max(dev_herm, forms[q].herm_defect);
                    }
                }
            }
        }
    }
    out.push_back(make_check("quadform: fast path vs verbatim sums (N<=8, all M, all k)",
                             dev_fast_literal, 1e-10));
    out.push_back(make_check("quadform: normalization lambda + Tr{Lambda G} = 1", dev_norm, 1e-8));
    out.push_back(
        make_check("quadform: Hermiticity before symmetrization (marginal/Wigner)", dev_herm, 1e-12));

    // High-energy scaling of the scalar part.
    {
        const LatticeSpec spec(100, 0.1, 10.0);
        const int k = zone_edge_index(spec);
        const auto pair = ground_covariance(spec);
        const auto hpair = husimi_covariance(pair);
        const Region region(50);
        const auto bf = split_blocks(pair.f, region);
        const auto bg = split_blocks(pair.g, region);
        const double x = 0.5;
        double dev = 0.0;
        dev = std::max(dev, std::abs(marginal_particle_form(spec, k, Sector::FieldF, bf).lambda -
                                     (1.0 - x)));
        dev = std::max(dev, std::abs(marginal_particle_form(spec, k, Sector::MomentumG, bg).lambda -
                                     (1.0 - x)));
        dev = std::max(dev, std::abs(wigner_particle_form(spec, k, bf, bg).lambda - (1.0 - 2 * x)));
        dev = std::max(dev,
                       std::abs(husimi_particle_form(spec, k, split_blocks(hpair.f, region),
                                                     split_blocks(hpair.g, region))
                                    .lambda -
                                (1.0 - x)));
        out.push_back(make_check("quadform: high-energy lambda scalings at l/L = 1/2", dev, 0.01));
    }
    return out;
}

std::vector<CheckResult> verify_wick() {
    std::vector<CheckResult> out;

    out.push_back(make_check("wick: pair-partition counts (15 at s=3, 105 at s=4)",
                             std::abs(partition_count(3) - 15.0) +
                                 std::abs(partition_count(4) - 105.0),
                             0.0));

    std::mt19937 rng(20240811);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double dev = 0.0;
    for (int dim = 1; dim <= 4; ++dim) {
        for (int rep = 0; rep < 3; ++rep) {
            MatrixXcd h(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) h(i, j) = std::complex<double>(gauss(rng), gauss(rng));
            h = 0.5 * (h + h.adjoint()).eval();
            MatrixXd base(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) base(i, j) = gauss(rng);
            const MatrixXd spd =
                base * base.transpose() + dim * MatrixXd::Identity(dim, dim);
            const QuadraticForm form{0.5, h, DistributionKind::FieldMarginal, 0.0};
            for (int s = 1; s <= 4; ++s) {
                const double closed = u_closed(s, form, spd);
                const double oracle = u_partition_oracle(s, form, spd);
                dev = std::max(dev, std::abs(closed - oracle) / std::max(1.0, std::abs(oracle)));
            }
        }
    }
    out.push_back(make_check("wick: closed traces vs partition oracle (dims 1..4, s<=4)", dev, 1e-10));

    // Scalar case: every partition contributes (theta g)^s.
    {
        const double theta = 0.7, g = 1.3;
        MatrixXcd lam(1, 1);
        lam(0, 0) = theta;
        MatrixXd cov(1, 1);
        cov(0, 0) = g;
        const QuadraticForm form{0.0, lam, DistributionKind::FieldMarginal, 0.0};
        double d = 0.0;
        for (int s = 1; s <= 4; ++s)
            d = std::max(d, std::abs(u_partition_oracle(s, form, cov) -
                                     partition_count(s) * std::pow(theta * g, s)));
        out.push_back(make_check("wick: scalar case (2s-1)!! (theta g)^s", d, 1e-12));
    }

    // Trace canonicalization: reversed word with swapped letters.
    {
        const LatticeSpec spec(6, 0.5, 0.7);
        const auto pair = ground_covariance(spec);
        const Region region(3);
        const auto form = wigner_particle_form(spec, 1, split_blocks(pair.f, region),
                                               split_blocks(pair.g, region));
        const MatrixXd gauss = [&] {
            MatrixXd g6 = MatrixXd::Zero(6, 6);
            g6.topLeftCorner(3, 3) = split_blocks(pair.f, region).a_block;
            g6.bottomRightCorner(3, 3) = split_blocks(pair.g, region).a_block;
            return g6;
        }();
        const MatrixXcd w = form.big_lambda * gauss;
        const MatrixXcd wt = form.big_lambda.transpose() * gauss;
        const double d = std::abs((w * w * wt).trace() - (w * wt * wt).trace());
        out.push_back(make_check("wick: Tr{(LG)^2 L^T G} equals reversed-word trace", d, 1e-12));
    }

    // Gaussian state: U(r) = 1 for all orders.
    {
        MatrixXcd zero = MatrixXcd::Zero(3, 3);
        MatrixXd cov = MatrixXd::Identity(3, 3);
        const QuadraticForm form{1.0, zero, DistributionKind::FieldMarginal, 0.0};
        double d = 0.0;
        for (int r = 1; r <= 4; ++r) d = std::max(d, std::abs(capital_u(r, form, cov) - 1.0));
        out.push_back(make_check("wick: Gaussian form gives U(r) = 1", d, 1e-14));
    }
    return out;
}

std::vector<CheckResult> verify_oracle() {
    std::vector<CheckResult> out;

    {
        const QuadratureGrid grid(MatrixXd::Identity(3, 3) * 1.7, 40);
        out.push_back(
            make_check("oracle: grid weights integrate 1 exactly", std::abs(grid.weight_sum() - 1.0),
                       1e-12));
    }

    // Quadrature Renyi integrals against the closed forms.
    double dev_renyi = 0.0;
    for (int n : {2, 3}) {
        const LatticeSpec spec(n, 0.8, 0.9);
        for (const auto& state :
             {StateSpec::ground(), StateSpec::thermal(0.8), StateSpec::particle(1)}) {
            const auto cov = build_state_covariances(spec, state);
            for (int m = 1; m < n; ++m) {
                const Region region(m);
                std::vector<DistributionKind> kinds = {DistributionKind::FieldMarginal,
                                                       DistributionKind::MomentumMarginal};
                if (2 * m <= 4) {
                    kinds.push_back(DistributionKind::Wigner);
                    kinds.push_back(DistributionKind::Husimi);
                }
                for (auto kind : kinds) {
                    const MatrixXd gauss = local_gauss_cov(cov, kind, region);
                    const int dim = static_cast<int>(gauss.rows());
                    for (double r : {2.0, 3.0}) {
                        QuadraticForm form{1.0, MatrixXcd::Zero(dim, dim), kind, 0.0};
                        double delta = 0.0;
                        if (state.family == StateSpec::Family::Particle) {
                            form = particle_form(spec, state.momentum, kind, cov, region);
                            delta = std::log(capital_u(static_cast<int>(r), form, gauss)) / (1.0 - r);
                        }
                        const double s_closed = renyi_gaussian(gauss, r) + delta;
                        const double s_quad = quadrature_renyi(gauss, form, r, 24);
                        dev_renyi = std::max(dev_renyi, std::abs(s_closed - s_quad));
                    }
                }
            }
        }
    }
    out.push_back(make_check(
        "oracle: quadrature Renyi vs closed form (ground/thermal/particle, N<=3, r=2,3)", dev_renyi,
        1e-6));

    // Quadrature marginalization against the fast assemblies.
    double dev_marg = 0.0;
    double dev_norm = 0.0;
    {
        const LatticeSpec spec(3, 0.7, 0.8);
        const auto pair = ground_covariance(spec);
        const auto hpair = husimi_covariance(pair);
        const auto cov = build_state_covariances(spec, StateSpec::particle(1));
        for (int m : {1, 2}) {
            const Region region(m);
            for (auto kind : {DistributionKind::FieldMarginal, DistributionKind::MomentumMarginal,
                              DistributionKind::Wigner, DistributionKind::Husimi}) {
                const auto est = quadrature_marginalize(global_particle_density(spec, 1, kind),
                                                        region, 14);
                const auto form = particle_form(spec, 1, kind, cov, region);
                dev_marg = std::max(dev_marg, std::abs(est.lambda - form.lambda));
                dev_marg = std::max(
                    dev_marg,
                    (est.re_lambda - MatrixXd(form.big_lambda.real())).cwiseAbs().maxCoeff());
                // E[kappa] = 1 is the quadrature form of U(1) = 1
                const MatrixXd gauss = local_gauss_cov(cov, kind, region);
                const MatrixXd re_lam = form.big_lambda.real();
                const double norm = QuadratureGrid(gauss, 14).expect(
                    Eigen::VectorXd::Zero(gauss.rows()), 1.0, [&](const Eigen::VectorXd& nu) {
                        return form.lambda + nu.dot(re_lam * nu);
                    });
                dev_norm = std::max(dev_norm, std::abs(norm - 1.0));
            }
        }
        // Gaussian global marginalizes to lambda = 1, Lambda = 0, moment = G_A.
        GlobalDensity gd{{pair.f.entries}, 1.0, MatrixXcd::Zero(3, 3)};
        const auto est = quadrature_marginalize(gd, Region(1), 14);
        dev_marg = std::max(dev_marg, std::abs(est.lambda - 1.0));
        dev_marg = std::max(dev_marg, est.re_lambda.cwiseAbs().maxCoeff());
        dev_marg = std::max(
            dev_marg, (est.second_moment - pair.f.entries.topLeftCorner(1, 1)).cwiseAbs().maxCoeff());
    }
    out.push_back(
        make_check("oracle: quadrature marginalization vs assemblies (N=3, all kinds)", dev_marg,
                   1e-6));
    out.push_back(make_check("oracle: local distributions integrate to 1", dev_norm, 1e-8));

    // Gaussian identities: reciprocity, Schur determinant split, log-det oracle.
    {
        const LatticeSpec spec(40, 0.3, 0.6);
        const auto pair = ground_covariance(spec);
        const MatrixXd prod = 4.0 * pair.g.entries * pair.f.entries;
        const double dev_recip =
            (prod - MatrixXd::Identity(40, 40)).cwiseAbs().maxCoeff();
        out.push_back(make_check("oracle: ground-state reciprocity 4 G^g = (G^f)^{-1}", dev_recip,
                                 1e-10));

        const Region region(13);
        const auto blocks = split_blocks(pair.f, region);
        const double split_dev =
            std::abs(log_det_spd(pair.f.entries) -
                     (log_det_spd(blocks.a_block) + log_det_spd(schur_complement_b(blocks))));
        out.push_back(make_check("oracle: Schur determinant identity", split_dev, 1e-9));

        Eigen::SelfAdjointEigenSolver<MatrixXd> es(pair.f.entries);
        const double eig_ld = es.eigenvalues().array().log().sum();
        out.push_back(make_check("oracle: log-det vs eigenvalue sum",
                                 std::abs(eig_ld - log_det_spd(pair.f.entries)), 1e-9));
    }
    return out;
}

std::vector<CheckResult> verify_all(bool verbose) {
    std::vector<CheckResult> all;
    for (auto* suite : {&verify_quadform, &verify_wick, &verify_oracle}) {
        const auto results = (*suite)();
        all.insert(all.end(), results.begin(), results.end());
    }
    if (verbose)
        for (const auto& c : all)
            std::printf("[%s] %s (worst %.3e)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                        c.worst);
    return all;
}

}  // namespace classent
