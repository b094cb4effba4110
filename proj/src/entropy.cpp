#include "classent/entropy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "classent/region.hpp"
#include "classent/wick.hpp"

namespace classent {

namespace {

bool integer_order(double r) { return std::abs(r - std::round(r)) < 1e-12; }

// Wigner/marginal vacuum rescalings (2/eps for f, 2*eps for g); the Husimi
// subtraction runs against the doubled vacuum, dropping the factor 2.
double sector_gaussian_part(const Eigen::MatrixXd& a_block, Sector sector, double eps,
                            bool husimi) {
    const double scale = (sector == Sector::FieldF) ? (husimi ? 1.0 : 2.0) / eps
                                                    : (husimi ? 1.0 : 2.0) * eps;
    return 0.5 * log_det_spd(scale * a_block);
}

}  // namespace

std::string StateSpec::label() const {
    switch (family) {
        case Family::Vacuum: return "vacuum";
        case Family::Ground: return "ground";
        case Family::Thermal: {
            std::ostringstream os;
            os << "thermal(T=" << temperature << ")";
            return os.str();
        }
        case Family::Particle: {
            std::ostringstream os;
            os << "particle(k=" << momentum << ")";
            return os.str();
        }
    }
    return "?";
}

StateCovariances build_state_covariances(const LatticeSpec& spec, const StateSpec& state) {
    CovariancePair base = [&] {
        switch (state.family) {
            case StateSpec::Family::Vacuum: return vacuum_covariance(spec);
            case StateSpec::Family::Thermal: return thermal_covariance(spec, state.temperature);
            case StateSpec::Family::Ground:
            case StateSpec::Family::Particle: return ground_covariance(spec);
        }
        throw std::logic_error("unknown state family");
    }();
    CovariancePair smoothed = husimi_covariance(base);
    return {std::move(base), std::move(smoothed)};
}

double renyi_gaussian(const Eigen::MatrixXd& gauss_cov, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("renyi_gaussian: order must be positive");
    const int dim = static_cast<int>(gauss_cov.rows());
    const double order_term = (std::abs(r - 1.0) < 1e-12) ? 1.0 : std::log(r) / (r - 1.0);
    return 0.5 * (dim * std::log(2.0 * M_PI) + log_det_spd(gauss_cov)) + 0.5 * dim * order_term;
}

Eigen::MatrixXd local_gauss_cov(const StateCovariances& cov, DistributionKind kind,
                                const Region& region) {
    const int m = region.m_sites;
    const CovariancePair& pair = (kind == DistributionKind::Husimi) ? cov.husimi : cov.base;
    switch (kind) {
        case DistributionKind::FieldMarginal:
            return pair.f.entries.topLeftCorner(m, m);
        case DistributionKind::MomentumMarginal:
            return pair.g.entries.topLeftCorner(m, m);
        case DistributionKind::Wigner:
        case DistributionKind::Husimi: {
            Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * m, 2 * m);
            out.topLeftCorner(m, m) = pair.f.entries.topLeftCorner(m, m);
            out.bottomRightCorner(m, m) = pair.g.entries.topLeftCorner(m, m);
            return out;
        }
    }
    throw std::logic_error("unknown kind");
}

QuadraticForm particle_form(const LatticeSpec& spec, int k, DistributionKind kind,
                            const StateCovariances& cov, const Region& region) {
    const CovariancePair& pair = (kind == DistributionKind::Husimi) ? cov.husimi : cov.base;
    switch (kind) {
        case DistributionKind::FieldMarginal:
            return marginal_particle_form(spec, k, Sector::FieldF, split_blocks(pair.f, region));
        case DistributionKind::MomentumMarginal:
            return marginal_particle_form(spec, k, Sector::MomentumG, split_blocks(pair.g, region));
        case DistributionKind::Wigner:
            return wigner_particle_form(spec, k, split_blocks(pair.f, region),
                                        split_blocks(pair.g, region));
        case DistributionKind::Husimi:
            return husimi_particle_form(spec, k, split_blocks(pair.f, region),
                                        split_blocks(pair.g, region));
    }
    throw std::logic_error("unknown kind");
}

EntropyRecord subtracted_entropy(const LatticeSpec& spec, const StateSpec& state,
                                 DistributionKind kind, const Region& region, double r,
                                 const StateCovariances& cov) {
    const int m = region.m_sites;
    if (m > spec.n_sites) throw std::invalid_argument("subtracted_entropy: region exceeds lattice");
    if (!state.gaussian() && !(integer_order(r) && r >= 2.0 && r <= 4.0))
        throw std::invalid_argument(
            "subtracted_entropy: non-Gaussian states support integer orders 2..4 only");
    if (!(r > 0.0)) throw std::invalid_argument("subtracted_entropy: order must be positive");

    const double eps = spec.spacing;
    const bool husimi = (kind == DistributionKind::Husimi);
    const CovariancePair& pair = husimi ? cov.husimi : cov.base;

    double gaussian_part = 0.0;
    int dim = 0;
    if (kind != DistributionKind::MomentumMarginal) {
        gaussian_part +=
            sector_gaussian_part(pair.f.entries.topLeftCorner(m, m), Sector::FieldF, eps, husimi);
        dim += m;
    }
    if (kind != DistributionKind::FieldMarginal) {
        gaussian_part +=
            sector_gaussian_part(pair.g.entries.topLeftCorner(m, m), Sector::MomentumG, eps, husimi);
        dim += m;
    }

    double delta_s = 0.0;
    if (!state.gaussian()) {
        const QuadraticForm form = particle_form(spec, state.momentum, kind, cov, region);
        const double u = capital_u(static_cast<int>(std::round(r)), form,
                                   local_gauss_cov(cov, kind, region));
        if (!(u > 0.0))
            throw std::runtime_error("subtracted_entropy: non-positive U(r), pipeline aborted");
        delta_s = std::log(u) / (1.0 - r);
    }

    EntropyRecord rec{state.label(), kind, m,      r, gaussian_part, delta_s,
                      gaussian_part + delta_s, std::nullopt, dim};
    if (husimi) rec.wehrl_offset_subtracted = rec.subtracted - m * std::log(2.0);
    return rec;
}

EntropyRecord subtracted_entropy(const LatticeSpec& spec, const StateSpec& state,
                                 DistributionKind kind, const Region& region, double r) {
    return subtracted_entropy(spec, state, kind, region, r, build_state_covariances(spec, state));
}

double mutual_information(const LatticeSpec& spec, const StateSpec& state, DistributionKind kind,
                          const Region& region, double r, const StateCovariances& cov) {
    const int n = spec.n_sites;
    const int m = region.m_sites;
    if (m < 1 || m >= n) throw std::invalid_argument("mutual_information: need 1 <= M < N");
    // The global covariances are circulant, so the complement arc has the
    // same Toeplitz blocks as a leading arc of its size, and the particle
    // form picks up only a global phase; both records reuse the A-pipeline.
    const auto rec_a = subtracted_entropy(spec, state, kind, Region(m), r, cov);
    const auto rec_b = subtracted_entropy(spec, state, kind, Region(n - m), r, cov);
    const auto rec_full = subtracted_entropy(spec, state, kind, Region(n), r, cov);
    return rec_a.subtracted + rec_b.subtracted - rec_full.subtracted;
}

double mutual_information(const LatticeSpec& spec, const StateSpec& state, DistributionKind kind,
                          const Region& region, double r) {
    return mutual_information(spec, state, kind, region, r, build_state_covariances(spec, state));
}

Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& cov) {
    const int n = static_cast<int>(cov.rows());
    Eigen::MatrixXd k(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
    return k;
}

}  // namespace classent
