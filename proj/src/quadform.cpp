#include "classent/quadform.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace classent {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using cd = std::complex<double>;

constexpr cd kI{0.0, 1.0};

struct SectorVectors {
    VectorXcd a;      // plane wave on A
    VectorXcd b;      // plane wave on B
    VectorXcd c;      // G_A^{-1} G_M b
    double b_sb;      // b^dag S b, real
};

SectorVectors sector_vectors(const LatticeSpec& spec, int k, const RegionBlocks& blocks) {
    const int m = blocks.region.m_sites;
    const int nb = static_cast<int>(blocks.b_block.rows());
    SectorVectors v;
    v.a = plane_wave(spec, 0, m, k);
    v.b = plane_wave(spec, m, nb, k);
    SpdFactor fa(blocks.a_block);
    v.c = fa.solve(MatrixXcd(blocks.m_block * v.b));
    if (nb > 0) {
        const MatrixXd s = blocks.b_block - blocks.m_block.transpose() * fa.solve(blocks.m_block);
        v.b_sb = (v.b.adjoint() * s * v.b).value().real();
    } else {
        v.b_sb = 0.0;
    }
    return v;
}

// Marginal-style block: a a^dag + a c^dag + c a^dag + conj(c) c^T.
MatrixXcd marginal_block(const SectorVectors& v) {
    return v.a * v.a.adjoint() + v.a * v.c.adjoint() + v.c * v.a.adjoint() +
           v.c.conjugate() * v.c.transpose();
}

// Smoothed-sector block with the cosine-symmetrized cross term:
// a a^dag + (a c^dag + conj(a) c^T) + conj(c) c^T.
MatrixXcd husimi_sector_block(const SectorVectors& v) {
    return v.a * v.a.adjoint() + v.a * v.c.adjoint() + v.a.conjugate() * v.c.transpose() +
           v.c.conjugate() * v.c.transpose();
}

// Field/momentum coupling block: regression of the field side runs through
// the f-sector, of the momentum side through the g-sector.
MatrixXcd mixed_block(const SectorVectors& f, const SectorVectors& g) {
    return f.a * f.a.adjoint() + f.a * g.c.adjoint() + f.c * f.a.adjoint() +
           f.c * g.c.adjoint();
}

QuadraticForm finalize(double lambda, MatrixXcd raw, DistributionKind kind) {
    const MatrixXcd herm = 0.5 * (raw + raw.adjoint());
    const double defect = (raw - herm).cwiseAbs().maxCoeff();
    return {lambda, herm, kind, defect};
}

struct HusimiPrefactors {
    double f, g, mixed;
};

HusimiPrefactors husimi_prefactors(const LatticeSpec& spec, int k) {
    const double w = dispersion(spec, k);
    const double e = spec.spacing;
    const double len = spec.length();
    const double den = (1.0 + e * w) * (1.0 + e * w);
    return {2.0 / len * w / den, 2.0 / len * e * e * w / den, 4.0 / (len * len) * e * w / den};
}

}  // namespace

const char* kind_name(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::Wigner: return "wigner";
        case DistributionKind::FieldMarginal: return "f";
        case DistributionKind::MomentumMarginal: return "g";
        case DistributionKind::Husimi: return "husimi";
    }
    return "?";
}

double normalization_residual(const QuadraticForm& form, const Eigen::MatrixXd& gauss_cov) {
    const cd tr = (form.big_lambda * gauss_cov).trace();
    return form.lambda + tr.real() - 1.0;
}

QuadraticForm marginal_particle_form(const LatticeSpec& spec, int k, Sector sector,
                                     const RegionBlocks& blocks) {
    const auto diag = momentum_diagonal(spec, k);
    const double gtilde = (sector == Sector::FieldF) ? diag.first : diag.second;
    const auto v = sector_vectors(spec, k, blocks);
    const auto kind = (sector == Sector::FieldF) ? DistributionKind::FieldMarginal
                                                 : DistributionKind::MomentumMarginal;
    return finalize(v.b_sb / gtilde, marginal_block(v) / gtilde, kind);
}

QuadraticForm wigner_particle_form(const LatticeSpec& spec, int k,
                                   const RegionBlocks& blocks_f, const RegionBlocks& blocks_g) {
    if (blocks_f.region.m_sites != blocks_g.region.m_sites)
        throw std::invalid_argument("wigner_particle_form: mismatched sector regions");
    const int m = blocks_f.region.m_sites;
    const auto diag = momentum_diagonal(spec, k);
    const auto vf = sector_vectors(spec, k, blocks_f);
    const auto vg = sector_vectors(spec, k, blocks_g);
    const double lambda_f = vf.b_sb / diag.first;
    const double lambda_g = vg.b_sb / diag.second;

    MatrixXcd raw(2 * m, 2 * m);
    raw.topLeftCorner(m, m) = marginal_block(vf) / diag.first;
    raw.bottomRightCorner(m, m) = marginal_block(vg) / diag.second;
    const MatrixXcd mix = -kI * (2.0 / spec.length()) * mixed_block(vf, vg);
    raw.topRightCorner(m, m) = mix;
    raw.bottomLeftCorner(m, m) = mix.adjoint();
    return finalize(-1.0 + lambda_f + lambda_g, std::move(raw), DistributionKind::Wigner);
}

QuadraticForm husimi_particle_form(const LatticeSpec& spec, int k,
                                   const RegionBlocks& blocks_f, const RegionBlocks& blocks_g) {
    if (blocks_f.region.m_sites != blocks_g.region.m_sites)
        throw std::invalid_argument("husimi_particle_form: mismatched sector regions");
    const int m = blocks_f.region.m_sites;
    const auto pre = husimi_prefactors(spec, k);
    const auto vf = sector_vectors(spec, k, blocks_f);
    const auto vg = sector_vectors(spec, k, blocks_g);

    MatrixXcd raw(2 * m, 2 * m);
    raw.topLeftCorner(m, m) = pre.f * husimi_sector_block(vf);
    raw.bottomRightCorner(m, m) = pre.g * husimi_sector_block(vg);
    const MatrixXcd mix = -kI * 0.5 * spec.length() * pre.mixed * mixed_block(vf, vg);
    raw.topRightCorner(m, m) = mix;
    raw.bottomLeftCorner(m, m) = mix.adjoint();
    return finalize(pre.f * vf.b_sb + pre.g * vg.b_sb, std::move(raw), DistributionKind::Husimi);
}

namespace {

// --- verbatim-sum oracle path ---------------------------------------------
// Works with unweighted kernels gamma = G/eps and lattice inverses
// (gamma_A)^{-1} = G_A^{-1}/eps, keeping every epsilon explicit.

struct LiteralSector {
    MatrixXd gamma_a, gamma_b, gamma_m, inv_a;  // inv_a is the lattice inverse
    int m, nb;
};

LiteralSector literal_sector(const LatticeSpec& spec, const RegionBlocks& blocks) {
    const double e = spec.spacing;
    LiteralSector s;
    s.m = blocks.region.m_sites;
    s.nb = static_cast<int>(blocks.b_block.rows());
    s.gamma_a = blocks.a_block / e;
    s.gamma_b = blocks.b_block / e;
    s.gamma_m = blocks.m_block / e;
    s.inv_a = blocks.a_block.inverse() / e;
    return s;
}

cd phase(const LatticeSpec& spec, int j, int k) {
    return std::polar(1.0, -2.0 * M_PI * static_cast<double>(k) * j / spec.n_sites);
}

double literal_lambda(const LatticeSpec& spec, int k, const LiteralSector& s) {
    const double e = spec.spacing;
    const double e2 = e * e;
    cd acc = 0.0;
    for (int j = 0; j < s.nb; ++j)
        for (int jp = 0; jp < s.nb; ++jp) {
            double inner = s.gamma_b(jp, j);
            for (int j2 = 0; j2 < s.m; ++j2)
                for (int j3 = 0; j3 < s.m; ++j3)
                    inner -= e2 * s.gamma_m(j2, jp) * s.inv_a(j2, j3) * s.gamma_m(j3, j);
            acc += e2 * phase(spec, j - jp, k) * inner;
        }
    return acc.real();
}

// The four marginal terms; mode selects the cross-term variant:
// 0 = plane pair (a c^dag + c a^dag), 1 = cosine-symmetrized.
MatrixXcd literal_marginal_lambda_matrix(const LatticeSpec& spec, int k, const LiteralSector& s,
                                         int mode) {
    const double e = spec.spacing;
    const double e2 = e * e;
    const double e4 = e2 * e2;
    MatrixXcd lam(s.m, s.m);
    for (int j = 0; j < s.m; ++j)
        for (int jp = 0; jp < s.m; ++jp) {
            cd acc = phase(spec, j - jp, k);
            for (int j2 = 0; j2 < s.nb; ++j2)
                for (int j3 = 0; j3 < s.m; ++j3) {
                    const cd ph = (mode == 1)
                                      ? 2.0 * std::cos(2.0 * M_PI * k * double(j - (j2 + s.m)) / spec.n_sites)
                                      : phase(spec, j - (j2 + s.m), k);
                    acc += e2 * ph * s.gamma_m(j3, j2) * s.inv_a(j3, jp);
                }
            if (mode == 0)
                for (int j2 = 0; j2 < s.m; ++j2)
                    for (int j3 = 0; j3 < s.nb; ++j3)
                        acc += e2 * s.inv_a(j, j2) * s.gamma_m(j2, j3) * phase(spec, (j3 + s.m) - jp, k);
            for (int j2 = 0; j2 < s.m; ++j2)
                for (int j3 = 0; j3 < s.nb; ++j3)
                    for (int j4 = 0; j4 < s.nb; ++j4)
                        for (int j5 = 0; j5 < s.m; ++j5)
                            acc += e4 * s.inv_a(j, j2) * s.gamma_m(j2, j3) *
                                   std::conj(phase(spec, j3 - j4, k)) * s.gamma_m(j5, j4) *
                                   s.inv_a(j5, jp);
            lam(j, jp) = acc;
        }
    return lam;
}

// Mixed field/momentum block, same regression pattern as the fast path.
MatrixXcd literal_mixed_lambda_matrix(const LatticeSpec& spec, int k, const LiteralSector& f,
                                      const LiteralSector& g) {
    const double e = spec.spacing;
    const double e2 = e * e;
    const double e4 = e2 * e2;
    MatrixXcd lam(f.m, f.m);
    for (int j = 0; j < f.m; ++j)
        for (int jp = 0; jp < f.m; ++jp) {
            cd acc = phase(spec, j - jp, k);
            for (int j2 = 0; j2 < g.nb; ++j2)
                for (int j3 = 0; j3 < g.m; ++j3)
                    acc += e2 * phase(spec, j - (j2 + g.m), k) * g.gamma_m(j3, j2) * g.inv_a(j3, jp);
            for (int j2 = 0; j2 < f.m; ++j2)
                for (int j3 = 0; j3 < f.nb; ++j3)
                    acc += e2 * f.inv_a(j, j2) * f.gamma_m(j2, j3) * phase(spec, (j3 + f.m) - jp, k);
            for (int j2 = 0; j2 < f.m; ++j2)
                for (int j3 = 0; j3 < f.nb; ++j3)
                    for (int j4 = 0; j4 < g.nb; ++j4)
                        for (int j5 = 0; j5 < g.m; ++j5)
                            acc += e4 * f.inv_a(j, j2) * f.gamma_m(j2, j3) *
                                   phase(spec, j3 - j4, k) * g.gamma_m(j5, j4) * g.inv_a(j5, jp);
            lam(j, jp) = acc;
        }
    return lam;
}

}  // namespace

QuadraticForm literal_sum_form(const LatticeSpec& spec, int k, DistributionKind kind,
                               const RegionBlocks& blocks_f, const RegionBlocks& blocks_g) {
    const double e = spec.spacing;
    const auto diag = momentum_diagonal(spec, k);
    switch (kind) {
        case DistributionKind::FieldMarginal: {
            const auto s = literal_sector(spec, blocks_f);
            const double lam = literal_lambda(spec, k, s) / diag.first;
            MatrixXcd big = e * literal_marginal_lambda_matrix(spec, k, s, 0) / diag.first;
            return finalize(lam, std::move(big), kind);
        }
        case DistributionKind::MomentumMarginal: {
            const auto s = literal_sector(spec, blocks_g);
            const double lam = literal_lambda(spec, k, s) / diag.second;
            MatrixXcd big = e * literal_marginal_lambda_matrix(spec, k, s, 0) / diag.second;
            return finalize(lam, std::move(big), kind);
        }
        case DistributionKind::Wigner: {
            const auto sf = literal_sector(spec, blocks_f);
            const auto sg = literal_sector(spec, blocks_g);
            const int m = sf.m;
            const double lam = -1.0 + literal_lambda(spec, k, sf) / diag.first +
                               literal_lambda(spec, k, sg) / diag.second;
            MatrixXcd raw(2 * m, 2 * m);
            raw.topLeftCorner(m, m) = e * literal_marginal_lambda_matrix(spec, k, sf, 0) / diag.first;
            raw.bottomRightCorner(m, m) =
                e * literal_marginal_lambda_matrix(spec, k, sg, 0) / diag.second;
            const MatrixXcd mix =
                -kI * (2.0 / spec.length()) * e * literal_mixed_lambda_matrix(spec, k, sf, sg);
            raw.topRightCorner(m, m) = mix;
            raw.bottomLeftCorner(m, m) = mix.adjoint();
            return finalize(lam, std::move(raw), kind);
        }
        case DistributionKind::Husimi: {
            const auto sf = literal_sector(spec, blocks_f);
            const auto sg = literal_sector(spec, blocks_g);
            const int m = sf.m;
            const auto pre = husimi_prefactors(spec, k);
            const double lam =
                pre.f * literal_lambda(spec, k, sf) + pre.g * literal_lambda(spec, k, sg);
            MatrixXcd raw(2 * m, 2 * m);
            raw.topLeftCorner(m, m) = pre.f * e * literal_marginal_lambda_matrix(spec, k, sf, 1);
            raw.bottomRightCorner(m, m) = pre.g * e * literal_marginal_lambda_matrix(spec, k, sg, 1);
            const MatrixXcd mix = -kI * 0.5 * spec.length() * pre.mixed * e *
                                  literal_mixed_lambda_matrix(spec, k, sf, sg);
            raw.topRightCorner(m, m) = mix;
            raw.bottomLeftCorner(m, m) = mix.adjoint();
            return finalize(lam, std::move(raw), kind);
        }
    }
    throw std::logic_error("literal_sum_form: unknown kind");
}

}  // namespace classent
