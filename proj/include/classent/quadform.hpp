#pragma once

#include <Eigen/Dense>

#include "classent/covariance.hpp"
#include "classent/lattice.hpp"
#include "classent/region.hpp"

namespace classent {

enum class DistributionKind { Wigner, FieldMarginal, MomentumMarginal, Husimi };

const char* kind_name(DistributionKind kind);

/// Non-Gaussian payload of a local distribution: Gaussian times
/// (lambda + nu^T Lambda nu), stored in the weighted convention.
/// big_lambda is Hermitized after assembly; herm_defect records the
/// largest |raw - raw^dagger| entry seen before symmetrization.
struct QuadraticForm {
    double lambda;
    Eigen::MatrixXcd big_lambda;  // M x M (marginals) or 2M x 2M (phase space)
    DistributionKind kind;
    double herm_defect;
};

/// lambda + Tr{Lambda G_A} - 1; vanishes for a normalized distribution.
double normalization_residual(const QuadraticForm& form, const Eigen::MatrixXd& gauss_cov);

/// Local single-particle form of the field (f) or momentum-field (g)
/// marginal: lambda = b^dag S b / gtilde, Lambda assembled from the
/// rescaled plane waves a (on A), b (on B) and c = G_A^{-1} G_M b.
QuadraticForm marginal_particle_form(const LatticeSpec& spec, int k, Sector sector,
                                     const RegionBlocks& blocks);

/// 2M x 2M phase-space form with marginal diagonal blocks and the mixed
/// field/momentum coupling block; lambda = -1 + lambda_f + lambda_g.
QuadraticForm wigner_particle_form(const LatticeSpec& spec, int k,
                                   const RegionBlocks& blocks_f, const RegionBlocks& blocks_g);

/// Same assembly against the smoothed covariance with prefactors
/// (2/L) w/(1+ew)^2, (2/L) e^2 w/(1+ew)^2 and (4/L^2) e w/(1+ew)^2;
/// lambda has no -1 offset.
QuadraticForm husimi_particle_form(const LatticeSpec& spec, int k,
                                   const RegionBlocks& blocks_f, const RegionBlocks& blocks_g);

/// Verbatim multi-index sums for the three assemblies above. O(M^2 (N-M)^2)
/// and worse; test oracle only.
QuadraticForm literal_sum_form(const LatticeSpec& spec, int k, DistributionKind kind,
                               const RegionBlocks& blocks_f, const RegionBlocks& blocks_g);

}  // namespace classent
