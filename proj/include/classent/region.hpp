#pragma once

#include <Eigen/Dense>

#include "classent/covariance.hpp"
#include "classent/lattice.hpp"

namespace classent {

/// A/B/off-diagonal block decomposition of a weighted covariance for a
/// contiguous subregion of M sites. a_block and b_block are Toeplitz;
/// m_block is symmetric only for the half split M = N/2.
struct RegionBlocks {
    Eigen::MatrixXd a_block;  // M x M
    Eigen::MatrixXd b_block;  // (N-M) x (N-M)
    Eigen::MatrixXd m_block;  // M x (N-M)
    Region region;
};

/// Cholesky factor with pivot diagnostics. All inversions run through
/// factored solves; explicit inverses are never formed.
class SpdFactor {
  public:
    explicit SpdFactor(const Eigen::MatrixXd& matrix);

    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const { return llt_.solve(rhs); }
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const { return llt_.solve(rhs); }
    Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const;
    double log_det() const { return log_det_; }

  private:
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double log_det_ = 0.0;
};

RegionBlocks split_blocks(const WeightedCovariance& cov, const Region& region);
RegionBlocks split_blocks(const Eigen::MatrixXd& matrix, const Region& region);

/// G_B - G_M^T G_A^{-1} G_M, the covariance of B conditioned on A.
Eigen::MatrixXd schur_complement_b(const RegionBlocks& blocks);

/// Log-determinant via Cholesky, 2 * sum(log diag L). Non-SPD input is
/// reported with the index of the failing pivot; a pivot spread beyond
/// 1e12 fails loudly instead of silently degrading.
double log_det_spd(const Eigen::MatrixXd& matrix);

}  // namespace classent
