#include "classent/region.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace classent {

namespace {

constexpr double kPivotRatioLimit = 1e12;

// Locates the first non-positive pivot of a failed factorization; used only
// on the error path, so the extra O(n^3) pass does not matter.
[[noreturn]] void report_cholesky_failure(const Eigen::MatrixXd& m) {
    Eigen::MatrixXd a = m;
    const int n = static_cast<int>(a.rows());
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0))
            throw std::runtime_error("cholesky: matrix not positive definite, failing pivot at index " +
                                     std::to_string(j));
        const double root = std::sqrt(d);
        a(j, j) = root;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / root;
        }
    }
    throw std::runtime_error("cholesky: factorization failed");
}

void check_pivots(const Eigen::MatrixXd& l) {
    const int n = static_cast<int>(l.rows());
    if (n == 0) return;
    double lo = l(0, 0), hi = l(0, 0);
    for (int i = 1; i < n; ++i) {
        lo = std::min(lo, l(i, i));
        hi = std::max(hi, l(i, i));
    }
    if (!(lo > 0.0) || hi / lo > kPivotRatioLimit)
        throw std::runtime_error("cholesky: pivot ratio " + std::to_string(hi / lo) +
                                 " exceeds conditioning guard");
}

}  // namespace

SpdFactor::SpdFactor(const Eigen::MatrixXd& matrix) : llt_(matrix) {
    if (matrix.rows() == 0) return;
    if (llt_.info() != Eigen::Success) report_cholesky_failure(matrix);
    const auto l = llt_.matrixLLT();
    check_pivots(l);
    for (int i = 0; i < l.rows(); ++i) log_det_ += 2.0 * std::log(l(i, i));
}

Eigen::MatrixXcd SpdFactor::solve(const Eigen::MatrixXcd& rhs) const {
    Eigen::MatrixXcd out(rhs.rows(), rhs.cols());
    out.real() = llt_.solve(Eigen::MatrixXd(rhs.real()));
    out.imag() = llt_.solve(Eigen::MatrixXd(rhs.imag()));
    return out;
}

RegionBlocks split_blocks(const Eigen::MatrixXd& matrix, const Region& region) {
    const int n = static_cast<int>(matrix.rows());
    const int m = region.m_sites;
    if (m < 1 || m > n) throw std::invalid_argument("split_blocks: region size out of range");
    return {matrix.topLeftCorner(m, m), matrix.bottomRightCorner(n - m, n - m),
            matrix.topRightCorner(m, n - m), region};
}

RegionBlocks split_blocks(const WeightedCovariance& cov, const Region& region) {
    return split_blocks(cov.entries, region);
}

Eigen::MatrixXd schur_complement_b(const RegionBlocks& blocks) {
    if (blocks.b_block.rows() == 0) return blocks.b_block;
    SpdFactor a(blocks.a_block);
    return blocks.b_block - blocks.m_block.transpose() * a.solve(blocks.m_block);
}

double log_det_spd(const Eigen::MatrixXd& matrix) {
    return SpdFactor(matrix).log_det();
}

}  // namespace classent
