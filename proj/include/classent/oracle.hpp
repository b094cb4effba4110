#pragma once

#include <vector>
#include <Eigen/Dense>

#include "classent/lattice.hpp"
#include "classent/quadform.hpp"

namespace classent {

/// Gauss-Hermite rule against the standard normal weight: integrates
/// polynomials of degree <= 2Q-1 exactly; weights sum to one.
struct HermiteRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

HermiteRule hermite_rule(int order);

/// Tensor-product grid over d <= 6 dimensions in the eigenbasis of a target
/// Gaussian covariance.
class QuadratureGrid {
  public:
    QuadratureGrid(const Eigen::MatrixXd& gauss_cov, int order);

    /// E[f(nu)] with nu ~ N(mean, cov/scale_div).
    template <typename Fn>
    double expect(const Eigen::VectorXd& mean, double scale_div, Fn&& f) const {
        const int d = static_cast<int>(transform_.cols());
        std::vector<int> idx(d, 0);
        const double s = 1.0 / std::sqrt(scale_div);
        double acc = 0.0;
        while (true) {
            double w = 1.0;
            Eigen::VectorXd y(d);
            for (int i = 0; i < d; ++i) {
                y(i) = rule_.nodes(idx[i]);
                w *= rule_.weights(idx[i]);
            }
            acc += w * f(mean + s * (transform_ * y));
            int pos = d - 1;
            while (pos >= 0 && ++idx[pos] == rule_.nodes.size()) idx[pos--] = 0;
            if (pos < 0) break;
        }
        return acc;
    }

    double weight_sum() const;  // product over dimensions; 1 up to roundoff

  private:
    HermiteRule rule_;
    Eigen::MatrixXd transform_;  // U * sqrt(diag(eigenvalues))
};

/// Renyi entropy of Gaussian(gauss_cov) x (lambda + nu^T Lambda nu) by
/// quadrature of E[kappa^r] against the rescaled Gaussian; a doubled-order
/// evaluation guards the affine map.
double quadrature_renyi(const Eigen::MatrixXd& gauss_cov, const QuadraticForm& form, double r,
                        int order = 40);

/// Global Gaussian-times-quadratic density over independent sector blocks;
/// the marginalization oracle integrates out the complement sites directly.
struct GlobalDensity {
    std::vector<Eigen::MatrixXd> sector_cov;  // one or two N x N blocks
    double theta;
    Eigen::MatrixXcd big_theta;  // dimension = sum of sector dims, sectors stacked
};

GlobalDensity global_particle_density(const LatticeSpec& spec, int k, DistributionKind kind);

struct MarginalizeResult {
    double lambda;
    Eigen::MatrixXd re_lambda;      // real part of the local quadratic kernel
    Eigen::MatrixXd second_moment;  // E_O[nu nu^T] over the region
};

MarginalizeResult quadrature_marginalize(const GlobalDensity& global, const Region& region,
                                         int order = 40);

}  // namespace classent
