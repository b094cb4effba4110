#pragma once

#include <map>
#include <string>
#include <Eigen/Dense>

#include "classent/quadform.hpp"

namespace classent {

/// Cached real traces of words in {Lambda*G, Lambda^T*G} up to length 4,
/// keyed by canonical word (cyclic shifts and reversed-with-swap are folded).
/// The transpose is the elementwise transpose, not the adjoint.
class TraceBasis {
  public:
    TraceBasis(const Eigen::MatrixXcd& big_lambda, const Eigen::MatrixXd& gauss_cov);

    /// word is a string over the alphabet {'w', 't'}, e.g. "wwt".
    double trace(const std::string& word);

  private:
    Eigen::MatrixXcd w_, wt_;
    std::map<std::string, double> cache_;
};

/// Degeneracy-weighted closed trace form of the order-s moment of the
/// quadratic part; valid for s in {0, ..., 4}.
double u_closed(int s, const QuadraticForm& form, const Eigen::MatrixXd& gauss_cov);

/// Brute-force sum over all (2s-1)!! pair partitions; s <= 5.
double u_partition_oracle(int s, const QuadraticForm& form, const Eigen::MatrixXd& gauss_cov);

/// Number of pair partitions of {1..2s} actually enumerated by the oracle.
long partition_count(int s);

/// U(r) = sum_s C(r,s) lambda^{r-s} r^{-s} u(s) for integer r in {1..4};
/// redundantly evaluated through the simplified printed forms, which must
/// agree within 1e-9 for a normalized form.
double capital_u(int r, const QuadraticForm& form, const Eigen::MatrixXd& gauss_cov);

}  // namespace classent
