#pragma once

#include "classent/quadform.hpp"

namespace classent {

/// High-energy limit of U(r) as a polynomial in x = l/L; closed forms exist
/// for the marginals and the Wigner distribution at r = 2, 3, 4.
double predicted_u(DistributionKind kind, int r, double x);

/// Finite-spacing high-energy result for the smoothed distribution at r = 2;
/// reduces to the marginal polynomial for eps*w -> 0 and -> infinity.
double predicted_u_husimi_r2(double x, double eps_omega);

/// Leading small-interval entropy surplus a1 * x with a1 = 2 for the Wigner
/// distribution and 1 otherwise, independent of the order.
double predicted_small_interval(DistributionKind kind, double r, double x);

}  // namespace classent
