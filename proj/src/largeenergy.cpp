#include "classent/largeenergy.hpp"

#include <stdexcept>

namespace classent {

double predicted_u(DistributionKind kind, int r, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("predicted_u: x must be in [0,1]");
    const bool marginal =
        (kind == DistributionKind::FieldMarginal || kind == DistributionKind::MomentumMarginal);
    if (marginal) {
        switch (r) {
            case 2: return 1.0 + x * (-1.0 + x * (3.0 / 4.0));
            case 3: return 1.0 + x * (-2.0 + x * (2.0 + x * (-4.0 / 9.0)));
            case 4:
                return 1.0 +
                       x * (-3.0 + x * (33.0 / 8.0 + x * (-37.0 / 16.0 + x * (153.0 / 256.0))));
        }
    } else if (kind == DistributionKind::Wigner) {
        switch (r) {
            case 2: return 1.0 + x * (-2.0 + x * 2.0);
            case 3: return 1.0 + x * (-4.0 + x * (20.0 / 3.0 + x * (-32.0 / 9.0)));
            case 4: return 1.0 + x * (-6.0 + x * (15.0 + x * (-17.0 + x * (15.0 / 2.0))));
        }
    }
    throw std::invalid_argument("predicted_u: no closed form for this (kind, r)");
}

double predicted_u_husimi_r2(double x, double eps_omega) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("predicted_u_husimi_r2: x must be in [0,1]");
    if (eps_omega < 0.0) throw std::invalid_argument("predicted_u_husimi_r2: eps*omega must be >= 0");
    const double den = (1.0 + eps_omega) * (1.0 + eps_omega);
    const double bracket =
        1.0 + (2.0 - (5.0 / 6.0) * eps_omega + 2.0 * eps_omega * eps_omega) / den;
    return 1.0 - x + 0.25 * bracket * x * x;
}

double predicted_small_interval(DistributionKind kind, double /*r*/, double x) {
    const double a1 = (kind == DistributionKind::Wigner) ? 2.0 : 1.0;
    return a1 * x;
}

}  // namespace classent
