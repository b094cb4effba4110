#pragma once

#include <complex>
#include <vector>
#include <Eigen/Dense>

namespace classent {

/// Discretization of a periodic 1+1d scalar field: N sites with spacing
/// eps on a circle of circumference L = N*eps, mass m as infrared scale.
/// Total length and momentum spacing are always derived, never stored.
struct LatticeSpec {
    int n_sites;     // N >= 2
    double spacing;  // eps > 0
    double mass;     // m >= 0

    LatticeSpec(int n, double eps, double m);

    double length() const { return n_sites * spacing; }
    double momentum_spacing() const { return 2.0 * M_PI / length(); }
};

/// Contiguous subregion A = sites {0, ..., M-1}; complement B = {M, ..., N-1}.
struct Region {
    int m_sites;  // 1 <= M <= N, checked against the spec at use sites

    explicit Region(int m);
    double length(const LatticeSpec& spec) const { return m_sites * spec.spacing; }
};

/// Integer momentum labels: {-(N-1)/2, ..., (N-1)/2} for odd N,
/// {-N/2+1, ..., N/2} for even N. Physical momentum is eta*k.
std::vector<int> momentum_indices(const LatticeSpec& spec);

/// Largest momentum label (N/2 for even N), where the dispersion saturates.
int zone_edge_index(const LatticeSpec& spec);

/// omega_k = sqrt(m^2 + (4/eps^2) sin^2(pi k / N)). The exact zero mode
/// (m = 0, k = 0) is rejected; use a small regulator mass instead.
double dispersion(const LatticeSpec& spec, int k);

/// Rescaled plane wave sqrt(eps) * exp(-i eps j eta k) over a contiguous
/// site range [first, first+count). Each component has modulus sqrt(eps).
Eigen::VectorXcd plane_wave(const LatticeSpec& spec, int first, int count, int k);

}  // namespace classent
