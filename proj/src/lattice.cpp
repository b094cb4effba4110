#include "classent/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace classent {

LatticeSpec::LatticeSpec(int n, double eps, double m)
    : n_sites(n), spacing(eps), mass(m) {
    if (n < 2) throw std::invalid_argument("LatticeSpec: need at least 2 sites, got " + std::to_string(n));
    if (!(eps > 0.0)) throw std::invalid_argument("LatticeSpec: spacing must be positive");
    if (m < 0.0) throw std::invalid_argument("LatticeSpec: mass must be non-negative");
}

Region::Region(int m) : m_sites(m) {
    if (m < 1) throw std::invalid_argument("Region: need at least 1 site");
}

std::vector<int> momentum_indices(const LatticeSpec& spec) {
    const int n = spec.n_sites;
    std::vector<int> ks;
    ks.reserve(n);
    const int lo = (n % 2 == 1) ? -(n - 1) / 2 : -n / 2 + 1;
    for (int k = lo; k < lo + n; ++k) ks.push_back(k);
    return ks;
}

int zone_edge_index(const LatticeSpec& spec) {
    return (spec.n_sites % 2 == 1) ? (spec.n_sites - 1) / 2 : spec.n_sites / 2;
}

double dispersion(const LatticeSpec& spec, int k) {
    if (spec.mass == 0.0 && k == 0)
        throw std::domain_error("dispersion: exact zero mode at m=0, k=0; use a regulator mass");
    // eps*eta*k/2 = pi*k/N exactly on the periodic lattice
    const double s = std::sin(M_PI * static_cast<double>(k) / spec.n_sites);
    const double kin = 2.0 / spec.spacing * s;
    return std::sqrt(spec.mass * spec.mass + kin * kin);
}

Eigen::VectorXcd plane_wave(const LatticeSpec& spec, int first, int count, int k) {
    Eigen::VectorXcd v(count);
    const double amp = std::sqrt(spec.spacing);
    // eps*eta*k = 2 pi k / N
    const double step = 2.0 * M_PI * static_cast<double>(k) / spec.n_sites;
    for (int i = 0; i < count; ++i) {
        const double phase = -step * (first + i);
        v(i) = std::polar(amp, phase);
    }
    return v;
}

}  // namespace classent
