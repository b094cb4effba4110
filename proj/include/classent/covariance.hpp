#pragma once

#include <string>
#include <utility>
#include <Eigen/Dense>

#include "classent/lattice.hpp"

namespace classent {

enum class Sector { FieldF, MomentumG };

/// N x N real symmetric positive-definite Toeplitz matrix in the
/// lattice-weighted convention: entries are eps * gamma_{jj'}, so lattice
/// inverses, traces and determinants become plain matrix algebra
/// (fields carry a compensating sqrt(eps) rescaling).
struct WeightedCovariance {
    Sector sector;
    LatticeSpec spec;
    Eigen::MatrixXd entries;

    WeightedCovariance(Sector s, const LatticeSpec& sp, Eigen::MatrixXd m)
        : sector(s), spec(sp), entries(std::move(m)) {}
};

/// Field/momentum-field pair built from one spec. The phase-space (Wigner or
/// Husimi) covariance is their direct sum and is never materialized globally.
struct CovariancePair {
    WeightedCovariance f;
    WeightedCovariance g;
    std::string state;
};

/// Expands a Toeplitz matrix from its first row.
Eigen::MatrixXd toeplitz_from_first_row(const Eigen::VectorXd& row);

/// Ground-state covariances: G^f_{jj'} = (1/N) sum_k cos(2 pi (j-j') k / N) / (2 w_k),
/// G^g with weight w_k/2. Satisfies 4 G^g = (G^f)^{-1}.
CovariancePair ground_covariance(const LatticeSpec& spec);

/// Thermal covariances: every mode weight picks up 1 + 2<n_k> = coth(w_k / 2T).
CovariancePair thermal_covariance(const LatticeSpec& spec, double temperature);

/// Uncoupled-oscillator vacuum: G^f = (eps/2) I, G^g = 1/(2 eps) I.
CovariancePair vacuum_covariance(const LatticeSpec& spec);

/// Husimi smoothing adds the vacuum on top: G^{Q,f} = G^f + (eps/2) I,
/// G^{Q,g} = G^g + 1/(2 eps) I.
CovariancePair husimi_covariance(const CovariancePair& pair);

/// Momentum-space diagonal entries (L/(2 w_k), L w_k / 2).
std::pair<double, double> momentum_diagonal(const LatticeSpec& spec, int k);

/// 1 + 2/(e^x - 1), evaluated without overflow; tends to 1 for large x.
double bose_weight(double x);

}  // namespace classent
