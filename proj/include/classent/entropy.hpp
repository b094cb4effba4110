#pragma once

#include <optional>
#include <string>
#include <Eigen/Dense>

#include "classent/covariance.hpp"
#include "classent/lattice.hpp"
#include "classent/quadform.hpp"

namespace classent {

/// State selector: Gaussian vacuum/ground/thermal states and the
/// single-particle excitation of momentum k on top of the ground state.
struct StateSpec {
    enum class Family { Vacuum, Ground, Thermal, Particle };
    Family family = Family::Ground;
    double temperature = 0.0;  // Thermal only
    int momentum = 0;          // Particle only

    static StateSpec vacuum() { return {Family::Vacuum, 0.0, 0}; }
    static StateSpec ground() { return {Family::Ground, 0.0, 0}; }
    static StateSpec thermal(double t) { return {Family::Thermal, t, 0}; }
    static StateSpec particle(int k) { return {Family::Particle, 0.0, k}; }
    std::string label() const;
    bool gaussian() const { return family != Family::Particle; }
};

/// One (state, kind, region, order) evaluation. subtracted is always
/// gaussian_part + delta_s; the Husimi record additionally carries the
/// value with the convolution gain M ln 2 removed.
struct EntropyRecord {
    std::string state;
    DistributionKind kind;
    int m_sites;
    double order;
    double gaussian_part;
    double delta_s;
    double subtracted;
    std::optional<double> wehrl_offset_subtracted;
    int dim;
};

/// Base and smoothed covariance pairs for one state, built once and shared
/// across region scans.
struct StateCovariances {
    CovariancePair base;    // ground/thermal/vacuum pair
    CovariancePair husimi;  // base + vacuum
};

StateCovariances build_state_covariances(const LatticeSpec& spec, const StateSpec& state);

/// 1/2 ln det(2 pi G) + (dim/2) ln(r)/(r-1), with the r -> 1 limit.
double renyi_gaussian(const Eigen::MatrixXd& gauss_cov, double r);

EntropyRecord subtracted_entropy(const LatticeSpec& spec, const StateSpec& state,
                                 DistributionKind kind, const Region& region, double r,
                                 const StateCovariances& cov);
EntropyRecord subtracted_entropy(const LatticeSpec& spec, const StateSpec& state,
                                 DistributionKind kind, const Region& region, double r);

/// S_r[A] + S_r[B] - S_r[global]; extensive terms cancel analytically, so
/// this is assembled from subtracted entropies of the two arcs and the
/// full circle.
double mutual_information(const LatticeSpec& spec, const StateSpec& state, DistributionKind kind,
                          const Region& region, double r, const StateCovariances& cov);
double mutual_information(const LatticeSpec& spec, const StateSpec& state, DistributionKind kind,
                          const Region& region, double r);

/// K_{jj'} = G_{jj'} / sqrt(G_{jj} G_{j'j'}), unit diagonal, entries in [-1,1].
Eigen::MatrixXd correlation_matrix(const Eigen::MatrixXd& cov);

/// Gaussian part of the local distribution for a kind: the A-blocks of the
/// two sectors stacked as a direct sum (single sector for marginals).
Eigen::MatrixXd local_gauss_cov(const StateCovariances& cov, DistributionKind kind,
                                const Region& region);

/// Particle quadratic form for a kind on a region (ground-state backdrop).
QuadraticForm particle_form(const LatticeSpec& spec, int k, DistributionKind kind,
                            const StateCovariances& cov, const Region& region);

}  // namespace classent
