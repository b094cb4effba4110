#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "classent/covariance.hpp"
#include "classent/lattice.hpp"
#include "classent/region.hpp"

using namespace classent;

TEST_CASE("momentum indices cover odd and even lattices") {
    CHECK(momentum_indices(LatticeSpec(3, 1.0, 1.0)) == std::vector<int>{-1, 0, 1});
    CHECK(momentum_indices(LatticeSpec(4, 1.0, 1.0)) == std::vector<int>{-1, 0, 1, 2});
    CHECK(momentum_indices(LatticeSpec(2, 1.0, 1.0)) == std::vector<int>{0, 1});
    for (int n : {2, 5, 6, 11})
        CHECK(momentum_indices(LatticeSpec(n, 0.3, 0.0)).size() == static_cast<size_t>(n));
}

TEST_CASE("lattice spec validation and derived scales") {
    CHECK_THROWS(LatticeSpec(1, 1.0, 1.0));
    CHECK_THROWS(LatticeSpec(4, 0.0, 1.0));
    CHECK_THROWS(LatticeSpec(4, 1.0, -0.5));
    const LatticeSpec spec(10, 0.25, 0.0);
    CHECK(spec.length() == doctest::Approx(2.5));
    CHECK(spec.momentum_spacing() == doctest::Approx(2.0 * M_PI / 2.5));
}

TEST_CASE("dispersion relation values and properties") {
    CHECK(dispersion(LatticeSpec(4, 1.0, 1.0), 0) == doctest::Approx(1.0));
    CHECK(dispersion(LatticeSpec(4, 1.0, 0.0), 2) == doctest::Approx(2.0));
    CHECK(dispersion(LatticeSpec(4, 1.0, 1.0), 1) == doctest::Approx(std::sqrt(3.0)));
    CHECK_THROWS(dispersion(LatticeSpec(4, 1.0, 0.0), 0));

    const LatticeSpec spec(7, 0.4, 0.2);
    double prev = dispersion(spec, 0);
    for (int k = 1; k <= 3; ++k) {
        CHECK(dispersion(spec, k) == doctest::Approx(dispersion(spec, -k)));
        CHECK(dispersion(spec, k) > prev);
        prev = dispersion(spec, k);
        CHECK(dispersion(spec, k) <=
              std::sqrt(spec.mass * spec.mass + 4.0 / (spec.spacing * spec.spacing)) + 1e-12);
    }
}

TEST_CASE("plane waves carry the rescaled phases") {
    const auto flat = plane_wave(LatticeSpec(8, 0.25, 1.0), 2, 3, 0);
    for (int i = 0; i < 3; ++i) CHECK(flat(i) == std::complex<double>(0.5, 0.0));

    const auto alt = plane_wave(LatticeSpec(4, 1.0, 1.0), 0, 2, 2);
    CHECK(alt(0).real() == doctest::Approx(1.0));
    CHECK(alt(1).real() == doctest::Approx(-1.0));
    CHECK(std::abs(alt(1).imag()) < 1e-14);

    const auto quarter = plane_wave(LatticeSpec(4, 1.0, 1.0), 0, 4, 1);
    CHECK(quarter(1).imag() == doctest::Approx(-1.0));
    CHECK(quarter(2).real() == doctest::Approx(-1.0));
    CHECK(quarter(3).imag() == doctest::Approx(1.0));

    const LatticeSpec spec(6, 0.7, 0.1);
    const auto plus = plane_wave(spec, 1, 4, 2);
    const auto minus = plane_wave(spec, 1, 4, -2);
    CHECK((plus.conjugate() - minus).cwiseAbs().maxCoeff() < 1e-14);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(plus(i)) == doctest::Approx(std::sqrt(0.7)));
}

TEST_CASE("ground covariance reproduces the two-mode values") {
    const auto pair = ground_covariance(LatticeSpec(2, 1.0, 1.0));
    CHECK(pair.f.entries(0, 0) == doctest::Approx(0.25 * (1.0 + 1.0 / std::sqrt(5.0))));
    CHECK(pair.g.entries(0, 0) == doctest::Approx(0.25 * (1.0 + std::sqrt(5.0))));
}

TEST_CASE("ground covariance satisfies reciprocity and SPD Toeplitz structure") {
    const LatticeSpec spec(30, 0.45, 0.3);
    const auto pair = ground_covariance(spec);
    const Eigen::MatrixXd prod = 4.0 * pair.g.entries * pair.f.entries;
    CHECK((prod - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-10);
    // symmetric and Toeplitz exactly by construction
    CHECK((pair.f.entries - pair.f.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int d = 0; d < 29; ++d)
        CHECK(pair.f.entries(0, d) == pair.f.entries(1, d + 1));
    CHECK_NOTHROW(log_det_spd(pair.f.entries));
    CHECK_NOTHROW(log_det_spd(pair.g.entries));
}

TEST_CASE("thermal covariance matches the coth values and limits") {
    const LatticeSpec spec(2, 1.0, 1.0);
    const auto cold = thermal_covariance(spec, 1e-8);
    const auto ground = ground_covariance(spec);
    CHECK((cold.f.entries - ground.f.entries).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((cold.g.entries - ground.g.entries).cwiseAbs().maxCoeff() < 1e-12);

    const auto warm = thermal_covariance(spec, 1.0);
    const double expected =
        0.25 * (1.0 / std::tanh(0.5) + 1.0 / std::tanh(0.5 * std::sqrt(5.0)) / std::sqrt(5.0));
    CHECK(warm.f.entries(0, 0) == doctest::Approx(expected).epsilon(1e-12));

    const LatticeSpec big(20, 0.5, 0.4);
    const auto g0 = ground_covariance(big);
    double prev_diag = g0.f.entries(0, 0);
    for (double t : {0.2, 0.5, 2.0}) {
        const auto gt = thermal_covariance(big, t);
        CHECK(gt.f.entries(0, 0) >= prev_diag - 1e-15);
        prev_diag = gt.f.entries(0, 0);
    }
    CHECK_THROWS(thermal_covariance(big, 0.0));
}

TEST_CASE("bose weight is overflow safe") {
    CHECK(bose_weight(1e5) == 1.0);
    CHECK(bose_weight(800.0) == 1.0);
    CHECK(bose_weight(0.01) == doctest::Approx(1.0 / std::tanh(0.005)).epsilon(1e-12));
}

TEST_CASE("vacuum covariance is the diagonal minimal-uncertainty pair") {
    const auto unit = vacuum_covariance(LatticeSpec(5, 1.0, 0.0));
    CHECK((unit.f.entries - 0.5 * Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((unit.g.entries - 0.5 * Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);

    const auto fine = vacuum_covariance(LatticeSpec(5, 0.1, 0.0));
    CHECK(fine.f.entries(0, 0) == doctest::Approx(0.05));
    CHECK(fine.g.entries(0, 0) == doctest::Approx(5.0));
    CHECK(fine.f.entries(0, 0) * fine.g.entries(0, 0) == doctest::Approx(0.25));
}

TEST_CASE("husimi smoothing adds the vacuum") {
    const LatticeSpec spec(4, 0.5, 0.0);
    const auto vac = vacuum_covariance(spec);
    const auto smoothed = husimi_covariance(vac);
    CHECK((smoothed.f.entries - 2.0 * vac.f.entries).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((smoothed.g.entries - 2.0 * vac.g.entries).cwiseAbs().maxCoeff() < 1e-15);

    const LatticeSpec two(2, 1.0, 1.0);
    const auto hg = husimi_covariance(ground_covariance(two));
    CHECK(hg.f.entries(0, 0) == doctest::Approx(0.25 * (1.0 + 1.0 / std::sqrt(5.0)) + 0.5));
    const auto ground = ground_covariance(two);
    CHECK(hg.f.entries(0, 0) > ground.f.entries(0, 0));
    CHECK(hg.g.entries(0, 0) > ground.g.entries(0, 0));
}

TEST_CASE("momentum-space diagonal entries") {
    const LatticeSpec spec(4, 1.0, 1.0);
    const auto [gf, gg] = momentum_diagonal(spec, 1);
    CHECK(gf == doctest::Approx(2.0 / std::sqrt(3.0)));
    CHECK(gg == doctest::Approx(2.0 * std::sqrt(3.0)));
    CHECK(gf * gg == doctest::Approx(spec.length() * spec.length() / 4.0));
    const auto [zf, zg] = momentum_diagonal(spec, 0);
    CHECK(zf == doctest::Approx(2.0));
    CHECK(zg == doctest::Approx(2.0));
}
