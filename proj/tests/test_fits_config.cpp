#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "classent/fits.hpp"
#include "classent/scan.hpp"

using namespace classent;

namespace {

double rss_of(const std::vector<FitPoint>& pts, const std::function<double(double)>& model) {
    double rss = 0.0;
    for (const auto& p : pts) {
        const double r = p.y - model(p.x);
        rss += r * r;
    }
    return rss;
}

}  // namespace

TEST_CASE("log area law recovers exact synthetic parameters") {
    std::vector<FitPoint> pts;
    for (double l : {2.0, 3.0, 5.0, 8.0, 13.0}) pts.push_back({l, 0.25 * std::log(l / 0.1) + 1.0});
    const auto fit = fit_log_area_law(pts, 0.1);
    CHECK(fit.parameters[0] == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(fit.parameters[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.rss < 1e-16);
    CHECK(fit.point_count == 5);
    CHECK_THROWS(fit_log_area_law({{1.0, 0.0}, {1.0, 0.1}, {1.0, 0.2}}, 0.1));
    CHECK_THROWS(fit_log_area_law({{1.0, 0.0}, {2.0, 0.1}}, 0.1));
}

TEST_CASE("normal equations hold at the fitted minimum") {
    std::vector<FitPoint> pts;
    // deterministic pseudo-noise so the fit is not exact
    for (int i = 0; i < 9; ++i) {
        const double l = 2.0 + i;
        pts.push_back({l, 0.3 * std::log(l / 0.2) - 0.4 + 0.01 * std::sin(3.7 * i)});
    }
    const auto fit = fit_log_area_law(pts, 0.2);
    const double h = 1e-6;
    auto rss_at = [&](double a, double b) {
        return rss_of(pts, [&](double l) { return a * std::log(l / 0.2) + b; });
    };
    const double ga =
        (rss_at(fit.parameters[0] + h, fit.parameters[1]) -
         rss_at(fit.parameters[0] - h, fit.parameters[1])) / (2.0 * h);
    const double gb =
        (rss_at(fit.parameters[0], fit.parameters[1] + h) -
         rss_at(fit.parameters[0], fit.parameters[1] - h)) / (2.0 * h);
    CHECK(std::abs(ga) < 1e-9);
    CHECK(std::abs(gb) < 1e-9);
    double rss_check = 0.0;
    for (double r : fit.residuals) rss_check += r * r;
    CHECK(rss_check == doctest::Approx(fit.rss));
}

TEST_CASE("finite-size fit: exact recovery and sine symmetry") {
    const double L = 20.0;
    auto reg = [L](double l) { return std::log(2.0 / M_PI * std::sin(M_PI * l / L)); };
    CHECK(reg(L / 2) == doctest::Approx(std::log(2.0 / M_PI)));
    CHECK(reg(3.0) == doctest::Approx(reg(L - 3.0)));

    std::vector<FitPoint> pts;
    for (double l : {2.0, 5.0, 8.0, 12.0, 17.0}) pts.push_back({l, 0.8 / 4.0 * reg(l) + 0.3});
    const auto fit = fit_finite_size(pts, L);
    CHECK(fit.parameters[0] == doctest::Approx(0.8).epsilon(1e-10));
    CHECK(fit.parameters[1] == doctest::Approx(0.3).epsilon(1e-10));
    CHECK_THROWS(fit_finite_size({{0.0, 1.0}, {1.0, 1.0}, {2.0, 1.0}}, L));
}

TEST_CASE("thermal fit: exact recovery and small-T reduction to the log law") {
    const double T = 0.37, eps = 0.15;
    auto reg = [&](double l) { return std::log(std::sinh(M_PI * T * l) / (M_PI * eps * T)); };
    std::vector<FitPoint> pts;
    for (double l : {1.0, 2.0, 4.0, 7.0, 11.0}) pts.push_back({l, 1.05 / 4.0 * reg(l) - 0.2});
    const auto fit = fit_thermal(pts, T, eps);
    CHECK(fit.parameters[0] == doctest::Approx(1.05).epsilon(1e-9));
    CHECK(fit.parameters[1] == doctest::Approx(-0.2).epsilon(1e-8));

    // T -> 0: the regressor collapses onto ln(l/eps), so a log-law dataset
    // is fitted with the same prefactor
    std::vector<FitPoint> log_pts;
    for (double l : {2.0, 3.0, 5.0, 9.0}) log_pts.push_back({l, 0.25 * std::log(l / eps) + 0.1});
    const auto cold = fit_thermal(log_pts, 1e-9, eps);
    CHECK(cold.parameters[0] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("continuum extrapolation recovers the rational model") {
    std::vector<FitPoint> pts;
    for (double e : {1.0, 0.5, 0.25, 0.2, 0.125, 0.1})
        pts.push_back({e, 0.25 + 0.1 * std::pow(e, 0.5)});
    const auto fit = fit_continuum_extrapolation(pts);
    CHECK(fit.parameters[0] == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(fit.parameters[1] == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(fit.parameters[2] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(fit.parameters[1] > 0.0);  // monotone decreasing data
    CHECK_THROWS(fit_continuum_extrapolation({{1.0, 0.3}, {0.5, 0.28}, {0.25, 0.26}}));
}

TEST_CASE("interior filter drops boundary points") {
    const auto kept = filter_interior({{0.05, 1.0}, {0.3, 2.0}, {0.6, 3.0}, {0.97, 4.0}}, 0.1, 1.0);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].y == 2.0);
    CHECK(kept[1].y == 3.0);
}

TEST_CASE("float formatting is fixed width and locale free") {
    CHECK(format_float(0.5) == "0.5");
    CHECK(format_float(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_float(-2.5e-10) == "-2.5000000000000002e-10");
}

TEST_CASE("config parsing helpers") {
    const auto kinds = parse_kinds("wigner,f,husimi");
    REQUIRE(kinds.size() == 3);
    CHECK(kinds[0] == DistributionKind::Wigner);
    CHECK(kinds[2] == DistributionKind::Husimi);
    CHECK(parse_kinds("all").size() == 4);
    CHECK_THROWS(parse_kinds("nope"));

    const auto orders = parse_orders("1.5,2,3");
    CHECK(orders == std::vector<double>{1.5, 2.0, 3.0});

    const auto regions = parse_regions("2,5..8,12");
    CHECK(regions == std::vector<int>{2, 5, 6, 7, 8, 12});
}

TEST_CASE("run config validation") {
    RunConfig cfg;
    cfg.n_sites = 16;
    cfg.spacing = 0.5;
    cfg.mass = 1.0;
    cfg.regions = {2, 8};
    CHECK_NOTHROW(cfg.validate());

    RunConfig bad = cfg;
    bad.state = StateSpec::particle(99);
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.state = StateSpec::particle(2);
    bad.orders = {1.5};
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.regions = {0};
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.orders = {-1.0};
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.state = StateSpec::thermal(0.0);
    CHECK_THROWS(bad.validate());
}

TEST_CASE("config files are parsed and flags override") {
    const std::string path = "test_config_tmp.cfg";
    {
        std::ofstream out(path);
        out << "# a figure configuration\n";
        out << "sites = 40\n";
        out << "spacing = 0.1\n";
        out << "mass = 1e-6\n";
        out << "state = thermal\n";
        out << "temperature = 0.1\n";
        out << "kinds = wigner,f\n";
        out << "orders = 2\n";
        out << "regions = 2..5\n";
    }
    const auto cfg = config_from_file(path);
    CHECK(cfg.n_sites == 40);
    CHECK(cfg.spacing == doctest::Approx(0.1));
    CHECK(cfg.state.family == StateSpec::Family::Thermal);
    CHECK(cfg.state.temperature == doctest::Approx(0.1));
    CHECK(cfg.kinds.size() == 2);
    CHECK(cfg.regions.size() == 4);
    CHECK_NOTHROW(cfg.validate());
    std::remove(path.c_str());
    CHECK_THROWS(config_from_file("does_not_exist.cfg"));
}
