// Acceptance suite: one pass/fail line per criterion, exit code equals the
// number of failures. argv[1] is the CLI binary (needed for the determinism
// criterion); omitting it skips only that criterion's executable runs.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "classent/covariance.hpp"
#include "classent/entropy.hpp"
#include "classent/fits.hpp"
#include "classent/largeenergy.hpp"
#include "classent/lattice.hpp"
#include "classent/region.hpp"
#include "classent/scan.hpp"
#include "classent/verify.hpp"
#include "classent/wick.hpp"

using namespace classent;

namespace {

int g_failures = 0;
int g_threads = 4;

void report(int index, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %d: %s (%s, %.1f s)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run(int index, const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = fn();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(index, name, pass, detail, secs);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

void acc_parallel_for(int n, const std::function<void(int)>& fn) {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < g_threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

// ---- criterion 1: oracle chain ------------------------------------------

std::pair<bool, std::string> criterion_oracle_chain() {
    const auto results = verify_all(false);
    int fails = 0;
    double worst = 0.0;
    for (const auto& c : results) {
        if (!c.pass) ++fails;
        worst = std::max(worst, c.worst);
    }
    return {fails == 0, std::to_string(results.size()) + " checks, worst signal " + fmt(worst)};
}

// ---- criterion 2: Gaussian identity suite --------------------------------

std::pair<bool, std::string> criterion_gaussian_identities() {
    double worst = 0.0;
    for (int n : {50, 200}) {
        const LatticeSpec spec(n, 0.3, 0.7);
        for (const auto& state : {StateSpec::ground(), StateSpec::thermal(0.5)}) {
            const auto cov = build_state_covariances(spec, state);
            std::vector<double> devs(n, 0.0);
            acc_parallel_for(n - 9, [&](int i) {
                const int m = 5 + i;
                const Region region(m);
                double dev = 0.0;
                const auto w =
                    subtracted_entropy(spec, state, DistributionKind::Wigner, region, 2.0, cov);
                const double purity =
                    0.5 * (log_det_spd(2.0 * cov.base.f.entries.topLeftCorner(m, m)) +
                           log_det_spd(2.0 * cov.base.g.entries.topLeftCorner(m, m)));
                dev = std::max(dev, std::abs(w.subtracted - purity) / std::abs(purity));
                double lo = 1e300, hi = -1e300;
                for (double r : {1.5, 2.0, 3.0, 4.0}) {
                    const auto rec =
                        subtracted_entropy(spec, state, DistributionKind::Wigner, region, r, cov);
                    lo = std::min(lo, rec.subtracted);
                    hi = std::max(hi, rec.subtracted);
                }
                dev = std::max(dev, (hi - lo) / std::abs(purity));
                const auto f = subtracted_entropy(spec, state, DistributionKind::FieldMarginal,
                                                  region, 2.0, cov);
                const auto g = subtracted_entropy(spec, state, DistributionKind::MomentumMarginal,
                                                  region, 2.0, cov);
                dev = std::max(dev, std::abs(w.subtracted - f.subtracted - g.subtracted) /
                                        std::abs(purity));
                devs[m] = dev;
            });
            for (double d : devs) worst = std::max(worst, d);
        }
    }
    return {worst < 1e-10, "worst relative deviation " + fmt(worst)};
}

// ---- criterion 3: ground-state area law ----------------------------------

std::pair<bool, std::string> criterion_ground_area_law() {
    const LatticeSpec spec(1000, 0.1, 1e-6);
    const auto state = StateSpec::ground();
    const auto cov = build_state_covariances(spec, state);
    std::vector<int> ms;
    for (int m = 20; m <= 100; m += 10) ms.push_back(m);

    std::map<DistributionKind, std::vector<FitPoint>> pts;
    for (int m : ms) {
        const Region region(m);
        for (auto kind : {DistributionKind::Wigner, DistributionKind::FieldMarginal,
                          DistributionKind::MomentumMarginal, DistributionKind::Husimi}) {
            const auto rec = subtracted_entropy(spec, state, kind, region, 2.0, cov);
            pts[kind].push_back(
                {m * spec.spacing, rec.wehrl_offset_subtracted.value_or(rec.subtracted)});
        }
    }
    const double aw = fit_log_area_law(pts[DistributionKind::Wigner], spec.spacing).parameters[0];
    const double af =
        fit_log_area_law(pts[DistributionKind::FieldMarginal], spec.spacing).parameters[0];
    const double ag =
        fit_log_area_law(pts[DistributionKind::MomentumMarginal], spec.spacing).parameters[0];
    const double ah = fit_log_area_law(pts[DistributionKind::Husimi], spec.spacing).parameters[0];
    const bool pass = aw > 0.23 && aw < 0.27 && af > 0.105 && af < 0.145 && ag > 0.105 &&
                      ag < 0.145 && ah > 1.6 && ah < 1.9;
    return {pass, "a_wigner=" + fmt(aw) + " a_f=" + fmt(af) + " a_g=" + fmt(ag) +
                      " a_wehrl=" + fmt(ah)};
}

// ---- criterion 4: central-charge extrapolation ---------------------------

std::pair<bool, std::string> criterion_central_charge() {
    const double total_length = 200.0;
    std::vector<double> spacings;
    for (int q = 1; q <= 10; ++q) spacings.push_back(1.0 / q);
    std::vector<FitPoint> prefactors(spacings.size());
    acc_parallel_for(static_cast<int>(spacings.size()), [&](int i) {
        const double eps = spacings[i];
        const int n = static_cast<int>(std::llround(total_length / eps));
        const LatticeSpec spec(n, eps, 1e-10);
        const auto cov = build_state_covariances(spec, StateSpec::ground());
        std::vector<FitPoint> pts;
        for (int l = 2; l <= 10; ++l) {
            const int m = static_cast<int>(std::llround(l / eps));
            const auto rec = subtracted_entropy(spec, StateSpec::ground(),
                                                DistributionKind::Wigner, Region(m), 2.0, cov);
            pts.push_back({static_cast<double>(l), rec.subtracted});
        }
        prefactors[i] = {eps, fit_log_area_law(pts, eps).parameters[0]};
    });
    const auto fit = fit_continuum_extrapolation(prefactors);
    const double c1 = fit.parameters[0];
    return {c1 > 0.22 && c1 < 0.28, "c1=" + fmt(c1) + " c2=" + fmt(fit.parameters[1]) +
                                        " c3=" + fmt(fit.parameters[2])};
}

// ---- criterion 5: thermal area law ----------------------------------------

std::pair<bool, std::string> criterion_thermal_area_law() {
    const double temperature = 0.1;
    const LatticeSpec spec(1000, 0.1, 1e-6);
    const auto state = StateSpec::thermal(temperature);
    const auto cov = build_state_covariances(spec, state);
    std::vector<FitPoint> pts;
    for (int l = 2; l <= 30; ++l) {
        const int m = 10 * l;
        const auto rec =
            subtracted_entropy(spec, state, DistributionKind::Wigner, Region(m), 2.0, cov);
        pts.push_back({static_cast<double>(l), rec.subtracted});
    }
    // fixed c = 1 model with only the offset fitted
    auto model = [&](double l) {
        return 0.25 * std::log(std::sinh(M_PI * temperature * l) / (M_PI * spec.spacing * temperature));
    };
    double b = 0.0;
    for (const auto& p : pts) b += p.y - model(p.x);
    b /= static_cast<double>(pts.size());
    double worst_rel = 0.0;
    for (const auto& p : pts)
        worst_rel = std::max(worst_rel, std::abs(p.y - model(p.x) - b) / std::abs(p.y));
    const auto fit = fit_thermal(pts, temperature, spec.spacing);
    const double c = fit.parameters[0];
    const bool pass = worst_rel < 0.10 && c > 0.9 && c < 1.1;
    return {pass, "worst pointwise rel dev " + fmt(worst_rel) + ", fitted c=" + fmt(c)};
}

// ---- criterion 6: thermal mutual information -----------------------------

struct LogDetFamily {
    std::vector<double> ld;  // ld[s] for leading s x s block, s in 1..N
};

LogDetFamily family_log_dets(const Eigen::MatrixXd& cov) {
    const int n = static_cast<int>(cov.rows());
    LogDetFamily fam;
    fam.ld.assign(n + 1, 0.0);
    acc_parallel_for(n, [&](int i) {
        const int s = i + 1;
        fam.ld[s] = log_det_spd(cov.topLeftCorner(s, s));
    });
    return fam;
}

std::pair<bool, std::string> criterion_thermal_mutual_information() {
    const double temperature = 0.1;
    const LatticeSpec spec(1000, 0.1, 1e-6);
    const int n = spec.n_sites;
    const auto state = StateSpec::thermal(temperature);
    const auto cov = build_state_covariances(spec, state);

    const auto f = family_log_dets(cov.base.f.entries);
    const auto g = family_log_dets(cov.base.g.entries);
    const auto qf = family_log_dets(cov.husimi.f.entries);
    const auto qg = family_log_dets(cov.husimi.g.entries);
    auto mi = [n](const LogDetFamily& fam, int m) {
        return 0.5 * (fam.ld[m] + fam.ld[n - m] - fam.ld[n]);
    };

    double min_mi = 1e300;
    std::vector<FitPoint> w_pts;
    for (int m = 1; m < n; ++m) {
        const double mi_f = mi(f, m);
        const double mi_g = mi(g, m);
        const double mi_w = mi_f + mi_g;  // product state: phase-space = f + g
        const double mi_q = mi(qf, m) + mi(qg, m);
        min_mi = std::min({min_mi, mi_f, mi_g, mi_w, mi_q});
        w_pts.push_back({m * spec.spacing, mi_w});
    }
    if (min_mi < -1e-8) return {false, "negative mutual information " + fmt(min_mi)};

    // spot-check the cached assembly against the entropy pipeline
    for (int m : {100, 500, 777}) {
        const double direct =
            mutual_information(spec, state, DistributionKind::Wigner, Region(m), 2.0, cov);
        const double cached = mi(f, m) + mi(g, m);
        if (std::abs(direct - cached) > 1e-9 * std::max(1.0, std::abs(direct)))
            return {false, "cached assembly deviates at M=" + std::to_string(m)};
    }

    const auto interior = filter_interior(w_pts, spec.spacing, spec.length());
    const auto fit = fit_finite_size(interior, spec.length());
    double range_lo = 1e300, range_hi = -1e300;
    for (const auto& p : interior) {
        range_lo = std::min(range_lo, p.y);
        range_hi = std::max(range_hi, p.y);
    }
    double worst_res = 0.0;
    for (double r : fit.residuals) worst_res = std::max(worst_res, std::abs(r));
    const double res_frac = worst_res / (range_hi - range_lo);
    if (res_frac > 0.10) return {false, "finite-size fit residual fraction " + fmt(res_frac)};

    // smoothing-vs-field gap at the half split shrinks with the spacing
    std::vector<double> gaps;
    for (double eps : {0.2, 0.1, 0.05}) {
        const int ns = static_cast<int>(std::llround(100.0 / eps));
        const LatticeSpec s2(ns, eps, 1e-6);
        const auto c2 = build_state_covariances(s2, state);
        const Region half(ns / 2);
        const double mi_q =
            mutual_information(s2, state, DistributionKind::Husimi, half, 2.0, c2);
        const double mi_f2 =
            mutual_information(s2, state, DistributionKind::FieldMarginal, half, 2.0, c2);
        gaps.push_back(std::abs(mi_q - mi_f2));
    }
    const bool shrink = gaps[0] > gaps[1] && gaps[1] > gaps[2];
    return {shrink, "min I=" + fmt(min_mi) + ", fit res frac " + fmt(res_frac) + ", gaps " +
                        fmt(gaps[0]) + ">" + fmt(gaps[1]) + ">" + fmt(gaps[2])};
}

// ---- criterion 7: particle coin law ---------------------------------------

std::pair<bool, std::string> criterion_particle_coin_law() {
    const LatticeSpec spec(100, 0.1, 10.0);
    const int k = zone_edge_index(spec);
    const auto state = StateSpec::particle(k);
    const auto cov = build_state_covariances(spec, state);
    const double eps_omega = spec.spacing * dispersion(spec, k);

    double worst_coin = 0.0, worst_marg = 0.0, worst_husimi = 0.0;
    for (int m = 10; m <= 90; m += 10) {
        const Region region(m);
        const double x = m / 100.0;
        const double coin = -std::log(x * x + (1.0 - x) * (1.0 - x));
        const auto w = subtracted_entropy(spec, state, DistributionKind::Wigner, region, 2.0, cov);
        worst_coin = std::max(worst_coin, std::abs(w.delta_s - coin) / std::abs(coin));

        for (int r : {2, 3, 4}) {
            const auto rec =
                subtracted_entropy(spec, state, DistributionKind::FieldMarginal, region, r, cov);
            const double target =
                std::log(predicted_u(DistributionKind::FieldMarginal, r, x)) / (1.0 - r);
            worst_marg = std::max(worst_marg, std::abs(rec.delta_s - target) / std::abs(target));
        }
        const auto h = subtracted_entropy(spec, state, DistributionKind::Husimi, region, 2.0, cov);
        const double target_h = -std::log(predicted_u_husimi_r2(x, eps_omega));
        worst_husimi = std::max(worst_husimi, std::abs(h.delta_s - target_h) / std::abs(target_h));
    }
    const bool pass = worst_coin < 0.05 && worst_marg < 0.05 && worst_husimi < 0.05;
    return {pass, "rel dev: wigner " + fmt(worst_coin) + ", marginals " + fmt(worst_marg) +
                      ", husimi " + fmt(worst_husimi)};
}

// ---- criterion 8: small-interval law --------------------------------------

std::pair<bool, std::string> criterion_small_interval() {
    const LatticeSpec spec(100, 0.1, 10.0);
    const int k = zone_edge_index(spec);
    const auto state = StateSpec::particle(k);
    const auto cov = build_state_covariances(spec, state);
    const Region region(5);
    const double x = 0.05;
    double worst = 0.0;
    for (int r : {2, 3, 4}) {
        for (auto kind : {DistributionKind::Wigner, DistributionKind::FieldMarginal,
                          DistributionKind::MomentumMarginal, DistributionKind::Husimi}) {
            const auto rec = subtracted_entropy(spec, state, kind, region, r, cov);
            const double slope = (kind == DistributionKind::Wigner) ? 2.0 : 1.0;
            worst = std::max(worst, std::abs(rec.delta_s / x - slope) / slope);
        }
    }
    return {worst < 0.10, "worst relative deviation from the linear law " + fmt(worst)};
}

// ---- criterion 9: mass crossover ------------------------------------------

std::pair<bool, std::string> criterion_mass_crossover() {
    const Region half(50);
    std::vector<double> values;
    for (double mass : {10.0, 1.0, 0.1}) {
        const LatticeSpec spec(100, 0.1, mass);
        const auto state = StateSpec::particle(0);
        const auto cov = build_state_covariances(spec, state);
        values.push_back(
            subtracted_entropy(spec, state, DistributionKind::Wigner, half, 2.0, cov).delta_s);
    }
    const bool monotone = values[0] > values[1] && values[1] > values[2];
    const bool small = values[2] < 0.5 * std::log(2.0);
    return {monotone && small, "dS2 = " + fmt(values[0]) + " > " + fmt(values[1]) + " > " +
                                   fmt(values[2]) + " (coin value " + fmt(std::log(2.0)) + ")"};
}

// ---- criterion 10: determinism ---------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::pair<bool, std::string> criterion_determinism(const std::string& cli) {
    if (cli.empty()) return {false, "no CLI path supplied"};
    const std::string base = " --sites 40 --spacing 0.25 --mass 1e-6 --temperature 0.5"
                             " --kinds all --orders 2,3 ";
    struct Variant {
        std::string name, cmd;
    };
    const std::vector<Variant> runs = {
        {"scan_t1", "scan" + base + "--regions 1..40 --threads 1 --output acc_scan_t1.csv"},
        {"scan_t8", "scan" + base + "--regions 1..40 --threads 8 --output acc_scan_t8.csv"},
        {"scan_t1b", "scan" + base + "--regions 1..40 --threads 1 --output acc_scan_t1b.csv"},
        {"mi_t1", "mutual-info" + base + "--threads 1 --output acc_mi_t1.csv"},
        {"mi_t8", "mutual-info" + base + "--threads 8 --output acc_mi_t8.csv"},
        {"cc_t1", "central-charge --sites 16 --spacing 0.5,0.25,0.2,0.125 --mass 1e-6"
                  " --kinds wigner --orders 2 --regions 2..7 --threads 1 --output acc_cc_t1.csv"},
        {"cc_t4", "central-charge --sites 16 --spacing 0.5,0.25,0.2,0.125 --mass 1e-6"
                  " --kinds wigner --orders 2 --regions 2..7 --threads 4 --output acc_cc_t4.csv"},
    };
    for (const auto& v : runs) {
        const std::string cmd = cli + " " + v.cmd + " > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + v.name};
    }
    if (slurp("acc_scan_t1.csv") != slurp("acc_scan_t8.csv"))
        return {false, "scan differs between thread counts"};
    if (slurp("acc_scan_t1.csv") != slurp("acc_scan_t1b.csv"))
        return {false, "scan differs between repeated runs"};
    if (slurp("acc_mi_t1.csv") != slurp("acc_mi_t8.csv"))
        return {false, "mutual-info differs between thread counts"};
    if (slurp("acc_cc_t1.csv") != slurp("acc_cc_t4.csv"))
        return {false, "central-charge differs between thread counts"};
    if (slurp("acc_scan_t1.csv").empty()) return {false, "scan produced no output"};
    return {true, "scan, mutual-info and central-charge byte-identical across threads and reruns"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    g_threads = std::max(2u, std::thread::hardware_concurrency());

    run(1, "oracle chain (fast vs literal, Wick partitions, quadrature)", criterion_oracle_chain);
    run(2, "Gaussian identity suite (purity form, order independence, additivity)",
        criterion_gaussian_identities);
    run(3, "ground-state area law prefactors", criterion_ground_area_law);
    run(4, "central-charge continuum extrapolation", criterion_central_charge);
    run(5, "thermal area law", criterion_thermal_area_law);
    run(6, "thermal mutual information", criterion_thermal_mutual_information);
    run(7, "particle coin law and table polynomials", criterion_particle_coin_law);
    run(8, "small-interval linear law", criterion_small_interval);
    run(9, "mass crossover", criterion_mass_crossover);
    run(10, "byte-deterministic CSV across thread counts",
        [&] { return criterion_determinism(cli); });

    std::printf("%s: %d of 10 criteria failed\n", g_failures == 0 ? "OK" : "FAILED", g_failures);
    return g_failures;
}
