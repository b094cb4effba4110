#include "classent/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "classent/oracle.hpp"
#include "classent/region.hpp"
#include "classent/wick.hpp"

namespace classent {

namespace {

const std::vector<DistributionKind> kAllKinds = {
    DistributionKind::Wigner, DistributionKind::FieldMarginal, DistributionKind::MomentumMarginal,
    DistributionKind::Husimi};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// Completed tasks land in pre-sized slots, so output order never depends
// on scheduling.
void parallel_for(int n_items, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || n_items <= 1) {
        for (int i = 0; i < n_items; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < std::min(threads, n_items); ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void RunConfig::validate() const {
    const LatticeSpec sp = lattice();  // throws on bad N/eps/m
    if (state.family == StateSpec::Family::Thermal && !(state.temperature > 0.0))
        throw std::invalid_argument("config: thermal state needs temperature > 0");
    if (state.family == StateSpec::Family::Particle) {
        const auto ks = momentum_indices(sp);
        if (state.momentum < ks.front() || state.momentum > ks.back())
            throw std::invalid_argument("config: momentum index outside the lattice set");
        if (sp.mass == 0.0 && state.momentum == 0)
            throw std::invalid_argument("config: zero mode needs a regulator mass");
    }
    if (kinds.empty()) throw std::invalid_argument("config: no distribution kinds selected");
    if (orders.empty()) throw std::invalid_argument("config: no entropic orders selected");
    for (double r : orders) {
        if (!(r > 0.0)) throw std::invalid_argument("config: entropic orders must be positive");
        if (state.family == StateSpec::Family::Particle) {
            const double rounded = std::round(r);
            if (std::abs(r - rounded) > 1e-12 || rounded < 2.0 || rounded > 4.0)
                throw std::invalid_argument(
                    "config: particle states support integer orders 2..4 only");
        }
    }
    for (int m : regions)
        if (m < 1 || m > n_sites)
            throw std::invalid_argument("config: region size out of range 1..N");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (with_oracle && n_sites > 4)
        throw std::invalid_argument("config: oracle cross-checks need N <= 4");
}

std::vector<std::string> RunConfig::provenance_lines() const {
    // Execution details (threads, output path, timing) are excluded so
    // identical physics configs produce identical bytes.
    std::vector<std::string> lines;
    lines.push_back("# sites " + std::to_string(n_sites));
    lines.push_back("# spacing " + format_float(spacing));
    lines.push_back("# mass " + format_float(mass));
    lines.push_back("# state " + state.label());
    std::string ks = "# kinds";
    for (auto k : kinds) ks += std::string(" ") + kind_name(k);
    lines.push_back(ks);
    std::string os = "# orders";
    for (double r : orders) os += " " + format_float(r);
    lines.push_back(os);
    if (!regions.empty()) {
        std::string rs = "# regions";
        for (int m : regions) rs += " " + std::to_string(m);
        lines.push_back(rs);
    }
    return lines;
}

std::vector<DistributionKind> parse_kinds(const std::string& csv) {
    std::vector<DistributionKind> out;
    for (const auto& tok : split_csv(csv)) {
        if (tok == "wigner") out.push_back(DistributionKind::Wigner);
        else if (tok == "f") out.push_back(DistributionKind::FieldMarginal);
        else if (tok == "g") out.push_back(DistributionKind::MomentumMarginal);
        else if (tok == "husimi") out.push_back(DistributionKind::Husimi);
        else if (tok == "all") return kAllKinds;
        else throw std::invalid_argument("unknown kind: " + tok);
    }
    return out;
}

std::vector<double> parse_orders(const std::string& csv) {
    std::vector<double> out;
    for (const auto& tok : split_csv(csv)) out.push_back(std::stod(tok));
    return out;
}

std::vector<int> parse_regions(const std::string& csv) {
    std::vector<int> out;
    for (const auto& tok : split_csv(csv)) {
        const auto pos = tok.find("..");
        if (pos != std::string::npos) {
            const int lo = std::stoi(tok.substr(0, pos));
            const int hi = std::stoi(tok.substr(pos + 2));
            for (int m = lo; m <= hi; ++m) out.push_back(m);
        } else {
            out.push_back(std::stoi(tok));
        }
    }
    return out;
}

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "sites") cfg.n_sites = std::stoi(value);
    else if (key == "spacing") cfg.spacing = std::stod(value);
    else if (key == "mass") cfg.mass = std::stod(value);
    else if (key == "temperature") cfg.state = StateSpec::thermal(std::stod(value));
    else if (key == "momentum") cfg.state = StateSpec::particle(std::stoi(value));
    else if (key == "state") {
        if (value == "vacuum") cfg.state = StateSpec::vacuum();
        else if (value == "ground") cfg.state = StateSpec::ground();
        else if (value == "thermal") cfg.state.family = StateSpec::Family::Thermal;
        else if (value == "particle") cfg.state.family = StateSpec::Family::Particle;
        else throw std::invalid_argument("unknown state: " + value);
    } else if (key == "kinds") cfg.kinds = parse_kinds(value);
    else if (key == "orders") cfg.orders = parse_orders(value);
    else if (key == "regions") cfg.regions = parse_regions(value);
    else if (key == "output") cfg.output = value;
    else if (key == "threads") cfg.threads = std::stoi(value);
    else if (key == "oracle") cfg.with_oracle = (value == "1" || value == "true");
    else if (key == "timing") cfg.timing = (value == "1" || value == "true");
    else throw std::invalid_argument("unknown config key: " + key);
}

RunConfig config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    std::vector<std::pair<std::string, std::string>> entries;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty() && !value.empty()) entries.emplace_back(key, value);
    }
    // state family first, then its parameters, then the rest
    for (const auto& [k, v] : entries)
        if (k == "state") apply_key_value(cfg, k, v);
    for (const auto& [k, v] : entries)
        if (k != "state") apply_key_value(cfg, k, v);
    return cfg;
}

namespace {

struct ScanTask {
    int m;
    DistributionKind kind;
    double r;
};

std::string render_scan_row(const LatticeSpec& spec, const RunConfig& cfg, const ScanTask& task,
                            const StateCovariances& cov) {
    const auto t0 = std::chrono::steady_clock::now();
    const EntropyRecord rec =
        subtracted_entropy(spec, cfg.state, task.kind, Region(task.m), task.r, cov);
    const auto t1 = std::chrono::steady_clock::now();
    std::string row = std::to_string(task.m) + "," + format_float(task.m * spec.spacing) + "," +
                      kind_name(task.kind) + "," + cfg.state.label() + "," + format_float(task.r) +
                      "," + format_float(rec.gaussian_part) + "," + format_float(rec.delta_s) +
                      "," + format_float(rec.subtracted) + ",";
    if (rec.wehrl_offset_subtracted) row += format_float(*rec.wehrl_offset_subtracted);
    row += ",";
    if (cfg.timing)
        row += format_float(std::chrono::duration<double, std::milli>(t1 - t0).count());
    return row;
}

std::vector<std::string> oracle_footer(const LatticeSpec& spec, const RunConfig& cfg,
                                       const std::vector<ScanTask>& tasks,
                                       const StateCovariances& cov) {
    std::vector<std::string> lines;
    for (const auto& task : tasks) {
        const Region region(task.m);
        const Eigen::MatrixXd gauss = local_gauss_cov(cov, task.kind, region);
        const int dim = static_cast<int>(gauss.rows());
        if (dim > 6) continue;
        const int order = dim <= 2 ? 16 : (dim <= 4 ? 10 : 7);
        QuadraticForm form{1.0, Eigen::MatrixXcd::Zero(dim, dim), task.kind, 0.0};
        double delta = 0.0;
        if (cfg.state.family == StateSpec::Family::Particle) {
            form = particle_form(spec, cfg.state.momentum, task.kind, cov, region);
            delta = std::log(capital_u(static_cast<int>(std::round(task.r)), form, gauss)) /
                    (1.0 - task.r);
        }
        const double s_quad = quadrature_renyi(gauss, form, task.r, order);
        const double s_closed = renyi_gaussian(gauss, task.r) + delta;
        lines.push_back("# oracle M=" + std::to_string(task.m) + " kind=" + kind_name(task.kind) +
                        " r=" + format_float(task.r) +
                        " renyi_dev=" + format_float(std::abs(s_quad - s_closed)));
    }
    return lines;
}

}  // namespace

int cmd_scan(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.regions.empty()) throw std::invalid_argument("scan: --regions is required");
    if (cfg.output.empty()) throw std::invalid_argument("scan: --output is required");
    const LatticeSpec spec = cfg.lattice();
    const StateCovariances cov = build_state_covariances(spec, cfg.state);

    std::vector<int> ms = cfg.regions;
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<ScanTask> tasks;
    for (int m : ms)
        for (auto kind : cfg.kinds)
            for (double r : cfg.orders) tasks.push_back({m, kind, r});
    std::stable_sort(tasks.begin(), tasks.end(), [](const ScanTask& a, const ScanTask& b) {
        if (a.m != b.m) return a.m < b.m;
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.r < b.r;
    });

    std::vector<std::string> rows(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), cfg.threads,
                 [&](int i) { rows[i] = render_scan_row(spec, cfg, tasks[i], cov); });

    auto out = open_output(cfg.output);
    out << "# classent scan\n";
    for (const auto& line : cfg.provenance_lines()) out << line << "\n";
    out << "M,l,kind,state,r,gaussian_part,delta_s,subtracted,wehrl_offset_subtracted,runtime_ms\n";
    for (const auto& row : rows) out << row << "\n";
    if (cfg.with_oracle)
        for (const auto& line : oracle_footer(spec, cfg, tasks, cov)) out << line << "\n";
    return 0;
}

int cmd_mutual_info(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.output.empty()) throw std::invalid_argument("mutual-info: --output is required");
    const LatticeSpec spec = cfg.lattice();
    const int n = spec.n_sites;
    const StateCovariances cov = build_state_covariances(spec, cfg.state);

    std::vector<int> ms = cfg.regions;
    if (ms.empty())
        for (int m = 1; m < n; ++m) ms.push_back(m);
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    for (int m : ms)
        if (m >= n) throw std::invalid_argument("mutual-info: regions must satisfy M < N");

    // Full-circle records do not depend on M; compute them once up front.
    std::map<std::pair<size_t, size_t>, double> full_subtracted;
    for (size_t ik = 0; ik < cfg.kinds.size(); ++ik)
        for (size_t ir = 0; ir < cfg.orders.size(); ++ir)
            full_subtracted[{ik, ir}] =
                subtracted_entropy(spec, cfg.state, cfg.kinds[ik], Region(n), cfg.orders[ir], cov)
                    .subtracted;

    struct MiTask {
        int m;
        size_t ik, ir;
    };
    std::vector<MiTask> tasks;
    for (int m : ms)
        for (size_t ik = 0; ik < cfg.kinds.size(); ++ik)
            for (size_t ir = 0; ir < cfg.orders.size(); ++ir) tasks.push_back({m, ik, ir});

    std::vector<double> values(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), cfg.threads, [&](int i) {
        const auto& t = tasks[i];
        const auto rec_a = subtracted_entropy(spec, cfg.state, cfg.kinds[t.ik], Region(t.m),
                                              cfg.orders[t.ir], cov);
        const auto rec_b = subtracted_entropy(spec, cfg.state, cfg.kinds[t.ik], Region(n - t.m),
                                              cfg.orders[t.ir], cov);
        values[i] = rec_a.subtracted + rec_b.subtracted - full_subtracted.at({t.ik, t.ir});
    });

    auto out = open_output(cfg.output);
    out << "# classent mutual-info\n";
    for (const auto& line : cfg.provenance_lines()) out << line << "\n";
    out << "M,l,kind,state,r,mutual_information\n";
    for (size_t i = 0; i < tasks.size(); ++i) {
        const auto& t = tasks[i];
        out << t.m << "," << format_float(t.m * spec.spacing) << "," << kind_name(cfg.kinds[t.ik])
            << "," << cfg.state.label() << "," << format_float(cfg.orders[t.ir]) << ","
            << format_float(values[i]) << "\n";
    }

    for (size_t ik = 0; ik < cfg.kinds.size(); ++ik)
        for (size_t ir = 0; ir < cfg.orders.size(); ++ir) {
            std::vector<FitPoint> pts;
            for (size_t i = 0; i < tasks.size(); ++i)
                if (tasks[i].ik == ik && tasks[i].ir == ir)
                    pts.push_back({tasks[i].m * spec.spacing, values[i]});
            pts = filter_interior(pts, spec.spacing, spec.length());
            if (pts.size() < 3) continue;
            const auto fit = fit_finite_size(pts, spec.length());
            out << "# finite_size_fit kind=" << kind_name(cfg.kinds[ik])
                << " r=" << format_float(cfg.orders[ir]) << " a=" << format_float(fit.parameters[0])
                << " b=" << format_float(fit.parameters[1]) << " rss=" << format_float(fit.rss)
                << "\n";
        }
    return 0;
}

int cmd_central_charge(const RunConfig& cfg, const std::vector<double>& spacings) {
    cfg.validate();
    if (cfg.output.empty()) throw std::invalid_argument("central-charge: --output is required");
    if (spacings.size() < 4)
        throw std::invalid_argument("central-charge: extrapolation needs at least 4 spacings");
    if (cfg.regions.size() < 3)
        throw std::invalid_argument("central-charge: need at least 3 region sizes for the fits");
    const double r = cfg.orders.front();
    const double base_eps = cfg.spacing;
    const double total_length = cfg.n_sites * base_eps;

    struct EpsResult {
        std::vector<double> a, b;
    };
    std::vector<EpsResult> per_eps(spacings.size());

    parallel_for(static_cast<int>(spacings.size()), cfg.threads, [&](int i) {
        const double eps = spacings[i];
        const int n = static_cast<int>(std::llround(total_length / eps));
        const LatticeSpec spec(n, eps, cfg.mass);
        const StateCovariances cov = build_state_covariances(spec, cfg.state);
        for (auto kind : cfg.kinds) {
            std::vector<FitPoint> pts;
            for (int m_base : cfg.regions) {
                const double l = m_base * base_eps;
                const int m = static_cast<int>(std::llround(l / eps));
                if (m < 1 || m >= n) continue;
                const auto rec = subtracted_entropy(spec, cfg.state, kind, Region(m), r, cov);
                pts.push_back({m * eps, rec.wehrl_offset_subtracted.value_or(rec.subtracted)});
            }
            pts = filter_interior(pts, eps, spec.length());
            const auto fit = fit_log_area_law(pts, eps);
            per_eps[i].a.push_back(fit.parameters[0]);
            per_eps[i].b.push_back(fit.parameters[1]);
        }
    });

    auto out = open_output(cfg.output);
    out << "# classent central-charge\n";
    for (const auto& line : cfg.provenance_lines()) out << line << "\n";
    {
        std::string ss = "# spacings";
        for (double e : spacings) ss += " " + format_float(e);
        out << ss << "\n";
    }
    out << "epsilon,kind,r,a,b\n";
    for (size_t i = 0; i < per_eps.size(); ++i)
        for (size_t ik = 0; ik < cfg.kinds.size(); ++ik)
            out << format_float(spacings[i]) << "," << kind_name(cfg.kinds[ik]) << ","
                << format_float(r) << "," << format_float(per_eps[i].a[ik]) << ","
                << format_float(per_eps[i].b[ik]) << "\n";
    for (size_t ik = 0; ik < cfg.kinds.size(); ++ik) {
        std::vector<FitPoint> pts;
        for (size_t i = 0; i < per_eps.size(); ++i) pts.push_back({spacings[i], per_eps[i].a[ik]});
        const auto fit = fit_continuum_extrapolation(pts);
        out << "# extrapolation kind=" << kind_name(cfg.kinds[ik])
            << " c1=" << format_float(fit.parameters[0]) << " c2=" << format_float(fit.parameters[1])
            << " c3=" << format_float(fit.parameters[2]) << " rss=" << format_float(fit.rss) << "\n";
    }
    return 0;
}

}  // namespace classent
