// Command-line front end: parameter scans over region size, temperature,
// momentum, entropic order and lattice spacing, emitting CSV files and fit
// summaries, plus the self-verification suite.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "classent/scan.hpp"
#include "classent/verify.hpp"

namespace {

struct CliFlags {
    std::string config_path;
    int sites = 0;
    std::string spacing;  // comma list allowed for central-charge
    double mass = -1.0;
    double temperature = -1.0;
    int momentum = 0;
    bool momentum_set = false;
    std::string state;
    std::string orders, kinds, regions, output;
    int threads = 0;
    bool oracle = false;
    bool timing = false;
};

void add_common_flags(CLI::App* cmd, CliFlags& f) {
    cmd->add_option("--config", f.config_path, "key=value config file; flags override");
    cmd->add_option("--sites", f.sites, "number of lattice sites N");
    cmd->add_option("--spacing", f.spacing, "lattice spacing (comma list for central-charge)");
    cmd->add_option("--mass", f.mass, "mass / infrared regulator");
    cmd->add_option("--temperature", f.temperature, "temperature; selects the thermal state");
    auto* mom = cmd->add_option("--momentum", f.momentum,
                                "integer momentum index; selects the particle state");
    mom->each([&f](const std::string&) { f.momentum_set = true; });
    cmd->add_option("--state", f.state, "vacuum|ground|thermal|particle");
    cmd->add_option("--orders", f.orders, "comma list of entropic orders r");
    cmd->add_option("--kinds", f.kinds, "comma list of wigner,f,g,husimi or 'all'");
    cmd->add_option("--regions", f.regions, "comma list of region sizes M (a..b ranges allowed)");
    cmd->add_option("--output", f.output, "output CSV path");
    cmd->add_option("--threads", f.threads, "worker threads (output is order-independent)");
    cmd->add_flag("--oracle", f.oracle, "append quadrature cross-check footers (N <= 4)");
    cmd->add_flag("--timing", f.timing, "fill the runtime_ms column (breaks byte determinism)");
}

std::vector<double> parse_spacings(const std::string& s) {
    std::vector<double> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    return out;
}

classent::RunConfig build_config(const CliFlags& f) {
    classent::RunConfig cfg =
        f.config_path.empty() ? classent::RunConfig{} : classent::config_from_file(f.config_path);
    if (f.sites > 0) cfg.n_sites = f.sites;
    if (!f.spacing.empty()) cfg.spacing = parse_spacings(f.spacing).front();
    if (f.mass >= 0.0) cfg.mass = f.mass;
    if (!f.state.empty()) classent::apply_key_value(cfg, "state", f.state);
    if (f.temperature >= 0.0) cfg.state = classent::StateSpec::thermal(f.temperature);
    if (f.momentum_set) cfg.state = classent::StateSpec::particle(f.momentum);
    if (!f.orders.empty()) cfg.orders = classent::parse_orders(f.orders);
    if (!f.kinds.empty()) cfg.kinds = classent::parse_kinds(f.kinds);
    if (!f.regions.empty()) cfg.regions = classent::parse_regions(f.regions);
    if (!f.output.empty()) cfg.output = f.output;
    if (f.threads > 0) cfg.threads = f.threads;
    if (f.oracle) cfg.with_oracle = true;
    if (f.timing) cfg.timing = true;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classical phase-space entropies of a lattice scalar field"};
    app.require_subcommand(1);

    CliFlags scan_flags, mi_flags, cc_flags;
    auto* scan = app.add_subcommand("scan", "subtracted entropies over region sizes");
    add_common_flags(scan, scan_flags);
    auto* mi = app.add_subcommand("mutual-info", "mutual informations over all bipartitions");
    add_common_flags(mi, mi_flags);
    auto* cc = app.add_subcommand("central-charge",
                                  "area-law prefactors over a spacing list plus extrapolation");
    add_common_flags(cc, cc_flags);
    auto* verify = app.add_subcommand("verify", "run the oracle suites and print a pass/fail table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scan->parsed()) return classent::cmd_scan(build_config(scan_flags));
        if (mi->parsed()) return classent::cmd_mutual_info(build_config(mi_flags));
        if (cc->parsed()) {
            auto spacings = parse_spacings(cc_flags.spacing);
            auto cfg = build_config(cc_flags);
            if (!spacings.empty()) cfg.spacing = spacings.front();
            return classent::cmd_central_charge(cfg, spacings);
        }
        if (verify->parsed()) {
            const auto results = classent::verify_all(true);
            int failures = 0;
            for (const auto& c : results) failures += c.pass ? 0 : 1;
            std::printf("%zu checks, %d failures\n", results.size(), failures);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
