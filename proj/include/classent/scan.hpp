#pragma once

#include <optional>
#include <string>
#include <vector>

#include "classent/entropy.hpp"
#include "classent/fits.hpp"

namespace classent {

/// Validated parameter set for one CLI invocation. Invalid configs are
/// rejected before any output file is opened.
struct RunConfig {
    int n_sites = 100;
    double spacing = 0.1;
    double mass = 1e-6;
    StateSpec state = StateSpec::ground();
    std::vector<DistributionKind> kinds = {DistributionKind::Wigner};
    std::vector<double> orders = {2.0};
    std::vector<int> regions;  // M values; empty means a command-specific default
    std::string output;
    int threads = 1;
    bool with_oracle = false;
    bool timing = false;

    LatticeSpec lattice() const { return LatticeSpec(n_sites, spacing, mass); }
    void validate() const;
    std::vector<std::string> provenance_lines() const;
};

/// key=value config file; flags parsed later override these entries.
RunConfig config_from_file(const std::string& path);
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

std::vector<DistributionKind> parse_kinds(const std::string& csv);
std::vector<double> parse_orders(const std::string& csv);
std::vector<int> parse_regions(const std::string& csv);

/// scan: one row per (M, kind, r), deterministic order and formatting.
int cmd_scan(const RunConfig& cfg);

/// mutual-info: rows (M, kind, r, I_r) for M = 1..N-1 plus fit footers.
int cmd_mutual_info(const RunConfig& cfg);

/// central-charge: per-spacing area-law prefactors and the rational
/// extrapolation, one row per (eps, kind).
int cmd_central_charge(const RunConfig& cfg, const std::vector<double>& spacings);

/// 17-significant-digit, locale-independent float formatting shared by all
/// CSV writers.
std::string format_float(double v);

}  // namespace classent
