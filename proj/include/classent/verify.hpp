#pragma once

#include <string>
#include <vector>

namespace classent {

struct CheckResult {
    std::string name;
    bool pass;
    double worst;  // largest deviation seen, in the check's own units
    std::string detail;
};

/// Fast assemblies against the verbatim-sum oracle: N <= 8, all M, all k,
/// all four kinds, elementwise 1e-10.
std::vector<CheckResult> verify_quadform();

/// Closed trace formulas against the pair-partition enumeration, s <= 4,
/// random Hermitian/SPD inputs of dimension 1..4, relative 1e-10.
std::vector<CheckResult> verify_wick();

/// Quadrature Renyi integrals and marginalizations against the closed
/// forms on tiny lattices, plus the Gaussian reciprocity identities.
std::vector<CheckResult> verify_oracle();

/// All of the above; prints one line per check to stdout when verbose.
std::vector<CheckResult> verify_all(bool verbose);

}  // namespace classent
