#include "classent/wick.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace classent {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using cd = std::complex<double>;

// Trace words are equivalent under cyclic shifts and under reversal with
// the letters swapped (transposing every factor under the trace).
std::string canonical_word(const std::string& word) {
    std::string best;
    auto consider = [&best](std::string w) {
        for (size_t i = 0; i < w.size(); ++i) {
            std::rotate(w.begin(), w.begin() + 1, w.end());
            if (best.empty() || w < best) best = w;
        }
    };
    consider(word);
    std::string swapped(word.rbegin(), word.rend());
    for (char& c : swapped) c = (c == 'w') ? 't' : 'w';
    consider(swapped);
    return best;
}

double real_with_guard(cd z, const char* what) {
    if (std::abs(z.imag()) > 1e-10 * (1.0 + std::abs(z.real())))
        throw std::runtime_error(std::string(what) + ": trace has non-negligible imaginary part " +
                                 std::to_string(z.imag()));
    return z.real();
}

double binom(int n, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return v;
}

void pair_partitions_rec(std::vector<int>& free_idx, std::vector<std::pair<int, int>>& cur,
                         std::vector<std::vector<std::pair<int, int>>>& out) {
    if (free_idx.empty()) {
        out.push_back(cur);
        return;
    }
    const int first = free_idx.front();
    for (size_t i = 1; i < free_idx.size(); ++i) {
        std::vector<int> rest;
        for (size_t j = 1; j < free_idx.size(); ++j)
            if (j != i) rest.push_back(free_idx[j]);
        cur.emplace_back(first, free_idx[i]);
        pair_partitions_rec(rest, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::pair<int, int>>> pair_partitions(int s) {
    std::vector<int> idx(2 * s);
    for (int i = 0; i < 2 * s; ++i) idx[i] = i;
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> cur;
    pair_partitions_rec(idx, cur, out);
    return out;
}

}  // namespace

TraceBasis::TraceBasis(const MatrixXcd& big_lambda, const MatrixXd& gauss_cov)
    : w_(big_lambda * gauss_cov), wt_(big_lambda.transpose() * gauss_cov) {}

double TraceBasis::trace(const std::string& word) {
    const std::string key = canonical_word(word);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    MatrixXcd prod = (key[0] == 'w') ? w_ : wt_;
    for (size_t i = 1; i < key.size(); ++i) prod *= (key[i] == 'w') ? w_ : wt_;
    const double val = real_with_guard(prod.trace(), "TraceBasis");
    cache_.emplace(key, val);
    return val;
}

double u_closed(int s, const QuadraticForm& form, const MatrixXd& gauss_cov) {
    if (s == 0) return 1.0;
    TraceBasis tb(form.big_lambda, gauss_cov);
    const double t1 = tb.trace("w");
    switch (s) {
        case 1:
            return t1;
        case 2:
            return t1 * t1 + tb.trace("ww") + tb.trace("wt");
        case 3:
            return t1 * t1 * t1 + 3.0 * t1 * tb.trace("wt") + 3.0 * t1 * tb.trace("ww") +
                   6.0 * tb.trace("wwt") + 2.0 * tb.trace("www");
        case 4: {
            const double t2 = tb.trace("ww");
            const double t2t = tb.trace("wt");
            return std::pow(t1, 4) + 6.0 * t1 * t1 * t2 + 6.0 * t1 * t1 * t2t +
                   24.0 * t1 * tb.trace("wwt") + 8.0 * t1 * tb.trace("www") + 6.0 * t2 * t2t +
                   3.0 * t2t * t2t + 3.0 * t2 * t2 + 24.0 * tb.trace("wwwt") +
                   6.0 * tb.trace("wwww") + 12.0 * tb.trace("wwtt") + 6.0 * tb.trace("wtwt");
        }
        default:
            throw std::invalid_argument("u_closed: order s must be in {0,...,4}");
    }
}

long partition_count(int s) {
    long v = 1;
    for (int i = 2 * s - 1; i > 1; i -= 2) v *= i;
    return v;
}

double u_partition_oracle(int s, const QuadraticForm& form, const MatrixXd& gauss_cov) {
    if (s == 0) return 1.0;
    if (s > 5) throw std::invalid_argument("u_partition_oracle: s too large");
    const int d = static_cast<int>(gauss_cov.rows());
    const auto parts = pair_partitions(s);

    // Indices 0..2s-1 carry the Lambda factors as consecutive pairs; the
    // partition assigns the covariance contractions.
    std::vector<int> idx(2 * s, 0);
    cd total = 0.0;
    while (true) {
        cd lam_prod = 1.0;
        for (int p = 0; p < s; ++p) lam_prod *= form.big_lambda(idx[2 * p], idx[2 * p + 1]);
        if (lam_prod != cd(0.0, 0.0)) {
            for (const auto& part : parts) {
                double g_prod = 1.0;
                for (const auto& pr : part) g_prod *= gauss_cov(idx[pr.first], idx[pr.second]);
                total += lam_prod * g_prod;
            }
        }
        int pos = 2 * s - 1;
        while (pos >= 0 && ++idx[pos] == d) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return real_with_guard(total, "u_partition_oracle");
}

double capital_u(int r, const QuadraticForm& form, const MatrixXd& gauss_cov) {
    if (r < 1 || r > 4) throw std::invalid_argument("capital_u: order r must be in {1,...,4}");
    TraceBasis tb(form.big_lambda, gauss_cov);
    const double lam = form.lambda;
    const double t1 = tb.trace("w");
    const double resid = lam + t1 - 1.0;
    if (std::abs(resid) > 1e-8 * (1.0 + std::abs(lam) + std::abs(t1)))
        throw std::runtime_error("capital_u: normalization constraint violated, residual " +
                                 std::to_string(resid));

    double from_sum = 0.0;
    for (int s = 0; s <= r; ++s)
        from_sum += binom(r, s) * std::pow(lam, r - s) * std::pow(r, -s) * u_closed(s, form, gauss_cov);

    // Printed simplified forms, valid under the normalization constraint.
    double printed = from_sum;
    const double t2 = (r >= 2) ? tb.trace("ww") : 0.0;
    const double t2t = (r >= 2) ? tb.trace("wt") : 0.0;
    switch (r) {
        case 1:
            printed = lam + t1;
            break;
        case 2:
            printed = std::pow(0.5 * (1.0 + lam), 2) + 0.25 * (t2t + t2);
            break;
        case 3:
            printed = std::pow((1.0 + 2.0 * lam) / 3.0, 3) +
                      (1.0 + 2.0 * lam) / 9.0 * (t2t + t2) +
                      2.0 / 27.0 * (3.0 * tb.trace("wwt") + tb.trace("www"));
            break;
        case 4: {
            const double q = 0.25 * (1.0 + 3.0 * lam);
            printed = std::pow(q, 4) + 3.0 / 8.0 * q * q * (t2t + t2) +
                      1.0 / 8.0 * q * (3.0 * tb.trace("wwt") + tb.trace("www")) +
                      3.0 / 256.0 * std::pow(t2t + t2, 2) +
                      3.0 / 128.0 * (2.0 * tb.trace("wwtt") + tb.trace("wwww")) +
                      3.0 / 128.0 * (tb.trace("wtwt") + 4.0 * tb.trace("wwwt"));
            break;
        }
    }
    if (std::abs(printed - from_sum) > 1e-9 * std::max(1.0, std::abs(from_sum)))
        throw std::runtime_error("capital_u: closed-sum and printed evaluations disagree: " +
                                 std::to_string(from_sum) + " vs " + std::to_string(printed));
    return from_sum;
}

}  // namespace classent
