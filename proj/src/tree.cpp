#include "rgsrate/tree.h"

#include <cmath>
#include <stdexcept>

namespace rgsrate {

namespace {
constexpr int max_branching = 64;        // keeps binomial sums well-conditioned
constexpr int64_t max_photons = 1000000; // sanity cap for explicit trees
} // namespace

tree_vector::tree_vector(std::vector<int> b) : b_(std::move(b)) {
    if (b_.empty())
        throw std::domain_error("branching vector must be non-empty");
    for (int bk : b_) {
        if (bk < 1 || bk > max_branching)
            throw std::domain_error("branching parameters must be in [1, 64]");
    }
    int64_t tot = 0;
    int64_t prod = 1;
    for (int bk : b_) {
        prod *= bk;
        tot += prod;
        if (tot > max_photons)
            throw std::domain_error("tree has more than 1e6 photons");
    }
}

int64_t tree_vector::photon_count() const {
    return cumulative_width(depth() - 1);
}

int64_t tree_vector::cumulative_width(int kmax) const {
    if (kmax >= depth())
        throw std::invalid_argument("cumulative_width: kmax beyond tree depth");
    int64_t tot = 0;
    int64_t prod = 1;
    for (int i = 0; i <= kmax; ++i) {
        prod *= b_[static_cast<size_t>(i)];
        tot += prod;
    }
    return tot;
}

tree_analysis analyze_tree(const tree_vector& b, double p_ph) {
    if (!(p_ph >= 0.0 && p_ph <= 1.0))
        throw std::domain_error("p_ph must be in [0, 1]");
    const int n = b.depth();
    tree_analysis ta;
    ta.p_ph = p_ph;
    ta.s.assign(static_cast<size_t>(n), 0.0);
    ta.r.assign(static_cast<size_t>(n) + 1, 0.0);
    ta.mz.assign(static_cast<size_t>(n), 0.0);

    // Bottom-up: s_k needs Pr(M_Z,k+2), which is 1 above the leaves.
    ta.r[static_cast<size_t>(n)] = 0.0;
    for (int k = n; k >= 0; --k) {
        if (k < n) {
            const int bk1 = (k + 1 < n) ? b[k + 1] : 0;
            const double mz_k2 = ta.pr_mz(k + 2, n);
            const double sk = p_ph * std::pow(mz_k2, bk1);
            // r_k = 1 - (1 - s_k)^{b_k}, stable for tiny s_k
            const double rk =
                (sk >= 1.0) ? 1.0 : -std::expm1(b[k] * std::log1p(-sk));
            ta.s[static_cast<size_t>(k)] = sk;
            ta.r[static_cast<size_t>(k)] = rk;
        }
        if (k >= 1)
            ta.mz[static_cast<size_t>(k - 1)] =
                p_ph + (1.0 - p_ph) * ta.r[static_cast<size_t>(k)];
    }
    ta.pr_mx_logical = ta.r[0];
    ta.pr_mz_logical = std::pow(ta.mz[0], b[0]);
    return ta;
}

logical_probs logical_meas_probs(const tree_vector& b, const tree_analysis& ta) {
    if (ta.s.size() != static_cast<size_t>(b.depth()) ||
        ta.r.size() != static_cast<size_t>(b.depth()) + 1)
        throw std::invalid_argument("analysis does not match tree depth");
    return {ta.pr_mx_logical, ta.pr_mz_logical};
}

logical_probs logical_meas_probs(const tree_vector& b, double p_ph) {
    const tree_analysis ta = analyze_tree(b, p_ph);
    return {ta.pr_mx_logical, ta.pr_mz_logical};
}

} // namespace rgsrate
