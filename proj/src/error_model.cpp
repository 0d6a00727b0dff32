#include "rgsrate/error_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rgsrate {

namespace {

// Running-product binomial coefficient; exact up to the magnitudes reached
// with branching parameters <= 64.
double binom(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    if (k > n - k)
        k = n - k;
    double c = 1.0;
    for (int j = 1; j <= k; ++j)
        c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
    return c;
}

// Pr(indirect | measurable) at level k; 0 above the leaves or when indirect
// measurements cannot happen.
double indirect_given_measurable(const tree_analysis& ta, int k, int depth) {
    if (k > depth)
        return 0.0;
    const double rk = ta.r[static_cast<size_t>(k)];
    const double mzk = ta.pr_mz(k, depth);
    return (mzk > 0.0) ? rk / mzk : 0.0;
}

} // namespace

double majority_vote_error(int m, double e1) {
    if (m < 1)
        throw std::domain_error("majority vote needs at least one outcome");
    if (!(e1 >= 0.0 && e1 <= 1.0))
        throw std::domain_error("e1 must be in [0, 1]");
    if (m % 2 == 0)
        m -= 1; // a tied vote carries no information: drop one outcome
    if (m == 0)
        return 0.0;
    double tot = 0.0;
    for (int j = (m + 1) / 2; j <= m; ++j)
        tot += binom(m, j) * std::pow(e1, j) * std::pow(1.0 - e1, m - j);
    return tot;
}

error_analysis indirect_error_levels(const tree_vector& b,
                                     const tree_analysis& ta, double eps) {
    if (!(eps >= 0.0 && eps <= 0.5))
        throw std::domain_error("eps must be in [0, 0.5]");
    if (ta.s.size() != static_cast<size_t>(b.depth()))
        throw std::invalid_argument("analysis does not match tree depth");
    const int n = b.depth();
    error_analysis ea;
    ea.eps = eps;
    ea.e_single.assign(static_cast<size_t>(n), 0.0);
    ea.e_indirect.assign(static_cast<size_t>(n), 0.0);
    ea.indirect_possible.assign(static_cast<size_t>(n), false);

    // e_{I_k} needs e_{I_{k+2}}, so walk the levels top value last.
    for (int k = n - 1; k >= 0; --k) {
        const int bk1 = (k + 1 < n) ? b[k + 1] : 0;
        const double q = indirect_given_measurable(ta, k + 2, n);
        const double e2 =
            (k + 2 < n) ? ea.e_indirect[static_cast<size_t>(k + 2)] : 0.0;

        // One successful branch: the X outcome of the level-(k+1) qubit and
        // the Z outcomes of its children, n_k of them measured directly.
        // Parity of independent flips:
        //   e_{n_k} = (1 - (1-2eps)^{n_k+1} (1-2 e_{I_{k+2}})^{b_{k+1}-n_k})/2
        double e1 = 0.0;
        for (int nk = 0; nk <= bk1; ++nk) {
            const double w = binom(bk1, nk) * std::pow(q, bk1 - nk) *
                             std::pow(1.0 - q, nk);
            const double enk =
                0.5 * (1.0 - std::pow(1.0 - 2.0 * eps, nk + 1) *
                                 std::pow(1.0 - 2.0 * e2, bk1 - nk));
            e1 += w * enk;
        }
        ea.e_single[static_cast<size_t>(k)] = e1;

        // Majority vote over the binomially distributed number of successful
        // branches, conditioned on at least one.
        const double sk = ta.s[static_cast<size_t>(k)];
        const double rk = ta.r[static_cast<size_t>(k)];
        if (rk > 0.0) {
            double acc = 0.0;
            for (int mk = 1; mk <= b[k]; ++mk) {
                const double pk = binom(b[k], mk) * std::pow(sk, mk) *
                                  std::pow(1.0 - sk, b[k] - mk);
                acc += pk * majority_vote_error(mk, e1);
            }
            ea.e_indirect[static_cast<size_t>(k)] = acc / rk;
            ea.indirect_possible[static_cast<size_t>(k)] = true;
        }
    }
    return ea;
}

logical_errors logical_error_rates(const tree_vector& b,
                                   const tree_analysis& ta,
                                   const error_analysis& ea) {
    if (ea.e_single.size() != static_cast<size_t>(b.depth()))
        throw std::invalid_argument("error analysis does not match tree depth");
    const int n = b.depth();
    logical_errors le;
    le.ebar_x = ea.e_indirect[0];

    // Logical Z: plain parity over the b_0 level-1 qubits, each measured
    // directly (error eps) or indirectly (error e_{I_1}); no X measurement
    // is involved.
    const double q1 = indirect_given_measurable(ta, 1, n);
    const double e1i = (n > 1) ? ea.e_indirect[1] : 0.0;
    const double eps = ea.eps;
    double tot = 0.0;
    for (int nn = 0; nn <= b[0]; ++nn) {
        const double w = binom(b[0], nn) * std::pow(q1, b[0] - nn) *
                         std::pow(1.0 - q1, nn);
        const double en = 0.5 * (1.0 - std::pow(1.0 - 2.0 * eps, nn) *
                                           std::pow(1.0 - 2.0 * e1i, b[0] - nn));
        tot += w * en;
    }
    le.ebar_z = tot;
    return le;
}

fidelity_report pair_fidelity(double ebar_x, double ebar_z, double eps,
                              int64_t n_qr, int m) {
    if (n_qr < 0)
        throw std::domain_error("n_qr must be non-negative");
    if (m < 1)
        throw std::domain_error("m must be at least 1");
    const double a = std::pow(1.0 - 2.0 * eps, 2.0 * (static_cast<double>(n_qr) + 1.0));
    const double bx2 = std::pow(1.0 - 2.0 * ebar_x, 2.0 * static_cast<double>(n_qr));
    const double bx1 = std::pow(1.0 - 2.0 * ebar_x, static_cast<double>(n_qr));
    const double bz = std::pow(1.0 - 2.0 * ebar_z,
                               (2.0 * m - 2.0) * static_cast<double>(n_qr));
    fidelity_report fr;
    fr.e_x = 0.25 * (1.0 - a * bx2);
    fr.e_z = fr.e_x;
    fr.e_y = 0.25 * (1.0 + a * bx2 - 2.0 * a * bx1 * bz);
    fr.f_ab = 1.0 - (fr.e_x + fr.e_y + fr.e_z);
    return fr;
}

double binary_entropy(double f) {
    if (!(f >= 0.0 && f <= 1.0))
        throw std::domain_error("binary_entropy argument must be in [0, 1]");
    if (f <= 0.0 || f >= 1.0)
        return 0.0;
    return -f * std::log2(f) - (1.0 - f) * std::log2(1.0 - f);
}

double secret_key_rate(double rate_hz, double f_ab) {
    if (!(rate_hz >= 0.0))
        throw std::domain_error("rate must be non-negative");
    const double fraction = 1.0 - 2.0 * binary_entropy(f_ab);
    return rate_hz * std::max(0.0, fraction);
}

double coherence_time_requirement(double t_rgs_s, int64_t n_photons,
                                  double eps_target) {
    if (!(t_rgs_s > 0.0))
        throw std::domain_error("t_rgs_s must be positive");
    if (n_photons < 1)
        throw std::domain_error("n_photons must be at least 1");
    if (!(eps_target >= 0.0 && eps_target < 1.0))
        throw std::domain_error("eps_target must be in [0, 1)");
    if (eps_target == 0.0)
        return std::numeric_limits<double>::infinity();
    return -3.0 * t_rgs_s /
           (static_cast<double>(n_photons) * std::log1p(-eps_target));
}

} // namespace rgsrate
