#ifndef RGSRATE_TREE_H
#define RGSRATE_TREE_H

#include <cstdint>
#include <vector>

namespace rgsrate {

// Branching vector (b_0, ..., b_{n-1}) of a tree code of depth n.
// Level 0 is the encoded qubit (not a photon); photons occupy levels 1..n.
class tree_vector {
public:
    explicit tree_vector(std::vector<int> b);

    int depth() const { return static_cast<int>(b_.size()); }
    int operator[](int k) const { return b_[static_cast<size_t>(k)]; }
    const std::vector<int>& branches() const { return b_; }

    // Number of photons in the tree: sum_{i=0}^{n-1} prod_{j<=i} b_j.
    int64_t photon_count() const;

    // Partial sum f(kmax) = sum_{i=0}^{kmax} prod_{j<=i} b_j; f(-1) = 0.
    int64_t cumulative_width(int kmax) const;

    bool operator==(const tree_vector& o) const { return b_ == o.b_; }

private:
    std::vector<int> b_;
};

// Success-probability recursion over the tree, evaluated bottom-up at a given
// single-photon transfer probability p_ph.
//   s_k  : one indirect-measurement branch at level k succeeds
//   r_k  : at least one of the b_k branches succeeds (r_n = 0)
//   pr_mz(k) : a level-k qubit is measured in Z, directly or indirectly
struct tree_analysis {
    double p_ph = 0.0;
    std::vector<double> s;      // k = 0..n-1
    std::vector<double> r;      // k = 0..n
    std::vector<double> mz;     // pr_mz for k = 1..n, stored at index k-1
    double pr_mx_logical = 0.0; // r_0
    double pr_mz_logical = 0.0; // pr_mz(1)^b0

    // Convention: Pr(M_Z,k) = 1 for k > n.
    double pr_mz(int k, int depth) const {
        return (k > depth) ? 1.0 : mz[static_cast<size_t>(k - 1)];
    }
};

tree_analysis analyze_tree(const tree_vector& b, double p_ph);

// (Pr(M_X,l), Pr(M_Z,l)) of the encoded qubit.
struct logical_probs {
    double pr_mx = 0.0;
    double pr_mz = 0.0;
};
logical_probs logical_meas_probs(const tree_vector& b, const tree_analysis& ta);
logical_probs logical_meas_probs(const tree_vector& b, double p_ph);

} // namespace rgsrate

#endif
