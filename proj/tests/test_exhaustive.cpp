#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracles/exhaustive.h"
#include "rgsrate/error_model.h"
#include "rgsrate/tree.h"

using namespace rgsrate;
using rgsrate_tests::all_trees_up_to;
using rgsrate_tests::exhaustive_result;
using rgsrate_tests::exhaustive_tree;

namespace {

void compare_tree(const std::vector<int>& spec, double p, double eps) {
    const tree_vector b(spec);
    const tree_analysis ta = analyze_tree(b, p);
    const logical_probs lp = logical_meas_probs(b, ta);
    const error_analysis ea = indirect_error_levels(b, ta, eps);
    const logical_errors le = logical_error_rates(b, ta, ea);
    const exhaustive_result ex = exhaustive_tree(b, p, eps);

    INFO("tree size ", spec.size(), " p ", p, " eps ", eps);
    CHECK(std::abs(lp.pr_mx - ex.pr_mx) <= 1e-12);
    CHECK(std::abs(lp.pr_mz - ex.pr_mz) <= 1e-12);
    CHECK(std::abs(le.ebar_x - ex.ebar_x) <= 1e-10);
    CHECK(std::abs(le.ebar_z - ex.ebar_z) <= 1e-10);
}

} // namespace

TEST_SUITE("exhaustive") {

TEST_CASE("tree enumeration") {
    const auto small = all_trees_up_to(3);
    // (1), (1,1), (1,1,1), (1,2), (2), (2,... no: (2,1) needs 4, (3)
    const std::vector<std::vector<int>> expect = {
        {1}, {1, 1}, {1, 1, 1}, {1, 2}, {2}, {3}};
    CHECK(small == expect);

    const auto all16 = all_trees_up_to(16);
    CHECK(all16.size() == 398);
    for (const auto& b : all16)
        CHECK(tree_vector(b).photon_count() <= 16);
}

TEST_CASE("oracle sanity at the extremes") {
    const exhaustive_result sure = exhaustive_tree(tree_vector({2, 2}), 1.0, 0.0);
    CHECK(sure.pr_mx == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sure.pr_mz == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sure.ebar_x == 0.0);
    CHECK(sure.ebar_z == 0.0);

    const exhaustive_result lost = exhaustive_tree(tree_vector({2, 2}), 0.0, 0.1);
    CHECK(lost.pr_mx == 0.0);
    CHECK(lost.pr_mz == 0.0);
}

TEST_CASE("matches the hand-checked recursion values") {
    const exhaustive_result d1 = exhaustive_tree(tree_vector({2}), 0.5, 0.0);
    CHECK(d1.pr_mx == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(d1.pr_mz == doctest::Approx(0.25).epsilon(1e-14));

    const exhaustive_result e1 = exhaustive_tree(tree_vector({2}), 1.0, 0.1);
    CHECK(e1.ebar_x == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(e1.ebar_z == doctest::Approx(0.18).epsilon(1e-14));

    const exhaustive_result e2 = exhaustive_tree(tree_vector({2, 2}), 1.0, 0.01);
    CHECK(e2.ebar_x == doctest::Approx(0.029404000000000045).epsilon(1e-13));
    CHECK(e2.ebar_z == doctest::Approx(0.019800000000000043).epsilon(1e-13));
}

TEST_CASE("recursion equals brute force on representative trees") {
    // the full <= 16 photon sweep runs in the acceptance binary; here a
    // spread of depths, degenerate branches and the heaviest shapes
    const std::vector<std::vector<int>> picks = {
        {1},      {16},      {1, 1},    {1, 15},  {2, 1},  {2, 7},
        {4, 3},   {5, 2},    {1, 1, 1}, {2, 2, 2}, {3, 2, 1}, {2, 3, 1},
        {1, 2, 2, 1}};
    for (const auto& b : picks) {
        compare_tree(b, 0.3, 0.1);
        compare_tree(b, 0.9, 0.1);
        compare_tree(b, 0.7, 0.0);
    }
}

TEST_CASE("majority drop rule is visible in the numbers") {
    // b0 = 2 at full transmission forces an even vote at the root; the
    // even-drop average must match the analytic convention exactly
    const tree_vector b({2, 1});
    const double eps = 0.2;
    const exhaustive_result ex = exhaustive_tree(b, 1.0, eps);
    const tree_analysis ta = analyze_tree(b, 1.0);
    const error_analysis ea = indirect_error_levels(b, ta, eps);
    const logical_errors le = logical_error_rates(b, ta, ea);
    CHECK(ex.ebar_x == doctest::Approx(le.ebar_x).epsilon(1e-13));
    // one attempt through a present child with one grandchild: flip xor flip
    const double one_attempt = 2.0 * eps * (1.0 - eps);
    CHECK(ex.ebar_x == doctest::Approx(one_attempt).epsilon(1e-13));
}

} // TEST_SUITE
